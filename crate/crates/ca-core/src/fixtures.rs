//! Bundled test rules used across the suite and shipped as rule files.

use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Letter, Neighborhood};
use crate::rule::CellularAutomaton;
use crate::word::parse_word;

/// Particle rule over `{_, L, D}`: `_` is background, `L` moves left,
/// `D` stands still, and an `L` meeting a `D` annihilates both. The left
/// neighbor never influences the outcome; the table lists it anyway so the
/// rule has the symmetric neighborhood `[-1, 1]`. The source table gives
/// the `D`-then-`L` collision column only implicitly; it is completed here
/// as mutual annihilation.
pub fn example1() -> CellularAutomaton {
    let alphabet = Alphabet::new(["_", "L", "D"]).unwrap();
    let g = |center: &str, right: &str| -> &'static str {
        match (center, right) {
            ("_", "L") => "L",
            ("L", "L") => "L",
            ("D", "_") | ("D", "D") => "D",
            _ => "_",
        }
    };
    let mut entries = Vec::new();
    for left in ["_", "L", "D"] {
        for center in ["_", "L", "D"] {
            for right in ["_", "L", "D"] {
                let mut input = parse_word(&alphabet, left).unwrap();
                input.extend(parse_word(&alphabet, center).unwrap());
                input.extend(parse_word(&alphabet, right).unwrap());
                let out = alphabet.find(g(center, right)).unwrap();
                entries.push((input, out));
            }
        }
    }
    CellularAutomaton::from_entries(alphabet, Neighborhood::symmetric(1), &entries).unwrap()
}

/// Non-surjective rule over `{w, 0, r}` with equicontinuous points: each
/// cell updates from `(x_{i-1}, x_i)`, the `w` column is constant and a
/// lone `r` walks right through zeros.
pub fn example2() -> CellularAutomaton {
    let alphabet = Alphabet::new(["w", "0", "r"]).unwrap();
    let pairs = [
        ("wr", "r"),
        ("w0", "0"),
        ("ww", "w"),
        ("rr", "0"),
        ("r0", "r"),
        ("rw", "w"),
        ("0r", "0"),
        ("00", "0"),
        ("0w", "w"),
    ];
    let entries: Vec<_> = pairs
        .iter()
        .map(|(i, o)| {
            (
                parse_word(&alphabet, i).unwrap(),
                alphabet.find(o).unwrap(),
            )
        })
        .collect();
    CellularAutomaton::from_entries(alphabet, Neighborhood::new(-1, 0).unwrap(), &entries).unwrap()
}

/// The two-cell left shift `F(x)_i = x_{i+2}` as an explicit radius-2
/// table; composition of the elementary shift (rule 170) with itself.
pub fn shift_by_two() -> CellularAutomaton {
    let alphabet = Alphabet::binary();
    let table = (0..32).map(|i| Letter((i & 1) as u8)).collect();
    CellularAutomaton::new(alphabet, Neighborhood::symmetric(2), table).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_annihilation_is_symmetric() {
        let ca = example1();
        let a = ca.alphabet().clone();
        let f = |s: &str| {
            let w = parse_word(&a, s).unwrap();
            ca.apply_local(&w).unwrap()
        };
        // collision from either side of the table produces background
        assert_eq!(f("_LD"), a.find("_").unwrap());
        assert_eq!(f("_DL"), a.find("_").unwrap());
        // left neighbor is irrelevant
        for l in ["_", "L", "D"] {
            assert_eq!(f(&alloc::format!("{l}DL")), a.find("_").unwrap());
        }
    }

    #[test]
    fn shift_by_two_shifts() {
        let ca = shift_by_two();
        let w: Vec<Letter> = [0u8, 1, 0, 0, 1].iter().map(|&b| Letter(b)).collect();
        assert_eq!(ca.apply_block(&w).unwrap(), alloc::vec![Letter(1)]);
        let w: Vec<Letter> = [1u8, 1, 0, 1, 0].iter().map(|&b| Letter(b)).collect();
        assert_eq!(ca.apply_block(&w).unwrap(), alloc::vec![Letter(0)]);
    }
}
