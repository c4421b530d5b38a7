//! Space-time diagram renderers: ASCII text and binary PPM (P6).

use ca_core::alphabet::Alphabet;
use ca_core::word::Word;

/// Fallback glyphs for alphabets with multi-character symbols.
const GLYPHS: &[u8] = b".#*+xo%@&=~$0123456789abcdefghijklmnopqrstuvwxyz";

/// One character per cell, one line per time step. Single-character
/// letter symbols render verbatim; otherwise letters map to a fixed glyph
/// table by index.
pub fn ascii(alphabet: &Alphabet, rows: &[Word]) -> String {
    let direct = alphabet.single_char();
    let mut out = String::new();
    for row in rows {
        for &l in row {
            if direct {
                out.push_str(alphabet.symbol(l));
            } else {
                let i = l.index();
                out.push(if i < GLYPHS.len() {
                    GLYPHS[i] as char
                } else {
                    '?'
                });
            }
        }
        out.push('\n');
    }
    out
}

/// Fixed palette: documented base colors for the first eight letters,
/// then a deterministic formula. Diagram bytes are stable across runs.
pub fn palette(index: usize) -> [u8; 3] {
    const BASE: [[u8; 3]; 8] = [
        [255, 255, 255],
        [0, 0, 0],
        [220, 50, 47],
        [38, 139, 210],
        [133, 153, 0],
        [181, 137, 0],
        [108, 113, 196],
        [203, 75, 22],
    ];
    if index < BASE.len() {
        BASE[index]
    } else {
        [
            (index * 73 % 256) as u8,
            (index * 151 % 256) as u8,
            (index * 199 % 256) as u8,
        ]
    }
}

/// Binary PPM, one pixel per cell.
pub fn ppm(rows: &[Word]) -> Vec<u8> {
    let h = rows.len();
    let w = rows.first().map_or(0, |r| r.len());
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.reserve(3 * w * h);
    for row in rows {
        for &l in row {
            out.extend_from_slice(&palette(l.index()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ca_core::word::parse_word;

    #[test]
    fn ascii_uses_letter_symbols_directly() {
        let a = Alphabet::new(["w", "0", "r"]).unwrap();
        let rows = vec![
            parse_word(&a, "wr0").unwrap(),
            parse_word(&a, "00w").unwrap(),
        ];
        assert_eq!(ascii(&a, &rows), "wr0\n00w\n");
    }

    #[test]
    fn ascii_falls_back_for_multichar_symbols() {
        let a = Alphabet::new(["aa", "bb"]).unwrap();
        let rows = vec![parse_word(&a, "aa.bb").unwrap()];
        assert_eq!(ascii(&a, &rows), ".#\n");
    }

    #[test]
    fn ppm_header_and_size() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        let rows = vec![parse_word(&a, "01").unwrap(); 3];
        let img = ppm(&rows);
        assert!(img.starts_with(b"P6\n2 3\n255\n"));
        assert_eq!(img.len(), 11 + 18);
    }
}
