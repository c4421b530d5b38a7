//! Property suites over random rules and configurations.

use proptest::prelude::*;

use ca_core::alphabet::{Alphabet, Neighborhood};
use ca_core::config::{Configuration, PeriodicConfig, TwoSidedConfig};
use ca_core::rule::CellularAutomaton;
use ca_core::word::Word;

fn arb_rule() -> impl Strategy<Value = CellularAutomaton> {
    (2usize..=3, -2i64..=0, 0i64..=2).prop_flat_map(|(k, left, right)| {
        let symbols: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let alphabet = Alphabet::new(symbols).unwrap();
        let span = (right - left) as u32;
        let size = k.pow(span + 1);
        proptest::collection::vec(0..k, size).prop_map(move |outs| {
            let table: Vec<_> = outs.iter().map(|&i| alphabet.letter(i).unwrap()).collect();
            CellularAutomaton::new(
                alphabet.clone(),
                Neighborhood::new(left, right).unwrap(),
                table,
            )
            .unwrap()
        })
    })
}

fn word_of(alphabet: &Alphabet, indices: &[usize]) -> Word {
    indices.iter().map(|&i| alphabet.letter(i).unwrap()).collect()
}

fn arb_config() -> impl Strategy<Value = (CellularAutomaton, Configuration)> {
    arb_rule().prop_flat_map(|ca| {
        let k = ca.k();
        let alphabet = ca.alphabet().clone();
        let a2 = alphabet.clone();
        let periodic = (proptest::collection::vec(0..k, 1..=6), -6i64..=6).prop_map(
            move |(w, phase)| {
                Configuration::Periodic(
                    PeriodicConfig::new(word_of(&alphabet, &w), phase).unwrap(),
                )
            },
        );
        let two_sided = (
            proptest::collection::vec(0..k, 1..=4),
            proptest::collection::vec(0..k, 0..=6),
            proptest::collection::vec(0..k, 1..=4),
            -5i64..=5,
        )
            .prop_map(move |(l, c, r, anchor)| {
                Configuration::TwoSided(
                    TwoSidedConfig::new(
                        word_of(&a2, &l),
                        word_of(&a2, &c),
                        word_of(&a2, &r),
                        anchor,
                    )
                    .unwrap(),
                )
            });
        prop_oneof![periodic, two_sided].prop_map(move |c| (ca.clone(), c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// The global map commutes with the shift on every representable
    /// configuration.
    #[test]
    fn shift_commutation((ca, c) in arb_config()) {
        let a = c.shift_by(1).step(&ca);
        let b = c.step(&ca).shift_by(1);
        prop_assert!(a.equals(&b), "{a:?} vs {b:?}");
    }

    /// Stepping agrees cellwise with the local rule applied to windows.
    #[test]
    fn read_at_agreement((ca, c) in arb_config()) {
        let stepped = c.step(&ca);
        let nb = ca.neighborhood();
        for i in -8..=8i64 {
            let window = c.window(i + nb.left(), i + nb.right());
            prop_assert_eq!(stepped.read_at(i), ca.apply_local(&window).unwrap());
        }
    }

    /// Constructors canonicalize, so feeding a value's own fields back in
    /// reproduces it whenever the raw reading coincides with the anchored
    /// one (tails aligned at multiples of their lengths), and periodic
    /// construction is always idempotent.
    #[test]
    fn canonicalize_idempotent((_, c) in arb_config()) {
        match c {
            Configuration::TwoSided(t) => {
                let lk = t.left().len() as i64;
                let rk = t.right().len() as i64;
                if t.anchor().rem_euclid(lk) == 0
                    && (t.anchor() + t.center().len() as i64).rem_euclid(rk) == 0 {
                    let rebuilt = TwoSidedConfig::new(
                        t.left().to_vec(),
                        t.center().to_vec(),
                        t.right().to_vec(),
                        t.anchor(),
                    ).unwrap();
                    prop_assert_eq!(rebuilt, t);
                }
            }
            Configuration::Periodic(p) => {
                let rebuilt = PeriodicConfig::new(p.word().to_vec(), p.phase() as i64).unwrap();
                prop_assert_eq!(rebuilt, p);
            }
        }
    }

    /// Equal configurations read identically everywhere (spot window).
    #[test]
    fn equality_matches_reads(
        (_, c) in arb_config(),
        (_, d) in arb_config(),
    ) {
        if c.equals(&d) {
            for i in -16..=16i64 {
                prop_assert_eq!(c.read_at(i), d.read_at(i));
            }
        }
    }

    /// Stepping a periodic configuration embedded as two-sided equals
    /// embedding the stepped periodic configuration.
    #[test]
    fn embedding_commutes((ca, c) in arb_config()) {
        if let Configuration::Periodic(p) = c {
            let embedded = Configuration::TwoSided(p.to_two_sided());
            let direct = Configuration::Periodic(p.step(&ca));
            prop_assert!(embedded.step(&ca).equals(&direct));
        }
    }

    /// Applying the block map twice computes the two-step image on every
    /// cell.
    #[test]
    fn block_composition((ca, c) in arb_config()) {
        let twice = c.step(&ca).step(&ca);
        let nb = ca.neighborhood();
        for i in -4..=4i64 {
            let window = c.window(i + 2 * nb.left(), i + 2 * nb.right());
            let one = ca.apply_block(&window).unwrap();
            let two = ca.apply_block(&one).unwrap();
            prop_assert_eq!(&[twice.read_at(i)][..], &two[..]);
        }
    }

    /// Shifts compose and invert exactly.
    #[test]
    fn shift_group_action((_, c) in arb_config(), k1 in -7i64..=7, k2 in -7i64..=7) {
        prop_assert!(c.shift_by(k1).shift_by(k2).equals(&c.shift_by(k1 + k2)));
        prop_assert!(c.shift_by(k1).shift_by(-k1).equals(&c));
        prop_assert_eq!(c.shift_by(k1).read_at(0), c.read_at(k1));
    }
}
