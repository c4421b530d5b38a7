//! Acceptance suite: every release-gate check, one test per criterion,
//! each printing a pass line with its runtime (run with `-- --nocapture`
//! to see them). All expectations are exact unless stated otherwise.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand_chacha::rand_core::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ca_core::alphabet::{Alphabet, Neighborhood};
use ca_core::config::{parse_config, Configuration, EventualPeriod, PeriodicConfig, TwoSidedConfig};
use ca_core::debruijn::{is_injective, is_surjective, preimage_count};
use ca_core::dynamics::{column_period, trace, Budget, Window};
use ca_core::equicontinuity::{check_blocking, BlockingCertificate, BlockingVerdict, EquiBounds};
use ca_core::factors::{build_periodic_factor, verify_factor};
use ca_core::fixtures;
use ca_core::gilman::{classify_gilman, GilmanClass, GilmanParams};
use ca_core::rule::CellularAutomaton;
use ca_core::stp::{build_y_prime, construct_stp, search_stp, verify_stp, StpBounds};
use ca_core::word::{parse_word, LexWords, Word};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn finish(name: &str, started: Instant, bound: Duration) {
    let elapsed = started.elapsed();
    println!("{name}: PASS ({elapsed:.2?}, bound {bound:.0?})");
    assert!(
        elapsed <= bound,
        "{name} exceeded its runtime bound: {elapsed:.2?} > {bound:.2?}"
    );
}

fn periodic(a: &Alphabet, s: &str) -> Configuration {
    Configuration::Periodic(PeriodicConfig::new(parse_word(a, s).unwrap(), 0).unwrap())
}

fn w_certificate(ca: &CellularAutomaton) -> BlockingCertificate {
    let a = ca.alphabet().clone();
    let w = parse_word(&a, "w").unwrap();
    match check_blocking(ca, &w, 1, 0, &EquiBounds::default()) {
        BlockingVerdict::Certified(c) => c,
        other => panic!("'w' must certify, got {other:?}"),
    }
}

/// Criterion 1: the simulate verb reproduces the reference five rows of
/// the `[wr000w]` cylinder exactly.
#[test]
fn criterion_01_example2_trace_fidelity() {
    let t0 = Instant::now();
    let rule = fixtures_dir().join("example2.rule");
    let out = Command::new(env!("CARGO_BIN_EXE_ca"))
        .args([
            "simulate",
            "--rule",
            rule.to_str().unwrap(),
            "--init",
            "^(wr000w)^",
            "--steps",
            "4",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "wr000w\nwrr00w\nwr0r0w\nwrr0rw\nwr0r0w\n"
    );
    finish("criterion 1 (trace fidelity)", t0, Duration::from_secs(1));
}

/// Criterion 2: column period (m, p) = (2, 2) on the six-cell window.
#[test]
fn criterion_02_example2_column_period() {
    let t0 = Instant::now();
    let ca = fixtures::example2();
    let a = ca.alphabet().clone();
    let x = periodic(&a, "wr000w");
    let ep = column_period(&ca, &x, Window::new(0, 5), Budget::default()).unwrap();
    assert_eq!(ep, EventualPeriod::new(2, 2));
    finish("criterion 2 (column period)", t0, Duration::from_secs(1));
}

/// Criterion 3: non-surjectivity with an oracle-verified witness and
/// non-injectivity with a verified distinct pair.
#[test]
fn criterion_03_example2_surjectivity_injectivity() {
    let t0 = Instant::now();
    let ca = fixtures::example2();
    let a = ca.alphabet().clone();

    let surj = is_surjective(&ca);
    assert!(!surj.surjective);
    let w = surj.witness.expect("witness present");
    assert_eq!(w.expected, 3);
    assert_ne!(w.count, 3);
    assert_eq!(preimage_count(&ca, &w.word), w.count);
    // the bundled rule's known unbalanced word: one preimage, not three
    assert_eq!(preimage_count(&ca, &parse_word(&a, "rr").unwrap()), 1);

    let inj = is_injective(&ca);
    assert!(!inj.injective);
    let (x, y) = inj.witness.expect("witness present");
    assert_ne!(x, y);
    assert_eq!(x.step(&ca), y.step(&ca));
    finish(
        "criterion 3 (surjectivity/injectivity)",
        t0,
        Duration::from_secs(1),
    );
}

/// Criterion 4: the periodic factor with p = 2 and its two class words,
/// verified on representatives of both cylinders.
#[test]
fn criterion_04_example2_periodic_factor() {
    let t0 = Instant::now();
    let ca = fixtures::example2();
    let a = ca.alphabet().clone();
    let x = periodic(&a, "wr000w");
    let f = build_periodic_factor(&ca, &x, Window::new(0, 5), Budget::default()).unwrap();
    assert_eq!(f.period, 2);
    let words: Vec<Word> = vec![
        parse_word(&a, "wr0r0w").unwrap(),
        parse_word(&a, "wrr0rw").unwrap(),
    ];
    assert_eq!(f.class_words, words);
    let reps = [periodic(&a, "wr0r0w"), periodic(&a, "wrr0rw")];
    assert_eq!(verify_factor(&ca, &f, &reps, None), Ok(true));
    finish("criterion 4 (periodic factor)", t0, Duration::from_secs(1));
}

/// Criterion 5: the strictly-temporally-periodic construction on the
/// blocking word "w" with gap words "00"/"r0" certifies F²(y') = y'
/// exactly, on a point that is not shift-periodic.
#[test]
fn criterion_05_stp_certification() {
    let t0 = Instant::now();
    let ca = fixtures::example2();
    let a = ca.alphabet().clone();
    let cert = w_certificate(&ca);
    let u = parse_word(&a, "00").unwrap();
    let v = parse_word(&a, "r0").unwrap();
    let stp = construct_stp(&ca, &cert, &u, &v, Budget::default()).unwrap();
    assert_eq!(stp.temporal_period, 2);
    assert_eq!(stp.seed_preperiod, 0);
    let y_prime = build_y_prime(&cert.word, &u, &v).unwrap();
    assert_eq!(stp.point, y_prime);
    assert!(y_prime.spatially_periodic().is_none());
    // F²(y') = y' re-checked from scratch
    assert!(verify_stp(&ca, &stp));
    finish("criterion 5 (stp certification)", t0, Duration::from_secs(1));
}

/// Criterion 6: expansive negative control; the shift, its inverse and
/// its square yield no certificates.
#[test]
fn criterion_06_expansive_negative_control() {
    let t0 = Instant::now();
    let equi = EquiBounds::default();
    let bounds = StpBounds::default();
    for (name, ca) in [
        ("eca 170", CellularAutomaton::elementary(170)),
        ("eca 240", CellularAutomaton::elementary(240)),
        ("shift squared", fixtures::shift_by_two()),
    ] {
        let found = search_stp(&ca, &equi, &bounds);
        assert!(found.is_empty(), "{name} returned {}", found.len());
    }
    finish("criterion 6 (expansive control)", t0, Duration::from_secs(10));
}

/// Criterion 7: the surjectivity decision agrees with brute-force balance
/// counting (every word of length <= 6 has exactly 4 preimages) on all
/// 256 elementary rules.
#[test]
fn criterion_07_surjectivity_cross_validation() {
    let t0 = Instant::now();
    let mut agreements = 0u32;
    for code in 0..=255u8 {
        let ca = CellularAutomaton::elementary(code);
        let decided = is_surjective(&ca).surjective;
        let mut balanced = true;
        'oracle: for len in 1..=6usize {
            for word in LexWords::new(2, len) {
                if preimage_count(&ca, &word) != 4 {
                    balanced = false;
                    break 'oracle;
                }
            }
        }
        assert_eq!(decided, balanced, "rule {code}");
        agreements += 1;
    }
    assert_eq!(agreements, 256);
    finish(
        "criterion 7 (surjectivity vs balance, 256/256)",
        t0,
        Duration::from_secs(120),
    );
}

/// Criterion 8: measure classification fixtures. Identity is class A with
/// a certificate on every run; the particle rule reports B and rule 30
/// reports C on at least 19 of 20 seeded reruns.
#[test]
fn criterion_08_gilman_classification() {
    let t0 = Instant::now();
    let identity = CellularAutomaton::elementary(204);
    let particle = fixtures::example1();
    let rule30 = CellularAutomaton::elementary(30);
    let equi = EquiBounds::default();
    let (mut a_count, mut b_count, mut c_count) = (0, 0, 0);
    for seed in 0..20u64 {
        let params = GilmanParams {
            seed,
            ..GilmanParams::default()
        };
        let rep = classify_gilman(&identity, &params, &equi);
        if rep.class == GilmanClass::A && rep.certificate.is_some() {
            a_count += 1;
        }
        if classify_gilman(&particle, &params, &equi).class == GilmanClass::B {
            b_count += 1;
        }
        if classify_gilman(&rule30, &params, &equi).class == GilmanClass::C {
            c_count += 1;
        }
    }
    assert_eq!(a_count, 20, "class A must be sound, got {a_count}/20");
    assert!(b_count >= 19, "class B on {b_count}/20 runs");
    assert!(c_count >= 19, "class C on {c_count}/20 runs");
    finish(
        "criterion 8 (gilman fixtures, A 20/20 B/C >= 19/20)",
        t0,
        Duration::from_secs(300),
    );
}

fn random_rule(rng: &mut ChaCha8Rng) -> CellularAutomaton {
    let k = 2 + (rng.next_u64() % 2) as usize;
    let left = -((rng.next_u64() % 3) as i64);
    let right = (rng.next_u64() % 3) as i64;
    let alphabet = if k == 2 {
        Alphabet::binary()
    } else {
        Alphabet::new(["0", "1", "2"]).unwrap()
    };
    let size = k.pow((right - left + 1) as u32);
    let table = (0..size)
        .map(|_| alphabet.letter((rng.next_u64() % k as u64) as usize).unwrap())
        .collect();
    CellularAutomaton::new(alphabet, Neighborhood::new(left, right).unwrap(), table).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, a: &Alphabet, max_len: usize) -> Word {
    let len = 1 + (rng.next_u64() % max_len as u64) as usize;
    (0..len)
        .map(|_| a.letter((rng.next_u64() % a.len() as u64) as usize).unwrap())
        .collect()
}

fn random_two_sided(rng: &mut ChaCha8Rng, a: &Alphabet) -> TwoSidedConfig {
    let left = random_word(rng, a, 3);
    let right = random_word(rng, a, 3);
    let center_len = (rng.next_u64() % 6) as usize;
    let center = (0..center_len)
        .map(|_| a.letter((rng.next_u64() % a.len() as u64) as usize).unwrap())
        .collect();
    let anchor = (rng.next_u64() % 11) as i64 - 5;
    TwoSidedConfig::new(left, center, right, anchor).unwrap()
}

fn random_config(rng: &mut ChaCha8Rng, a: &Alphabet) -> Configuration {
    if rng.next_u64().is_multiple_of(2) {
        let word = random_word(rng, a, 6);
        let phase = (rng.next_u64() % 13) as i64 - 6;
        Configuration::Periodic(PeriodicConfig::new(word, phase).unwrap())
    } else {
        Configuration::TwoSided(random_two_sided(rng, a))
    }
}

/// Criterion 9: property suites at the prescribed sample counts, zero
/// failures. Shift commutation and canonical-form idempotence on 1000
/// random inputs each; 1000 random contexts per blocking certificate.
#[test]
fn criterion_09_property_suites() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);

    // shift commutation on 1000 random (rule, config) pairs
    for _ in 0..1000 {
        let ca = random_rule(&mut rng);
        let c = random_config(&mut rng, ca.alphabet());
        let lhs = c.shift_by(1).step(&ca);
        let rhs = c.step(&ca).shift_by(1);
        assert!(lhs.equals(&rhs));
    }

    // canonicalization idempotence on 1000 random two-sided configs: the
    // canonical form survives a literal round trip unchanged
    let alphabet = Alphabet::new(["0", "1", "2"]).unwrap();
    for _ in 0..1000 {
        let c = random_two_sided(&mut rng, &alphabet);
        let literal =
            ca_core::config::format_config(&alphabet, &Configuration::TwoSided(c.clone()));
        let back = parse_config(&alphabet, &literal).unwrap();
        assert!(back.equals(&Configuration::TwoSided(c.clone())), "{literal}");
        if let Configuration::TwoSided(t) = back {
            assert_eq!(t, c, "{literal}");
        }
    }

    // certificate soundness: 1000 random contexts per certificate all
    // reproduce the certified window rows
    let ex2 = fixtures::example2();
    let id = CellularAutomaton::elementary(204);
    let id_cert = {
        let w = parse_word(id.alphabet(), "1").unwrap();
        match check_blocking(&id, &w, 1, 0, &EquiBounds::default()) {
            BlockingVerdict::Certified(c) => c,
            other => panic!("{other:?}"),
        }
    };
    for (ca, cert) in [(&ex2, w_certificate(&ex2)), (&id, id_cert)] {
        let a = ca.alphabet().clone();
        let depth = 64u64;
        let window = Window::new(
            cert.offset as i64,
            (cert.offset + cert.s) as i64 - 1,
        );
        let expect_row = |t: u64| -> &Word {
            let m = cert.rows.period.preperiod;
            let p = cert.rows.period.period;
            let idx = if t < m { t } else { m + (t - m) % p };
            &cert.rows.rows[idx as usize]
        };
        for _ in 0..1000 {
            let mut center = random_word(&mut rng, &a, 4);
            let at = -(center.len() as i64);
            center.extend_from_slice(&cert.word);
            center.extend(random_word(&mut rng, &a, 4));
            let ctx = TwoSidedConfig::new(
                random_word(&mut rng, &a, 3),
                center,
                random_word(&mut rng, &a, 3),
                at,
            )
            .unwrap();
            let rows = trace(
                ca,
                &Configuration::TwoSided(ctx),
                window,
                depth,
                Budget {
                    max_steps: depth + 1,
                    max_center: 4096,
                },
            )
            .unwrap()
            .rows;
            for (t, row) in rows.iter().enumerate() {
                assert_eq!(row, expect_row(t as u64), "context trace diverged at {t}");
            }
        }
    }
    finish("criterion 9 (property suites)", t0, Duration::from_secs(120));
}

/// Criterion 10: survey determinism; byte-identical output across a rerun
/// and across worker counts.
#[test]
fn criterion_10_survey_determinism() {
    let t0 = Instant::now();
    let dir = std::env::temp_dir().join(format!("ca-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let fixtures = fixtures_dir();
    let run = |name: &str, jobs: &str| -> Vec<u8> {
        let out_path = dir.join(name);
        let _ = fs::remove_file(&out_path);
        let out = Command::new(env!("CARGO_BIN_EXE_ca"))
            .args([
                "survey",
                "eca:30,90,110,170,204",
                fixtures.to_str().unwrap(),
                "--out",
                out_path.to_str().unwrap(),
                "--jobs",
                jobs,
                "--seed",
                "1729",
            ])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        fs::read(&out_path).unwrap()
    };
    let first = run("a.jsonl", "1");
    let second = run("b.jsonl", "1");
    let parallel = run("c.jsonl", "8");
    assert_eq!(first, second, "two sequential runs differ");
    assert_eq!(first, parallel, "jobs=1 vs jobs=8 differ");
    assert_eq!(first.iter().filter(|&&b| b == b'\n').count(), 7);
    finish("criterion 10 (survey determinism)", t0, Duration::from_secs(600));
}
