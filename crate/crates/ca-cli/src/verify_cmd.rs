//! The `verify` verb: re-check every certificate embedded in a serialized
//! record against the rule, from scratch.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use ca_core::config::{parse_config, Configuration};
use ca_core::debruijn::{is_injective, is_surjective, preimage_count};
use ca_core::equicontinuity::{check_blocking, BlockingVerdict, EquiBounds};
use ca_core::factors::verify_factor;
use ca_core::rule::CellularAutomaton;
use ca_core::stp::verify_stp;
use ca_core::word::parse_word;

use crate::record::*;

pub struct Outcome {
    pub passed: usize,
    pub failed: usize,
}

pub fn run(ca: &CellularAutomaton, record_path: &Path) -> Result<i32> {
    let text = fs::read_to_string(record_path)
        .with_context(|| format!("reading {}", record_path.display()))?;
    let mut outcome = Outcome {
        passed: 0,
        failed: 0,
    };
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: SurveyRecord = serde_json::from_str(line)
            .with_context(|| format!("line {} is not a survey record", lineno + 1))?;
        verify_record(ca, &record, &mut outcome);
    }
    println!("verify: {} passed, {} failed", outcome.passed, outcome.failed);
    Ok(if outcome.failed == 0 { 0 } else { 1 })
}

fn report(outcome: &mut Outcome, what: &str, ok: bool) {
    println!("{}: {}", what, if ok { "PASS" } else { "FAIL" });
    if ok {
        outcome.passed += 1;
    } else {
        outcome.failed += 1;
    }
}

pub fn verify_record(ca: &CellularAutomaton, record: &SurveyRecord, outcome: &mut Outcome) {
    let a = ca.alphabet().clone();
    let id = &record.id;

    if let Some(s) = record.surjectivity.value() {
        let ok = match (&s.witness, s.surjective) {
            (Some(w), false) => match parse_word(&a, &w.word) {
                Ok(word) => {
                    preimage_count(ca, &word) == w.count && w.count != w.expected
                }
                Err(_) => false,
            },
            (None, decided) => is_surjective(ca).surjective == decided,
            (Some(_), true) => false,
        };
        report(outcome, &format!("{id} surjectivity"), ok);
    }

    if let Some(i) = record.injectivity.value() {
        let ok = match (&i.witness, i.injective) {
            (Some(pair), false) => {
                match (parse_config(&a, &pair.a), parse_config(&a, &pair.b)) {
                    (Ok(x), Ok(y)) => !x.equals(&y) && x.step(ca).equals(&y.step(ca)),
                    _ => false,
                }
            }
            (None, decided) => is_injective(ca).injective == decided,
            (Some(_), true) => false,
        };
        report(outcome, &format!("{id} injectivity"), ok);
    }

    let verify_blocking = |dto: &BlockingCertDto| -> bool {
        match blocking_cert_from_dto(&a, dto) {
            Ok(cert) => match check_blocking(ca, &cert.word, cert.s, cert.offset, &EquiBounds::default()) {
                BlockingVerdict::Certified(fresh) => {
                    fresh.rows.period == cert.rows.period && fresh.rows.rows == cert.rows.rows
                }
                _ => false,
            },
            Err(_) => false,
        }
    };

    if let Some(b) = record.blocking.value() {
        for (i, cert) in b.certificates.iter().enumerate() {
            report(
                outcome,
                &format!("{id} blocking[{i}] {:?}", cert.word),
                verify_blocking(cert),
            );
        }
    }

    if let Some(g) = record.gilman.value() {
        if let Some(cert) = &g.certificate {
            report(
                outcome,
                &format!("{id} gilman class-A certificate"),
                verify_blocking(cert),
            );
        }
    }

    if let Some(s) = record.stp.value() {
        for (i, dto) in s.certificates.iter().enumerate() {
            let ok = match stp_cert_from_dto(&a, dto) {
                Ok(cert) => verify_stp(ca, &cert),
                Err(_) => false,
            };
            report(outcome, &format!("{id} stp[{i}]"), ok);
        }
    }

    if let Some(f) = record.factors.value() {
        for (i, dto) in f.factors.iter().enumerate() {
            let ok = match factor_from_dto(&a, dto) {
                Ok(factor) => {
                    let mut rep: Configuration = factor.generator.clone();
                    for _ in 0..factor.preperiod {
                        rep = rep.step(ca);
                    }
                    verify_factor(ca, &factor, &[rep], None) == Ok(true)
                }
                Err(_) => false,
            };
            report(outcome, &format!("{id} factor[{i}]"), ok);
        }
    }
}
