//! Runs the selected analyses for one rule and assembles the record.

use std::collections::BTreeSet;

use ca_core::config::{Configuration, PeriodicConfig};
use ca_core::debruijn::{is_injective, is_surjective};
use ca_core::dynamics::{Budget, Window};
use ca_core::equicontinuity::{classify_kurka, find_blocking_words, EquiBounds};
use ca_core::factors::{build_periodic_factor, verify_factor, PeriodicFactor};
use ca_core::gilman::{classify_gilman, GilmanParams};
use ca_core::rule::CellularAutomaton;
use ca_core::stp::{search_stp, StpBounds};
use ca_core::word::{LexWords, Word};

use crate::record::*;
use crate::rules::fnv64;

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub seed: u64,
    /// Analyses to run; `None` means all. Names: surjectivity,
    /// injectivity, blocking, kurka, gilman, stp, factor.
    pub only: Option<BTreeSet<String>>,
    pub max_blocking_len: usize,
    pub gilman_samples: u64,
    pub gilman_horizon: u64,
    pub stp_max_ingredient: usize,
    pub max_center: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            seed: 0,
            only: None,
            max_blocking_len: 4,
            gilman_samples: 2000,
            gilman_horizon: 128,
            stp_max_ingredient: 2,
            max_center: 4096,
        }
    }
}

const FACTOR_HORIZON_MULTIPLIER: u64 = 4;

impl AnalysisOptions {
    fn enabled(&self, name: &str) -> bool {
        self.only.as_ref().is_none_or(|set| set.contains(name))
    }

    fn equi_bounds(&self) -> EquiBounds {
        EquiBounds::default()
    }

    fn gilman_params(&self, rule_seed: u64) -> GilmanParams {
        GilmanParams {
            samples: self.gilman_samples,
            horizon: self.gilman_horizon,
            seed: rule_seed,
            blocking_max_len: self.max_blocking_len,
            ..GilmanParams::default()
        }
    }

    fn stp_bounds(&self) -> StpBounds {
        StpBounds {
            max_ingredient_len: self.stp_max_ingredient,
            max_word_len: self.max_blocking_len.min(2),
            ..StpBounds::default()
        }
    }

    fn params_dto(&self, ca: &CellularAutomaton, rule_seed: u64) -> ParamsDto {
        let equi = self.equi_bounds();
        let gilman = self.gilman_params(rule_seed);
        let stp = self.stp_bounds();
        ParamsDto {
            seed: self.seed,
            blocking_s: blocking_width(ca),
            max_blocking_len: self.max_blocking_len,
            equi_max_set_states: equi.max_set_states,
            equi_max_set_size: equi.max_set_size,
            equi_max_mp: equi.max_mp,
            equi_mp_work_cap: equi.mp_work_cap,
            gilman_horizon: gilman.horizon,
            gilman_samples: gilman.samples,
            gilman_n_factors: gilman.n_factors.clone(),
            gilman_b_threshold: gilman.b_threshold,
            gilman_c_threshold: gilman.c_threshold,
            gilman_candidate_max_len: gilman.candidate_max_len,
            stp_max_ingredient: stp.max_ingredient_len,
            stp_max_word_len: stp.max_word_len,
            stp_max_steps: stp.budget.max_steps,
            max_center: self.max_center,
            factor_horizon_multiplier: FACTOR_HORIZON_MULTIPLIER,
        }
    }
}

pub fn blocking_width(ca: &CellularAutomaton) -> usize {
    ca.radius().max(1) as usize
}

/// Deterministic per-rule seed so survey records do not depend on rule
/// order or parallel scheduling.
pub fn rule_seed(seed: u64, id: &str) -> u64 {
    seed ^ fnv64(id.as_bytes())
}

pub fn analyze_rule(ca: &CellularAutomaton, id: &str, opts: &AnalysisOptions) -> SurveyRecord {
    let a = ca.alphabet().clone();
    let equi = opts.equi_bounds();
    let s = blocking_width(ca);
    let rseed = rule_seed(opts.seed, id);
    let mut work = WorkDto::default();

    let surjectivity = if opts.enabled("surjectivity") {
        Analysis::Ok(surjectivity_dto(&a, &is_surjective(ca)))
    } else {
        Analysis::Skipped
    };
    let injectivity = if opts.enabled("injectivity") {
        Analysis::Ok(injectivity_dto(&a, &is_injective(ca)))
    } else {
        Analysis::Skipped
    };

    let need_certs = opts.enabled("blocking") || opts.enabled("factor");
    let certs = if need_certs {
        let list = find_blocking_words(ca, s.min(opts.max_blocking_len), opts.max_blocking_len, &equi);
        for len in s.min(opts.max_blocking_len)..=opts.max_blocking_len {
            let words = (ca.k() as u64).saturating_pow(len as u32);
            work.blocking_candidates += words * (len - s.min(len) + 1) as u64;
        }
        list
    } else {
        Vec::new()
    };

    let blocking = if opts.enabled("blocking") {
        Analysis::Ok(BlockingDto {
            certificates: certs.iter().map(|c| blocking_cert_dto(&a, c)).collect(),
        })
    } else {
        Analysis::Skipped
    };

    let kurka = if opts.enabled("kurka") {
        Analysis::Ok(kurka_dto(
            &a,
            &classify_kurka(ca, s.min(opts.max_blocking_len), opts.max_blocking_len, &equi),
        ))
    } else {
        Analysis::Skipped
    };

    let gilman = if opts.enabled("gilman") {
        let params = opts.gilman_params(rseed);
        let report = classify_gilman(ca, &params, &equi);
        work.gilman_points += report
            .curves
            .iter()
            .map(|(_, c)| c.points.len() as u64)
            .sum::<u64>();
        if let Some((_, c)) = &report.b_witness {
            work.gilman_points += c.points.len() as u64;
        }
        Analysis::Ok(gilman_dto(&a, &report))
    } else {
        Analysis::Skipped
    };

    let stp = if opts.enabled("stp") {
        let bounds = opts.stp_bounds();
        let found = search_stp(ca, &equi, &bounds);
        let pairs_per_word: u64 = (1..=bounds.max_ingredient_len as u32)
            .map(|len| {
                let n = (ca.k() as u64).saturating_pow(len);
                n * (n - 1)
            })
            .sum();
        let words: BTreeSet<Word> = found.iter().map(|c| c.ingredients.0.clone()).collect();
        work.stp_pairs_tried += pairs_per_word * words.len().max(1) as u64;
        Analysis::Ok(StpDto {
            certificates: found.iter().map(|c| stp_cert_dto(&a, c)).collect(),
        })
    } else {
        Analysis::Skipped
    };

    let factors = if opts.enabled("factor") {
        Analysis::Ok(factor_probe(ca, &certs, &mut work, opts))
    } else {
        Analysis::Skipped
    };

    SurveyRecord {
        id: id.to_string(),
        params: opts.params_dto(ca, rseed),
        surjectivity,
        injectivity,
        blocking,
        kurka,
        gilman,
        stp,
        factors,
        work,
    }
}

/// Deterministic factor probe: for the first few distinct certified
/// blocking words `w`, build factors from `^∞(w)^∞` and `^∞(w·q)^∞` over
/// short suffixes `q`, keep the ones that verify, and collect the period
/// spectrum (no upper-bound claim).
fn factor_probe(
    ca: &CellularAutomaton,
    certs: &[ca_core::equicontinuity::BlockingCertificate],
    work: &mut WorkDto,
    opts: &AnalysisOptions,
) -> FactorsDto {
    let a = ca.alphabet().clone();
    let budget = Budget {
        max_steps: 512,
        max_center: opts.max_center,
    };
    let mut words: Vec<Word> = Vec::new();
    for c in certs {
        if !words.contains(&c.word) {
            words.push(c.word.clone());
            if words.len() >= 2 {
                break;
            }
        }
    }
    let mut factors: Vec<PeriodicFactor> = Vec::new();
    let mut spectrum: BTreeSet<u64> = BTreeSet::new();
    for w in &words {
        let mut probes: Vec<Word> = vec![w.clone()];
        for len in 1..=2usize {
            for q in LexWords::new(ca.k(), len) {
                let mut word = w.clone();
                word.extend(q);
                probes.push(word);
            }
        }
        for word in probes {
            work.factor_probes += 1;
            let Ok(x) = PeriodicConfig::new(word.clone(), 0) else {
                continue;
            };
            let cfg = Configuration::Periodic(x);
            let window = Window::new(0, word.len() as i64 - 1);
            if let Ok(factor) = build_periodic_factor(ca, &cfg, window, budget) {
                let mut rep = cfg.clone();
                for _ in 0..factor.preperiod {
                    rep = rep.step(ca);
                }
                if verify_factor(ca, &factor, &[rep], None) == Ok(true) {
                    spectrum.insert(factor.period);
                    if factors.len() < 8 {
                        factors.push(factor);
                    }
                }
            }
        }
    }
    FactorsDto {
        factors: factors.iter().map(|f| factor_dto(&a, f)).collect(),
        period_spectrum: spectrum.into_iter().collect(),
    }
}
