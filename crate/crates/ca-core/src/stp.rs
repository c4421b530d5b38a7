//! Strictly temporally periodic points: configurations that are
//! F-periodic but not shift-periodic, built around a certified blocking
//! word from two gap words of equal length and certified by exact cycle
//! detection on the canonical two-sided form.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::config::{Configuration, TwoSidedConfig};
use crate::dynamics::{orbit_cycle, Budget, BudgetExceeded};
use crate::equicontinuity::{find_blocking_words, BlockingCertificate, EquiBounds};
use crate::rule::CellularAutomaton;
use crate::word::{LexWords, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StpError {
    LengthMismatch { u: usize, v: usize },
    EqualGapWords,
    Budget(BudgetExceeded),
    /// The orbit closed on a shift-periodic point; no certificate.
    SpatiallyPeriodicCycle,
}

impl fmt::Display for StpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StpError::LengthMismatch { u, v } => {
                write!(f, "gap words must have equal length, got {u} and {v}")
            }
            StpError::EqualGapWords => write!(f, "gap words must differ"),
            StpError::Budget(b) => write!(f, "{b}"),
            StpError::SpatiallyPeriodicCycle => {
                write!(f, "orbit cycle closed on a shift-periodic point")
            }
        }
    }
}

impl core::error::Error for StpError {}

/// One element of the nested approximant sequence: the word
/// `(wv)^i wuw (uw)^i` placed so the central `wuw` block starts at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSequenceElement {
    pub index: u32,
    pub word: Word,
    /// Coordinates `[lo, hi]` the word occupies.
    pub span: (i64, i64),
}

/// The approximant words for `i = 0 ..= i_max`; element 0 is `wuw`.
pub fn build_y_sequence(
    w: &[crate::alphabet::Letter],
    u: &[crate::alphabet::Letter],
    v: &[crate::alphabet::Letter],
    i_max: u32,
) -> Result<Vec<YSequenceElement>, StpError> {
    check_ingredients(u, v)?;
    let mut out = Vec::with_capacity(i_max as usize + 1);
    let mut wv: Word = w.to_vec();
    wv.extend_from_slice(v);
    let mut uw: Word = u.to_vec();
    uw.extend_from_slice(w);
    let mut wuw: Word = w.to_vec();
    wuw.extend_from_slice(u);
    wuw.extend_from_slice(w);
    for i in 0..=i_max {
        let mut word = Word::new();
        for _ in 0..i {
            word.extend_from_slice(&wv);
        }
        word.extend_from_slice(&wuw);
        for _ in 0..i {
            word.extend_from_slice(&uw);
        }
        let lo = -(i as i64) * wv.len() as i64;
        let hi = lo + word.len() as i64 - 1;
        out.push(YSequenceElement {
            index: i,
            word,
            span: (lo, hi),
        });
    }
    Ok(out)
}

fn check_ingredients(
    u: &[crate::alphabet::Letter],
    v: &[crate::alphabet::Letter],
) -> Result<(), StpError> {
    if u.len() != v.len() {
        return Err(StpError::LengthMismatch {
            u: u.len(),
            v: v.len(),
        });
    }
    if u == v {
        return Err(StpError::EqualGapWords);
    }
    Ok(())
}

/// Why the certified point is not shift-periodic, read off its canonical
/// form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonPeriodicEvidence {
    CenterNonempty { len: usize },
    TailMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StpCertificate {
    /// The F-periodic point, canonical. `F^temporal_period(point) = point`
    /// exactly and the point is not shift-periodic.
    pub point: TwoSidedConfig,
    pub temporal_period: u64,
    /// Steps from the seed `y' = (wv)^∞ wuw (uw)^∞` to the cycle point;
    /// 0 when `y'` itself is F-periodic.
    pub seed_preperiod: u64,
    pub not_spatially_periodic: NonPeriodicEvidence,
    /// `(w, u, v)`.
    pub ingredients: (Word, Word, Word),
}

/// The seed configuration `(wv)^∞ wuw (uw)^∞` with the central block
/// starting at coordinate 0.
pub fn build_y_prime(
    w: &[crate::alphabet::Letter],
    u: &[crate::alphabet::Letter],
    v: &[crate::alphabet::Letter],
) -> Result<TwoSidedConfig, StpError> {
    check_ingredients(u, v)?;
    let mut wv: Word = w.to_vec();
    wv.extend_from_slice(v);
    let mut uw: Word = u.to_vec();
    uw.extend_from_slice(w);
    let mut wuw: Word = w.to_vec();
    wuw.extend_from_slice(u);
    wuw.extend_from_slice(w);
    Ok(TwoSidedConfig::new(wv, wuw, uw, 0).unwrap())
}

/// Runs the construction from a certified blocking word `cert.word` and
/// gap words `u`, `v`: iterate F on `y'` with exact cycle detection; the
/// certificate carries the cycle point and its minimal temporal period,
/// provided the point is not shift-periodic. The emitted certificate has
/// already passed [`verify_stp`].
pub fn construct_stp(
    ca: &CellularAutomaton,
    cert: &BlockingCertificate,
    u: &[crate::alphabet::Letter],
    v: &[crate::alphabet::Letter],
    budget: Budget,
) -> Result<StpCertificate, StpError> {
    let y_prime = build_y_prime(&cert.word, u, v)?;
    let seed = Configuration::TwoSided(y_prime);
    let ep = orbit_cycle(ca, &seed, budget).map_err(StpError::Budget)?;
    let mut point = seed;
    for _ in 0..ep.preperiod {
        point = point.step(ca);
    }
    let point = match point {
        Configuration::TwoSided(t) => t,
        Configuration::Periodic(_) => unreachable!("two-sided step stays two-sided"),
    };
    if point.spatially_periodic().is_some() {
        return Err(StpError::SpatiallyPeriodicCycle);
    }
    let evidence = if point.center_len() > 0 {
        NonPeriodicEvidence::CenterNonempty {
            len: point.center_len(),
        }
    } else {
        NonPeriodicEvidence::TailMismatch
    };
    let out = StpCertificate {
        point,
        temporal_period: ep.period,
        seed_preperiod: ep.preperiod,
        not_spatially_periodic: evidence,
        ingredients: (cert.word.clone(), u.to_vec(), v.to_vec()),
    };
    debug_assert!(verify_stp(ca, &out));
    Ok(out)
}

/// Recomputes `F^m(point) = point` and the shift-periodicity test from
/// scratch; true iff both hold and the ingredients are well formed.
pub fn verify_stp(ca: &CellularAutomaton, cert: &StpCertificate) -> bool {
    if cert.temporal_period < 1 {
        return false;
    }
    let (_, u, v) = &cert.ingredients;
    if check_ingredients(u, v).is_err() {
        return false;
    }
    if cert.point.spatially_periodic().is_some() {
        return false;
    }
    let mut cur = cert.point.clone();
    for _ in 0..cert.temporal_period {
        cur = cur.step(ca);
    }
    cur == cert.point
}

/// Bounds for the certificate search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StpBounds {
    /// Window width for the blocking search (at least 1).
    pub s: usize,
    /// Longest blocking word enumerated.
    pub max_word_len: usize,
    /// Longest gap words tried.
    pub max_ingredient_len: usize,
    /// Orbit budget per candidate.
    pub budget: Budget,
}

impl Default for StpBounds {
    fn default() -> StpBounds {
        StpBounds {
            s: 1,
            max_word_len: 2,
            max_ingredient_len: 2,
            budget: Budget {
                max_steps: 256,
                max_center: 1024,
            },
        }
    }
}

/// Enumerates certified blocking words and gap-word pairs up to the given
/// bounds and returns every certificate found, deduplicated by canonical
/// point, in deterministic enumeration order.
pub fn search_stp(
    ca: &CellularAutomaton,
    equi: &EquiBounds,
    bounds: &StpBounds,
) -> Vec<StpCertificate> {
    let s = bounds.s.max(1);
    let certs = find_blocking_words(ca, s, bounds.max_word_len, equi);
    let mut words_seen: BTreeSet<Word> = BTreeSet::new();
    let mut points_seen: BTreeSet<TwoSidedConfig> = BTreeSet::new();
    let mut out = Vec::new();
    for cert in &certs {
        if !words_seen.insert(cert.word.clone()) {
            continue;
        }
        for len in 1..=bounds.max_ingredient_len {
            for u in LexWords::new(ca.k(), len) {
                for v in LexWords::new(ca.k(), len) {
                    if u == v {
                        continue;
                    }
                    if let Ok(c) = construct_stp(ca, cert, &u, &v, bounds.budget) {
                        if points_seen.insert(c.point.clone()) {
                            out.push(c);
                        }
                    }
                }
            }
        }
    }
    out
}
