//! Periodic factors extracted from an eventually periodic central column:
//! the window contents `W_k` cycle with period `p`, and membership maps
//! the restricted dynamics onto rotation on ℤ/pℤ.

use alloc::vec::Vec;
use core::fmt;

use crate::config::Configuration;
use crate::dynamics::{minimal_row_period, orbit_cycle_traced, Budget, BudgetExceeded, Window};
use crate::rule::CellularAutomaton;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorError {
    /// The column period could not be settled within budget.
    Inconclusive(BudgetExceeded),
    /// Two residues share a window word, so cylinder membership cannot
    /// define the factor map.
    CollidingClassWords { word: Word },
    /// A test point's window content is not a class word.
    TestPointOutsideW,
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::Inconclusive(b) => write!(f, "column period inconclusive: {b}"),
            FactorError::CollidingClassWords { .. } => {
                write!(f, "distinct residues share a class word")
            }
            FactorError::TestPointOutsideW => write!(f, "test point lies outside W"),
        }
    }
}

impl core::error::Error for FactorError {}

/// A verified-by-construction factor onto `(ℤ/pℤ, +1)`: class word `j`
/// is the window content of `F^{m+j}(generator)`, and `π` maps a
/// configuration in cylinder `[class_words[j]]` to residue `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicFactor {
    pub period: u64,
    pub preperiod: u64,
    pub window: Window,
    pub class_words: Vec<Word>,
    pub generator: Configuration,
}

impl PeriodicFactor {
    /// The factor map on window contents.
    pub fn residue(&self, content: &[crate::alphabet::Letter]) -> Option<u64> {
        self.class_words
            .iter()
            .position(|w| w == content)
            .map(|j| j as u64)
    }
}

/// Builds the factor from the eventually periodic column of `x` on
/// `window`: class words are trace rows `m ..= m+p-1` at the minimal row
/// period.
pub fn build_periodic_factor(
    ca: &CellularAutomaton,
    x: &Configuration,
    window: Window,
    budget: Budget,
) -> Result<PeriodicFactor, FactorError> {
    let (orbit, rows) =
        orbit_cycle_traced(ca, x, Some(window), budget).map_err(FactorError::Inconclusive)?;
    let ep = minimal_row_period(&rows, orbit);
    let m = ep.preperiod as usize;
    let p = ep.period as usize;
    let class_words: Vec<Word> = (0..p).map(|j| rows[m + j].clone()).collect();
    for (j, w) in class_words.iter().enumerate() {
        if class_words[..j].contains(w) {
            return Err(FactorError::CollidingClassWords { word: w.clone() });
        }
    }
    Ok(PeriodicFactor {
        period: ep.period,
        preperiod: ep.preperiod,
        window,
        class_words,
        generator: x.clone(),
    })
}

/// Exact factor verification: the class words must be the recomputed trace
/// rows of the generator (which pins the residue assignment), and every
/// test point must satisfy the semiconjugacy
/// `π(F(y)) = π(y) + 1 (mod p)` over the verification horizon (default
/// `4 (m + p)` steps). Test points must start inside `W`; leaving `W` or
/// breaking the rotation returns `Ok(false)`.
pub fn verify_factor(
    ca: &CellularAutomaton,
    factor: &PeriodicFactor,
    test_points: &[Configuration],
    horizon: Option<u64>,
) -> Result<bool, FactorError> {
    let horizon = horizon.unwrap_or(4 * (factor.preperiod + factor.period));
    if factor.period as usize != factor.class_words.len() {
        return Ok(false);
    }
    let steps = factor.preperiod + factor.period;
    let budget = Budget {
        max_steps: steps + horizon + 16,
        max_center: Budget::default().max_center,
    };
    let rows = match crate::dynamics::trace(ca, &factor.generator, factor.window, steps, budget) {
        Ok(t) => t.rows,
        Err(b) => return Err(FactorError::Inconclusive(b)),
    };
    for j in 0..factor.period as usize {
        if rows[factor.preperiod as usize + j] != factor.class_words[j] {
            return Ok(false);
        }
    }
    for y in test_points {
        let content = y.window(factor.window.lo, factor.window.hi);
        let mut expected = factor
            .residue(&content)
            .ok_or(FactorError::TestPointOutsideW)?;
        let mut cur = y.clone();
        for _ in 0..horizon {
            cur = cur.step(ca);
            expected = (expected + 1) % factor.period;
            let content = cur.window(factor.window.lo, factor.window.hi);
            match factor.residue(&content) {
                Some(r) if r == expected => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}
