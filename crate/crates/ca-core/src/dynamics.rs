//! Orbit iteration, exact cycle detection and column traces.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::config::{Configuration, EventualPeriod};
use crate::rule::CellularAutomaton;
use crate::word::Word;

/// Inclusive coordinate interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Window {
        assert!(lo <= hi, "empty window");
        Window { lo, hi }
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn contains(&self, other: Window) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Iteration budget. Two-sided configurations without a blocking structure
/// can grow their canonical center forever, so running out is a definite,
/// reportable outcome rather than silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
    pub max_center: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_steps: 10_000,
            max_center: 4096,
        }
    }
}

impl Budget {
    pub fn steps(max_steps: u64) -> Budget {
        Budget {
            max_steps,
            ..Budget::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetExceeded {
    /// The canonical center outgrew `max_center` at the given step.
    CenterGrowth { step: u64, center: usize },
    /// No cycle closed within `max_steps`.
    Steps { max_steps: u64 },
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetExceeded::CenterGrowth { step, center } => {
                write!(f, "center grew to {center} letters at step {step}")
            }
            BudgetExceeded::Steps { max_steps } => {
                write!(f, "no cycle within {max_steps} steps")
            }
        }
    }
}

impl core::error::Error for BudgetExceeded {}

/// The first `steps + 1` rows of the space-time diagram restricted to a
/// window: row `t` is `F^t(x)(window)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnTrace {
    pub window: Window,
    pub rows: Vec<Word>,
    pub generator: Configuration,
}

/// Exact trace of `x` on `window` for `steps` steps. Only two-sided inputs
/// can exhaust the center budget.
pub fn trace(
    ca: &CellularAutomaton,
    x: &Configuration,
    window: Window,
    steps: u64,
    budget: Budget,
) -> Result<ColumnTrace, BudgetExceeded> {
    let mut rows = Vec::with_capacity(steps as usize + 1);
    let mut cur = x.clone();
    rows.push(cur.window(window.lo, window.hi));
    for t in 1..=steps {
        cur = cur.step(ca);
        if cur.center_len() > budget.max_center {
            return Err(BudgetExceeded::CenterGrowth {
                step: t,
                center: cur.center_len(),
            });
        }
        rows.push(cur.window(window.lo, window.hi));
    }
    Ok(ColumnTrace {
        window,
        rows,
        generator: x.clone(),
    })
}

/// Minimal `(m, p)` with `F^{m+p}(x) = F^m(x)`, by exact first-repeat
/// detection on canonical forms. Periodic inputs always terminate; the
/// budget only binds for two-sided ones.
pub fn orbit_cycle(
    ca: &CellularAutomaton,
    x: &Configuration,
    budget: Budget,
) -> Result<EventualPeriod, BudgetExceeded> {
    orbit_cycle_traced(ca, x, None, budget).map(|(ep, _)| ep)
}

/// Cycle detection that optionally records the window contents of every
/// visited configuration; shared by `column_period` and the factor
/// builder.
pub fn orbit_cycle_traced(
    ca: &CellularAutomaton,
    x: &Configuration,
    window: Option<Window>,
    budget: Budget,
) -> Result<(EventualPeriod, Vec<Word>), BudgetExceeded> {
    let mut seen: BTreeMap<Configuration, u64> = BTreeMap::new();
    let mut rows: Vec<Word> = Vec::new();
    let mut cur = x.clone();
    let mut t: u64 = 0;
    loop {
        if let Some(w) = window {
            rows.push(cur.window(w.lo, w.hi));
        }
        if let Some(&first) = seen.get(&cur) {
            // every state before t is distinct, so (first, t - first) is
            // minimal for the whole-configuration orbit
            return Ok((EventualPeriod::new(first, t - first), rows));
        }
        seen.insert(cur.clone(), t);
        if t >= budget.max_steps {
            return Err(BudgetExceeded::Steps {
                max_steps: budget.max_steps,
            });
        }
        cur = cur.step(ca);
        t += 1;
        if cur.center_len() > budget.max_center {
            return Err(BudgetExceeded::CenterGrowth {
                step: t,
                center: cur.center_len(),
            });
        }
    }
}

/// Minimal eventual period of the row sequence `F^t(x)(window)`, derived
/// from the orbit cycle (the row period divides the orbit period).
/// Inconclusive exactly when the orbit budget runs out first.
pub fn column_period(
    ca: &CellularAutomaton,
    x: &Configuration,
    window: Window,
    budget: Budget,
) -> Result<EventualPeriod, BudgetExceeded> {
    let (orbit, rows) = orbit_cycle_traced(ca, x, Some(window), budget)?;
    Ok(minimal_row_period(&rows, orbit))
}

/// Reduces an orbit-level `(m0, p0)` to the minimal `(m, p)` of the
/// recorded row sequence. `rows` must hold rows `0 ..= m0 + p0 - 1`.
pub(crate) fn minimal_row_period(rows: &[Word], orbit: EventualPeriod) -> EventualPeriod {
    let m0 = orbit.preperiod as usize;
    let p0 = orbit.period as usize;
    debug_assert!(rows.len() >= m0 + p0);
    let mut p = p0;
    for cand in 1..=p0 {
        if !p0.is_multiple_of(cand) {
            continue;
        }
        if (0..p0).all(|i| rows[m0 + i] == rows[m0 + (i + cand) % p0]) {
            p = cand;
            break;
        }
    }
    let mut m = m0;
    while m > 0 && rows[m - 1] == rows[m - 1 + p] {
        m -= 1;
    }
    EventualPeriod::new(m as u64, p as u64)
}
