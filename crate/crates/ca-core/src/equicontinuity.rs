//! Blocking-word certification and the topological classification into
//! rules with equicontinuity points versus sensitivity candidates.
//!
//! A word `w` is `s`-blocking at offset `p` when every configuration
//! containing `w` at a fixed position produces the same trace on the
//! `s`-cell window at offset `p`, forever. Certification propagates an
//! over-approximate uncertainty set of window contents: sound, never
//! complete; incompleteness surfaces as `Unknown`, never as a wrong
//! answer.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::alphabet::Letter;
use crate::config::{Configuration, EventualPeriod, TwoSidedConfig};
use crate::dynamics::{minimal_row_period, trace, Budget, Window};
use crate::rule::CellularAutomaton;
use crate::word::{LexWords, Word};

/// Search bounds for certification, falsification and the bounded
/// equicontinuity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquiBounds {
    /// Distinct uncertainty sets to visit before giving up.
    pub max_set_states: usize,
    /// Largest uncertainty set to carry.
    pub max_set_size: usize,
    /// Extra falsification depth beyond `2|w|`.
    pub falsify_extra: u64,
    /// Longest context word enumerated when hunting counterexamples.
    pub falsify_ctx_len: usize,
    /// Largest `m + p` tried by the exact `F^{m+p} = F^m` search.
    pub max_mp: u32,
    /// Cap on `k^((m+p)d + 1)`, the table size that search enumerates.
    pub mp_work_cap: u64,
}

impl Default for EquiBounds {
    fn default() -> EquiBounds {
        EquiBounds {
            max_set_states: 512,
            max_set_size: 4096,
            falsify_extra: 32,
            falsify_ctx_len: 3,
            max_mp: 64,
            mp_work_cap: 1 << 16,
        }
    }
}

/// The certified eventually periodic sequence of window contents shared by
/// every configuration containing the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedRows {
    pub rows: Vec<Word>,
    pub period: EventualPeriod,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingCertificate {
    pub word: Word,
    pub s: usize,
    pub offset: usize,
    pub rows: CertifiedRows,
}

/// Two concrete configurations sharing the word whose window traces
/// differ at `time`; re-verifiable with `dynamics::trace`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Falsification {
    pub a: TwoSidedConfig,
    pub b: TwoSidedConfig,
    pub window: Window,
    pub time: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockingVerdict {
    Certified(BlockingCertificate),
    Falsified(Falsification),
    Unknown,
}

/// Sound certification by uncertainty propagation. `U_0 = {w}`;
/// `U_{n+1}` collects the block images of `a·u·b` over all `u ∈ U_n` and
/// boundary words `a, b` of the neighborhood lengths. Certified when the
/// `s`-window projection of every `U_n` is a singleton until the set
/// sequence closes a cycle.
fn certify(
    ca: &CellularAutomaton,
    word: &[Letter],
    s: usize,
    offset: usize,
    bounds: &EquiBounds,
) -> Option<BlockingCertificate> {
    let k = ca.k();
    let lpad = (-ca.neighborhood().left()) as usize;
    let rpad = ca.neighborhood().right() as usize;
    let mut set: BTreeSet<Word> = BTreeSet::new();
    set.insert(word.to_vec());
    let mut seen: BTreeMap<Vec<Word>, u64> = BTreeMap::new();
    let mut rows: Vec<Word> = Vec::new();
    let mut t: u64 = 0;
    loop {
        let mut projections: BTreeSet<Word> = BTreeSet::new();
        for u in &set {
            projections.insert(u[offset..offset + s].to_vec());
        }
        if projections.len() != 1 {
            return None;
        }
        rows.push(projections.into_iter().next().unwrap());

        let key: Vec<Word> = set.iter().cloned().collect();
        if let Some(&first) = seen.get(&key) {
            let orbit = EventualPeriod::new(first, t - first);
            let period = minimal_row_period(&rows, orbit);
            rows.truncate((period.preperiod + period.period) as usize);
            return Some(BlockingCertificate {
                word: word.to_vec(),
                s,
                offset,
                rows: CertifiedRows { rows, period },
            });
        }
        seen.insert(key, t);
        if seen.len() > bounds.max_set_states {
            return None;
        }

        let mut next: BTreeSet<Word> = BTreeSet::new();
        for u in &set {
            for a in LexWords::new(k, lpad) {
                for b in LexWords::new(k, rpad) {
                    let mut padded = a.clone();
                    padded.extend_from_slice(u);
                    padded.extend_from_slice(&b);
                    next.insert(ca.apply_block_unchecked(&padded));
                }
            }
            if next.len() > bounds.max_set_size {
                return None;
            }
        }
        set = next;
        t += 1;
    }
}

/// Bounded counterexample hunt: a family of concrete contexts around the
/// word (uniform backgrounds, plus every short word planted against either
/// side), traced to depth `2|w| + falsify_extra`. Any disagreement yields
/// an exact, re-verifiable falsification.
fn falsify(
    ca: &CellularAutomaton,
    word: &[Letter],
    s: usize,
    offset: usize,
    bounds: &EquiBounds,
) -> Option<Falsification> {
    let k = ca.k();
    let depth = 2 * word.len() as u64 + bounds.falsify_extra;
    let window = Window::new(offset as i64, (offset + s - 1) as i64);
    let budget = Budget {
        max_steps: depth + 1,
        max_center: word.len() + 64 + 2 * (depth as usize + 1) * (ca.span() + 1),
    };

    let mut candidates: Vec<TwoSidedConfig> = Vec::new();
    for bg in ca.alphabet().letters() {
        let tail: Word = alloc::vec![bg];
        let base = TwoSidedConfig::new(tail.clone(), word.to_vec(), tail.clone(), 0).unwrap();
        candidates.push(base);
        for len in 1..=bounds.falsify_ctx_len {
            for ctx in LexWords::new(k, len) {
                let mut left_center = ctx.clone();
                left_center.extend_from_slice(word);
                candidates.push(
                    TwoSidedConfig::new(tail.clone(), left_center, tail.clone(), -(len as i64))
                        .unwrap(),
                );
                let mut right_center = word.to_vec();
                right_center.extend_from_slice(&ctx);
                candidates.push(
                    TwoSidedConfig::new(tail.clone(), right_center, tail.clone(), 0).unwrap(),
                );
            }
        }
    }

    let mut traces: Vec<Vec<Word>> = Vec::with_capacity(candidates.len());
    for c in &candidates {
        let rows = match trace(ca, &Configuration::TwoSided(c.clone()), window, depth, budget) {
            Ok(t) => t.rows,
            Err(_) => return None,
        };
        traces.push(rows);
    }
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if let Some(time) = traces[i].iter().zip(&traces[j]).position(|(a, b)| a != b) {
                return Some(Falsification {
                    a: candidates[i].clone(),
                    b: candidates[j].clone(),
                    window,
                    time: time as u64,
                });
            }
        }
    }
    None
}

/// Full verdict for one `(word, s, offset)` candidate: certify, else
/// falsify, else `Unknown`.
pub fn check_blocking(
    ca: &CellularAutomaton,
    word: &[Letter],
    s: usize,
    offset: usize,
    bounds: &EquiBounds,
) -> BlockingVerdict {
    assert!(s >= 1 && word.len() >= s && offset <= word.len() - s);
    if let Some(cert) = certify(ca, word, s, offset, bounds) {
        return BlockingVerdict::Certified(cert);
    }
    match falsify(ca, word, s, offset, bounds) {
        Some(f) => BlockingVerdict::Falsified(f),
        None => BlockingVerdict::Unknown,
    }
}

/// All certified `(word, offset)` pairs with `|word| <= max_len`, in
/// length-then-lex word order and ascending offset. Only the sound
/// certification pass runs here.
pub fn find_blocking_words(
    ca: &CellularAutomaton,
    s: usize,
    max_len: usize,
    bounds: &EquiBounds,
) -> Vec<BlockingCertificate> {
    let mut out = Vec::new();
    for len in s..=max_len {
        for word in LexWords::new(ca.k(), len) {
            for offset in 0..=(len - s) {
                if let Some(cert) = certify(ca, &word, s, offset, bounds) {
                    out.push(cert);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpToBounds {
    Yes,
    NoUpToBounds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquiStatus {
    /// `F^{m+p} = F^m` as global maps, verified exactly on every word of
    /// length `(m+p)d + 1`.
    Periodic(EventualPeriod),
    NoUpToBounds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KurkaReport {
    /// Sound when `Yes` (a certificate exists); `NoUpToBounds` otherwise.
    pub has_equicontinuity_points: UpToBounds,
    pub equicontinuous: EquiStatus,
    /// No blocking word found up to bounds; statistical hint only.
    pub sensitive_candidate: bool,
    pub certificates: Vec<BlockingCertificate>,
}

/// Tests `F^{m+p} = F^m` as global maps by enumerating every word of
/// length `(m+p)d + 1` once and comparing the two iterated images at the
/// aligned cell. `None` when the enumeration would exceed the work cap.
fn maps_equal(ca: &CellularAutomaton, m: u32, p: u32, work_cap: u64) -> Option<bool> {
    let d = ca.span();
    let total = m + p;
    let len = total as usize * d + 1;
    let mut size: u64 = 1;
    for _ in 0..len {
        size = size.saturating_mul(ca.k() as u64);
        if size > work_cap {
            return None;
        }
    }
    // after t block steps a word covering [total*l, total*r] covers
    // [total*l - t*l, total*r - t*r]; cell 0 of F^m is index -p*l there
    let idx_m = (-(p as i64) * ca.neighborhood().left()) as usize;
    for word in LexWords::new(ca.k(), len) {
        let mut cur = word;
        for _ in 0..m {
            cur = ca.apply_block_unchecked(&cur);
        }
        let at_m = cur[idx_m];
        for _ in 0..p {
            cur = ca.apply_block_unchecked(&cur);
        }
        debug_assert_eq!(cur.len(), 1);
        if cur[0] != at_m {
            return Some(false);
        }
    }
    Some(true)
}

/// Kůrka-style classification: blocking certificates decide existence of
/// equicontinuity points (sound); global equicontinuity is an exact
/// bounded search for `F^{m+p} = F^m`; sensitivity is reported as a
/// candidate only.
pub fn classify_kurka(
    ca: &CellularAutomaton,
    s: usize,
    max_len: usize,
    bounds: &EquiBounds,
) -> KurkaReport {
    let certificates = find_blocking_words(ca, s, max_len, bounds);
    let has = if certificates.is_empty() {
        UpToBounds::NoUpToBounds
    } else {
        UpToBounds::Yes
    };

    let mut equicontinuous = EquiStatus::NoUpToBounds;
    'outer: for p in 1..=bounds.max_mp {
        for m in 0..=(bounds.max_mp - p) {
            match maps_equal(ca, m, p, bounds.mp_work_cap) {
                Some(true) => {
                    equicontinuous = EquiStatus::Periodic(EventualPeriod::new(m as u64, p as u64));
                    break 'outer;
                }
                Some(false) => {}
                // enumeration size grows with m + p, so once the cap is
                // hit at m = 0 nothing larger is checkable either
                None if m == 0 => break 'outer,
                None => break,
            }
        }
    }

    KurkaReport {
        sensitive_candidate: certificates.is_empty(),
        has_equicontinuity_points: has,
        equicontinuous,
        certificates,
    }
}
