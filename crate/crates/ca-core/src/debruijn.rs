//! Surjectivity and injectivity decisions on the de Bruijn graph, plus the
//! brute-force preimage-counting oracle used to re-verify every witness.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::alphabet::Letter;
use crate::config::PeriodicConfig;
use crate::rule::CellularAutomaton;
use crate::word::{LexWords, Word};

/// Overlap graph of the `d`-letter words of a rule. Vertex `u` has one
/// outgoing edge per letter `a`, to `u[1..]·a`, labeled by the rule value
/// of the spanned `(d+1)`-word; every vertex has exactly `k` outgoing and
/// `k` incoming edges.
pub struct DeBruijnGraph<'a> {
    ca: &'a CellularAutomaton,
    k: usize,
    vertices: usize,
}

impl<'a> DeBruijnGraph<'a> {
    pub fn new(ca: &'a CellularAutomaton) -> DeBruijnGraph<'a> {
        let k = ca.k();
        let vertices = k.pow(ca.span() as u32);
        DeBruijnGraph { ca, k, vertices }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Successor of `u` under appended letter `a`, with the output label
    /// of the traversed edge.
    #[inline]
    pub fn step(&self, u: usize, a: usize) -> (usize, Letter) {
        // the (d+1)-word spanned by the edge has radix index u*k + a,
        // which indexes the rule table directly
        let widx = u * self.k + a;
        (widx % self.vertices, self.ca.table()[widx])
    }

    /// The word of length `d` a vertex index stands for.
    pub fn vertex_word(&self, mut u: usize) -> Word {
        let d = self.ca.span();
        let mut out = alloc::vec![Letter(0); d];
        for pos in (0..d).rev() {
            out[pos] = Letter((u % self.k) as u8);
            u /= self.k;
        }
        out
    }
}

/// Number of words of length `|word| + d` that map onto `word` under the
/// sliding local rule. Plain enumeration; this is the independent oracle.
pub fn preimage_count(ca: &CellularAutomaton, word: &[Letter]) -> u64 {
    assert!(!word.is_empty());
    let mut count = 0u64;
    for cand in LexWords::new(ca.k(), word.len() + ca.span()) {
        if ca.apply_block_unchecked(&cand) == word {
            count += 1;
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnbalancedWitness {
    pub word: Word,
    pub count: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub surjective: bool,
    pub witness: Option<UnbalancedWitness>,
}

/// Exact surjectivity decision via the balance criterion: the global map
/// is surjective iff every word of every length has exactly `k^d`
/// preimages.
///
/// Preimage counts per de Bruijn vertex are propagated breadth-first from
/// the all-ones vector. While totals stay balanced the vectors range over
/// a finite set, so the search terminates; an unbalanced total is
/// reachable iff the rule is not surjective, and the first one found is
/// the shortest, then lexicographically least, witness. The witness count
/// is re-verified with [`preimage_count`] before being reported.
pub fn is_surjective(ca: &CellularAutomaton) -> SurjectivityReport {
    let g = DeBruijnGraph::new(ca);
    let expected = g.vertex_count() as u64;
    let start: Vec<u64> = alloc::vec![1; g.vertex_count()];
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue: VecDeque<(Vec<u64>, Word)> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back((start, Word::new()));
    while let Some((counts, path)) = queue.pop_front() {
        for a in 0..g.k() {
            let letter = Letter(a as u8);
            let mut next: Vec<u64> = alloc::vec![0; g.vertex_count()];
            for (u, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for b in 0..g.k() {
                    let (v, label) = g.step(u, b);
                    if label == letter {
                        next[v] += c;
                    }
                }
            }
            let total: u64 = next.iter().sum();
            let mut word = path.clone();
            word.push(letter);
            if total != expected {
                let oracle = preimage_count(ca, &word);
                assert_eq!(
                    oracle, total,
                    "preimage oracle disagrees with de Bruijn counting"
                );
                return SurjectivityReport {
                    surjective: false,
                    witness: Some(UnbalancedWitness {
                        word,
                        count: total,
                        expected,
                    }),
                };
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, word));
            }
        }
    }
    SurjectivityReport {
        surjective: true,
        witness: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub injective: bool,
    pub witness: Option<(PeriodicConfig, PeriodicConfig)>,
}

/// Exact injectivity decision for the global map on the full shift.
///
/// Work in the pair graph: vertices are pairs of de Bruijn vertices and
/// each pair of same-label edges is an edge, carrying the two appended
/// letters. After trimming vertices with no successor or no predecessor,
/// the rule is non-injective iff some surviving edge appends two distinct
/// letters: such an edge sits on a bi-infinite equal-image pair path, and
/// pumping produces a cycle through an unequal-letter edge, which spells
/// two distinct spatially periodic configurations with equal images. The
/// witness pair is re-verified exactly before being reported.
pub fn is_injective(ca: &CellularAutomaton) -> InjectivityReport {
    let g = DeBruijnGraph::new(ca);
    let n = g.vertex_count();
    let pairs = n * n;
    let pair = |u: usize, v: usize| u * n + v;

    let mut succ: Vec<Vec<(usize, u8, u8)>> = alloc::vec![Vec::new(); pairs];
    for u in 0..n {
        for v in 0..n {
            for a in 0..g.k() {
                let (u2, la) = g.step(u, a);
                for b in 0..g.k() {
                    let (v2, lb) = g.step(v, b);
                    if la == lb {
                        succ[pair(u, v)].push((pair(u2, v2), a as u8, b as u8));
                    }
                }
            }
        }
    }

    let live = live_vertices(pairs, &succ);
    let mut bad = false;
    'scan: for p in 0..pairs {
        if !live[p] {
            continue;
        }
        for &(q, a, b) in &succ[p] {
            if live[q] && a != b {
                bad = true;
                break 'scan;
            }
        }
    }
    if !bad {
        return InjectivityReport {
            injective: true,
            witness: None,
        };
    }

    let (x, y) = find_unequal_cycle(&live, &succ)
        .expect("non-injective rule must contain an unequal-letter cycle");
    let x = PeriodicConfig::new(x, 0).unwrap();
    let y = PeriodicConfig::new(y, 0).unwrap();
    assert!(
        x != y && x.step(ca) == y.step(ca),
        "invalid injectivity witness"
    );
    InjectivityReport {
        injective: false,
        witness: Some((x, y)),
    }
}

/// Vertices lying on some bi-infinite path: iteratively drop vertices with
/// no live successor or no live predecessor.
fn live_vertices(count: usize, succ: &[Vec<(usize, u8, u8)>]) -> Vec<bool> {
    let mut live = alloc::vec![true; count];
    loop {
        let mut changed = false;
        let mut has_pred = alloc::vec![false; count];
        for p in 0..count {
            if !live[p] {
                continue;
            }
            let mut any = false;
            for &(q, _, _) in &succ[p] {
                if live[q] {
                    any = true;
                    has_pred[q] = true;
                }
            }
            if !any {
                live[p] = false;
                changed = true;
            }
        }
        for p in 0..count {
            if live[p] && !has_pred[p] {
                live[p] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    live
}

/// Finds a cycle in the live pair graph through an edge appending two
/// distinct letters, scanning deterministically; returns the two spelled
/// period words.
fn find_unequal_cycle(
    live: &[bool],
    succ: &[Vec<(usize, u8, u8)>],
) -> Option<(Word, Word)> {
    for p in 0..live.len() {
        if !live[p] {
            continue;
        }
        for &(q, a, b) in &succ[p] {
            if !live[q] || a == b {
                continue;
            }
            let rest = if q == p {
                Some(Vec::new())
            } else {
                shortest_path(live, succ, q, p)
            };
            if let Some(path) = rest {
                let mut xw: Word = alloc::vec![Letter(a)];
                let mut yw: Word = alloc::vec![Letter(b)];
                for &(_, pa, pb) in &path {
                    xw.push(Letter(pa));
                    yw.push(Letter(pb));
                }
                return Some((xw, yw));
            }
        }
    }
    None
}

/// Shortest path `start -> goal` (`start != goal`) in the live subgraph,
/// BFS in deterministic edge order; edges returned as `(to, a, b)`.
fn shortest_path(
    live: &[bool],
    succ: &[Vec<(usize, u8, u8)>],
    start: usize,
    goal: usize,
) -> Option<Vec<(usize, u8, u8)>> {
    debug_assert_ne!(start, goal);
    let mut prev: BTreeMap<usize, (usize, u8, u8)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(start);
    let mut found = false;
    'bfs: while let Some(p) = queue.pop_front() {
        for &(q, a, b) in &succ[p] {
            if !live[q] || q == start || prev.contains_key(&q) {
                continue;
            }
            prev.insert(q, (p, a, b));
            if q == goal {
                found = true;
                break 'bfs;
            }
            queue.push_back(q);
        }
    }
    if !found {
        return None;
    }
    let mut steps = Vec::new();
    let mut at = goal;
    loop {
        let &(p, a, b) = prev.get(&at)?;
        steps.push((at, a, b));
        at = p;
        if at == start {
            break;
        }
    }
    steps.reverse();
    Some(steps)
}
