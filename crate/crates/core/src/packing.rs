//! Greedy packing of support sets into a pairwise-disjoint subcollection.
//!
//! The loop visits supports in input order. A support that has not been
//! removed is selected, its coordinates are marked used, and every remaining
//! support meeting it is removed (the selected one included). Each step
//! removes at most `M·|S_t| ≤ M·b·n` supports, so the selection has size at
//! least `|S| / (M·b·n)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::triples::{CollectionStats, MagicFriendlyTriple};

/// Collections larger than this do not keep a per-step removal trace.
pub const TRACE_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingStep {
    pub selected: usize,
    /// Indices removed in this step, including `selected`.
    pub removed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingResult {
    pub selected: Vec<usize>,
    /// |S| / (M·b·n).
    pub guaranteed_lower_bound: Rational,
    pub stats_used: CollectionStats,
    pub removal_trace: Option<Vec<PackingStep>>,
}

impl PackingResult {
    pub fn selected_count(&self) -> usize {
        self.selected.len()
    }
}

/// |S| / (M·b·n) with `b·n` given directly as the largest support size.
fn lemma_bound(stats: &CollectionStats) -> Result<Rational> {
    let denom = stats.participation * stats.max_support;
    if denom == 0 {
        return Err(Error::ZeroDivisor("packing bound"));
    }
    Rational::new(stats.count, denom)
}

fn validate<S: AsRef<[usize]>>(supports: &[S], n: usize) -> Result<CollectionStats> {
    if supports.is_empty() {
        return Err(Error::EmptyCollection);
    }
    if let Some(index) = supports.iter().position(|s| s.as_ref().is_empty()) {
        return Err(Error::EmptySupport { index });
    }
    CollectionStats::from_supports(supports, n)
}

/// Greedy packing over generic 1-based support sets.
pub fn pack_supports<S: AsRef<[usize]>>(supports: &[S], n: usize) -> Result<PackingResult> {
    let stats = validate(supports, n)?;
    let guaranteed_lower_bound = lemma_bound(&stats)?;

    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, s) in supports.iter().enumerate() {
        for &c in s.as_ref() {
            incidence[c - 1].push(t);
        }
    }

    let keep_trace = supports.len() <= TRACE_LIMIT;
    let mut trace = Vec::new();
    let mut removed = vec![false; supports.len()];
    let mut used = vec![false; n];
    let mut selected = Vec::new();

    for t in 0..supports.len() {
        if removed[t] {
            continue;
        }
        let s = supports[t].as_ref();
        debug_assert!(s.iter().all(|&c| !used[c - 1]));
        selected.push(t);
        let mut step_removed = Vec::new();
        for &c in s {
            used[c - 1] = true;
            for &other in &incidence[c - 1] {
                if !removed[other] {
                    removed[other] = true;
                    step_removed.push(other);
                }
            }
        }
        if keep_trace {
            step_removed.sort_unstable();
            trace.push(PackingStep {
                selected: t,
                removed: step_removed,
            });
        }
    }

    Ok(PackingResult {
        selected,
        guaranteed_lower_bound,
        stats_used: stats,
        removal_trace: keep_trace.then_some(trace),
    })
}

/// Greedy packing of triple support unions.
pub fn greedy_pack(collection: &[MagicFriendlyTriple], n: usize) -> Result<PackingResult> {
    let supports: Vec<&[usize]> = collection
        .iter()
        .map(MagicFriendlyTriple::support_union)
        .collect();
    pack_supports(&supports, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingVerdict {
    pub ok: bool,
    pub disjoint: bool,
    pub meets_bound: bool,
    pub selected_count: usize,
    pub bound: Rational,
    /// First overlap found: two selected indices and a shared coordinate.
    pub overlap: Option<(usize, usize, usize)>,
}

/// Re-checks disjointness and the size bound, with statistics recomputed
/// from the full collection.
pub fn verify_packing<S: AsRef<[usize]>>(
    supports: &[S],
    selected: &[usize],
    n: usize,
) -> Result<PackingVerdict> {
    let stats = validate(supports, n)?;
    if let Some(&index) = selected.iter().find(|&&i| i >= supports.len()) {
        return Err(Error::InvalidIndex {
            index,
            len: supports.len(),
        });
    }
    let bound = lemma_bound(&stats)?;
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut overlap = None;
    'scan: for &t in selected {
        for &c in supports[t].as_ref() {
            if let Some(prev) = owner[c - 1] {
                overlap = Some((prev, t, c));
                break 'scan;
            }
            owner[c - 1] = Some(t);
        }
    }
    let meets_bound = Rational::integer(selected.len()) >= bound;
    let disjoint = overlap.is_none();
    Ok(PackingVerdict {
        ok: disjoint && meets_bound,
        disjoint,
        meets_bound,
        selected_count: selected.len(),
        bound,
        overlap,
    })
}
