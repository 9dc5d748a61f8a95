//! Finding equal-weight designs of a given size.
//!
//! [`brute_force`] is exact and parallel; [`heuristic_distance_search`] and
//! [`heat_local_search`] are seeded local searches. All three score every
//! subset they visit with the same strength function.

mod combinations;
mod distance;
mod heat;

pub use combinations::{binomial, Combinations};
pub use distance::heuristic_distance_search;
pub use heat::{
    default_heat_steps, diffuse, heat_local_search, heat_objective, heat_objective_spectral,
    HeatObjective, HeatState,
};

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::design::{design_strength, Design, EqualWeightScorer};
use crate::error::{Error, Result};
use crate::graph::VertexSubset;
use crate::spectral::ClassBasis;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_WITNESS_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub method: String,
    pub size: usize,
    pub best_k: usize,
    /// Lexicographically smallest maximizers, at most the witness cap.
    pub witnesses: Vec<VertexSubset>,
    /// Number of distinct maximizers seen (may exceed `witnesses.len()`).
    pub witness_count: u64,
    pub subsets_examined: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Why a local search stopped: `local-optimum` or `max-iters`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub termination: Option<String>,
    /// Where a local search ended.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_subset: Option<VertexSubset>,
}

impl SearchResult {
    /// Re-scores every witness with the full residual computation.
    pub fn verify(&self, basis: &ClassBasis, eps_int: f64) -> bool {
        self.witnesses.iter().all(|w| {
            design_strength(basis, &Design::equal(w.clone()), eps_int)
                .map(|r| r.k == self.best_k)
                .unwrap_or(false)
        })
    }
}

/// Running maximum with the `cap` lexicographically smallest maximizers.
#[derive(Debug, Clone, Default)]
pub(crate) struct Tracker {
    pub best_k: usize,
    pub witnesses: BTreeSet<Vec<usize>>,
    pub witness_count: u64,
    pub examined: u64,
    cap: usize,
}

impl Tracker {
    pub fn new(cap: usize) -> Tracker {
        Tracker { cap, ..Tracker::default() }
    }

    /// `fresh` is false when the subset was already offered (local searches revisit).
    pub fn offer(&mut self, k: usize, members: &[usize], fresh: bool) {
        self.examined += 1;
        if k < self.best_k {
            return;
        }
        if k > self.best_k {
            self.best_k = k;
            self.witnesses.clear();
            self.witness_count = 0;
        }
        if fresh {
            self.witness_count += 1;
        }
        if self.witnesses.len() < self.cap || self.witnesses.last().is_some_and(|l| members < l.as_slice()) {
            self.witnesses.insert(members.to_vec());
            if self.witnesses.len() > self.cap {
                self.witnesses.pop_last();
            }
        }
    }

    pub fn merge(mut self, other: Tracker) -> Tracker {
        self.examined += other.examined;
        if other.best_k > self.best_k {
            let examined = self.examined;
            self = other;
            self.examined = examined;
            return self;
        }
        if other.best_k == self.best_k {
            self.witness_count += other.witness_count;
            self.witnesses.extend(other.witnesses);
            while self.witnesses.len() > self.cap {
                self.witnesses.pop_last();
            }
        }
        self
    }

    pub fn into_result(self, method: &str, size: usize, n: usize) -> SearchResult {
        SearchResult {
            method: method.to_string(),
            size,
            best_k: self.best_k,
            witnesses: self
                .witnesses
                .into_iter()
                .map(|w| VertexSubset::new(n, w).expect("witness members are valid"))
                .collect(),
            witness_count: self.witness_count,
            subsets_examined: self.examined,
            seed: None,
            termination: None,
            final_subset: None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BruteForceOptions {
    pub budget: u64,
    pub witness_cap: usize,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions { budget: DEFAULT_BUDGET, witness_cap: DEFAULT_WITNESS_CAP }
    }
}

/// Exact maximum strength over all `C(n, size)` equal-weight subsets.
///
/// Colex ranks are split into fixed chunks independent of the thread count,
/// so the result is the same on any number of workers.
pub fn brute_force(
    basis: &ClassBasis,
    size: usize,
    eps_int: f64,
    opts: BruteForceOptions,
) -> Result<SearchResult> {
    let scorer = EqualWeightScorer::new(basis, eps_int);
    let n = scorer.n();
    if size == 0 || size > n {
        return Err(Error::Parameter(format!("subset size must be in 1..={n}, got {size}")));
    }
    let count = binomial(n as u64, size as u64);
    if count > opts.budget as u128 {
        return Err(Error::BudgetExceeded { n, k: size, count, budget: opts.budget });
    }
    let total = count as u64;
    let chunk = total.div_ceil(1024).max(1);
    let tracker = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            let len = chunk.min(total - start);
            let mut t = Tracker::new(opts.witness_cap);
            let mut combo = Combinations::from_rank(n, size, start);
            for _ in 0..len {
                let m = combo.current();
                t.offer(scorer.strength(m), m, true);
                combo.advance();
            }
            t
        })
        .reduce(|| Tracker::new(opts.witness_cap), Tracker::merge);
    Ok(tracker.into_result("brute", size, n))
}

/// Runs a seeded search for each seed in parallel and merges deterministically.
/// The reported seed is the smallest one that reached the best strength.
pub fn multi_seed<F>(seeds: &[u64], witness_cap: usize, run: F) -> Result<SearchResult>
where
    F: Fn(u64) -> Result<SearchResult> + Sync,
{
    let results = seeds.par_iter().map(|&s| run(s)).collect::<Result<Vec<_>>>()?;
    let first = results
        .first()
        .ok_or_else(|| Error::Parameter("at least one seed is required".into()))?;
    let (method, size) = (first.method.clone(), first.size);
    let best_k = results.iter().map(|r| r.best_k).max().unwrap();
    let mut witnesses = BTreeSet::new();
    let mut seed = None;
    for r in &results {
        if r.best_k == best_k {
            seed = Some(seed.map_or(r.seed.unwrap_or(0), |s: u64| s.min(r.seed.unwrap_or(0))));
            witnesses.extend(r.witnesses.iter().cloned());
        }
    }
    let witness_count = witnesses.len() as u64;
    Ok(SearchResult {
        method,
        size,
        best_k,
        witnesses: witnesses.into_iter().take(witness_cap).collect(),
        witness_count,
        subsets_examined: results.iter().map(|r| r.subsets_examined).sum(),
        seed,
        termination: None,
        final_subset: None,
    })
}
