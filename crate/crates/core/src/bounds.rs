//! Neighbourhood growth around a design and the lower bounds it must obey.
//!
//! If a positive-weight design integrates every eigenfunction of frequency
//! above `lambda`, then after `k` walk steps its measure has spread over at
//! least `1 / (1/n + lambda^(2k) sum a_w^2)` vertices. The familiar forms
//! `1/2 min{lambda^-2k, n}` and, for equal weights, `1/2 min{|W| lambda^-2k, n}`
//! follow from it.

use serde::{Deserialize, Serialize};

use crate::design::{design_strength, Design};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::spectral::ClassBasis;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthProfile {
    /// `size_at_radius[k] = #{x : d(x, W) <= k}` for `k = 0..=diameter`.
    pub size_at_radius: Vec<usize>,
}

impl GrowthProfile {
    pub fn at(&self, k: usize) -> usize {
        let last = *self.size_at_radius.last().unwrap();
        self.size_at_radius.get(k).copied().unwrap_or(last)
    }

    /// Smallest radius whose ball is everything.
    pub fn eccentricity(&self) -> usize {
        let n = *self.size_at_radius.last().unwrap();
        self.size_at_radius.iter().position(|&s| s == n).unwrap()
    }
}

pub fn growth_profile(g: &Graph, w: &VertexSubset) -> GrowthProfile {
    let dist = g.distances_from(w);
    let diameter = g.diameter();
    let mut counts = vec![0usize; diameter + 1];
    for d in dist {
        counts[d] += 1;
    }
    let mut acc = 0;
    let size_at_radius = counts
        .into_iter()
        .map(|c| {
            acc += c;
            acc
        })
        .collect();
    GrowthProfile { size_at_radius }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremBounds {
    /// `1/2 min{lambda^-2k, n}`.
    pub general: f64,
    /// `1/2 min{|W| lambda^-2k, n}`; only meaningful for equal weights.
    pub equal_weight: Option<f64>,
    /// `1 / (1/n + lambda^2k sum a_w^2)`.
    pub sharp: f64,
    /// `lambda <= 0`: no non-constant eigenfunction survives one walk step,
    /// so every bound beyond radius 0 is the trivial `n/2` or `n`.
    pub vacuous: bool,
}

pub fn theorem_lower_bound(
    lambda: f64,
    k: usize,
    n: usize,
    w_size: usize,
    equal: bool,
    sum_sq_weights: f64,
) -> TheoremBounds {
    let nf = n as f64;
    let decay = lambda.max(0.0).powi(2 * k as i32);
    TheoremBounds {
        general: 0.5 * (1.0 / decay).min(nf),
        equal_weight: equal.then(|| 0.5 * (w_size as f64 / decay).min(nf)),
        sharp: 1.0 / (1.0 / nf + decay * sum_sq_weights),
        vacuous: lambda <= 0.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub radius: usize,
    pub observed: usize,
    pub general: f64,
    pub equal_weight: Option<f64>,
    pub sharp: f64,
    pub pass_general: bool,
    pub pass_equal_weight: Option<bool>,
    pub pass_sharp: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub lambda: f64,
    /// `verified` when taken from the design's strength report.
    pub lambda_source: String,
    pub vacuous: bool,
    pub rows: Vec<BoundRow>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Certify on a non-regular graph, where the eigenvectors of `AD^-1` are
    /// not orthogonal and the growth bound's hypothesis fails.
    pub allow_non_regular: bool,
    pub lambda_override: Option<f64>,
}

/// Relative slack for comparing an integer ball size with a real bound.
const SLACK: f64 = 1e-12;

fn holds(observed: usize, bound: f64) -> bool {
    observed as f64 >= bound * (1.0 - SLACK)
}

/// Evaluates the three bounds at every radius `0..=ecc(W)` against the actual
/// ball sizes.
pub fn check_theorem(
    g: &Graph,
    basis: &ClassBasis,
    d: &Design,
    eps_int: f64,
    opts: CheckOptions,
) -> Result<BoundCertificate> {
    if !d.all_weights_positive() {
        return Err(Error::NonPositiveWeights);
    }
    if !opts.allow_non_regular && !g.is_regular() {
        let deg = g.degrees();
        return Err(Error::NonRegular {
            min: *deg.iter().min().unwrap(),
            max: *deg.iter().max().unwrap(),
        });
    }
    let (lambda, lambda_source) = match opts.lambda_override {
        Some(l) => (l, "override"),
        None => (design_strength(basis, d, eps_int)?.lambda_star, "verified"),
    };
    let profile = growth_profile(g, d.subset());
    let ecc = profile.eccentricity();
    let sum_sq = d.sum_sq_weights();
    let rows: Vec<BoundRow> = (0..=ecc)
        .map(|k| {
            let b = theorem_lower_bound(lambda, k, g.n(), d.subset().len(), d.is_equal_weights(), sum_sq);
            let observed = profile.at(k);
            BoundRow {
                radius: k,
                observed,
                general: b.general,
                equal_weight: b.equal_weight,
                sharp: b.sharp,
                pass_general: holds(observed, b.general),
                pass_equal_weight: b.equal_weight.map(|e| holds(observed, e)),
                pass_sharp: holds(observed, b.sharp),
            }
        })
        .collect();
    let passed = rows
        .iter()
        .all(|r| r.pass_general && r.pass_sharp && r.pass_equal_weight.unwrap_or(true));
    Ok(BoundCertificate {
        lambda,
        lambda_source: lambda_source.to_string(),
        vacuous: lambda <= 0.0,
        rows,
        passed,
    })
}
