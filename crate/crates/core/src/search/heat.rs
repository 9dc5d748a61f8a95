//! Diffusion of a design under the walk, and the collision objective
//! `Q_t = ||P^t (sum a_w delta_w) - 1/n||^2` with `P = AD^-1`.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use super::{SearchResult, Tracker, DEFAULT_WITNESS_CAP};
use crate::design::{Design, EqualWeightScorer};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::spectral::{walk_step, Spectrum};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatState {
    pub values: Vec<f64>,
    pub steps: usize,
}

impl HeatState {
    pub fn mass(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Vertices carrying non-zero mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.values[v] != 0.0).collect()
    }
}

/// `P^steps` applied to the weighted indicator, by repeated neighbour sums.
pub fn diffuse(g: &Graph, d: &Design, steps: usize) -> HeatState {
    let mut values = d.indicator(g.n());
    for _ in 0..steps {
        values = walk_step(g, &values);
    }
    HeatState { values, steps }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatObjective {
    /// `||x - 1/n||^2`.
    pub q: f64,
    /// `||x||^2 - 1/n`; equal to `q` whenever `x` has total mass 1.
    pub q_shifted: f64,
}

pub fn heat_objective(g: &Graph, d: &Design, steps: usize) -> HeatObjective {
    let x = diffuse(g, d, steps).values;
    let inv = 1.0 / g.n() as f64;
    HeatObjective {
        q: x.iter().map(|v| (v - inv).powi(2)).sum(),
        q_shifted: x.iter().map(|v| v * v).sum::<f64>() - inv,
    }
}

/// `sum over non-leading i of |lambda_i + 1|^(2t) <sum a_w delta_w, phi_i>^2`.
/// Valid for orthonormal eigenvectors, i.e. regular graphs.
pub fn heat_objective_spectral(s: &Spectrum, d: &Design, steps: usize) -> f64 {
    let lead = s.ordering()[0];
    let f = d.indicator(s.n());
    (0..s.n())
        .filter(|&i| i != lead)
        .map(|i| {
            let c: f64 = s.eigenvectors().column(i).iter().zip(&f).map(|(p, x)| p * x).sum();
            s.frequency()[i].powi(2 * steps as i32) * c * c
        })
        .sum()
}

/// `ceil(diameter / 2)`.
pub fn default_heat_steps(g: &Graph) -> usize {
    g.diameter().div_ceil(2)
}

/// Steepest descent on `Q_steps` over equal-weight k-subsets by single swaps.
///
/// With `G[u][v] = <P^t delta_u, P^t delta_v>`, an equal-weight subset has
/// `Q = sum_{u,v in W} G[u][v] / |W|^2 - 1/n`, so each swap is scored from
/// row sums of `G` without re-diffusing.
pub fn heat_local_search(
    g: &Graph,
    scorer: &EqualWeightScorer,
    size: usize,
    steps: usize,
    seed: u64,
    max_iters: usize,
) -> Result<SearchResult> {
    let n = g.n();
    if size == 0 || size > n {
        return Err(Error::Parameter(format!("subset size must be in 1..={n}, got {size}")));
    }
    let kernel: Vec<Vec<f64>> = (0..n)
        .map(|v| {
            let mut x = vec![0.0; n];
            x[v] = 1.0;
            for _ in 0..steps {
                x = walk_step(g, &x);
            }
            x
        })
        .collect();
    let gram: Vec<Vec<f64>> = (0..n)
        .map(|u| (0..n).map(|v| kernel[u].iter().zip(&kernel[v]).map(|(a, b)| a * b).sum()).collect())
        .collect();

    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut members: Vec<usize> = sample(&mut rng, n, size).into_vec();
    members.sort_unstable();
    let mut inside = vec![false; n];
    for &v in &members {
        inside[v] = true;
    }
    // row[v] = sum_{w in W} G[v][w]
    let mut row: Vec<f64> = (0..n).map(|v| members.iter().map(|&w| gram[v][w]).sum()).collect();
    let mut total: f64 = members.iter().map(|&w| row[w]).sum();

    let mut tracker = Tracker::new(DEFAULT_WITNESS_CAP);
    tracker.offer(scorer.strength(&members), &members, true);

    let mut termination = "max-iters";
    for _ in 0..max_iters {
        let mut best: Option<(f64, usize, usize)> = None;
        for &m in &members {
            for c in (0..n).filter(|&c| !inside[c]) {
                let next = total - 2.0 * row[m] + gram[m][m] + 2.0 * (row[c] - gram[c][m]) + gram[c][c];
                if best.is_none_or(|(b, _, _)| next < b) {
                    best = Some((next, m, c));
                }
            }
        }
        let Some((next, m, c)) = best.filter(|&(next, _, _)| next < total - 1e-14 * total.abs().max(1e-300)) else {
            termination = "local-optimum";
            break;
        };
        inside[m] = false;
        inside[c] = true;
        for (v, r) in row.iter_mut().enumerate() {
            *r += gram[v][c] - gram[v][m];
        }
        total = next;
        let pos = members.iter().position(|&y| y == m).unwrap();
        members[pos] = c;
        members.sort_unstable();
        tracker.offer(scorer.strength(&members), &members, true);
    }

    let mut result = tracker.into_result("heat", size, n);
    result.seed = Some(seed);
    result.termination = Some(termination.to_string());
    result.final_subset = Some(VertexSubset::new(n, members)?);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, generalized_petersen};
    use crate::spectral::ClassBasis;

    fn subset(n: usize, m: &[usize]) -> VertexSubset {
        VertexSubset::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge_hand_values() {
        let g = complete(2).unwrap();
        let d = Design::equal(subset(2, &[0]));
        assert_eq!(diffuse(&g, &d, 0).values, vec![1.0, 0.0]);
        assert_eq!(diffuse(&g, &d, 1).values, vec![0.0, 1.0]);
        let q = heat_objective(&g, &d, 1);
        assert_eq!(q.q, 0.5);
        assert_eq!(q.q_shifted, 0.5);
    }

    #[test]
    fn uniform_design_has_zero_objective() {
        let g = generalized_petersen(5, 2).unwrap();
        let d = Design::equal(VertexSubset::full(10));
        for t in 0..4 {
            assert!(heat_objective(&g, &d, t).q < 1e-30);
        }
    }

    #[test]
    fn c4_pairs_by_hand() {
        // P^2 on C_4 maps delta_0 to (1/2, 0, 1/2, 0). Adjacent pairs spread to the
        // uniform vector after two steps; antipodal pairs stay on one parity class.
        let g = cycle(4).unwrap();
        let adjacent = heat_objective(&g, &Design::equal(subset(4, &[0, 1])), 2);
        let antipodal = heat_objective(&g, &Design::equal(subset(4, &[0, 2])), 2);
        assert!(adjacent.q.abs() < 1e-15);
        assert!((antipodal.q - 0.25).abs() < 1e-15);
    }

    #[test]
    fn spectral_form_matches() {
        let g = generalized_petersen(12, 4).unwrap();
        let s = Spectrum::of(&g, 1e-10).unwrap();
        let d = Design::weighted(subset(24, &[1, 5, 17]), vec![0.5, 0.25, 0.25]).unwrap();
        for t in 0..5 {
            let direct = heat_objective(&g, &d, t).q;
            assert!((direct - heat_objective_spectral(&s, &d, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn heat_search_on_c4() {
        let g = cycle(4).unwrap();
        let scorer = EqualWeightScorer::new(&ClassBasis::new(&Spectrum::of(&g, 1e-10).unwrap(), 1e-8), 1e-9);
        for seed in 0..10 {
            let r = heat_local_search(&g, &scorer, 2, 2, seed, 50).unwrap();
            assert_eq!(r.best_k, 3);
        }
        let full = heat_local_search(&g, &scorer, 4, 2, 0, 50).unwrap();
        assert_eq!((full.best_k, full.subsets_examined), (4, 1));
    }

    #[test]
    fn default_steps() {
        assert_eq!(default_heat_steps(&cycle(6).unwrap()), 2);
        assert_eq!(default_heat_steps(&generalized_petersen(5, 2).unwrap()), 1);
    }
}
