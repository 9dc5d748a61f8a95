//! Quadrature residuals and design strength.
//!
//! A design `(W, a)` integrates an eigenfunction `phi` when
//! `sum_w a_w phi(w)` equals the vertex average of `phi`, i.e. when `phi` is
//! orthogonal to `mu = sum_w a_w delta_w - 1/n`. Strength is counted per
//! frequency class through the norm of the projection of `mu` onto the class,
//! which does not depend on the basis the eigensolver picked inside the class.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSubset;
use crate::spectral::ClassBasis;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Design {
    subset: VertexSubset,
    weights: Vec<f64>,
    equal_weights: bool,
}

impl Design {
    pub fn equal(subset: VertexSubset) -> Design {
        let w = 1.0 / subset.len() as f64;
        Design { weights: vec![w; subset.len()], subset, equal_weights: true }
    }

    /// Weights are matched to the subset's members in increasing vertex order
    /// and must sum to 1 within `1e-12`.
    pub fn weighted(subset: VertexSubset, weights: Vec<f64>) -> Result<Design> {
        if weights.len() != subset.len() {
            return Err(Error::DimensionMismatch { expected: subset.len(), got: weights.len() });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::WeightNormalization(sum));
        }
        Ok(Design { subset, weights, equal_weights: false })
    }

    pub fn subset(&self) -> &VertexSubset {
        &self.subset
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_equal_weights(&self) -> bool {
        self.equal_weights
    }

    pub fn all_weights_positive(&self) -> bool {
        self.weights.iter().all(|&a| a > 0.0)
    }

    pub fn sum_sq_weights(&self) -> f64 {
        self.weights.iter().map(|a| a * a).sum()
    }

    /// `sum_w a_w delta_w` as a vector over all `n` vertices.
    pub fn indicator(&self, n: usize) -> Vec<f64> {
        let mut f = vec![0.0; n];
        for (&v, &a) in self.subset.members().iter().zip(&self.weights) {
            f[v] += a;
        }
        f
    }

    /// `mu = sum_w a_w delta_w - 1/n`.
    pub fn signed_measure(&self, n: usize) -> DVector<f64> {
        let inv = 1.0 / n as f64;
        DVector::from_iterator(n, self.indicator(n).into_iter().map(|x| x - inv))
    }
}

/// `||P_j mu||` for every frequency class, in class order.
pub fn quadrature_residuals(basis: &ClassBasis, d: &Design) -> Result<Vec<f64>> {
    let n = basis.basis(0).nrows();
    if let Some(&last) = d.subset().members().last() {
        if last >= n {
            return Err(Error::DimensionMismatch { expected: n, got: last + 1 });
        }
    }
    Ok(basis.projection_norms(&d.signed_measure(n)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignReport {
    /// Strength under the best admissible ordering.
    #[serde(rename = "K")]
    pub k: usize,
    /// Eigenfunctions in fully integrated classes only.
    #[serde(rename = "K_min")]
    pub k_min: usize,
    /// Frequency of the first failing class: every non-integrated direction
    /// has frequency at most this. 0 when every class integrates.
    pub lambda_star: f64,
    pub class_residuals: Vec<f64>,
    pub class_dimensions: Vec<usize>,
    pub class_frequencies: Vec<f64>,
    pub failing_class: Option<usize>,
    pub all_weights_positive: bool,
    /// `||mu||`; residuals are compared against `eps_int` times this.
    pub measure_norm: f64,
}

/// Scans classes in frequency order. Each class whose residual is at most
/// `eps_int * ||mu||` counts in full; the first class above that counts
/// `dim - 1`, since an admissible ordering may put its failing direction last.
pub fn design_strength(basis: &ClassBasis, d: &Design, eps_int: f64) -> Result<DesignReport> {
    let residuals = quadrature_residuals(basis, d)?;
    let n = basis.basis(0).nrows();
    let measure_norm = d.signed_measure(n).norm();
    let tol = eps_int * measure_norm;
    let classes = basis.classes();
    let mut k_min = 0;
    let mut failing_class = None;
    for (j, (class, &r)) in classes.iter().zip(&residuals).enumerate() {
        if r > tol {
            failing_class = Some(j);
            break;
        }
        k_min += class.dimension;
    }
    let (k, lambda_star) = match failing_class {
        None => (n, 0.0),
        Some(j) => (k_min + classes[j].dimension - 1, classes[j].frequency),
    };
    Ok(DesignReport {
        k,
        k_min,
        lambda_star,
        class_residuals: residuals,
        class_dimensions: classes.iter().map(|c| c.dimension).collect(),
        class_frequencies: classes.iter().map(|c| c.frequency).collect(),
        failing_class,
        all_weights_positive: d.all_weights_positive(),
        measure_norm,
    })
}

/// The growth bound's `lambda`. Within the best ordering this is the smallest
/// frequency among the `K` integrated eigenfunctions, and the part of `mu` left
/// unintegrated lives entirely at frequencies `<= lambda`.
pub fn threshold(report: &DesignReport) -> f64 {
    report.lambda_star
}

/// Strength of equal-weight subsets, specialised for enumeration.
///
/// Class bases are stored row-major so that the coefficient vector of a
/// subset is a sum of `|W|` contiguous rows. The constant class is skipped:
/// equal weights always integrate it.
#[derive(Debug, Clone)]
pub struct EqualWeightScorer {
    n: usize,
    eps_int: f64,
    /// Per non-constant class: `(dim, rows n*dim, column means dim)`.
    classes: Vec<(usize, Vec<f64>, Vec<f64>)>,
    max_dim: usize,
}

impl EqualWeightScorer {
    pub fn new(basis: &ClassBasis, eps_int: f64) -> EqualWeightScorer {
        let n = basis.basis(0).nrows();
        let classes = (1..basis.len())
            .map(|j| {
                let b = basis.basis(j);
                let dim = b.ncols();
                let mut rows = Vec::with_capacity(n * dim);
                for v in 0..n {
                    rows.extend(b.row(v).iter());
                }
                let means = (0..dim).map(|c| b.column(c).sum() / n as f64).collect();
                (dim, rows, means)
            })
            .collect::<Vec<_>>();
        let max_dim = classes.iter().map(|c| c.0).max().unwrap_or(0);
        EqualWeightScorer { n, eps_int, classes, max_dim }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Strength `K` of the equal-weight design on `members` (distinct, in range).
    pub fn strength(&self, members: &[usize]) -> usize {
        let mut scratch = [0.0f64; 64];
        if self.max_dim <= scratch.len() {
            self.strength_in(members, &mut scratch)
        } else {
            self.strength_in(members, &mut vec![0.0; self.max_dim])
        }
    }

    fn strength_in(&self, members: &[usize], scratch: &mut [f64]) -> usize {
        let size = members.len() as f64;
        let measure_norm = (1.0 / size - 1.0 / self.n as f64).max(0.0).sqrt();
        let tol2 = (self.eps_int * measure_norm).powi(2);
        let mut k = 1;
        for (dim, rows, means) in &self.classes {
            let dim = *dim;
            let c = &mut scratch[..dim];
            c.fill(0.0);
            for &w in members {
                for (x, r) in c.iter_mut().zip(&rows[w * dim..(w + 1) * dim]) {
                    *x += r;
                }
            }
            let r2: f64 = c.iter().zip(means).map(|(x, m)| (x / size - m).powi(2)).sum();
            if r2 > tol2 {
                return k + dim - 1;
            }
            k += dim;
        }
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, generalized_petersen, Graph};
    use crate::spectral::Spectrum;

    fn basis(g: &Graph) -> ClassBasis {
        ClassBasis::new(&Spectrum::of(g, 1e-10).unwrap(), 1e-8)
    }

    fn subset(n: usize, m: &[usize]) -> VertexSubset {
        VertexSubset::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn uniform_measure_has_no_residual() {
        let g = generalized_petersen(5, 2).unwrap();
        let b = basis(&g);
        let d = Design::equal(VertexSubset::full(10));
        let r = quadrature_residuals(&b, &d).unwrap();
        assert!(r.iter().all(|&x| x == 0.0));
        let rep = design_strength(&b, &d, 1e-9).unwrap();
        assert_eq!(rep.k, 10);
        assert_eq!(rep.failing_class, None);
        assert_eq!(threshold(&rep), 0.0);
    }

    #[test]
    fn complete_graph_single_vertex() {
        let g = complete(4).unwrap();
        let b = basis(&g);
        let d = Design::equal(subset(4, &[2]));
        let r = quadrature_residuals(&b, &d).unwrap();
        assert!(r[0] < 1e-15);
        // ||(3/4, -1/4, -1/4, -1/4)|| = sqrt(12)/4.
        assert!((r[1] - 12f64.sqrt() / 4.0).abs() < 1e-14);
        let rep = design_strength(&b, &d, 1e-9).unwrap();
        assert_eq!(rep.k, 3);
        assert_eq!(rep.k_min, 1);
        assert!((threshold(&rep) - 1.0 / 3.0).abs() < 1e-14);
        for n in 2..=7 {
            let g = complete(n).unwrap();
            let rep = design_strength(&basis(&g), &Design::equal(subset(n, &[0])), 1e-9).unwrap();
            assert_eq!(rep.k, n - 1);
        }
    }

    /// Quadrature check over the analytic basis of C_6:
    /// 1, (-1)^v, cos/sin(pi v/3), cos/sin(2 pi v/3).
    fn c6_oracle(w: &[usize]) -> usize {
        use std::f64::consts::PI;
        let fs: Vec<Box<dyn Fn(usize) -> f64>> = vec![
            Box::new(|_| 1.0),
            Box::new(|v| if v % 2 == 0 { 1.0 } else { -1.0 }),
            Box::new(|v| (PI * v as f64 / 3.0).cos()),
            Box::new(|v| (PI * v as f64 / 3.0).sin()),
            Box::new(|v| (2.0 * PI * v as f64 / 3.0).cos()),
            Box::new(|v| (2.0 * PI * v as f64 / 3.0).sin()),
        ];
        let ok: Vec<bool> = fs
            .iter()
            .map(|f| {
                let avg = (0..6).map(f).sum::<f64>() / 6.0;
                let quad = w.iter().map(|&v| f(v)).sum::<f64>() / w.len() as f64;
                (avg - quad).abs() < 1e-12
            })
            .collect();
        // Classes: {1}, {(-1)^v}, then the frequency-1/2 class of dimension 4.
        if !ok[1] {
            return 1;
        }
        let failing = ok[2..].iter().filter(|&&b| !b).count();
        if failing == 0 {
            6
        } else {
            5
        }
    }

    #[test]
    fn cycle_against_analytic_basis() {
        let g = cycle(6).unwrap();
        let b = basis(&g);
        for mask in 1u32..(1 << 6) {
            let w: Vec<usize> = (0..6).filter(|&v| mask >> v & 1 == 1).collect();
            let rep = design_strength(&b, &Design::equal(subset(6, &w)), 1e-9).unwrap();
            assert_eq!(rep.k, c6_oracle(&w), "{w:?}");
        }
        let rep = design_strength(&b, &Design::equal(subset(6, &[0, 3])), 1e-9).unwrap();
        assert_eq!(rep.k, 5);
    }

    #[test]
    fn scorer_matches_full_report() {
        let g = generalized_petersen(12, 4).unwrap();
        let b = basis(&g);
        let scorer = EqualWeightScorer::new(&b, 1e-9);
        for start in 0..16 {
            let w: Vec<usize> = (start..start + 8).map(|v| (v * 5) % 24).collect();
            let s = subset(24, &w);
            let rep = design_strength(&b, &Design::equal(s.clone()), 1e-9).unwrap();
            assert_eq!(scorer.strength(s.members()), rep.k);
        }
        assert_eq!(scorer.strength(&(0..24).collect::<Vec<_>>()), 24);
    }

    #[test]
    fn weighted_design_validation() {
        let s = subset(4, &[0, 1]);
        assert!(matches!(Design::weighted(s.clone(), vec![0.5]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(Design::weighted(s.clone(), vec![0.5, 0.6]), Err(Error::WeightNormalization(_))));
        let d = Design::weighted(s, vec![1.5, -0.5]).unwrap();
        assert!(!d.all_weights_positive());
        assert_eq!(d.sum_sq_weights(), 2.5);
    }

    #[test]
    fn parseval() {
        let g = generalized_petersen(5, 2).unwrap();
        let b = basis(&g);
        let d = Design::weighted(subset(10, &[0, 3, 7]), vec![0.2, 0.5, 0.3]).unwrap();
        let r = quadrature_residuals(&b, &d).unwrap();
        let total: f64 = r.iter().map(|x| x * x).sum();
        assert!((total - d.signed_measure(10).norm_squared()).abs() < 1e-12);
    }
}
