//! Weighted designs from nonsingular minors of the eigenvector matrix.
//!
//! For vertices `v_1..v_k` and eigenfunctions `phi_1..phi_k` whose matrix
//! `A = (phi_i(v_j))` is invertible, the weights solving
//! `sum_j a_j phi_i(v_j) = mean(phi_i)` integrate those `k` eigenfunctions.
//! The first `k` eigenvector rows are orthonormal, so some `k x k` column
//! minor of them is always invertible; column-pivoted QR finds one.

use nalgebra::{DMatrix, DVector, RowDVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSubset;
use crate::spectral::Spectrum;

pub const DEFAULT_EPS_SING: f64 = 1e-10;

/// Below this the right-hand side counts as zero.
const ZERO_RHS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedSolution {
    pub subset: VertexSubset,
    /// Targets as positions in the frequency ordering (0 = constant).
    pub eigen_positions: Vec<usize>,
    pub weights: Vec<f64>,
    /// Max quadrature error over the targets.
    pub residual: f64,
    /// `sigma_min / sigma_max` of the minor.
    pub rcond: f64,
    pub all_weights_positive: bool,
    /// The targets all have mean zero, so the system is homogeneous.
    pub homogeneous: bool,
}

fn minor(s: &Spectrum, vertices: &[usize], positions: &[usize]) -> DMatrix<f64> {
    let ord = s.ordering();
    let v = s.eigenvectors();
    DMatrix::from_fn(positions.len(), vertices.len(), |i, j| v[(vertices[j], ord[positions[i]])])
}

fn means(s: &Spectrum, positions: &[usize]) -> DVector<f64> {
    let ord = s.ordering();
    let n = s.n() as f64;
    DVector::from_iterator(
        positions.len(),
        positions.iter().map(|&p| s.eigenvectors().column(ord[p]).sum() / n),
    )
}

fn rcond(a: &DMatrix<f64>) -> f64 {
    let sv = a.singular_values();
    let max = sv.max();
    if max == 0.0 {
        0.0
    } else {
        sv.min() / max
    }
}

/// Solves for weights on `w` integrating the eigenfunctions at the given
/// frequency positions.
///
/// A homogeneous system (all target means zero) on an invertible minor only
/// has the zero solution, which is returned as such. On a singular minor the
/// null vector is returned, scaled to sum 1 when possible; this is how an
/// equal-weight design reappears from its own minor.
pub fn solve_weights(
    s: &Spectrum,
    w: &VertexSubset,
    positions: &[usize],
    eps_sing: f64,
) -> Result<WeightedSolution> {
    if positions.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: w.len(), got: positions.len() });
    }
    if let Some(&p) = positions.iter().find(|&&p| p >= s.n()) {
        return Err(Error::Parameter(format!("eigen position {p} out of range for n = {}", s.n())));
    }
    if let Some(&v) = w.members().last().filter(|&&v| v >= s.n()) {
        return Err(Error::VertexOutOfRange { index: v, n: s.n() });
    }
    let a = minor(s, w.members(), positions);
    let b = means(s, positions);
    let rc = rcond(&a);
    let homogeneous = b.amax() <= ZERO_RHS;
    let weights: DVector<f64> = if rc >= eps_sing {
        a.clone().lu().solve(&b).ok_or(Error::SingularMinor { rcond: rc })?
    } else if homogeneous {
        let svd = a.clone().svd(false, true);
        let v_t = svd.v_t.expect("requested right singular vectors");
        let (imin, _) = svd.singular_values.argmin();
        let null: RowDVector<f64> = v_t.row(imin).into_owned();
        let sum = null.sum();
        let scaled = if sum.abs() > ZERO_RHS { null / sum } else { null };
        scaled.transpose()
    } else {
        return Err(Error::SingularMinor { rcond: rc });
    };
    let residual = (&a * &weights - &b).amax();
    Ok(WeightedSolution {
        subset: w.clone(),
        eigen_positions: positions.to_vec(),
        all_weights_positive: weights.iter().all(|&x| x > 0.0),
        weights: weights.iter().copied().collect(),
        residual,
        rcond: rc,
        homogeneous,
    })
}

/// `k` vertices with weights integrating the first `k` eigenfunctions in
/// frequency order. The vertices are the first `k` pivots of a column-pivoted
/// QR of those eigenvector rows.
pub fn find_minor_design(s: &Spectrum, k: usize, eps_sing: f64) -> Result<WeightedSolution> {
    let n = s.n();
    if k == 0 || k > n {
        return Err(Error::Parameter(format!("k must be in 1..={n}, got {k}")));
    }
    let positions: Vec<usize> = (0..k).collect();
    let all: Vec<usize> = (0..n).collect();
    let rows = minor(s, &all, &positions);
    let qr = rows.col_piv_qr();
    let mut labels = RowDVector::from_iterator(n, (0..n).map(|v| v as f64));
    qr.p().permute_columns(&mut labels);
    let chosen = VertexSubset::new(n, labels.iter().take(k).map(|&x| x as usize))?;
    match solve_weights(s, &chosen, &positions, eps_sing) {
        Ok(sol) => Ok(sol),
        Err(Error::SingularMinor { .. }) => Err(Error::NoMinor(k)),
        Err(e) => Err(e),
    }
}

/// `|det V|` of the full eigenvector matrix; 1 for an orthonormal basis.
pub fn eigenvector_determinant(s: &Spectrum) -> f64 {
    s.eigenvectors().clone().lu().determinant().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, generalized_petersen};

    #[test]
    fn full_set_all_targets() {
        let g = generalized_petersen(5, 2).unwrap();
        let s = Spectrum::of(&g, 1e-10).unwrap();
        let all: Vec<usize> = (0..10).collect();
        let sol = solve_weights(&s, &VertexSubset::full(10), &all, DEFAULT_EPS_SING).unwrap();
        assert!(sol.weights.iter().all(|w| (w - 0.1).abs() < 1e-12));
        assert!((eigenvector_determinant(&s) - 1.0).abs() < 1e-10);
        assert!((sol.rcond - 1.0).abs() < 1e-10);
    }

    #[test]
    fn triangle_two_vertices_by_hand() {
        // K_3 eigenbasis: 1/sqrt3 (1,1,1), then any orthonormal basis of the
        // mean-zero plane. Two vertices, targets {constant, one mean-zero phi}:
        // a_0 + a_1 = 1 and a_0 phi(0) + a_1 phi(1) = 0, so
        // a_0 = phi(1) / (phi(1) - phi(0)).
        let g = complete(3).unwrap();
        let s = Spectrum::of(&g, 1e-10).unwrap();
        let w = VertexSubset::new(3, [0, 1]).unwrap();
        for p in [1, 2] {
            let phi = s.eigenvectors().column(s.ordering()[p]);
            if (phi[0] - phi[1]).abs() < 1e-6 {
                assert!(solve_weights(&s, &w, &[0, p], DEFAULT_EPS_SING).is_err());
                continue;
            }
            let sol = solve_weights(&s, &w, &[0, p], DEFAULT_EPS_SING).unwrap();
            let a0 = phi[1] / (phi[1] - phi[0]);
            assert!((sol.weights[0] - a0).abs() < 1e-10);
            assert!((sol.weights.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            assert!(sol.residual < 1e-12);
        }
    }

    #[test]
    fn homogeneous_targets() {
        // An equal-weight design integrating eigenfunctions 1..=k (all mean zero)
        // makes the k x k minor singular with the constant vector in its kernel.
        let g = crate::catalog::catalog_get("nauru").unwrap();
        let s = Spectrum::of(&g, 1e-10).unwrap();
        let basis = crate::spectral::ClassBasis::new(&s, 1e-8);
        let scorer = crate::design::EqualWeightScorer::new(&basis, 1e-9);
        let w = crate::search::Combinations::new(24, 6)
            .find(|c| scorer.strength(c) >= 19)
            .unwrap();
        let w = VertexSubset::new(24, w).unwrap();
        let sol = solve_weights(&s, &w, &[1, 2, 3, 4, 5, 6], DEFAULT_EPS_SING).unwrap();
        assert!(sol.homogeneous);
        assert!(sol.rcond < DEFAULT_EPS_SING);
        assert!(sol.weights.iter().all(|x| (x - 1.0 / 6.0).abs() < 1e-9), "{:?}", sol.weights);
        assert!(sol.residual < 1e-12);

        // Invertible homogeneous minor: only the zero solution.
        let c = Spectrum::of(&cycle(5).unwrap(), 1e-10).unwrap();
        let sol = solve_weights(&c, &VertexSubset::new(5, [0, 1]).unwrap(), &[1, 2], DEFAULT_EPS_SING).unwrap();
        assert!(sol.homogeneous);
        assert!(sol.weights.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn minor_design_every_k() {
        let g = generalized_petersen(5, 2).unwrap();
        let s = Spectrum::of(&g, 1e-10).unwrap();
        for k in 1..=10 {
            let sol = find_minor_design(&s, k, DEFAULT_EPS_SING).unwrap();
            assert_eq!(sol.subset.len(), k);
            assert!(sol.residual <= 1e-9, "k={k} residual {}", sol.residual);
            assert!((sol.weights.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
        let one = find_minor_design(&s, 1, DEFAULT_EPS_SING).unwrap();
        assert!((one.weights[0] - 1.0).abs() < 1e-12);
        let all = find_minor_design(&s, 10, DEFAULT_EPS_SING).unwrap();
        assert_eq!(all.subset, VertexSubset::full(10));
    }

    #[test]
    fn bad_arguments() {
        let s = Spectrum::of(&cycle(5).unwrap(), 1e-10).unwrap();
        let w = VertexSubset::new(5, [0, 1]).unwrap();
        assert!(matches!(solve_weights(&s, &w, &[0], DEFAULT_EPS_SING), Err(Error::DimensionMismatch { .. })));
        assert!(solve_weights(&s, &w, &[0, 9], DEFAULT_EPS_SING).is_err());
        assert!(find_minor_design(&s, 0, DEFAULT_EPS_SING).is_err());
    }
}
