//! Random-walk operator, its spectrum, and frequency classes.
//!
//! Eigenvalues are reported for `L = AD^-1 - I`, so they lie in `[-2, 0]`.
//! The frequency of an eigenvalue is `|lambda + 1|`; high frequency means slow
//! decay under the walk, and the design ordering runs from frequency 1 down.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    /// `AD^-1`, column-stochastic.
    #[default]
    RandomWalk,
    /// `D^-1/2 A D^-1/2`, similar to `AD^-1` and always symmetric.
    NormalizedSymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps_eig: f64,
    pub eps_deg: f64,
    pub eps_int: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eps_eig: 1e-10, eps_deg: 1e-8, eps_int: 1e-9 }
    }
}

/// Dense operator matrix. With `strict` set, the random-walk kind refuses
/// non-regular graphs, where it would not be symmetric.
pub fn build_operator(g: &Graph, kind: OperatorKind, strict: bool) -> Result<DMatrix<f64>> {
    let n = g.n();
    let deg = g.degrees();
    if kind == OperatorKind::RandomWalk && strict && !g.is_regular() {
        let min = *deg.iter().min().unwrap();
        let max = *deg.iter().max().unwrap();
        return Err(Error::NonRegular { min, max });
    }
    let mut m = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        match kind {
            OperatorKind::RandomWalk => {
                m[(u, v)] = 1.0 / deg[v] as f64;
                m[(v, u)] = 1.0 / deg[u] as f64;
            }
            OperatorKind::NormalizedSymmetric => {
                let x = 1.0 / ((deg[u] * deg[v]) as f64).sqrt();
                m[(u, v)] = x;
                m[(v, u)] = x;
            }
        }
    }
    Ok(m)
}

/// One step of the walk on a function or measure: `(AD^-1 f)(u) = sum_{v~u} f(v)/deg(v)`.
pub fn walk_step(g: &Graph, f: &[f64]) -> Vec<f64> {
    let scaled: Vec<f64> = f.iter().zip(g.degrees()).map(|(x, &d)| x / d as f64).collect();
    (0..g.n()).map(|u| g.neighbors(u).iter().map(|&v| scaled[v]).sum()).collect()
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Eigenvalues of `L`, in solver order.
    eigenvalues: Vec<f64>,
    /// Column `i` is the eigenvector for `eigenvalues[i]`.
    eigenvectors: DMatrix<f64>,
    frequency: Vec<f64>,
    /// Eigen-indices sorted by frequency, non-increasing; position 0 is the
    /// eigenvalue closest to 0.
    ordering: Vec<usize>,
    degree_weighted: bool,
}

/// Full eigendecomposition of a symmetric operator matrix (spectrum of `M`,
/// reported shifted by `-1`).
pub fn eigendecompose(m: &DMatrix<f64>, eps_eig: f64) -> Result<Spectrum> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: m.ncols() });
    }
    let asym = (m - m.transpose()).amax();
    if asym > eps_eig {
        return Err(Error::NotSymmetric(asym));
    }
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 1000 * n)
        .ok_or(Error::EigenNonConvergence)?;
    let eigenvalues: Vec<f64> = eig.eigenvalues.iter().map(|mu| mu - 1.0).collect();
    Ok(Spectrum::assemble(eigenvalues, eig.eigenvectors, false))
}

impl Spectrum {
    /// Spectrum of `AD^-1`. Regular graphs decompose the operator directly.
    /// Otherwise the normalized operator is decomposed and eigenvectors are
    /// mapped by `D^1/2`; they are then orthonormal only in the inner product
    /// weighted by `D^-1`, which is flagged via [`Spectrum::degree_weighted`].
    pub fn of(g: &Graph, eps_eig: f64) -> Result<Spectrum> {
        if g.is_regular() {
            return eigendecompose(&build_operator(g, OperatorKind::RandomWalk, true)?, eps_eig);
        }
        let s = eigendecompose(&build_operator(g, OperatorKind::NormalizedSymmetric, false)?, eps_eig)?;
        let mut vectors = s.eigenvectors;
        for (u, &d) in g.degrees().iter().enumerate() {
            vectors.row_mut(u).scale_mut((d as f64).sqrt());
        }
        Ok(Spectrum::assemble(s.eigenvalues, vectors, true))
    }

    fn assemble(eigenvalues: Vec<f64>, eigenvectors: DMatrix<f64>, degree_weighted: bool) -> Spectrum {
        let frequency: Vec<f64> = eigenvalues.iter().map(|l| (l + 1.0).abs()).collect();
        let lead = (0..eigenvalues.len())
            .min_by(|&a, &b| eigenvalues[a].abs().total_cmp(&eigenvalues[b].abs()))
            .unwrap();
        let mut rest: Vec<usize> = (0..eigenvalues.len()).filter(|&i| i != lead).collect();
        rest.sort_by(|&a, &b| {
            frequency[b]
                .total_cmp(&frequency[a])
                .then(eigenvalues[b].total_cmp(&eigenvalues[a]))
        });
        let mut ordering = vec![lead];
        ordering.extend(rest);
        Spectrum { eigenvalues, eigenvectors, frequency, ordering, degree_weighted }
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn frequency(&self) -> &[f64] {
        &self.frequency
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn degree_weighted(&self) -> bool {
        self.degree_weighted
    }

    /// Eigenvalues of `L` in frequency order.
    pub fn ordered_eigenvalues(&self) -> Vec<f64> {
        self.ordering.iter().map(|&i| self.eigenvalues[i]).collect()
    }

    /// Numerical health of the decomposition against the graph it came from.
    pub fn check(&self, g: &Graph) -> SpectralCheck {
        let n = self.n();
        let mut max_residual = 0.0f64;
        for i in 0..n {
            let phi: Vec<f64> = self.eigenvectors.column(i).iter().copied().collect();
            let image = walk_step(g, &phi);
            let mu = self.eigenvalues[i] + 1.0;
            let r = image.iter().zip(&phi).map(|(a, b)| (a - mu * b).powi(2)).sum::<f64>().sqrt();
            max_residual = max_residual.max(r);
        }
        let gram = if self.degree_weighted {
            let dinv = DMatrix::from_diagonal(&DVector::from_iterator(
                n,
                g.degrees().iter().map(|&d| 1.0 / d as f64),
            ));
            self.eigenvectors.transpose() * dinv * &self.eigenvectors
        } else {
            self.eigenvectors.transpose() * &self.eigenvectors
        };
        let orthonormality_error = (gram - DMatrix::<f64>::identity(n, n)).amax();
        let lead = self.ordering[0];
        let zero_eigenvalues = self.eigenvalues.iter().filter(|l| l.abs() <= 1e-8).count();
        let phi0 = self.eigenvectors.column(lead);
        // The leading eigenvector is proportional to the degree vector.
        let ratios: Vec<f64> = phi0.iter().zip(g.degrees()).map(|(x, &d)| x / d as f64).collect();
        let spread = ratios.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
            - ratios.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        SpectralCheck {
            max_residual,
            min_eigenvalue: self.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min),
            max_eigenvalue: self.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            zero_eigenvalues,
            leading_eigenvector_spread: spread,
            orthonormality_error,
            trace: self.eigenvalues.iter().map(|l| l + 1.0).sum(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectralCheck {
    pub max_residual: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// Eigenvalues within `1e-8` of zero.
    pub zero_eigenvalues: usize,
    /// Max minus min of `phi_0(v) / deg(v)`; zero for an exact leading eigenvector.
    pub leading_eigenvector_spread: f64,
    pub orthonormality_error: f64,
    /// `sum (lambda + 1)`, the trace of `AD^-1`.
    pub trace: f64,
}

impl SpectralCheck {
    pub fn passes(&self, n: usize, eps_eig: f64) -> bool {
        self.max_residual <= eps_eig
            && self.min_eigenvalue >= -2.0 - eps_eig
            && self.max_eigenvalue <= eps_eig
            && self.zero_eigenvalues == 1
            && self.leading_eigenvector_spread <= eps_eig
            && self.orthonormality_error <= eps_eig
            && self.trace.abs() <= n as f64 * eps_eig
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyClass {
    pub frequency: f64,
    /// Eigen-indices into the spectrum.
    pub members: Vec<usize>,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyClasses {
    pub classes: Vec<FrequencyClass>,
    /// Some frequency gap fell in `(eps_deg/2, 2 eps_deg]`, so the grouping is fragile.
    pub ambiguous: bool,
}

/// Groups eigen-indices by frequency. The leading (constant) eigenvector is
/// always a class of its own; the rest are split wherever consecutive
/// frequencies differ by more than `eps_deg`.
pub fn frequency_classes(s: &Spectrum, eps_deg: f64) -> FrequencyClasses {
    let ord = s.ordering();
    let f = s.frequency();
    let mut classes = vec![FrequencyClass { frequency: f[ord[0]], members: vec![ord[0]], dimension: 1 }];
    let mut ambiguous = false;
    let mut current: Vec<usize> = Vec::new();
    for &i in &ord[1..] {
        if let Some(&prev) = current.last() {
            let gap = f[prev] - f[i];
            if gap > eps_deg / 2.0 && gap <= 2.0 * eps_deg {
                ambiguous = true;
            }
            if gap > eps_deg {
                classes.push(close_class(f, std::mem::take(&mut current)));
            }
        }
        current.push(i);
    }
    if !current.is_empty() {
        classes.push(close_class(f, current));
    }
    FrequencyClasses { classes, ambiguous }
}

fn close_class(f: &[f64], members: Vec<usize>) -> FrequencyClass {
    let frequency = members.iter().map(|&i| f[i]).sum::<f64>() / members.len() as f64;
    FrequencyClass { frequency, dimension: members.len(), members }
}

/// Orthonormal bases of the class subspaces, for basis-free projections.
#[derive(Debug, Clone)]
pub struct ClassBasis {
    classes: FrequencyClasses,
    bases: Vec<DMatrix<f64>>,
}

impl ClassBasis {
    pub fn new(s: &Spectrum, eps_deg: f64) -> ClassBasis {
        let classes = frequency_classes(s, eps_deg);
        let bases = classes
            .classes
            .iter()
            .map(|c| {
                let b = s.eigenvectors.select_columns(&c.members);
                if s.degree_weighted {
                    b.qr().q()
                } else {
                    b
                }
            })
            .collect();
        ClassBasis { classes, bases }
    }

    pub fn classes(&self) -> &[FrequencyClass] {
        &self.classes.classes
    }

    pub fn ambiguous(&self) -> bool {
        self.classes.ambiguous
    }

    /// `n x dim` matrix with orthonormal columns spanning class `j`.
    pub fn basis(&self, j: usize) -> &DMatrix<f64> {
        &self.bases[j]
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// `||P_j f||` for every class `j`.
    pub fn projection_norms(&self, f: &DVector<f64>) -> Vec<f64> {
        self.bases.iter().map(|b| (b.transpose() * f).norm()).collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumExport {
    pub n: usize,
    pub degree_weighted: bool,
    /// Eigenvalues of `L` in frequency order.
    pub eigenvalues: Vec<f64>,
    pub frequencies: Vec<f64>,
    pub classes: Vec<ClassExport>,
    pub ambiguous: bool,
    /// Eigenvectors in frequency order, each as values over the vertices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassExport {
    pub frequency: f64,
    pub dimension: usize,
    /// Positions in the frequency ordering (0-based).
    pub positions: Vec<usize>,
}

impl Spectrum {
    pub fn export(&self, eps_deg: f64, with_vectors: bool) -> SpectrumExport {
        let classes = frequency_classes(self, eps_deg);
        let mut position = vec![0; self.n()];
        for (p, &i) in self.ordering.iter().enumerate() {
            position[i] = p;
        }
        SpectrumExport {
            n: self.n(),
            degree_weighted: self.degree_weighted,
            eigenvalues: self.ordered_eigenvalues(),
            frequencies: self.ordering.iter().map(|&i| self.frequency[i]).collect(),
            classes: classes
                .classes
                .iter()
                .map(|c| ClassExport {
                    frequency: c.frequency,
                    dimension: c.dimension,
                    positions: c.members.iter().map(|&i| position[i]).collect(),
                })
                .collect(),
            ambiguous: classes.ambiguous,
            eigenvectors: with_vectors.then(|| {
                self.ordering
                    .iter()
                    .map(|&i| self.eigenvectors.column(i).iter().copied().collect())
                    .collect()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, generalized_petersen};

    /// Cyclic Jacobi rotations: an eigenvalue oracle independent of nalgebra.
    fn jacobi_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
        let n = m.nrows();
        let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect();
        for _ in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i][j] * a[i][j])
                .sum();
            if off < 1e-28 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for row in a.iter_mut() {
                        let (akp, akq) = (row[p], row[q]);
                        row[p] = c * akp - s * akq;
                        row[q] = s * akp + c * akq;
                    }
                    let (head, tail) = a.split_at_mut(q);
                    for (x, y) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                        let (apk, aqk) = (*x, *y);
                        *x = c * apk - s * aqk;
                        *y = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..n).map(|i| a[i][i] - 1.0).collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn operators() {
        let k2 = complete(2).unwrap();
        let m = build_operator(&k2, OperatorKind::RandomWalk, true).unwrap();
        assert_eq!(m, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        let c4 = cycle(4).unwrap();
        let m = build_operator(&c4, OperatorKind::RandomWalk, true).unwrap();
        assert_eq!(m[(0, 1)], 0.5);
        assert_eq!(m[(0, 2)], 0.0);
        let p = generalized_petersen(5, 2).unwrap();
        let m = build_operator(&p, OperatorKind::RandomWalk, true).unwrap();
        for u in 0..10 {
            for v in 0..10 {
                assert_eq!(m[(u, v)], if p.has_edge(u, v) { 1.0 / 3.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn strict_mode_rejects_irregular() {
        let path = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            build_operator(&path, OperatorKind::RandomWalk, true),
            Err(Error::NonRegular { min: 1, max: 2 })
        );
        assert!(build_operator(&path, OperatorKind::RandomWalk, false).is_ok());
    }

    #[test]
    fn k2_spectrum() {
        let s = Spectrum::of(&complete(2).unwrap(), 1e-10).unwrap();
        assert_eq!(sorted(s.eigenvalues().to_vec()).len(), 2);
        assert!((s.ordered_eigenvalues()[0]).abs() < 1e-14);
        assert!((s.ordered_eigenvalues()[1] + 2.0).abs() < 1e-14);
        assert!(s.frequency().iter().all(|f| (f - 1.0).abs() < 1e-14));
    }

    #[test]
    fn cycle_spectrum_is_cosines() {
        let s = Spectrum::of(&cycle(6).unwrap(), 1e-10).unwrap();
        let expected =
            sorted((0..6).map(|j| (2.0 * std::f64::consts::PI * j as f64 / 6.0).cos() - 1.0).collect());
        for (a, b) in sorted(s.eigenvalues().to_vec()).iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
        let classes = frequency_classes(&s, 1e-8);
        let dims: Vec<usize> = classes.classes.iter().map(|c| c.dimension).collect();
        assert_eq!(dims, vec![1, 1, 4]);
        assert!((classes.classes[1].frequency - 1.0).abs() < 1e-12);
        assert!((classes.classes[2].frequency - 0.5).abs() < 1e-12);
        assert!(!classes.ambiguous);
    }

    #[test]
    fn complete_graph_against_jacobi() {
        for n in 2..=8 {
            let g = complete(n).unwrap();
            let m = build_operator(&g, OperatorKind::RandomWalk, true).unwrap();
            let s = eigendecompose(&m, 1e-10).unwrap();
            let oracle = jacobi_eigenvalues(&m);
            for (a, b) in sorted(s.eigenvalues().to_vec()).iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-12, "n={n}: {a} vs {b}");
            }
            let target = -(n as f64) / (n as f64 - 1.0);
            assert_eq!(oracle.iter().filter(|l| (*l - target).abs() < 1e-12).count(), n - 1);
            assert_eq!(oracle.iter().filter(|l| l.abs() < 1e-12).count(), 1);
        }
        let k4 = Spectrum::of(&complete(4).unwrap(), 1e-10).unwrap();
        let dims: Vec<usize> = frequency_classes(&k4, 1e-8).classes.iter().map(|c| c.dimension).collect();
        assert_eq!(dims, vec![1, 3]);
    }

    #[test]
    fn petersen_against_jacobi() {
        let g = generalized_petersen(5, 2).unwrap();
        let m = build_operator(&g, OperatorKind::RandomWalk, true).unwrap();
        let s = eigendecompose(&m, 1e-10).unwrap();
        let oracle = jacobi_eigenvalues(&m);
        for (a, b) in sorted(s.eigenvalues().to_vec()).iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(s.check(&g).passes(10, 1e-10));
    }

    #[test]
    fn asymmetric_input_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.5, 0.0]);
        assert!(matches!(eigendecompose(&m, 1e-10), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn ordering_puts_constant_first() {
        let s = Spectrum::of(&cycle(6).unwrap(), 1e-10).unwrap();
        let lead = s.eigenvectors().column(s.ordering()[0]);
        assert!(lead.iter().all(|x| (x.abs() - 1.0 / 6f64.sqrt()).abs() < 1e-12));
        let f: Vec<f64> = s.ordering().iter().map(|&i| s.frequency()[i]).collect();
        assert!(f.windows(2).all(|w| w[0] >= w[1] - 1e-15));
    }

    #[test]
    fn irregular_graph_is_degree_weighted() {
        let star = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = Spectrum::of(&star, 1e-10).unwrap();
        assert!(s.degree_weighted());
        let check = s.check(&star);
        assert!(check.passes(4, 1e-10), "{check:?}");
        assert!(!Spectrum::of(&complete(2).unwrap(), 1e-10).unwrap().degree_weighted());
    }

    #[test]
    fn reconstruction() {
        let g = generalized_petersen(12, 4).unwrap();
        let m = build_operator(&g, OperatorKind::RandomWalk, true).unwrap();
        let s = eigendecompose(&m, 1e-10).unwrap();
        let v = s.eigenvectors();
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            g.n(),
            s.eigenvalues().iter().map(|l| l + 1.0),
        ));
        assert!((v * d * v.transpose() - m).amax() <= 1e-9);
    }

    #[test]
    fn export_shapes() {
        let s = Spectrum::of(&cycle(6).unwrap(), 1e-10).unwrap();
        let e = s.export(1e-8, false);
        assert!(e.eigenvectors.is_none());
        assert_eq!(e.classes.iter().map(|c| c.dimension).sum::<usize>(), 6);
        assert_eq!(e.classes[0].positions, vec![0]);
        let e = s.export(1e-8, true);
        assert_eq!(e.eigenvectors.unwrap().len(), 6);
    }

    #[test]
    fn ambiguity_flag() {
        let s = Spectrum::assemble(
            vec![0.0, -0.5, -0.5 - 1.5e-8, -1.2],
            DMatrix::identity(4, 4),
            false,
        );
        assert!(frequency_classes(&s, 1e-8).ambiguous);
        assert!(!frequency_classes(&s, 1e-6).ambiguous);
    }
}
