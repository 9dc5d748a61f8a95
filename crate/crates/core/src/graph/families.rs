use super::Graph;
use crate::error::{Error, Result};

/// Cycle `C_n` on `0..n`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &edges)
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Generalized Petersen graph `GP(m, k)`.
///
/// Outer cycle on `0..m`, inner vertices `m..2m` joined `i -> i + k (mod m)`,
/// spoke `i -- m + i`.
pub fn generalized_petersen(m: usize, k: usize) -> Result<Graph> {
    if m < 3 || k == 0 || 2 * k >= m {
        return Err(Error::Parameter(format!(
            "generalized Petersen graph needs m >= 3 and 1 <= k < m/2, got ({m}, {k})"
        )));
    }
    let mut edges = Vec::with_capacity(3 * m);
    for i in 0..m {
        edges.push((i, (i + 1) % m));
        edges.push((m + i, m + (i + k) % m));
        edges.push((i, m + i));
    }
    Graph::from_edge_list(2 * m, &edges)
}
