//! Simple undirected graphs, vertex subsets and hop distances.
//!
//! A [`Graph`] is immutable once built: adjacency lists are sorted and
//! deduplicated, and construction rejects self-loops, out-of-range indices
//! and (unless explicitly allowed) disconnected input.

mod families;
mod graph6;
mod io;
mod lcf;

pub use families::{complete, cycle, generalized_petersen};
pub use graph6::{from_graph6, to_graph6};
pub use io::{parse_edge_list, to_dot, to_edge_list};
pub use lcf::{from_lcf, parse_lcf, LcfCode};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether construction may accept a graph with more than one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Required,
    AllowDisconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    /// Builds a connected simple graph. Duplicate pairs (in either orientation) collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edge_list_with(n, edges, Connectivity::Required)
    }

    pub fn from_edge_list_with(
        n: usize,
        edges: &[(usize, usize)],
        connectivity: Connectivity,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let degrees: Vec<usize> = adjacency.iter().map(Vec::len).collect();
        let edge_count = degrees.iter().sum::<usize>() / 2;
        let g = Graph { n, adjacency, degrees, edge_count };
        if connectivity == Connectivity::Required {
            let components = g.component_count();
            if components > 1 {
                return Err(Error::Disconnected { components });
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees[0];
        self.degrees.iter().all(|&x| x == d).then_some(d)
    }

    pub fn is_regular(&self) -> bool {
        self.regular_degree().is_some()
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// Multi-source BFS: hop distance from every vertex to the nearest source.
    pub fn distances_from(&self, sources: &VertexSubset) -> Vec<usize> {
        self.bfs(sources.members())
    }

    fn bfs(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for s in 0..n {
            data.extend(self.bfs(&[s]).into_iter().map(|d| d as u32));
        }
        DistanceMatrix { n, data }
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &v in &self.adjacency[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        best = best.min(dist[u] + dist[v] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    pub fn diameter(&self) -> usize {
        (0..self.n)
            .map(|s| self.bfs(&[s]).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Largest distance from the subset to any vertex.
    pub fn eccentricity(&self, w: &VertexSubset) -> usize {
        self.distances_from(w).into_iter().max().unwrap_or(0)
    }

    /// Image of the graph under the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: perm.len() });
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list_with(self.n, &edges, Connectivity::AllowDisconnected)
    }

    /// True when `perm` is a bijection preserving adjacency.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n {
            return false;
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut hit[p], true) {
                return false;
            }
        }
        self.edges().all(|(u, v)| self.has_edge(perm[u], perm[v]))
    }
}

/// All-pairs hop distances, row-major.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

/// Sum of `d(v_i, v_j)` over all ordered pairs of members.
pub fn pairwise_distance_sum(g: &Graph, s: &VertexSubset) -> u64 {
    s.members()
        .iter()
        .map(|&u| {
            let dist = g.bfs(&[u]);
            s.members().iter().map(|&v| dist[v] as u64).sum::<u64>()
        })
        .sum()
}

/// Non-empty set of vertex indices, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSubset(Vec<usize>);

impl VertexSubset {
    /// Validates against a graph order `n`. Input order is irrelevant; repeats are rejected.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::EmptySubset);
        }
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertex(pair[0]));
            }
        }
        if let Some(&last) = members.last() {
            if last >= n {
                return Err(Error::VertexOutOfRange { index: last, n });
            }
        }
        Ok(VertexSubset(members))
    }

    pub fn full(n: usize) -> Self {
        VertexSubset((0..n).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Parses `"0,3,7"` (0-based, comma or whitespace separated).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let members = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parameter(format!("bad vertex index `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, members)
    }
}

impl std::fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}
