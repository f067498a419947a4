use std::collections::VecDeque;
use std::sync::OnceLock;

use thiserror::Error;

/// Hop-count sentinel for unreachable vertex pairs.
pub(crate) const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint out of range (n = {2})")]
    EndpointOutOfRange(u32, u32, usize),
    #[error("graph must have at least one vertex")]
    Empty,
}

/// Undirected simple graph with precomputed all-pairs hop distances.
///
/// Immutable after construction; safe to share across threads. The distance
/// matrix is filled by one BFS per vertex, with [`UNREACHABLE`] marking pairs
/// in different components.
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    dist: Vec<u32>,
    alpha: OnceLock<u32>,
    gamma: OnceLock<u32>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops are dropped and duplicate
    /// edges collapsed; endpoints must be `< n`.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut canon: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(GraphError::EndpointOutOfRange(a, b, n));
            }
            if a == b {
                continue;
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        canon.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let dist = all_pairs_bfs(n, &adj);
        Ok(Graph {
            n,
            edges: canon,
            adj,
            dist,
            alpha: OnceLock::new(),
            gamma: OnceLock::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical form: `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Hop distance between two vertices, `None` if disconnected.
    pub fn hop_distance(&self, s: u32, t: u32) -> Option<u32> {
        let d = self.dist_raw(s, t);
        (d != UNREACHABLE).then_some(d)
    }

    #[inline]
    pub(crate) fn dist_raw(&self, s: u32, t: u32) -> u32 {
        self.dist[s as usize * self.n + t as usize]
    }

    pub(crate) fn dist_row(&self, s: u32) -> &[u32] {
        &self.dist[s as usize * self.n..(s as usize + 1) * self.n]
    }

    pub(crate) fn alpha_cache(&self) -> &OnceLock<u32> {
        &self.alpha
    }

    pub(crate) fn gamma_cache(&self) -> &OnceLock<u32> {
        &self.gamma
    }
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            n: self.n,
            edges: self.edges.clone(),
            adj: self.adj.clone(),
            dist: self.dist.clone(),
            alpha: self.alpha.clone(),
            gamma: self.gamma.clone(),
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edges.len())
            .finish()
    }
}

fn all_pairs_bfs(n: usize, adj: &[Vec<u32>]) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s as u32);
        while let Some(u) = queue.pop_front() {
            let du = row[u as usize];
            for &w in &adj[u as usize] {
                if row[w as usize] == UNREACHABLE {
                    row[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}
