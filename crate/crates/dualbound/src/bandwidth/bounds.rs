use thiserror::Error;

use super::graph::{Graph, UNREACHABLE};

/// Default vertex-count cap for [`Graph::beta_bound`]; the subset enumeration
/// is exponential.
pub const BETA_DEFAULT_CAP: usize = 16;

#[derive(Debug, Error)]
#[error("density bound requires n <= {cap}, got n = {n}")]
pub struct BetaCapExceeded {
    pub n: usize,
    pub cap: usize,
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

/// Sorted neighborhood growth of `v`: `counts[k]` = number of vertices within
/// hop distance `k` (finite distances only, so disconnected parts are
/// ignored).
fn neighborhood_counts(g: &Graph, v: u32) -> Vec<u32> {
    let n = g.vertex_count();
    let mut by_dist = vec![0u32; n];
    let mut ecc = 0usize;
    for &d in g.dist_row(v) {
        if d != UNREACHABLE {
            by_dist[d as usize] += 1;
            ecc = ecc.max(d as usize);
        }
    }
    let mut counts = vec![0u32; ecc + 1];
    let mut running = 0;
    for k in 0..=ecc {
        running += by_dist[k];
        counts[k] = running;
    }
    counts
}

impl Graph {
    /// Half-density lower bound on the bandwidth:
    /// `max_v max_k ceil((|N_k(v)| - 1) / 2k)` over k-neighborhoods. Runs one
    /// pass over the distance matrix per vertex.
    pub fn alpha_bound(&self) -> u32 {
        *self.alpha_cache().get_or_init(|| {
            let mut best = 0;
            for v in 0..self.vertex_count() as u32 {
                let counts = neighborhood_counts(self, v);
                for (k, &c) in counts.iter().enumerate().skip(1) {
                    if c > 1 {
                        best = best.max(ceil_div(c - 1, 2 * k as u32));
                    }
                }
            }
            best
        })
    }

    /// Eccentricity-layered lower bound:
    /// `min_v max_k ceil((|N_k(v)| - 1) / k)`. Neighborhoods of size one
    /// contribute nothing.
    pub fn gamma_bound(&self) -> u32 {
        *self.gamma_cache().get_or_init(|| {
            let mut best = u32::MAX;
            for v in 0..self.vertex_count() as u32 {
                let counts = neighborhood_counts(self, v);
                let mut worst = 0;
                for (k, &c) in counts.iter().enumerate().skip(1) {
                    if c > 1 {
                        worst = worst.max(ceil_div(c - 1, k as u32));
                    }
                }
                best = best.min(worst);
            }
            if best == u32::MAX {
                0
            } else {
                best
            }
        })
    }

    /// The strongest of the two polynomial bounds, used as the root value of
    /// every dual search.
    pub fn static_lower_bound(&self) -> u32 {
        self.alpha_bound().max(self.gamma_bound())
    }

    /// Exact density lower bound `max_S ceil((|S| - 1) / diam(S))` over vertex
    /// subsets of finite diameter. Exponential; refuses graphs larger than
    /// [`BETA_DEFAULT_CAP`] vertices.
    pub fn beta_bound(&self) -> Result<u32, BetaCapExceeded> {
        self.beta_bound_with_cap(BETA_DEFAULT_CAP)
    }

    pub fn beta_bound_with_cap(&self, cap: usize) -> Result<u32, BetaCapExceeded> {
        let n = self.vertex_count();
        if n > cap {
            return Err(BetaCapExceeded { n, cap });
        }
        let mut best = 0u32;
        for mask in 1u32..(1u32 << n) {
            let size = mask.count_ones();
            if size < 2 {
                continue;
            }
            let mut members = [0u32; 32];
            let mut count = 0;
            for v in 0..n as u32 {
                if mask & (1 << v) != 0 {
                    members[count] = v;
                    count += 1;
                }
            }
            let mut diam = 0u32;
            let mut connected = true;
            'pairs: for i in 0..count {
                let row = self.dist_row(members[i]);
                for &u in &members[i + 1..count] {
                    let d = row[u as usize];
                    if d == UNREACHABLE {
                        connected = false;
                        break 'pairs;
                    }
                    diam = diam.max(d);
                }
            }
            if connected {
                best = best.max(ceil_div(size - 1, diam));
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as u32 - 1).map(|v| (v, v + 1))).unwrap()
    }

    /// Five vertices, hub 1 adjacent to everything, plus edges 3-4 and 2-4.
    pub(crate) fn hub_graph() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (1, 4), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn alpha_on_hub_graph() {
        assert_eq!(hub_graph().alpha_bound(), 2);
    }

    #[test]
    fn alpha_on_k5_and_edgeless() {
        assert_eq!(complete(5).alpha_bound(), 2);
        assert_eq!(Graph::from_edges(4, []).unwrap().alpha_bound(), 0);
    }

    #[test]
    fn gamma_on_hub_graph() {
        assert_eq!(hub_graph().gamma_bound(), 2);
    }

    #[test]
    fn gamma_on_paths_and_cliques() {
        for n in 2..8 {
            assert_eq!(path(n).gamma_bound(), 1);
            assert_eq!(complete(n).gamma_bound(), n as u32 - 1);
        }
    }

    #[test]
    fn beta_on_hub_graph_and_k4() {
        assert_eq!(hub_graph().beta_bound().unwrap(), 2);
        assert_eq!(complete(4).beta_bound().unwrap(), 3);
    }

    #[test]
    fn beta_refuses_large_graphs() {
        let g = path(20);
        assert!(g.beta_bound().is_err());
    }
}
