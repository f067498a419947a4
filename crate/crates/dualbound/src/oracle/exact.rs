use super::{OracleError, COMPLETION_DEFAULT_CAP, EXACT_DEFAULT_CAP};
use crate::bandwidth::{bandwidth, ub_heuristic, Graph, PartialLayout};

/// Exact minimum bandwidth by permutation search with prefix pruning, capped
/// at [`EXACT_DEFAULT_CAP`] vertices.
pub fn exact_bandwidth(graph: &Graph) -> Result<u32, OracleError> {
    exact_bandwidth_with_cap(graph, EXACT_DEFAULT_CAP)
}

/// As [`exact_bandwidth`] with an explicit vertex cap.
///
/// Positions are filled left to right; a prefix is abandoned as soon as its
/// longest placed edge, or the stretch forced onto some placed vertex's
/// unplaced neighbor, reaches the incumbent. Reversal symmetry is broken by
/// keeping vertex 0 in the left half of the line.
pub fn exact_bandwidth_with_cap(graph: &Graph, cap: usize) -> Result<u32, OracleError> {
    let n = graph.vertex_count();
    if n > cap {
        return Err(OracleError::TooLarge { n, cap });
    }
    let incumbent = ub_heuristic(graph).1;
    let mut search = PrefixSearch {
        graph,
        n,
        half: n.div_ceil(2) as u32,
        position: vec![0; n],
        placed: vec![false; n],
        order: Vec::with_capacity(n),
        incumbent,
    };
    search.descend(0);
    Ok(search.incumbent)
}

struct PrefixSearch<'g> {
    graph: &'g Graph,
    n: usize,
    half: u32,
    /// 1-based position of each placed vertex.
    position: Vec<u32>,
    placed: Vec<bool>,
    order: Vec<u32>,
    incumbent: u32,
}

impl PrefixSearch<'_> {
    fn descend(&mut self, current_max: u32) {
        let next_pos = self.order.len() as u32 + 1;
        if self.order.len() == self.n {
            // pruning keeps current_max < incumbent on every complete line
            self.incumbent = current_max;
            return;
        }
        // symmetry: vertex 0 (or its mirror image) sits in the left half
        if !self.placed[0] && next_pos > self.half {
            return;
        }
        // a placed vertex with an unplaced neighbor forces a span of at least
        // next_pos - its position
        for (v, &placed) in self.placed.iter().enumerate() {
            if placed
                && next_pos - self.position[v] >= self.incumbent
                && self
                    .graph
                    .neighbors(v as u32)
                    .iter()
                    .any(|&w| !self.placed[w as usize])
            {
                return;
            }
        }
        for v in 0..self.n as u32 {
            if self.placed[v as usize] {
                continue;
            }
            if v == 0 && next_pos > self.half {
                continue;
            }
            let mut reach = current_max;
            for &w in self.graph.neighbors(v) {
                if self.placed[w as usize] {
                    reach = reach.max(next_pos - self.position[w as usize]);
                }
            }
            if reach >= self.incumbent {
                continue;
            }
            self.placed[v as usize] = true;
            self.position[v as usize] = next_pos;
            self.order.push(v);
            self.descend(reach);
            self.order.pop();
            self.placed[v as usize] = false;
        }
    }
}

/// Minimum bandwidth over all completions of a partial layout, by exhausting
/// the placements of its free vertices. Caps the free count at
/// [`COMPLETION_DEFAULT_CAP`].
pub fn min_completion_value(graph: &Graph, layout: &PartialLayout) -> Result<u32, OracleError> {
    let free = layout.free_vertices();
    if free.len() > COMPLETION_DEFAULT_CAP {
        return Err(OracleError::TooManyFree {
            count: free.len(),
            cap: COMPLETION_DEFAULT_CAP,
        });
    }
    if let Some(arrangement) = layout.arrangement() {
        return Ok(bandwidth(graph, &arrangement));
    }
    let mut best = u32::MAX;
    let mut slots = free.clone();
    permute(&mut slots, 0, &mut |perm| {
        let mut complete = layout.clone();
        for &v in perm.iter() {
            complete = complete.with_left(v).expect("free vertex placement");
        }
        let value = bandwidth(graph, &complete.arrangement().expect("complete"));
        best = best.min(value);
    });
    Ok(best)
}

fn permute(items: &mut [u32], k: usize, visit: &mut impl FnMut(&[u32])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
