use super::graph::Graph;
use super::layout::{bandwidth, Arrangement};

/// Breadth-first level ordering in the Cuthill-McKee style, tried from every
/// vertex as the initial seed; returns the best arrangement found and its
/// bandwidth. Always a valid upper bound on the optimum.
///
/// Within a traversal, unvisited neighbors are appended in (degree, id)
/// order, and once a component is exhausted the walk restarts from the
/// unvisited vertex with the smallest (degree, id). Deterministic.
pub fn ub_heuristic(graph: &Graph) -> (Arrangement, u32) {
    let n = graph.vertex_count();
    let mut best_order: Option<(Vec<u32>, u32)> = None;
    for start in 0..n as u32 {
        let order = level_order(graph, start);
        let arrangement = Arrangement::from_order(&order).expect("traversal covers every vertex");
        let value = bandwidth(graph, &arrangement);
        if best_order.as_ref().is_none_or(|(_, b)| value < *b) {
            best_order = Some((order, value));
        }
        if graph.edge_count() == 0 {
            break;
        }
    }
    let (order, value) = best_order.expect("at least one vertex");
    (
        Arrangement::from_order(&order).expect("valid order"),
        value,
    )
}

fn level_order(graph: &Graph, start: u32) -> Vec<u32> {
    let n = graph.vertex_count();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut head = 0usize;

    let mut seed = Some(start);
    while order.len() < n {
        let next_seed = seed.take().or_else(|| {
            (0..n as u32)
                .filter(|&v| !visited[v as usize])
                .min_by_key(|&v| (graph.degree(v), v))
        });
        let s = next_seed.expect("unvisited vertex exists");
        visited[s as usize] = true;
        order.push(s);
        while head < order.len() {
            let u = order[head];
            head += 1;
            let mut fresh: Vec<u32> = graph
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !visited[w as usize])
                .collect();
            fresh.sort_by_key(|&w| (graph.degree(w), w));
            for w in fresh {
                visited[w as usize] = true;
                order.push(w);
            }
        }
    }
    order
}
