use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::graph::{Graph, UNREACHABLE};
use super::layout::PartialLayout;

/// Per-vertex feasible position windows under a trial bandwidth: `earliest[v]
/// <= position(v) <= latest[v]` in any completion within that bandwidth.
/// Fixed vertices have degenerate windows equal to their position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionWindows {
    pub earliest: Vec<u32>,
    pub latest: Vec<u32>,
}

/// Latest feasible positions given the left prefix, or `None` when some
/// vertex has no feasible position at all.
///
/// Vertices are processed in order of hop distance to the left-fixed set.
/// For a vertex at distance `k`, each neighbor at distance `k - 1` must fit
/// strictly to its left within `phi` positions and below that neighbor's own
/// latest position; the largest anchor position passing this injective
/// packing test is the vertex's latest position. Vertices with no path to the
/// left prefix are unconstrained (`latest = n`).
pub fn ell_bounds(graph: &Graph, layout: &PartialLayout, phi: u32) -> Option<Vec<u32>> {
    let n = graph.vertex_count();
    let mut latest = vec![n as u32; n];
    for (i, &v) in layout.left().iter().enumerate() {
        latest[v as usize] = i as u32 + 1;
    }
    for (i, &v) in layout.right().iter().enumerate() {
        latest[v as usize] = n as u32 - i as u32;
    }
    if layout.left().is_empty() {
        return Some(latest);
    }

    // Hop distance from each vertex to the nearest left-fixed vertex.
    let mut dl = vec![UNREACHABLE; n];
    for &u in layout.left() {
        for (v, &d) in graph.dist_row(u).iter().enumerate() {
            if d < dl[v] {
                dl[v] = d;
            }
        }
    }

    let mut order: Vec<u32> = layout
        .free_vertices()
        .into_iter()
        .filter(|&v| dl[v as usize] != UNREACHABLE)
        .collect();
    order.sort_by_key(|&v| dl[v as usize]);

    let mut deadlines: Vec<u32> = Vec::new();
    for &v in &order {
        deadlines.clear();
        deadlines.extend(
            graph
                .neighbors(v)
                .iter()
                .filter(|&&u| dl[u as usize] + 1 == dl[v as usize])
                .map(|&u| latest[u as usize]),
        );
        deadlines.sort_unstable();
        latest[v as usize] = latest_anchor(n as u32, phi, &deadlines)?;
    }
    Some(latest)
}

/// Largest anchor position `p <= n` such that the sorted `deadlines` (one per
/// required predecessor) admit distinct positions in
/// `[max(1, p - phi), min(deadline, p - 1)]`.
///
/// With a shared window start, the packing test is the earliest-deadline
/// condition `deadline_i >= start + i - 1`, which collapses to a closed form
/// in the two regimes of `max(1, p - phi)`.
fn latest_anchor(n: u32, phi: u32, deadlines: &[u32]) -> Option<u32> {
    let r = deadlines.len() as u32;
    if r == 0 {
        return Some(n);
    }
    // slack = min_i (deadline_i - i), deadlines ascending, i 1-based
    let slack = deadlines
        .iter()
        .enumerate()
        .map(|(i, &d)| i64::from(d) - (i as i64 + 1))
        .min()
        .expect("nonempty");
    if slack < 0 {
        // more predecessors than slots below their deadlines, at any anchor
        return None;
    }
    let mut best: Option<u32> = None;
    // window start p - phi (anchors above phi; none exist when phi >= n)
    if phi >= r && phi < n {
        let p = n.min(phi + 1 + slack.min(i64::from(n)) as u32);
        best = Some(p);
    }
    // window start 1 (anchors at most phi)
    let p = n.min(phi);
    if p > r {
        best = Some(best.map_or(p, |b| b.max(p)));
    }
    best
}

/// Earliest feasible positions given the right suffix: the mirror image of
/// [`ell_bounds`] under `p -> n + 1 - p`.
pub fn f_bounds(graph: &Graph, layout: &PartialLayout, phi: u32) -> Option<Vec<u32>> {
    let n = graph.vertex_count() as u32;
    let mirrored = ell_bounds(graph, &layout.mirrored(), phi)?;
    Some(mirrored.into_iter().map(|p| n + 1 - p).collect())
}

/// Both window sides, `None` if either side detects infeasibility or some
/// window is empty.
pub fn position_windows(
    graph: &Graph,
    layout: &PartialLayout,
    phi: u32,
) -> Option<PositionWindows> {
    let latest = ell_bounds(graph, layout, phi)?;
    let earliest = f_bounds(graph, layout, phi)?;
    if earliest.iter().zip(&latest).any(|(&f, &l)| f > l) {
        return None;
    }
    Some(PositionWindows { earliest, latest })
}

/// Whether the partial layout can plausibly extend to an arrangement of
/// bandwidth at most `phi`: fixed-side edges must already fit, position
/// windows must be nonempty, and the free vertices must pack injectively into
/// the free positions (earliest-deadline greedy). Edges between the two fixed
/// ends are not checked; this is what makes the test a relaxation.
pub fn layout_feasible(graph: &Graph, layout: &PartialLayout, phi: u32) -> bool {
    let n = graph.vertex_count() as u32;

    let span_within = |side: &[u32], pos: &dyn Fn(usize) -> u32| -> bool {
        for (i, &u) in side.iter().enumerate() {
            for (j, &v) in side.iter().enumerate().skip(i + 1) {
                if graph.hop_distance(u, v) == Some(1) && pos(j).abs_diff(pos(i)) > phi {
                    return false;
                }
            }
        }
        true
    };
    if !span_within(layout.left(), &|i| i as u32 + 1) {
        return false;
    }
    if !span_within(layout.right(), &|i| n - i as u32) {
        return false;
    }

    let Some(windows) = position_windows(graph, layout, phi) else {
        return false;
    };

    // Greedy earliest-deadline packing of free vertices into free positions.
    let mut free = layout.free_vertices();
    free.sort_by_key(|&v| windows.earliest[v as usize]);
    let mut next = free.iter().peekable();
    let mut ready: BinaryHeap<Reverse<(u32, u32)>> = BinaryHeap::new();
    let first_free = layout.left().len() as u32 + 1;
    let last_free = n - layout.right().len() as u32;
    for position in first_free..=last_free {
        while let Some(&&v) = next.peek() {
            if windows.earliest[v as usize] <= position {
                ready.push(Reverse((windows.latest[v as usize], v)));
                next.next();
            } else {
                break;
            }
        }
        match ready.pop() {
            Some(Reverse((latest, _))) if latest >= position => {}
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandwidth::graph::Graph;

    /// Five vertices, hub 1 adjacent to everything, plus edges 3-4 and 2-4.
    /// Vertices 0..=4 play the roles a..=e.
    fn hub_graph() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (1, 4), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn latest_positions_with_anchor_fixed_left() {
        // c fixed first, phi = 2: the two distance-1 neighbors must share the
        // two slots below position 4, capping vertex d at 4 and a at 5.
        let g = hub_graph();
        let layout = PartialLayout::from_parts(5, vec![2], vec![]).unwrap();
        let ell = ell_bounds(&g, &layout, 2).unwrap();
        assert_eq!(ell[2], 1);
        assert_eq!(ell[1], 3); // b
        assert_eq!(ell[4], 3); // e
        assert_eq!(ell[3], 4); // d
        assert_eq!(ell[0], 5); // a
    }

    #[test]
    fn latest_positions_infeasible_at_phi_one() {
        let g = hub_graph();
        let layout = PartialLayout::from_parts(5, vec![2], vec![]).unwrap();
        assert!(ell_bounds(&g, &layout, 1).is_none());
    }

    #[test]
    fn empty_left_prefix_is_unconstrained() {
        let g = hub_graph();
        let layout = PartialLayout::empty(5);
        assert_eq!(ell_bounds(&g, &layout, 0).unwrap(), vec![5; 5]);
    }

    #[test]
    fn earliest_positions_mirror_the_worked_case() {
        // c fixed to the last position instead; everything reflects.
        let g = hub_graph();
        let layout = PartialLayout::from_parts(5, vec![], vec![2]).unwrap();
        let f = f_bounds(&g, &layout, 2).unwrap();
        assert_eq!(f[2], 5);
        assert_eq!(f[1], 3); // b
        assert_eq!(f[4], 3); // e
        assert_eq!(f[3], 2); // d
        assert_eq!(f[0], 1); // a
    }

    #[test]
    fn earliest_positions_with_empty_right_suffix() {
        let g = hub_graph();
        let layout = PartialLayout::from_parts(5, vec![2], vec![]).unwrap();
        let f = f_bounds(&g, &layout, 2).unwrap();
        assert_eq!(&f[..], &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn mirror_identity_between_sides() {
        let g = hub_graph();
        let layout = PartialLayout::from_parts(5, vec![0], vec![4, 1]).unwrap();
        for phi in 1..5 {
            let f = f_bounds(&g, &layout, phi);
            let ell_mirror = ell_bounds(&g, &layout.mirrored(), phi);
            match (f, ell_mirror) {
                (Some(f), Some(ell)) => {
                    for v in 0..5 {
                        assert_eq!(f[v], 6 - ell[v], "phi={phi} v={v}");
                    }
                }
                (None, None) => {}
                other => panic!("sides disagree on feasibility: {other:?}"),
            }
        }
    }

    #[test]
    fn feasibility_on_worked_case() {
        let g = hub_graph();
        let layout = PartialLayout::from_parts(5, vec![2], vec![]).unwrap();
        assert!(layout_feasible(&g, &layout, 2));
        assert!(!layout_feasible(&g, &layout, 1));
    }

    #[test]
    fn empty_layout_always_feasible_at_n_minus_one() {
        let g = hub_graph();
        assert!(layout_feasible(&g, &PartialLayout::empty(5), 4));
    }

    #[test]
    fn fixed_edge_spans_are_checked() {
        // path 0-1-2-3; fixing 0 then 2 on the left puts the edge 1-2 fine
        // but 0-1 forces position |1 - p1| <= phi; with 0 at 1 and 1 free it
        // is the left-internal edge 0-2 at span 1 that matters -- make a
        // direct case: 0 and 3 adjacent, fixed at positions 1 and 2? they are
        // not adjacent. Use 0,1 fixed at distance-violating spots.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let layout = PartialLayout::from_parts(4, vec![0, 2, 1], vec![]).unwrap();
        // edge (0,1): positions 1 and 3, span 2
        assert!(!layout_feasible(&g, &layout, 1));
        assert!(layout_feasible(&g, &layout, 2));
    }

    /// Naive reference for `latest_anchor`: scan anchors downward and run the
    /// earliest-deadline check directly.
    fn latest_anchor_naive(n: u32, phi: u32, deadlines: &[u32]) -> Option<u32> {
        'anchor: for p in (1..=n).rev() {
            let start = 1.max(p.saturating_sub(phi));
            let mut slot = start;
            for &d in deadlines {
                let capped = d.min(p - 1);
                if capped < start || slot > capped {
                    continue 'anchor;
                }
                slot += 1;
            }
            return Some(p);
        }
        None
    }

    #[test]
    fn closed_form_anchor_matches_naive_scan() {
        for n in 1..=7u32 {
            for phi in 0..=n + 1 {
                // all sorted deadline multisets of size <= 3
                let mut stack = vec![vec![]];
                while let Some(ds) = stack.pop() {
                    let got = latest_anchor(n, phi, &ds);
                    let want = latest_anchor_naive(n, phi, &ds);
                    assert_eq!(got, want, "n={n} phi={phi} deadlines={ds:?}");
                    if ds.len() < 3 {
                        let lo = ds.last().copied().unwrap_or(1);
                        for d in lo..=n {
                            let mut next = ds.clone();
                            next.push(d);
                            stack.push(next);
                        }
                    }
                }
            }
        }
    }
}
