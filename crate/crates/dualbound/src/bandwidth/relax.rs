use std::cell::RefCell;
use std::collections::HashMap;

use super::graph::Graph;
use super::layout::{bandwidth, PartialLayout};
use super::windows::layout_feasible;
use crate::dual::{DomainSpec, DomainValue, LabelSelector, RelaxationOracle, VarId};
use crate::Bound;

/// Which end of the arrangement receives the next vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Lower bound on the bandwidth of any completion of `layout`.
///
/// Complete layouts are scored exactly. Otherwise this is the smallest trial
/// bandwidth accepted by [`layout_feasible`], found by binary search
/// (feasibility is monotone in the trial value), and clamped from below by
/// the graph's static lower bound so that weakly constrained layouts still
/// carry useful values.
pub fn relaxation_value(graph: &Graph, layout: &PartialLayout) -> Bound {
    debug_assert_eq!(graph.vertex_count(), layout.n());
    if layout.is_complete() {
        let arrangement = layout.arrangement().expect("complete");
        return Bound::from(bandwidth(graph, &arrangement));
    }
    let n = graph.vertex_count() as u32;
    let floor = graph.static_lower_bound();
    if layout_feasible(graph, layout, floor) {
        return Bound::from(floor);
    }
    let mut lo = floor + 1;
    let mut hi = n - 1;
    if !layout_feasible(graph, layout, hi) {
        // cannot happen for a valid endpoint layout: every completion has
        // bandwidth at most n - 1
        debug_assert!(false, "valid layout infeasible at the trivial bandwidth");
        return Bound::Infinite;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if layout_feasible(graph, layout, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Bound::from(lo)
}

/// Fixed alternating branching order: fill the left end, then the right,
/// keeping the two ends balanced. Yields positions `1, n, 2, n-1, ...`.
pub fn select_label_layered(layout: &PartialLayout) -> Side {
    debug_assert!(!layout.is_complete());
    if layout.left().len() <= layout.right().len() {
        Side::Left
    } else {
        Side::Right
    }
}

/// Lookahead branching order: score both candidate ends by the smallest
/// relaxation value among the children each would create, and pick the end
/// with the larger minimum. Ties go left.
pub fn select_label_greedy(graph: &Graph, layout: &PartialLayout) -> Side {
    bandwidth_domain(graph).greedy_side(layout)
}

/// Why an assignment could not be turned into a partial layout.
#[derive(Debug)]
pub(crate) enum LayoutConversion {
    /// Some vertex is placed twice; the child is infeasible.
    DuplicateVertex,
    /// Assigned positions do not form a prefix plus a suffix.
    NotEndpointShaped,
}

/// The bandwidth problem exposed to the dual engine.
///
/// Variables are positions (variable `i` is position `i + 1`), domains are
/// the vertices, and the relaxation is [`relaxation_value`] on the layout an
/// assignment encodes. Assigning an already-placed vertex gives an infeasible
/// child. Only endpoint-shaped assignments (a prefix of positions from the
/// left plus a suffix from the right) are supported, which is what the
/// selectors in this module produce.
pub struct BandwidthDual<'g> {
    graph: &'g Graph,
    memo: Option<RefCell<HashMap<PartialLayout, Bound>>>,
}

/// Adapter entry point: the graph as a finite-domain problem plus relaxation.
pub fn bandwidth_domain(graph: &Graph) -> BandwidthDual<'_> {
    BandwidthDual { graph, memo: None }
}

impl<'g> BandwidthDual<'g> {
    /// Caches relaxation values by layout. History independence of the
    /// relaxation makes this safe; it pays off with the greedy selector,
    /// whose lookahead scores the same layouts the expansion then creates.
    pub fn with_memo(mut self) -> Self {
        self.memo = Some(RefCell::new(HashMap::new()));
        self
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    fn value_of_layout(&self, layout: PartialLayout) -> Bound {
        match &self.memo {
            None => relaxation_value(self.graph, &layout),
            Some(memo) => {
                if let Some(&value) = memo.borrow().get(&layout) {
                    return value;
                }
                let value = relaxation_value(self.graph, &layout);
                memo.borrow_mut().insert(layout, value);
                value
            }
        }
    }

    pub(crate) fn layout_of(
        &self,
        assignment: &[(VarId, DomainValue)],
    ) -> Result<PartialLayout, LayoutConversion> {
        let n = self.graph.vertex_count();
        let mut by_position: Vec<Option<u32>> = vec![None; n];
        for &(var, value) in assignment {
            debug_assert!(var < n && value < n);
            by_position[var] = Some(value as u32);
        }
        let mut left = Vec::new();
        let mut lo = 0;
        while lo < n {
            match by_position[lo] {
                Some(v) => left.push(v),
                None => break,
            }
            lo += 1;
        }
        let mut right = Vec::new();
        let mut hi = n;
        while hi > lo {
            match by_position[hi - 1] {
                Some(v) => right.push(v),
                None => break,
            }
            hi -= 1;
        }
        if left.len() + right.len() != assignment.len() {
            return Err(LayoutConversion::NotEndpointShaped);
        }
        PartialLayout::from_parts(n, left, right)
            .map_err(|_| LayoutConversion::DuplicateVertex)
    }

    fn greedy_side(&self, layout: &PartialLayout) -> Side {
        assert!(!layout.is_complete());
        let free = layout.free_vertices();
        let min_child = |side: Side| -> Bound {
            free.iter()
                .map(|&v| {
                    let child = match side {
                        Side::Left => layout.with_left(v),
                        Side::Right => layout.with_right(v),
                    }
                    .expect("free vertex");
                    self.value_of_layout(child)
                })
                .min()
                .expect("at least one free vertex")
        };
        if layout.free_count() == 1 {
            // both ends name the same position
            return Side::Left;
        }
        if min_child(Side::Left) >= min_child(Side::Right) {
            Side::Left
        } else {
            Side::Right
        }
    }
}

impl DomainSpec for BandwidthDual<'_> {
    fn variable_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn domain_size(&self, _var: VarId) -> usize {
        self.graph.vertex_count()
    }
}

impl RelaxationOracle for BandwidthDual<'_> {
    fn value_of(&self, assignment: &[(VarId, DomainValue)]) -> Bound {
        match self.layout_of(assignment) {
            Ok(layout) => self.value_of_layout(layout),
            Err(LayoutConversion::DuplicateVertex) => Bound::Infinite,
            Err(LayoutConversion::NotEndpointShaped) => {
                panic!("bandwidth relaxation requires endpoint-shaped assignments")
            }
        }
    }

    fn is_terminal_assignment(&self, assignment: &[(VarId, DomainValue)]) -> bool {
        assignment.len() == self.graph.vertex_count()
    }
}

/// Converts a side choice into the engine's variable index for a layout.
fn side_to_var(layout: &PartialLayout, side: Side) -> VarId {
    match side {
        Side::Left => layout.left().len(),
        Side::Right => layout.n() - 1 - layout.right().len(),
    }
}

/// Engine selector for the fixed alternating order. The choice depends only
/// on the node's level, so worst-bound search inherits its optimality
/// guarantees.
pub struct LayeredEndpointSelector<'g> {
    model: BandwidthDual<'g>,
}

impl<'g> LayeredEndpointSelector<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        LayeredEndpointSelector {
            model: bandwidth_domain(graph),
        }
    }
}

impl LabelSelector for LayeredEndpointSelector<'_> {
    fn choose_label(&self, assignment: &[(VarId, DomainValue)]) -> VarId {
        let layout = self
            .model
            .layout_of(assignment)
            .unwrap_or_else(|_| panic!("selector invoked off the endpoint path"));
        side_to_var(&layout, select_label_layered(&layout))
    }
}

/// Engine selector for the greedy lookahead order. Shares the model (and its
/// memo) with the search so lookahead values are reused at expansion time.
pub struct GreedyEndpointSelector<'m, 'g> {
    model: &'m BandwidthDual<'g>,
}

impl<'m, 'g> GreedyEndpointSelector<'m, 'g> {
    pub fn new(model: &'m BandwidthDual<'g>) -> Self {
        GreedyEndpointSelector { model }
    }
}

impl LabelSelector for GreedyEndpointSelector<'_, '_> {
    fn choose_label(&self, assignment: &[(VarId, DomainValue)]) -> VarId {
        let layout = self
            .model
            .layout_of(assignment)
            .unwrap_or_else(|_| panic!("selector invoked off the endpoint path"));
        side_to_var(&layout, self.model.greedy_side(&layout))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Five vertices, hub 1 adjacent to everything, plus edges 3-4 and 2-4.
    fn hub_graph() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (1, 4), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn worked_case_relaxation_values() {
        let g = hub_graph();
        let anchored = PartialLayout::from_parts(5, vec![2], vec![]).unwrap();
        assert_eq!(relaxation_value(&g, &anchored), Bound::Finite(2));
        // empty layout: the binary search alone would allow 0, the static
        // clamp lifts it to 2
        assert_eq!(relaxation_value(&g, &PartialLayout::empty(5)), Bound::Finite(2));
        assert!(layout_feasible(&g, &PartialLayout::empty(5), 0));
    }

    #[test]
    fn complete_layouts_score_exactly() {
        let g = hub_graph();
        // arrangement a,c,b,e,d as left prefix + right suffix
        let layout = PartialLayout::from_parts(5, vec![0, 2, 1], vec![3, 4]).unwrap();
        assert_eq!(relaxation_value(&g, &layout), Bound::Finite(2));
    }

    #[test]
    fn layered_selection_alternates() {
        let l0 = PartialLayout::empty(5);
        assert_eq!(select_label_layered(&l0), Side::Left);
        let l1 = l0.with_left(2).unwrap();
        assert_eq!(select_label_layered(&l1), Side::Right);
        let l2 = l1.with_right(0).unwrap();
        assert_eq!(select_label_layered(&l2), Side::Left);
        // 2 + 2 placed out of 5: left again, position 3
        let l4 = l2.with_left(1).unwrap().with_right(3).unwrap();
        assert_eq!(select_label_layered(&l4), Side::Left);
        assert_eq!(side_to_var(&l4, Side::Left), 2);
    }

    #[test]
    fn greedy_picks_the_larger_minimum() {
        let g = hub_graph();
        let layout = PartialLayout::empty(5);
        let side = select_label_greedy(&g, &layout);
        // verify directly against both candidates
        let score = |s: Side| {
            layout
                .free_vertices()
                .into_iter()
                .map(|v| {
                    let child = match s {
                        Side::Left => layout.with_left(v).unwrap(),
                        Side::Right => layout.with_right(v).unwrap(),
                    };
                    relaxation_value(&g, &child)
                })
                .min()
                .unwrap()
        };
        let (l, r) = (score(Side::Left), score(Side::Right));
        match side {
            Side::Left => assert!(l >= r),
            Side::Right => assert!(r > l),
        }
    }

    #[test]
    fn one_free_vertex_forces_left() {
        let g = hub_graph();
        let layout = PartialLayout::from_parts(5, vec![0, 1], vec![2, 3]).unwrap();
        assert_eq!(select_label_greedy(&g, &layout), Side::Left);
    }

    #[test]
    fn duplicate_vertex_assignment_is_infeasible() {
        let g = hub_graph();
        let model = bandwidth_domain(&g);
        assert_eq!(model.value_of(&[(0, 3)]), relaxation_value(&g, &PartialLayout::from_parts(5, vec![3], vec![]).unwrap()));
        assert_eq!(model.value_of(&[(0, 3), (4, 3)]), Bound::Infinite);
    }

    #[test]
    fn domain_shape_matches_the_graph() {
        let g = hub_graph();
        let model = bandwidth_domain(&g);
        assert_eq!(model.variable_count(), 5);
        assert_eq!(model.domain_size(3), 5);
        assert!(model.is_terminal_assignment(&[(0, 0), (4, 1), (1, 2), (3, 3), (2, 4)]));
    }
}
