use std::collections::BTreeSet;

use thiserror::Error;

use super::problem::{DomainSpec, DomainValue, RelaxationOracle, VarId};
use crate::Bound;

/// Arena index of a node. Ids double as insertion sequence numbers: a smaller
/// id was created earlier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Debug, Error)]
pub enum ExpandError {
    #[error("variable {0} already occurs on the path to this node")]
    LabelOnPath(VarId),
    #[error("node is already closed")]
    NodeClosed,
    #[error("terminal nodes cannot be expanded")]
    NodeTerminal,
    #[error("infeasible nodes cannot be expanded")]
    NodeInfeasible,
    #[error("variable {0} is out of range")]
    UnknownVariable(VarId),
}

/// One node of a branching tree.
#[derive(Clone, Debug)]
pub struct BranchNode {
    parent: Option<NodeId>,
    /// Domain value carried by the arc from the parent (root: none).
    arc_value: Option<DomainValue>,
    /// Variable branched on here; set when the node is expanded, never on
    /// terminal nodes.
    label: Option<VarId>,
    /// Relaxation value, already made monotone along the path.
    value: Bound,
    /// Root is on level 1; terminal nodes on level n + 1.
    level: u32,
    terminal: bool,
    children: Vec<(DomainValue, NodeId)>,
}

impl BranchNode {
    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn arc_value(&self) -> Option<DomainValue> {
        self.arc_value
    }

    pub fn label(&self) -> Option<VarId> {
        self.label
    }

    pub fn value(&self) -> Bound {
        self.value
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    /// Closed means branched on (all children materialized) or terminal.
    pub fn is_closed(&self) -> bool {
        self.terminal || self.label.is_some()
    }

    pub fn is_open(&self) -> bool {
        !self.is_closed()
    }

    pub fn is_feasible(&self) -> bool {
        self.value.is_finite()
    }

    /// Children as (arc value, node id) pairs in domain-value order.
    pub fn children(&self) -> &[(DomainValue, NodeId)] {
        &self.children
    }
}

/// A partial branching tree: the state of a dual search.
///
/// Expanding a node materializes one child per domain value in a single step,
/// so every node is either unbranched (open) or fully branched (closed), and
/// the tree is saturated at all times. Children whose relaxation value is
/// infinite are kept as records but never join the frontier.
pub struct BranchTree {
    nodes: Vec<BranchNode>,
    root: NodeId,
    variable_count: usize,
    /// Open feasible nodes ordered by (relaxation value, insertion order).
    frontier: BTreeSet<(Bound, NodeId)>,
    /// Minimum relaxation value over terminal nodes created so far.
    terminal_min: Bound,
    max_frontier: usize,
}

impl BranchTree {
    /// A single-root tree for the given problem. The root's value is the
    /// relaxation of the empty assignment.
    pub fn new(domain: &impl DomainSpec, oracle: &impl RelaxationOracle) -> Self {
        let n = domain.variable_count();
        assert!(n >= 1, "problems must have at least one variable");
        let root_value = oracle.value_of(&[]);
        let root = BranchNode {
            parent: None,
            arc_value: None,
            label: None,
            value: root_value,
            level: 1,
            terminal: false,
            children: Vec::new(),
        };
        let mut frontier = BTreeSet::new();
        if root_value.is_finite() {
            frontier.insert((root_value, NodeId(0)));
        }
        let max_frontier = frontier.len();
        BranchTree {
            nodes: vec![root],
            root: NodeId(0),
            variable_count: n,
            frontier,
            terminal_min: Bound::Infinite,
            max_frontier,
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &BranchNode {
        &self.nodes[id.0]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    /// Current number of open feasible nodes.
    pub fn frontier_len(&self) -> usize {
        self.frontier.len()
    }

    /// Peak frontier size since construction.
    pub fn max_frontier(&self) -> usize {
        self.max_frontier
    }

    /// Best (smallest) terminal relaxation value seen, infinite if none.
    pub fn terminal_min(&self) -> Bound {
        self.terminal_min
    }

    /// Open feasible nodes in (value, insertion) order.
    pub fn open_feasible(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.frontier.iter().map(|&(_, id)| id)
    }

    /// The bound this tree proves: the minimum relaxation value over open and
    /// terminal nodes, infinite when no such node is feasible.
    pub fn dual_value(&self) -> Bound {
        let open_min = self
            .frontier
            .first()
            .map_or(Bound::Infinite, |&(value, _)| value);
        open_min.min(self.terminal_min)
    }

    /// Whether some terminal node attains the dual value, which makes the
    /// bound optimal.
    pub fn has_optimal_terminal(&self) -> bool {
        self.terminal_min.is_finite() && self.terminal_min == self.dual_value()
    }

    /// No feasible open or terminal node left: the problem is infeasible.
    pub fn is_exhausted(&self) -> bool {
        self.frontier.is_empty() && self.terminal_min.is_infinite()
    }

    /// Open nodes whose value equals the current dual value, in frontier
    /// order. Only expanding these can raise the bound.
    pub fn eligible_nodes(&self) -> Vec<NodeId> {
        let theta = self.dual_value();
        self.frontier
            .iter()
            .take_while(|&&(value, _)| value == theta)
            .map(|&(_, id)| id)
            .collect()
    }

    /// The partial assignment along the path from the root, in path order.
    pub fn assignment_of(&self, id: NodeId) -> Vec<(VarId, DomainValue)> {
        let mut pairs = Vec::new();
        let mut cursor = id;
        while let Some(parent) = self.nodes[cursor.0].parent {
            let var = self.nodes[parent.0]
                .label
                .expect("parent of a materialized node is labeled");
            let value = self.nodes[cursor.0]
                .arc_value
                .expect("non-root node has an arc value");
            pairs.push((var, value));
            cursor = parent;
        }
        pairs.reverse();
        pairs
    }

    /// Brands `node` with `label` and materializes one child per domain
    /// value. Child values are made monotone (`max` with the parent); finite
    /// nonterminal children join the frontier, terminal children update the
    /// terminal minimum, infinite children are recorded but stay out of the
    /// frontier. Returns the new node ids in domain-value order.
    pub fn expand(
        &mut self,
        domain: &impl DomainSpec,
        oracle: &impl RelaxationOracle,
        id: NodeId,
        label: VarId,
    ) -> Result<Vec<NodeId>, ExpandError> {
        if label >= self.variable_count {
            return Err(ExpandError::UnknownVariable(label));
        }
        {
            let node = &self.nodes[id.0];
            if node.terminal {
                return Err(ExpandError::NodeTerminal);
            }
            if node.label.is_some() {
                return Err(ExpandError::NodeClosed);
            }
            if !node.is_feasible() {
                return Err(ExpandError::NodeInfeasible);
            }
        }
        let mut assignment = self.assignment_of(id);
        if assignment.iter().any(|&(var, _)| var == label) {
            return Err(ExpandError::LabelOnPath(label));
        }

        let parent_value = self.nodes[id.0].value;
        let parent_level = self.nodes[id.0].level;
        let terminal = parent_level as usize == self.variable_count;

        self.nodes[id.0].label = Some(label);
        self.frontier.remove(&(parent_value, id));

        let mut created = Vec::with_capacity(domain.domain_size(label));
        assignment.push((label, 0));
        for value in 0..domain.domain_size(label) {
            assignment.last_mut().expect("just pushed").1 = value;
            let raw = oracle.value_of(&assignment);
            let child_value = parent_value.max(raw);
            let child_id = NodeId(self.nodes.len());
            self.nodes.push(BranchNode {
                parent: Some(id),
                arc_value: Some(value),
                label: None,
                value: child_value,
                level: parent_level + 1,
                terminal,
                children: Vec::new(),
            });
            self.nodes[id.0].children.push((value, child_id));
            if terminal {
                self.terminal_min = self.terminal_min.min(child_value);
            } else if child_value.is_finite() {
                self.frontier.insert((child_value, child_id));
            }
            created.push(child_id);
        }
        self.max_frontier = self.max_frontier.max(self.frontier.len());
        Ok(created)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::scripted::ScriptedOracle;

    #[test]
    fn root_only_dual_value() {
        let oracle = ScriptedOracle::new(2, 2, Bound::Finite(3), []);
        let tree = BranchTree::new(&oracle, &oracle);
        assert_eq!(tree.dual_value(), Bound::Finite(3));
        assert_eq!(tree.frontier_len(), 1);
    }

    #[test]
    fn expand_rejects_label_on_path_and_closed_nodes() {
        let oracle = ScriptedOracle::new(2, 2, Bound::Finite(0), []);
        let mut tree = BranchTree::new(&oracle, &oracle);
        let root = tree.root();
        let children = tree.expand(&oracle, &oracle, root, 0).unwrap();
        assert!(matches!(
            tree.expand(&oracle, &oracle, root, 1),
            Err(ExpandError::NodeClosed)
        ));
        assert!(matches!(
            tree.expand(&oracle, &oracle, children[0], 0),
            Err(ExpandError::LabelOnPath(0))
        ));
    }

    #[test]
    fn one_variable_problem_expands_to_terminals() {
        // single variable, two values; terminal values are the objective
        let oracle = ScriptedOracle::new(1, 2, Bound::Finite(1), [
            (vec![(0, 0)], Bound::Finite(5)),
            (vec![(0, 1)], Bound::Finite(2)),
        ]);
        let mut tree = BranchTree::new(&oracle, &oracle);
        let children = tree.expand(&oracle, &oracle, tree.root(), 0).unwrap();
        assert_eq!(children.len(), 2);
        assert!(tree.node(children[0]).is_terminal());
        assert_eq!(tree.node(children[0]).value(), Bound::Finite(5));
        assert_eq!(tree.node(children[1]).value(), Bound::Finite(2));
        assert_eq!(tree.dual_value(), Bound::Finite(2));
        assert!(tree.has_optimal_terminal());
        assert_eq!(tree.frontier_len(), 0);
    }

    #[test]
    fn dead_branch_contributes_nothing() {
        // every child of the root is infeasible
        let oracle = ScriptedOracle::new(2, 2, Bound::Finite(1), [
            (vec![(0, 0)], Bound::Infinite),
            (vec![(0, 1)], Bound::Infinite),
        ]);
        let mut tree = BranchTree::new(&oracle, &oracle);
        let children = tree.expand(&oracle, &oracle, tree.root(), 0).unwrap();
        assert_eq!(children.len(), 2);
        assert_eq!(tree.frontier_len(), 0);
        assert_eq!(tree.dual_value(), Bound::Infinite);
        assert!(tree.is_exhausted());
    }

    #[test]
    fn monotonicity_is_enforced_against_a_sagging_oracle() {
        // raw child value dips below the parent; stored value must not
        let oracle = ScriptedOracle::new(2, 2, Bound::Finite(4), [
            (vec![(0, 0)], Bound::Finite(1)),
            (vec![(0, 1)], Bound::Finite(9)),
        ]);
        let mut tree = BranchTree::new(&oracle, &oracle);
        let children = tree.expand(&oracle, &oracle, tree.root(), 0).unwrap();
        assert_eq!(tree.node(children[0]).value(), Bound::Finite(4));
        assert_eq!(tree.node(children[1]).value(), Bound::Finite(9));
    }
}
