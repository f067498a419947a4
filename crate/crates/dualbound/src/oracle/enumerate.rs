use super::OracleError;
use crate::dual::{DomainSpec, DomainValue, LabelSelector, RelaxationOracle, VarId};
use crate::Bound;

/// Caps for the exhaustive structures in this module.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationCaps {
    /// Largest full branching tree that will be materialized.
    pub tree_nodes: usize,
    /// Largest number of saturated trees that will be yielded.
    pub trees: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            tree_nodes: 1_000_000,
            trees: 1_000_000,
        }
    }
}

struct FullNode {
    parent: Option<usize>,
    value: Bound,
    terminal: bool,
    children: Vec<usize>,
}

/// The complete branching tree of a problem under a fixed selector, with
/// monotone relaxation values at every node.
///
/// Because the selector is fixed, every saturated tree the search engine can
/// build is a prefix-closed set of this tree's expandable nodes. That turns
/// questions about all reachable trees into counting: a bound `b` is proved
/// exactly when every expandable node with value below `b` has been expanded,
/// so the smallest tree proving `b` has size `|{u : value(u) < b}|`
/// ([`FixedSelectorTree::min_expansions_to_prove`]), and the best bound for a
/// node budget follows by inverting that count
/// ([`FixedSelectorTree::best_bound_within`]).
pub struct FixedSelectorTree {
    nodes: Vec<FullNode>,
    optimum: Bound,
}

impl FixedSelectorTree {
    pub fn build(
        domain: &impl DomainSpec,
        oracle: &impl RelaxationOracle,
        selector: &impl LabelSelector,
        caps: EnumerationCaps,
    ) -> Result<Self, OracleError> {
        let n = domain.variable_count();
        assert!(n >= 1);
        let root_value = oracle.value_of(&[]);
        let mut nodes = vec![FullNode {
            parent: None,
            value: root_value,
            terminal: false,
            children: Vec::new(),
        }];
        // depth-first materialization; parents always get smaller ids
        let mut assignment: Vec<(VarId, DomainValue)> = Vec::new();
        if root_value.is_finite() {
            Self::grow(
                domain,
                oracle,
                selector,
                &mut nodes,
                0,
                1,
                &mut assignment,
                caps.tree_nodes,
            )?;
        }
        let optimum = nodes
            .iter()
            .filter(|node| node.terminal)
            .map(|node| node.value)
            .min()
            .unwrap_or(Bound::Infinite);
        Ok(FixedSelectorTree { nodes, optimum })
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        domain: &impl DomainSpec,
        oracle: &impl RelaxationOracle,
        selector: &impl LabelSelector,
        nodes: &mut Vec<FullNode>,
        id: usize,
        level: u32,
        assignment: &mut Vec<(VarId, DomainValue)>,
        node_cap: usize,
    ) -> Result<(), OracleError> {
        let label = selector.choose_label(assignment);
        debug_assert!(assignment.iter().all(|&(var, _)| var != label));
        let terminal = level as usize == domain.variable_count();
        let parent_value = nodes[id].value;
        for value in 0..domain.domain_size(label) {
            assignment.push((label, value));
            let child_value = parent_value.max(oracle.value_of(assignment));
            let child_id = nodes.len();
            if child_id >= node_cap {
                return Err(OracleError::TreeCapExceeded { cap: node_cap });
            }
            nodes.push(FullNode {
                parent: Some(id),
                value: child_value,
                terminal,
                children: Vec::new(),
            });
            nodes[id].children.push(child_id);
            if !terminal && child_value.is_finite() {
                Self::grow(
                    domain,
                    oracle,
                    selector,
                    nodes,
                    child_id,
                    level + 1,
                    assignment,
                    node_cap,
                )?;
            }
            assignment.pop();
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// The optimal objective value: the minimum over terminal nodes, infinite
    /// when the problem is infeasible.
    pub fn optimum(&self) -> Bound {
        self.optimum
    }

    fn expandable(&self, id: usize) -> bool {
        let node = &self.nodes[id];
        !node.terminal && node.value.is_finite()
    }

    /// Number of expansions in the smallest tree proving `target`, or `None`
    /// when no tree proves it (`target` exceeds the optimum).
    pub fn min_expansions_to_prove(&self, target: Bound) -> Option<usize> {
        if target > self.optimum {
            return None;
        }
        Some(
            (0..self.nodes.len())
                .filter(|&id| self.expandable(id) && self.nodes[id].value < target)
                .count(),
        )
    }

    /// The tightest bound provable by any tree with at most `budget`
    /// expansions.
    pub fn best_bound_within(&self, budget: usize) -> Bound {
        for &level in self.bound_levels().iter().rev() {
            if self
                .min_expansions_to_prove(level)
                .is_some_and(|need| need <= budget)
            {
                return level;
            }
        }
        // the empty tree proves the root value
        self.nodes[0].value
    }

    /// All proveable bound values in increasing order: the distinct node
    /// values up to and including the optimum.
    pub fn bound_levels(&self) -> Vec<Bound> {
        let mut levels: Vec<Bound> = self
            .nodes
            .iter()
            .map(|node| node.value)
            .filter(|&value| value <= self.optimum)
            .collect();
        levels.push(self.optimum);
        levels.sort_unstable();
        levels.dedup();
        levels
    }
}

/// One saturated tree from the enumeration: which nodes of the full tree were
/// expanded, and the bound the tree proves.
#[derive(Clone, Debug)]
pub struct SaturatedTreeSummary {
    /// Ids (into the full tree) of the expanded nodes, in ascending order.
    pub expanded: Vec<usize>,
    pub theta: Bound,
    pub expansions: usize,
}

/// Every saturated branching tree reachable under a fixed selector with at
/// most `max_expansions` expansions, together with the bound each proves.
///
/// Saturated trees correspond to prefix-closed sets of expandable nodes of
/// the full tree; the enumeration adds nodes in ascending id order so each
/// set appears exactly once. The count explodes quickly — this is an oracle
/// for desk-size instances and aborts beyond `caps.trees` results.
pub fn enumerate_saturated_trees(
    domain: &impl DomainSpec,
    oracle: &impl RelaxationOracle,
    selector: &impl LabelSelector,
    max_expansions: usize,
    caps: EnumerationCaps,
) -> Result<Vec<SaturatedTreeSummary>, OracleError> {
    let full = FixedSelectorTree::build(domain, oracle, selector, caps)?;
    let mut results = Vec::new();
    let mut in_set = vec![false; full.nodes.len()];
    let mut set: Vec<usize> = Vec::new();
    enumerate_from(&full, &mut set, &mut in_set, 0, max_expansions, caps.trees, &mut results)?;
    Ok(results)
}

fn enumerate_from(
    full: &FixedSelectorTree,
    set: &mut Vec<usize>,
    in_set: &mut [bool],
    next_candidate: usize,
    remaining: usize,
    cap: usize,
    results: &mut Vec<SaturatedTreeSummary>,
) -> Result<(), OracleError> {
    if results.len() >= cap {
        return Err(OracleError::EnumerationCapExceeded { cap });
    }
    results.push(SaturatedTreeSummary {
        expanded: set.clone(),
        theta: theta_of(full, set, in_set),
        expansions: set.len(),
    });
    if remaining == 0 {
        return Ok(());
    }
    for id in next_candidate..full.nodes.len() {
        if !full.expandable(id) {
            continue;
        }
        let rooted = match full.nodes[id].parent {
            None => true,
            Some(parent) => in_set[parent],
        };
        if !rooted {
            continue;
        }
        set.push(id);
        in_set[id] = true;
        enumerate_from(full, set, in_set, id + 1, remaining - 1, cap, results)?;
        in_set[id] = false;
        set.pop();
    }
    Ok(())
}

/// Dual value of the saturated tree expanding exactly `set`: the minimum
/// value over materialized nodes that are open or terminal.
fn theta_of(full: &FixedSelectorTree, set: &[usize], in_set: &[bool]) -> Bound {
    if set.is_empty() {
        return full.nodes[0].value;
    }
    let mut theta = Bound::Infinite;
    for &id in set {
        for &child in &full.nodes[id].children {
            if !in_set[child] {
                theta = theta.min(full.nodes[child].value);
            }
        }
    }
    theta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::scripted::ScriptedOracle;
    use crate::dual::NaturalOrderSelector;

    #[test]
    fn depth_one_problem_yields_exactly_two_trees() {
        let oracle = ScriptedOracle::new(1, 2, Bound::Finite(1), [
            (vec![(0, 0)], Bound::Finite(3)),
            (vec![(0, 1)], Bound::Finite(5)),
        ]);
        let trees = enumerate_saturated_trees(
            &oracle,
            &oracle,
            &NaturalOrderSelector,
            usize::MAX,
            EnumerationCaps::default(),
        )
        .unwrap();
        assert_eq!(trees.len(), 2);
        assert_eq!(trees[0].expansions, 0);
        assert_eq!(trees[0].theta, Bound::Finite(1));
        assert_eq!(trees[1].expansions, 1);
        assert_eq!(trees[1].theta, Bound::Finite(3));
    }

    #[test]
    fn zero_budget_yields_only_the_root_tree() {
        let oracle = ScriptedOracle::new(2, 2, Bound::Finite(4), []);
        let trees = enumerate_saturated_trees(
            &oracle,
            &oracle,
            &NaturalOrderSelector,
            0,
            EnumerationCaps::default(),
        )
        .unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].theta, Bound::Finite(4));
    }

    #[test]
    fn closed_form_matches_enumeration_extrema() {
        // small scripted problem with uneven values
        let oracle = ScriptedOracle::new(3, 2, Bound::Finite(0), [
            (vec![(0, 0)], Bound::Finite(1)),
            (vec![(0, 1)], Bound::Finite(2)),
            (vec![(0, 0), (1, 0)], Bound::Finite(3)),
            (vec![(0, 0), (1, 1)], Bound::Finite(1)),
            (vec![(0, 1), (1, 0)], Bound::Infinite),
            (vec![(0, 0), (1, 1), (2, 0)], Bound::Finite(4)),
        ]);
        let selector = NaturalOrderSelector;
        let caps = EnumerationCaps::default();
        let full = FixedSelectorTree::build(&oracle, &oracle, &selector, caps).unwrap();
        let trees =
            enumerate_saturated_trees(&oracle, &oracle, &selector, usize::MAX, caps).unwrap();

        for budget in 0..8 {
            let best = trees
                .iter()
                .filter(|t| t.expansions <= budget)
                .map(|t| t.theta)
                .max()
                .unwrap();
            assert_eq!(full.best_bound_within(budget), best, "budget {budget}");
        }
        for &level in &full.bound_levels() {
            let smallest = trees
                .iter()
                .filter(|t| t.theta >= level)
                .map(|t| t.expansions)
                .min();
            assert_eq!(
                full.min_expansions_to_prove(level),
                smallest,
                "level {level}"
            );
        }
    }
}
