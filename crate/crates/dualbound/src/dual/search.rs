use std::collections::BTreeSet;

use serde::de::{Deserializer, Error as DeError};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::problem::{DomainSpec, LabelSelector, RelaxationOracle};
use super::tree::{BranchTree, NodeId};
use crate::Bound;

/// Stopping rules for a dual search.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    max_expansions: usize,
    target_bound: Option<i64>,
}

impl SearchBudget {
    /// Run until the bound is proved optimal (or infeasibility is proved).
    pub fn unlimited() -> Self {
        SearchBudget {
            max_expansions: usize::MAX,
            target_bound: None,
        }
    }

    /// Stop after branching on `max_expansions` nodes.
    pub fn max_expansions(max_expansions: usize) -> Self {
        assert!(max_expansions >= 1, "budget must allow at least one expansion");
        SearchBudget {
            max_expansions,
            target_bound: None,
        }
    }

    /// Also stop as soon as the proved bound reaches `target`.
    pub fn with_target(mut self, target: i64) -> Self {
        self.target_bound = Some(target);
        self
    }

    pub fn expansion_limit(&self) -> usize {
        self.max_expansions
    }

    pub fn target(&self) -> Option<i64> {
        self.target_bound
    }

    fn target_met(&self, theta: Bound) -> bool {
        self.target_bound
            .is_some_and(|target| theta >= Bound::Finite(target))
    }
}

/// How a search run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// A terminal node attains the dual value: the bound is the optimum.
    Optimal,
    BudgetExhausted,
    TargetReached,
    /// No feasible open or terminal node remains.
    Infeasible,
}

/// Outcome of a dual search: the proved bound plus the run's accounting.
///
/// `trace` holds the bound as a step function of the expansion count: entries
/// are the change points `(expansions_so_far, bound)` starting at expansion 0,
/// and the bound recorded after every single expansion is recoverable via
/// [`BoundCertificate::bound_after`]. `frontier_peaks` tracks the running
/// maximum frontier size the same way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub proved_bound: Bound,
    pub status: SearchStatus,
    pub expansions: usize,
    pub max_frontier: usize,
    pub trace: Vec<(usize, Bound)>,
    pub frontier_peaks: Vec<(usize, usize)>,
    /// Best objective value among terminal nodes seen; a valid upper bound
    /// when present. The dual search never prunes with it.
    pub best_terminal: Option<i64>,
}

impl BoundCertificate {
    /// The proved bound after the first `expansions` expansions.
    pub fn bound_after(&self, expansions: usize) -> Bound {
        match self
            .trace
            .binary_search_by_key(&expansions, |&(count, _)| count)
        {
            Ok(i) => self.trace[i].1,
            Err(0) => self.trace.first().expect("trace never empty").1,
            Err(i) => self.trace[i - 1].1,
        }
    }

    /// First expansion count at which the bound reached `target`, if it did.
    pub fn first_reach(&self, target: i64) -> Option<usize> {
        self.trace
            .iter()
            .find(|&&(_, bound)| bound >= Bound::Finite(target))
            .map(|&(count, _)| count)
    }

    /// Running maximum frontier size after the first `expansions` expansions.
    pub fn frontier_peak_after(&self, expansions: usize) -> usize {
        match self
            .frontier_peaks
            .binary_search_by_key(&expansions, |&(count, _)| count)
        {
            Ok(i) => self.frontier_peaks[i].1,
            Err(0) => self.frontier_peaks.first().map_or(0, |&(_, peak)| peak),
            Err(i) => self.frontier_peaks[i - 1].1,
        }
    }
}

// Wire schema: {bound, status, expansions, max_frontier, trace}. The
// bookkeeping fields ride alongside in larger records, not here.
impl Serialize for BoundCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BoundCertificate", 5)?;
        s.serialize_field("bound", &self.proved_bound)?;
        s.serialize_field("status", &self.status)?;
        s.serialize_field("expansions", &self.expansions)?;
        s.serialize_field("max_frontier", &self.max_frontier)?;
        s.serialize_field("trace", &self.trace)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for BoundCertificate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            bound: Bound,
            status: SearchStatus,
            expansions: usize,
            max_frontier: usize,
            trace: Vec<(usize, Bound)>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.trace.is_empty() {
            return Err(D::Error::custom("certificate trace must be nonempty"));
        }
        Ok(BoundCertificate {
            proved_bound: wire.bound,
            status: wire.status,
            expansions: wire.expansions,
            max_frontier: wire.max_frontier,
            trace: wire.trace,
            frontier_peaks: vec![(0, wire.max_frontier)],
            best_terminal: None,
        })
    }
}

/// Result of one worst-bound iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    /// Nodes branched on in this iteration.
    pub expanded: usize,
    /// Dual value after the iteration.
    pub new_bound: Bound,
    /// A terminal node already attains the dual value; nothing was expanded.
    pub optimal_terminal_found: bool,
}

#[derive(Debug, Error)]
#[error("no feasible open or terminal node remains; the problem is infeasible")]
pub struct ExhaustedTree;

/// One iteration of worst-bound search: if a terminal node attains the dual
/// value the bound is optimal and nothing happens; otherwise every eligible
/// node (snapshot taken before any expansion) is branched on.
pub fn worst_bound_step(
    tree: &mut BranchTree,
    domain: &impl DomainSpec,
    oracle: &impl RelaxationOracle,
    selector: &impl LabelSelector,
) -> Result<StepOutcome, ExhaustedTree> {
    if tree.is_exhausted() {
        return Err(ExhaustedTree);
    }
    if tree.has_optimal_terminal() {
        return Ok(StepOutcome {
            expanded: 0,
            new_bound: tree.dual_value(),
            optimal_terminal_found: true,
        });
    }
    let eligible = tree.eligible_nodes();
    debug_assert!(!eligible.is_empty());
    for id in eligible.iter() {
        expand_with_selector(tree, domain, oracle, selector, *id);
    }
    Ok(StepOutcome {
        expanded: eligible.len(),
        new_bound: tree.dual_value(),
        optimal_terminal_found: false,
    })
}

fn expand_with_selector(
    tree: &mut BranchTree,
    domain: &impl DomainSpec,
    oracle: &impl RelaxationOracle,
    selector: &impl LabelSelector,
    id: NodeId,
) -> Vec<NodeId> {
    let assignment = tree.assignment_of(id);
    let label = selector.choose_label(&assignment);
    tree.expand(domain, oracle, id, label)
        .expect("selector must return an unused variable for an open feasible node")
}

struct Recorder {
    trace: Vec<(usize, Bound)>,
    peaks: Vec<(usize, usize)>,
}

impl Recorder {
    fn new(tree: &BranchTree) -> Self {
        Recorder {
            trace: vec![(0, tree.dual_value())],
            peaks: vec![(0, tree.max_frontier())],
        }
    }

    fn record(&mut self, expansions: usize, tree: &BranchTree) {
        let theta = tree.dual_value();
        if self.trace.last().expect("seeded").1 != theta {
            self.trace.push((expansions, theta));
        }
        let peak = tree.max_frontier();
        if self.peaks.last().expect("seeded").1 != peak {
            self.peaks.push((expansions, peak));
        }
    }

    fn into_certificate(
        self,
        tree: &BranchTree,
        status: SearchStatus,
        expansions: usize,
    ) -> BoundCertificate {
        BoundCertificate {
            proved_bound: tree.dual_value(),
            status,
            expansions,
            max_frontier: tree.max_frontier(),
            trace: self.trace,
            frontier_peaks: self.peaks,
            best_terminal: tree.terminal_min().finite(),
        }
    }
}

/// Worst-bound dual search: repeatedly branch on every open node whose value
/// equals the current bound, until the bound is optimal, a target is reached,
/// the budget runs out, or infeasibility is proved.
///
/// When the expansion budget lands mid-iteration, eligible nodes are
/// processed in frontier order and the iteration is cut after the node that
/// exhausts the budget.
pub fn run_worst_bound(
    domain: &impl DomainSpec,
    oracle: &impl RelaxationOracle,
    selector: &impl LabelSelector,
    budget: SearchBudget,
) -> BoundCertificate {
    let mut tree = BranchTree::new(domain, oracle);
    let mut recorder = Recorder::new(&tree);
    let mut expansions = 0usize;
    let status = 'run: loop {
        if tree.is_exhausted() {
            break SearchStatus::Infeasible;
        }
        if budget.target_met(tree.dual_value()) {
            break SearchStatus::TargetReached;
        }
        if tree.has_optimal_terminal() {
            break SearchStatus::Optimal;
        }
        if expansions >= budget.expansion_limit() {
            break SearchStatus::BudgetExhausted;
        }
        for id in tree.eligible_nodes() {
            if expansions >= budget.expansion_limit() {
                continue 'run;
            }
            expand_with_selector(&mut tree, domain, oracle, selector, id);
            expansions += 1;
            recorder.record(expansions, &tree);
            if budget.target_met(tree.dual_value()) {
                break 'run SearchStatus::TargetReached;
            }
        }
    };
    recorder.into_certificate(&tree, status, expansions)
}

#[derive(Clone, Copy)]
enum LevelOrder {
    DeepestFirst,
    ShallowestFirst,
}

/// Depth-first baseline: always branch on the deepest open feasible node,
/// ties broken by smaller relaxation value, then insertion order.
pub fn run_dfs(
    domain: &impl DomainSpec,
    oracle: &impl RelaxationOracle,
    selector: &impl LabelSelector,
    budget: SearchBudget,
) -> BoundCertificate {
    run_level_ordered(domain, oracle, selector, budget, LevelOrder::DeepestFirst)
}

/// Breadth-first baseline: always branch on the shallowest open feasible
/// node, ties broken by insertion order.
pub fn run_bfs(
    domain: &impl DomainSpec,
    oracle: &impl RelaxationOracle,
    selector: &impl LabelSelector,
    budget: SearchBudget,
) -> BoundCertificate {
    run_level_ordered(domain, oracle, selector, budget, LevelOrder::ShallowestFirst)
}

fn run_level_ordered(
    domain: &impl DomainSpec,
    oracle: &impl RelaxationOracle,
    selector: &impl LabelSelector,
    budget: SearchBudget,
    order: LevelOrder,
) -> BoundCertificate {
    let mut tree = BranchTree::new(domain, oracle);
    let mut recorder = Recorder::new(&tree);

    // Selection key, smallest first: deepest-first sorts by (depth desc,
    // value asc, id asc); shallowest-first by (depth asc, id asc), the value
    // playing no part.
    let key = |tree: &BranchTree, id: NodeId, order: LevelOrder| {
        let node = tree.node(id);
        match order {
            LevelOrder::DeepestFirst => (-i64::from(node.level()), node.value(), id),
            LevelOrder::ShallowestFirst => (i64::from(node.level()), Bound::Finite(0), id),
        }
    };

    let mut queue: BTreeSet<(i64, Bound, NodeId)> = BTreeSet::new();
    for id in tree.open_feasible().collect::<Vec<_>>() {
        queue.insert(key(&tree, id, order));
    }

    let mut expansions = 0usize;
    let status = loop {
        if tree.is_exhausted() {
            break SearchStatus::Infeasible;
        }
        if budget.target_met(tree.dual_value()) {
            break SearchStatus::TargetReached;
        }
        if tree.has_optimal_terminal() {
            break SearchStatus::Optimal;
        }
        if expansions >= budget.expansion_limit() {
            break SearchStatus::BudgetExhausted;
        }
        let &entry = queue.first().expect("open feasible node exists");
        queue.remove(&entry);
        let id = entry.2;
        let children = expand_with_selector(&mut tree, domain, oracle, selector, id);
        for child in children {
            let node = tree.node(child);
            if node.is_open() && node.is_feasible() {
                queue.insert(key(&tree, child, order));
            }
        }
        expansions += 1;
        recorder.record(expansions, &tree);
    };
    recorder.into_certificate(&tree, status, expansions)
}
