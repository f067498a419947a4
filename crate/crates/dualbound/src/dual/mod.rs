//! Problem-agnostic branching-tree dual search.
//!
//! A branching tree over finite-domain variables proves a lower bound: the
//! minimum relaxation value over its open and terminal nodes
//! ([`BranchTree::dual_value`]). Growing the tree never weakens the bound, so
//! proving bounds is a search over partial trees. [`run_worst_bound`] grows
//! the tree where it is weakest — every open node at the current bound — and
//! is the strategy of choice here; [`run_dfs`] and [`run_bfs`] are the usual
//! baselines on the same machinery.

mod contract;
mod problem;
pub mod scripted;
mod search;
mod tree;

pub use contract::{check_relaxation_contract, ContractRule, ContractViolation};
pub use problem::{
    Assignment, DomainSpec, DomainValue, LabelSelector, NaturalOrderSelector, RelaxationOracle,
    VarId,
};
pub use search::{
    run_bfs, run_dfs, run_worst_bound, worst_bound_step, BoundCertificate, ExhaustedTree,
    SearchBudget, SearchStatus, StepOutcome,
};
pub use tree::{BranchNode, BranchTree, ExpandError, NodeId};
