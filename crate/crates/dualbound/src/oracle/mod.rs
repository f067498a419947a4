//! Brute-force ground truth for small instances: exact bandwidth by pruned
//! permutation search, exhaustive completion of partial layouts, and full
//! fixed-selector branching trees for checking the optimality guarantees of
//! worst-bound search. Everything here is exponential and capped; nothing is
//! meant for production-size graphs.

mod enumerate;
mod exact;

pub use enumerate::{
    enumerate_saturated_trees, EnumerationCaps, FixedSelectorTree, SaturatedTreeSummary,
};
pub use exact::{exact_bandwidth, exact_bandwidth_with_cap, min_completion_value};

use thiserror::Error;

/// Default vertex cap for [`exact_bandwidth`].
pub const EXACT_DEFAULT_CAP: usize = 10;

/// Default cap on free vertices for [`min_completion_value`].
pub const COMPLETION_DEFAULT_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("exact search requires n <= {cap}, got n = {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("completion search allows at most {cap} free vertices, got {count}")]
    TooManyFree { count: usize, cap: usize },
    #[error("full branching tree exceeds the {cap}-node cap")]
    TreeCapExceeded { cap: usize },
    #[error("saturated-tree enumeration exceeds the {cap}-tree cap")]
    EnumerationCapExceeded { cap: usize },
}
