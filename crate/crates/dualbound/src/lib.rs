//! Lower bounds for the minimum bandwidth of a graph, proved by searching the
//! space of partial branching trees.
//!
//! A partial branching tree certifies a lower bound: the minimum relaxation
//! value over its open and terminal nodes. Growing the tree can only tighten
//! that bound, so bound proving becomes a search over trees. The [`dual`]
//! module implements that search generically (worst-bound, depth-first and
//! breadth-first node selection over a pluggable relaxation); the
//! [`bandwidth`] module instantiates it for minimum bandwidth with a
//! fixed-endpoint relaxation and the classic layered-graph bounds; the
//! [`instances`] module generates and parses benchmark graphs; [`oracle`]
//! holds brute-force ground truth for small instances; and [`cli`] is the
//! experiment harness behind the `dualbound` binary.
//!
//! Start with the crate examples (`cargo run --example prove_bound`) for a
//! tour of the main capabilities.

pub mod bandwidth;
pub mod cli;
pub mod dual;
pub mod instances;
pub mod oracle;
mod value;

pub use value::Bound;
