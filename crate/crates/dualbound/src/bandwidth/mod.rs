//! The minimum bandwidth problem: graph and arrangement types, the classic
//! static lower bounds, and the fixed-endpoint relaxation that drives the
//! dual search.
//!
//! The bandwidth of an arrangement is the longest edge span ([`bandwidth`]);
//! the problem asks for the arrangement minimizing it. Lower bounds come in
//! two flavors here: closed-form neighborhood bounds on the whole graph
//! ([`Graph::alpha_bound`], [`Graph::gamma_bound`], [`Graph::beta_bound`]),
//! and [`relaxation_value`], which scores a partially fixed arrangement by
//! binary-searching the smallest trial bandwidth surviving position-window
//! propagation from the fixed ends. [`bandwidth_domain`] packages the latter
//! for the [`crate::dual`] engine.

mod bounds;
mod graph;
mod layout;
mod relax;
mod ub;
mod windows;

pub use bounds::{BetaCapExceeded, BETA_DEFAULT_CAP};
pub use graph::{Graph, GraphError};
pub use layout::{bandwidth, Arrangement, LayoutError, PartialLayout};
pub use relax::{
    bandwidth_domain, relaxation_value, select_label_greedy, select_label_layered, BandwidthDual,
    GreedyEndpointSelector, LayeredEndpointSelector, Side,
};
pub use ub::ub_heuristic;
pub use windows::{ell_bounds, f_bounds, layout_feasible, position_windows, PositionWindows};
