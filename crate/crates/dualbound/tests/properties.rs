//! Cross-module property tests: soundness of the relaxation against brute
//! force, monotonicity and symmetry of the window propagation, and agreement
//! between the search strategies on small instances.

use proptest::prelude::*;

use dualbound::bandwidth::{
    bandwidth, bandwidth_domain, ell_bounds, f_bounds, layout_feasible, relaxation_value,
    ub_heuristic, Graph, LayeredEndpointSelector, PartialLayout,
};
use dualbound::dual::{run_bfs, run_dfs, run_worst_bound, SearchBudget, SearchStatus};
use dualbound::instances::gen_random;
use dualbound::oracle::{exact_bandwidth, min_completion_value};
use dualbound::Bound;

/// Five vertices, hub 1 adjacent to everything, plus edges 3-4 and 2-4.
fn hub_graph() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (1, 4), (3, 4), (2, 4)]).unwrap()
}

#[test]
fn worst_bound_proves_the_hub_graph_optimum() {
    let g = hub_graph();
    let model = bandwidth_domain(&g);
    let selector = LayeredEndpointSelector::new(&g);
    let cert = run_worst_bound(&model, &model, &selector, SearchBudget::unlimited());
    assert_eq!(cert.status, SearchStatus::Optimal);
    assert_eq!(cert.proved_bound, Bound::Finite(2));
}

#[test]
fn dfs_and_bfs_also_prove_the_hub_graph_optimum() {
    let g = hub_graph();
    let model = bandwidth_domain(&g);
    let selector = LayeredEndpointSelector::new(&g);
    for run in [run_dfs, run_bfs] {
        let cert = run(&model, &model, &selector, SearchBudget::unlimited());
        assert_eq!(cert.status, SearchStatus::Optimal);
        assert_eq!(cert.proved_bound, Bound::Finite(2));
    }
}

/// All valid endpoint layouts of a small graph, in a deterministic order.
fn all_layouts(n: usize, max_assigned: usize) -> Vec<PartialLayout> {
    let mut layouts = vec![PartialLayout::empty(n)];
    let mut out = layouts.clone();
    for _ in 0..max_assigned {
        let mut next = Vec::new();
        for layout in &layouts {
            for v in layout.free_vertices() {
                if !layout.is_complete() {
                    next.push(layout.with_left(v).unwrap());
                    if layout.free_count() > 1 {
                        next.push(layout.with_right(v).unwrap());
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layouts = next;
    }
    out
}

fn seeded_graph(n: usize, d_percent: u8, seed: u64) -> Graph {
    gen_random(n, f64::from(d_percent) / 100.0, seed).graph
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The relaxation never exceeds the best completion of the layout.
    #[test]
    fn relaxation_is_a_lower_bound(
        n in 2usize..7,
        d in prop::sample::select(vec![20u8, 50, 80]),
        seed in 0u64..500,
        picks in prop::collection::vec(any::<u32>(), 0..6),
    ) {
        let g = seeded_graph(n, d, seed);
        // drive a pseudo-random endpoint layout from the pick stream
        let mut layout = PartialLayout::empty(n);
        for (i, &p) in picks.iter().enumerate() {
            if layout.is_complete() {
                break;
            }
            let free = layout.free_vertices();
            let v = free[p as usize % free.len()];
            layout = if i % 2 == 0 {
                layout.with_left(v).unwrap()
            } else {
                layout.with_right(v).unwrap()
            };
        }
        let relaxed = relaxation_value(&g, &layout);
        let truth = min_completion_value(&g, &layout).unwrap();
        prop_assert!(relaxed <= Bound::from(truth),
            "relaxed {relaxed} exceeds completion optimum {truth}");
    }

    /// Feasibility is monotone in the trial bandwidth.
    #[test]
    fn feasibility_is_monotone_in_phi(
        n in 2usize..7,
        d in prop::sample::select(vec![20u8, 50, 80]),
        seed in 0u64..500,
    ) {
        let g = seeded_graph(n, d, seed);
        for layout in all_layouts(n, 2) {
            let mut seen_feasible = false;
            for phi in 0..n as u32 {
                let ok = layout_feasible(&g, &layout, phi);
                prop_assert!(ok || !seen_feasible,
                    "feasibility not monotone at phi={phi}");
                seen_feasible |= ok;
            }
        }
    }

    /// Mirroring the layout mirrors the relaxation.
    #[test]
    fn relaxation_is_reversal_symmetric(
        n in 2usize..7,
        d in prop::sample::select(vec![20u8, 50, 80]),
        seed in 0u64..500,
    ) {
        let g = seeded_graph(n, d, seed);
        for layout in all_layouts(n, 2) {
            prop_assert_eq!(
                relaxation_value(&g, &layout),
                relaxation_value(&g, &layout.mirrored())
            );
        }
    }

    /// The two window sides are mirror images.
    #[test]
    fn window_sides_mirror(
        n in 2usize..7,
        d in prop::sample::select(vec![20u8, 50, 80]),
        seed in 0u64..500,
        phi in 0u32..6,
    ) {
        let g = seeded_graph(n, d, seed);
        let phi = phi.min(n as u32 - 1);
        for layout in all_layouts(n, 2) {
            let f = f_bounds(&g, &layout, phi);
            let ell = ell_bounds(&g, &layout.mirrored(), phi);
            match (f, ell) {
                (Some(f), Some(ell)) => {
                    for v in 0..n {
                        prop_assert_eq!(f[v], n as u32 + 1 - ell[v]);
                    }
                }
                (None, None) => {}
                other => prop_assert!(false, "sides disagree: {:?}", other),
            }
        }
    }

    /// Every static bound and every strategy's proved bound stays below the
    /// exact optimum, and the relaxed windows never exclude it.
    #[test]
    fn bound_chain_holds(
        n in 2usize..9,
        d in prop::sample::select(vec![20u8, 50, 80]),
        seed in 0u64..500,
    ) {
        let g = seeded_graph(n, d, seed);
        let exact = exact_bandwidth(&g).unwrap();
        let alpha = g.alpha_bound();
        let beta = g.beta_bound().unwrap();
        let gamma = g.gamma_bound();
        prop_assert!(alpha <= beta, "alpha {alpha} > beta {beta}");
        prop_assert!(beta <= exact, "beta {beta} > exact {exact}");
        prop_assert!(gamma <= exact, "gamma {gamma} > exact {exact}");
        let (_, ub) = ub_heuristic(&g);
        prop_assert!(ub >= exact);
    }

    /// With the same layered selector, worst-bound search dominates the
    /// depth- and breadth-first baselines at every expansion count.
    #[test]
    fn worst_bound_dominates_baselines(
        n in 2usize..6,
        d in prop::sample::select(vec![20u8, 50, 80]),
        seed in 0u64..500,
    ) {
        let g = seeded_graph(n, d, seed);
        let model = bandwidth_domain(&g);
        let selector = LayeredEndpointSelector::new(&g);
        let budget = SearchBudget::unlimited();
        let wb = run_worst_bound(&model, &model, &selector, budget);
        for other in [
            run_dfs(&model, &model, &selector, budget),
            run_bfs(&model, &model, &selector, budget),
        ] {
            let horizon = wb.expansions.max(other.expansions) + 1;
            for k in 0..horizon {
                let baseline = other.bound_after(k.min(other.expansions));
                let ours = wb.bound_after(k.min(wb.expansions));
                prop_assert!(baseline <= ours,
                    "baseline {baseline} beats worst-bound {ours} at {k} expansions");
            }
        }
    }
}

#[test]
fn complete_layout_relaxations_match_bandwidth_exhaustively() {
    // every arrangement of the hub graph, built as a left prefix
    let g = hub_graph();
    let mut order = [0u32, 1, 2, 3, 4];
    permute(&mut order, 0, &mut |perm| {
        let mut layout = PartialLayout::empty(5);
        for &v in perm.iter() {
            layout = layout.with_left(v).unwrap();
        }
        let arrangement = layout.arrangement().unwrap();
        assert_eq!(
            relaxation_value(&g, &layout),
            Bound::from(bandwidth(&g, &arrangement))
        );
    });
}

fn permute(items: &mut [u32; 5], k: usize, visit: &mut impl FnMut(&[u32; 5])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
