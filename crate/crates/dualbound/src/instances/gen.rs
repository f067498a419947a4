use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{InstanceRecord, InstanceSource, ReferenceUb, UbTag};
use crate::bandwidth::{Arrangement, Graph};

/// Seeded uniform random graph: every vertex pair carries an edge
/// independently with probability `d`.
///
/// Reproducibility contract: the generator is ChaCha8 seeded with `seed`, and
/// pairs `(i, j)`, `i < j`, are sampled in lexicographic order with one draw
/// each, so a given `(n, d, seed)` names the same graph everywhere.
pub fn gen_random(n: usize, d: f64, seed: u64) -> InstanceRecord {
    assert!(n >= 1, "need at least one vertex");
    assert!((0.0..=1.0).contains(&d), "edge probability out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            if rng.random::<f64>() < d {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(n, edges).expect("generated edges are in range");
    InstanceRecord {
        graph,
        name: format!("random-n{n}-d{d}-s{seed}"),
        source: Some(InstanceSource::Random { n, d, seed }),
        reference_ub: None,
    }
}

/// Bandwidth-controlled random graph: a hidden arrangement is drawn uniformly
/// and only pairs within `phi` positions of each other are edge candidates,
/// so the optimum is at most `phi` by construction. Candidates are kept
/// independently with a probability calibrated to hit overall density `d` in
/// expectation; when `d` is unreachable for this `phi`, the probability
/// clamps to 1 with a warning on stderr.
pub fn gen_turner(n: usize, phi: u32, d: f64, seed: u64) -> InstanceRecord {
    gen_turner_with_layout(n, phi, d, seed).0
}

/// As [`gen_turner`], also returning the hidden arrangement.
pub fn gen_turner_with_layout(
    n: usize,
    phi: u32,
    d: f64,
    seed: u64,
) -> (InstanceRecord, Arrangement) {
    assert!(n >= 2, "need at least two vertices");
    assert!((1..n as u32).contains(&phi), "phi must be in 1..n");
    assert!((0.0..=1.0).contains(&d), "density out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(&mut rng);
    let hidden = Arrangement::from_order(&order).expect("shuffle keeps a permutation");

    // candidate pairs: |position difference| <= phi
    let candidates = phi as u64 * n as u64 - u64::from(phi) * (u64::from(phi) + 1) / 2;
    let total_pairs = n as u64 * (n as u64 - 1) / 2;
    let wanted = d * total_pairs as f64;
    let mut keep = wanted / candidates as f64;
    if keep > 1.0 {
        eprintln!(
            "warning: density {d} is unreachable with bandwidth cap {phi} on {n} vertices; \
             keeping every candidate edge"
        );
        keep = 1.0;
    }

    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            if hidden.position_of(i).abs_diff(hidden.position_of(j)) <= phi
                && rng.random::<f64>() < keep
            {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(n, edges).expect("generated edges are in range");
    let record = InstanceRecord {
        graph,
        name: format!("turner-n{n}-phi{phi}-d{d}-s{seed}"),
        source: Some(InstanceSource::Turner { n, phi, d, seed }),
        reference_ub: Some(ReferenceUb {
            value: phi,
            tag: UbTag::PlantedPhi,
        }),
    };
    (record, hidden)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandwidth::bandwidth;

    #[test]
    fn degenerate_probabilities() {
        assert_eq!(gen_random(10, 0.0, 1).graph.edge_count(), 0);
        assert_eq!(gen_random(10, 1.0, 1).graph.edge_count(), 45);
    }

    #[test]
    fn same_seed_same_graph() {
        let a = gen_random(20, 0.4, 99);
        let b = gen_random(20, 0.4, 99);
        assert_eq!(a.graph.edges(), b.graph.edges());
        let c = gen_random(20, 0.4, 100);
        assert_ne!(a.graph.edges(), c.graph.edges());
    }

    #[test]
    fn random_edge_count_tracks_density() {
        // mean over 100 seeds within 3 sigma of the binomial expectation
        let n = 30;
        let pairs = (n * (n - 1) / 2) as f64;
        let d = 0.5;
        let mut total = 0usize;
        let seeds = 100;
        for seed in 0..seeds {
            total += gen_random(n, d, seed).graph.edge_count();
        }
        let mean = total as f64 / seeds as f64;
        let sigma = (pairs * d * (1.0 - d) / seeds as f64).sqrt();
        assert!((mean - pairs * d).abs() <= 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn planted_arrangement_respects_phi() {
        for seed in 0..20 {
            let (record, hidden) = gen_turner_with_layout(30, 4, 0.3, seed);
            assert!(bandwidth(&record.graph, &hidden) <= 4);
            assert_eq!(
                record.reference_ub,
                Some(ReferenceUb {
                    value: 4,
                    tag: UbTag::PlantedPhi
                })
            );
        }
    }

    #[test]
    fn full_phi_reduces_to_uniform_candidates() {
        // phi = n - 1 puts every pair in the candidate set
        let (record, _) = gen_turner_with_layout(12, 11, 1.0, 5);
        assert_eq!(record.graph.edge_count(), 66);
    }

    #[test]
    fn turner_density_tracks_target() {
        let n = 30usize;
        let pairs = (n * (n - 1) / 2) as f64;
        let d = 0.3;
        let mut total = 0usize;
        let seeds = 100;
        for seed in 0..seeds {
            total += gen_turner(n, 3, d, seed).graph.edge_count();
        }
        let mean = total as f64 / seeds as f64;
        // candidate count for phi=3: 3n - 6 = 84; keep = d*pairs/84
        let candidates = 84.0;
        let keep = (d * pairs / candidates).min(1.0);
        let expect = candidates * keep;
        let sigma = (candidates * keep * (1.0 - keep) / seeds as f64).sqrt();
        assert!(
            (mean - expect).abs() <= 3.0 * sigma.max(1e-9),
            "mean {mean} expect {expect}"
        );
    }
}
