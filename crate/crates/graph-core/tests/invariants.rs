//! Property tests for the label/bitset invariants the rest of the workspace
//! leans on.

use graph_core::{unit_disk_graph, Graph, VertexSet};
use proptest::prelude::*;

/// Random graph on `0..n` with each possible edge included per the bit mask.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if mask[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn maximal_implies_independent(g in arb_graph(10), bits in any::<u64>()) {
        let s = VertexSet::from_bits(bits & g.vertex_set().bits());
        if g.is_maximal_independent(s).unwrap() {
            prop_assert!(g.is_independent(s).unwrap());
        }
    }

    #[test]
    fn induced_remove_keeps_exactly_the_complement(g in arb_graph(10), bits in any::<u64>()) {
        let s = VertexSet::from_bits(bits & g.vertex_set().bits());
        let h = g.induced_remove(s).unwrap();
        prop_assert_eq!(h.vertex_set(), g.vertex_set().difference(s));
        prop_assert_eq!(h.fingerprint(), g.fingerprint() & !s.bits());
        // Surviving adjacency is exactly the restriction of the original.
        for &a in h.labels() {
            for &b in h.labels() {
                if a < b {
                    prop_assert_eq!(h.has_edge(a, b).unwrap(), g.has_edge(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn induced_remove_composes(g in arb_graph(10), b1 in any::<u64>(), b2 in any::<u64>()) {
        let s1 = VertexSet::from_bits(b1 & g.vertex_set().bits());
        let s2 = VertexSet::from_bits(b2 & g.vertex_set().bits()).difference(s1);
        let two_steps = g.induced_remove(s1).unwrap().induced_remove(s2).unwrap();
        let one_step = g.induced_remove(s1.union(s2)).unwrap();
        prop_assert_eq!(two_steps, one_step);
    }

    #[test]
    fn fingerprints_separate_subgraphs(g in arb_graph(10)) {
        // Over every subset of a 10-vertex root: fp = vertex mask, injective.
        let n = g.n();
        let mut seen = std::collections::HashSet::new();
        for bits in 0..(1u64 << n) {
            let s = VertexSet::from_bits(bits & g.vertex_set().bits());
            let fp = g.induced_remove(s).unwrap().fingerprint();
            prop_assert!(seen.insert(fp), "fingerprint collision at mask {bits:#b}");
        }
    }

    #[test]
    fn json_round_trip(g in arb_graph(12)) {
        let back = Graph::from_json_str(&g.to_json_string()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn unit_disk_is_consistent_with_its_radius(
        xs in prop::collection::vec((0.0f64..20.0, 0.0f64..20.0), 1..12),
        radius in 0.5f64..10.0,
    ) {
        let pts: Vec<[f64; 2]> = xs.iter().map(|&(x, y)| [x, y]).collect();
        if let Ok(g) = unit_disk_graph(&pts, radius) {
            prop_assert!(g.check_udg_consistency(radius).unwrap());
            prop_assert_eq!(g.coords().unwrap(), &pts[..]);
            // Round-tripping through JSON keeps the embedding.
            let back = Graph::from_json_str(&g.to_json_string()).unwrap();
            prop_assert_eq!(back, g);
        }
    }

    #[test]
    fn subset_queries_agree_with_brute_force(g in arb_graph(8)) {
        // Cross-check the bitset implementations against literal definitions.
        let n = g.n();
        prop_assume!(n <= 8);
        for s in 0..(1u64 << n) {
            let set = VertexSet::from_bits(s);
            let indep = set
                .iter()
                .all(|a| set.iter().all(|b| a == b || !g.has_edge(a, b).unwrap()));
            prop_assert_eq!(g.is_independent(set).unwrap(), indep);
            let maximal = indep
                && g.vertex_set()
                    .difference(set)
                    .iter()
                    .all(|v| set.iter().any(|a| g.has_edge(a, v).unwrap()));
            prop_assert_eq!(g.is_maximal_independent(set).unwrap(), maximal);
        }
    }
}
