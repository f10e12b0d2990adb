//! Property tests: structural facts about adjacency spectra and the combined
//! bracket that hold for every graph.

use graph_core::Graph;
use proptest::prelude::*;
use spectral_bounds::{spectrum_default, BoundsReport, Rounding};

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
    fn trace_is_zero_and_inertia_partitions(g in arb_graph(16)) {
        let s = spectrum_default(&g);
        let sum: f64 = s.eigenvalues.iter().sum();
        prop_assert!(sum.abs() <= 1e-6 * g.n() as f64, "Σλ = {sum:e}");
        prop_assert_eq!(s.n_pos + s.n_zero + s.n_neg, g.n());
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        if g.m() > 0 {
            // Any edge forces λ₁ > 0 > λₙ.
            prop_assert!(s.n_pos >= 1 && s.n_neg >= 1);
        }
    }

    #[test]
    fn bracket_is_ordered_and_clamped(g in arb_graph(16), ceil in any::<bool>()) {
        let rounding = if ceil { Rounding::Ceil } else { Rounding::Floor };
        let r = BoundsReport::compute(&g, rounding);
        prop_assert!(r.combined_lb <= r.combined_ub, "bracket {:?}", r.combined());
        prop_assert!(r.combined_lb >= 1);
        if g.m() > 0 {
            prop_assert!(r.combined_lb >= 2);
        }
        prop_assert!(r.combined_ub <= g.n());
        // Ceil can only tighten the lower end.
        let floor = BoundsReport::compute(&g, Rounding::Floor);
        let ceilr = BoundsReport::compute(&g, Rounding::Ceil);
        prop_assert!(ceilr.combined_lb >= floor.combined_lb);
    }

    #[test]
    fn bounds_are_isomorphism_invariant(g in arb_graph(10), seed in any::<u64>()) {
        // Relabel vertices by a seeded permutation and recompute.
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(i, (state as usize) % (i + 1));
        }
        let edges: Vec<(usize, usize)> =
            g.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        let h = Graph::from_edges(n, &edges).unwrap();
        let rg = BoundsReport::compute(&g, Rounding::Floor);
        let rh = BoundsReport::compute(&h, Rounding::Floor);
        prop_assert_eq!(rg.combined(), rh.combined());
        prop_assert_eq!(rg.ub_max_degree, rh.ub_max_degree);
        prop_assert_eq!(rg.ub_welsh_powell, rh.ub_welsh_powell);
        let close = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (None, None) => true,
            (Some(x), Some(y)) => (x - y).abs() <= 1e-7 * (1.0 + x.abs()),
            _ => false,
        };
        prop_assert!(close(rg.lb_hoffman, rh.lb_hoffman));
        prop_assert!(close(rg.lb_inertia, rh.lb_inertia));
        prop_assert!(close(rg.lb_principal, rh.lb_principal));
    }
}

#[test]
fn six_cycle_spectrum_is_exact_integers() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
    let s = spectrum_default(&g);
    let expect = [2.0, 1.0, 1.0, -1.0, -1.0, -2.0];
    for (got, want) in s.eigenvalues.iter().zip(expect) {
        assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
    }
    // Bipartite: χ = 2 and the bracket pins it.
    let r = BoundsReport::compute(&g, Rounding::Floor);
    assert_eq!(r.combined(), (2, 3));
}

#[test]
fn bounds_report_serializes_for_embedding_in_solver_reports() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let r = BoundsReport::compute(&g, Rounding::Floor);
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["combined_lb"], 3);
    assert_eq!(v["combined_ub"], 3);
    assert!(v["lb_hoffman"].as_f64().unwrap() > 2.99);
}
