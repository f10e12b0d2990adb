use std::collections::BTreeMap;

use graph_core::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{enumerate_mis, HistogramMeta, MisSampler, SampleError, SampleHistogram};

/// Weighting of the exact sampler's distribution over maximal independent
/// sets.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum MisWeighting {
    /// Probability proportional to set size — larger mISs surface first,
    /// mirroring what a well-tuned physical sampler rewards.
    #[default]
    SizeWeighted,
    /// All mISs equally likely.
    Uniform,
}

/// Idealized sampler: enumerates all maximal independent sets and draws a
/// multinomial sample over them. Stand-in for a perfect quantum backend;
/// with enough shots its support is the complete mIS list.
#[derive(Clone, Debug, Default)]
pub struct ExactMisSampler {
    pub weighting: MisWeighting,
}

impl MisSampler for ExactMisSampler {
    fn name(&self) -> &str {
        "exact"
    }

    fn sample(&self, g: &Graph, shots: u64, seed: u64) -> Result<SampleHistogram, SampleError> {
        if shots == 0 {
            return Err(SampleError::ZeroShots);
        }
        let sets = enumerate_mis(g);
        let weights: Vec<f64> = match self.weighting {
            MisWeighting::SizeWeighted => sets.iter().map(|s| s.len() as f64).collect(),
            MisWeighting::Uniform => vec![1.0; sets.len()],
        };
        // Only the empty graph produces a zero-size mIS; fall back to uniform
        // so its (single) outcome still draws.
        let total: f64 = weights.iter().sum();
        let cumulative: Vec<f64> = if total > 0.0 {
            partial_sums(&weights)
        } else {
            partial_sums(&vec![1.0; sets.len()])
        };
        let top = *cumulative.last().expect("at least one mIS always exists");

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut entries: BTreeMap<u64, u64> = BTreeMap::new();
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * top;
            let idx = cumulative.partition_point(|&c| c <= u).min(sets.len() - 1);
            *entries.entry(sets[idx].bits()).or_insert(0) += 1;
        }
        SampleHistogram::new(
            entries,
            HistogramMeta {
                backend: self.name().into(),
                seed,
                shots_requested: shots,
                labels: g.labels().to_vec(),
            },
        )
    }
}

fn partial_sums(weights: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    weights
        .iter()
        .map(|w| {
            acc += w;
            acc
        })
        .collect()
}

/// Classical baseline: each shot shuffles the vertices and greedily keeps
/// every vertex compatible with the ones already kept. Every outcome is a
/// maximal independent set by construction, but the distribution is skewed
/// by the permutation process rather than by set size.
#[derive(Clone, Debug, Default)]
pub struct RandomGreedySampler;

impl MisSampler for RandomGreedySampler {
    fn name(&self) -> &str {
        "rgreedy"
    }

    fn sample(&self, g: &Graph, shots: u64, seed: u64) -> Result<SampleHistogram, SampleError> {
        if shots == 0 {
            return Err(SampleError::ZeroShots);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = g.labels().to_vec();
        let mut entries: BTreeMap<u64, u64> = BTreeMap::new();
        for _ in 0..shots {
            // Fisher–Yates, then greedy insertion in permuted order.
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let mut acc = 0u64;
            for &l in &order {
                if g.neighbors(l).expect("label is in graph").bits() & acc == 0 {
                    acc |= 1 << l;
                }
            }
            *entries.entry(acc).or_insert(0) += 1;
        }
        SampleHistogram::new(
            entries,
            HistogramMeta {
                backend: self.name().into(),
                seed,
                shots_requested: shots,
                labels: g.labels().to_vec(),
            },
        )
    }
}

/// Filters a histogram down to branching candidates: the distinct outcomes
/// that are maximal independent sets of `g`, ordered by count descending
/// (ties: bitmask ascending). Entries that are not independent or not
/// maximal are dropped — never repaired — so callers can count rejections.
///
/// An empty result is legal and signals the caller to fall back.
pub fn extract_candidates(h: &SampleHistogram, g: &Graph) -> Result<Vec<VertexSet>, SampleError> {
    let mut out = Vec::new();
    for (set, _count) in h.by_frequency() {
        if !set.is_subset_of(g.vertex_set()) {
            return Err(SampleError::ForeignSupport {
                bits: set.difference(g.vertex_set()).bits(),
            });
        }
        if g.is_maximal_independent(set)? {
            out.push(set);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn exact_sampler_support_and_proportions_on_a_path() {
        // mISs of 0–1–2: {0, 2} (weight 2) and {1} (weight 1).
        let h = ExactMisSampler::default().sample(&path3(), 3000, 11).unwrap();
        assert_eq!(h.shots(), 3000);
        let keys: Vec<u64> = h.entries().keys().copied().collect();
        assert_eq!(keys, vec![0b010, 0b101]);
        let big = h.entries()[&0b101] as f64;
        // Expect ≈ 2/3 of the mass on the larger set (±5σ ≈ ±0.043).
        assert!((big / 3000.0 - 2.0 / 3.0).abs() < 0.05, "got {}", big / 3000.0);
    }

    #[test]
    fn uniform_weighting_levels_the_odds() {
        let sampler = ExactMisSampler { weighting: MisWeighting::Uniform };
        let h = sampler.sample(&path3(), 3000, 11).unwrap();
        let big = h.entries()[&0b101] as f64;
        assert!((big / 3000.0 - 0.5).abs() < 0.05, "got {}", big / 3000.0);
    }

    #[test]
    fn samplers_are_pure_functions_of_graph_shots_seed() {
        let g = path3();
        for sampler in [&ExactMisSampler::default() as &dyn MisSampler, &RandomGreedySampler] {
            let a = sampler.sample(&g, 100, 42).unwrap();
            let b = sampler.sample(&g, 100, 42).unwrap();
            assert_eq!(a, b, "{} not deterministic", sampler.name());
            let c = sampler.sample(&g, 100, 43).unwrap();
            assert_ne!(a, c, "{} ignores its seed", sampler.name());
        }
    }

    #[test]
    fn zero_shots_is_rejected() {
        assert!(matches!(
            ExactMisSampler::default().sample(&path3(), 0, 1),
            Err(SampleError::ZeroShots)
        ));
        assert!(matches!(
            RandomGreedySampler.sample(&path3(), 0, 1),
            Err(SampleError::ZeroShots)
        ));
    }

    #[test]
    fn random_greedy_outcomes_are_always_maximal() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let h = RandomGreedySampler.sample(&g, 500, 7).unwrap();
        for (&bits, _) in h.entries() {
            assert!(g.is_maximal_independent(VertexSet::from_bits(bits)).unwrap());
        }
    }

    #[test]
    fn extract_candidates_filters_and_orders() {
        let g = path3();
        // Hand-built histogram: {0,2} ×20, {1} ×10, {0} ×10 (independent but
        // not maximal), {0,1} ×5 (not independent).
        let entries = BTreeMap::from([(0b101u64, 20), (0b010, 10), (0b001, 10), (0b011, 5)]);
        let h = SampleHistogram::new(
            entries,
            HistogramMeta {
                backend: "test".into(),
                seed: 0,
                shots_requested: 45,
                labels: vec![0, 1, 2],
            },
        )
        .unwrap();
        let sets: Vec<u64> = extract_candidates(&h, &g).unwrap().iter().map(|s| s.bits()).collect();
        assert_eq!(sets, vec![0b101, 0b010]);
    }

    #[test]
    fn extract_candidates_on_a_foreign_graph_is_an_error() {
        let g = path3();
        let h = ExactMisSampler::default().sample(&g, 10, 3).unwrap();
        let smaller = g.induced_remove(VertexSet::from_labels([0])).unwrap();
        assert!(matches!(
            extract_candidates(&h, &smaller),
            Err(SampleError::ForeignSupport { .. })
        ));
    }

    #[test]
    fn empty_candidate_list_is_legal() {
        // A histogram holding only non-maximal outcomes filters to nothing.
        let g = path3();
        let entries = BTreeMap::from([(0b001u64, 5)]);
        let h = SampleHistogram::new(
            entries,
            HistogramMeta {
                backend: "test".into(),
                seed: 0,
                shots_requested: 5,
                labels: vec![0, 1, 2],
            },
        )
        .unwrap();
        assert!(extract_candidates(&h, &g).unwrap().is_empty());
    }
}
