//! Benchmark instance generation: connected unit-disk graphs with a minimum
//! atom separation, plus an Erdős–Rényi generator for randomized testing.

use graph_core::{unit_disk_graph, Graph};
use mis_sampling::seed::mix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

/// Geometry and size sweep of the benchmark dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DatasetSpec {
    pub min_n: usize,
    pub max_n: usize,
    pub per_size: usize,
    /// Square placement region side, µm.
    pub side: f64,
    /// Unit-disk connectivity radius, µm.
    pub radius: f64,
    /// Minimum pairwise distance between placed vertices, µm.
    pub min_sep: f64,
    pub master_seed: u64,
}

impl Default for DatasetSpec {
    fn default() -> Self {
        Self {
            min_n: 10,
            max_n: 15,
            per_size: 20,
            side: 32.0,
            radius: 10.0,
            min_sep: 4.0,
            master_seed: 2024,
        }
    }
}

/// One benchmark instance: a connected unit-disk graph and the seed that
/// produced it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub seed: u64,
    pub radius: f64,
    pub graph: Graph,
}

/// Serialized form of an [`Instance`]; edges are stored redundantly so files
/// remain inspectable, and are checked against the coordinates on load.
#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub id: String,
    pub n: usize,
    pub seed: u64,
    pub radius: f64,
    pub coords: Vec<[f64; 2]>,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        Self {
            id: inst.id.clone(),
            n: inst.graph.n(),
            seed: inst.seed,
            radius: inst.radius,
            coords: inst.graph.coords().expect("dataset graphs carry coordinates").to_vec(),
            edges: inst.graph.edges(),
        }
    }
}

impl TryFrom<InstanceFile> for Instance {
    type Error = HarnessError;

    fn try_from(f: InstanceFile) -> Result<Self, HarnessError> {
        let graph = unit_disk_graph(&f.coords, f.radius)?;
        if graph.n() != f.n || graph.edges() != f.edges {
            return Err(HarnessError::CorruptInstance { id: f.id });
        }
        Ok(Instance { id: f.id, seed: f.seed, radius: f.radius, graph })
    }
}

/// How many fresh layouts to try before giving up on one instance slot.
const MAX_LAYOUT_ATTEMPTS: usize = 100_000;
/// How many positions to try for a single vertex before restarting the layout.
const MAX_POINT_ATTEMPTS: usize = 200;

/// Rejection-samples one connected unit-disk graph: vertices land uniformly
/// in the square, keep their minimum separation, and whole layouts are
/// retried until the resulting graph is connected.
pub fn generate_instance(spec: &DatasetSpec, n: usize, index: usize) -> Result<Instance, HarnessError> {
    let seed = mix3(spec.master_seed, n as u64, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_LAYOUT_ATTEMPTS {
        let Some(points) = try_layout(&mut rng, n, spec) else { continue };
        let graph = unit_disk_graph(&points, spec.radius)?;
        if graph.is_connected() {
            return Ok(Instance {
                id: format!("udg_n{n:02}_s{index:02}"),
                seed,
                radius: spec.radius,
                graph,
            });
        }
    }
    Err(HarnessError::GenerationFailed { n, index })
}

fn try_layout(rng: &mut ChaCha8Rng, n: usize, spec: &DatasetSpec) -> Option<Vec<[f64; 2]>> {
    let mut points: Vec<[f64; 2]> = Vec::with_capacity(n);
    'vertex: for _ in 0..n {
        for _ in 0..MAX_POINT_ATTEMPTS {
            let p = [rng.gen_range(0.0..spec.side), rng.gen_range(0.0..spec.side)];
            let clear = points
                .iter()
                .all(|q| (p[0] - q[0]).hypot(p[1] - q[1]) >= spec.min_sep);
            if clear {
                points.push(p);
                continue 'vertex;
            }
        }
        return None;
    }
    Some(points)
}

/// The full sweep in canonical order: sizes ascending, indices ascending.
pub fn generate_dataset(spec: &DatasetSpec) -> Result<Vec<Instance>, HarnessError> {
    let mut out = Vec::with_capacity((spec.max_n + 1 - spec.min_n) * spec.per_size);
    for n in spec.min_n..=spec.max_n {
        for index in 0..spec.per_size {
            out.push(generate_instance(spec, n, index)?);
        }
    }
    Ok(out)
}

/// Erdős–Rényi G(n, p) graph: every pair is an edge independently with
/// probability `p`. No coordinates, so these are for solver testing, not
/// embedding.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}
