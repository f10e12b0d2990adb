use graph_core::Graph;
use serde::{Deserialize, Serialize};

use crate::{DeviceSpec, EmulatorError};

/// Options for turning a coordinate-carrying graph into an atom register.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EmbedConfig {
    /// Uniform stretch applied to the stored coordinates before placement.
    pub scale: f64,
    /// Refuse graphs larger than this: statevector cost grows as 2ⁿ.
    pub max_qubits: usize,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        Self { scale: 1.0, max_qubits: 15 }
    }
}

/// A concrete atom layout with the drive amplitude that realizes the wanted
/// blockade radius. Qubit `i` sits at `positions()[i]`; callers map qubit
/// indices back to graph labels themselves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Register {
    positions: Vec<[f64; 2]>,
    omega: f64,
    r_b: f64,
    c6: f64,
}

impl Register {
    /// Builds a register directly from positions and a blockade radius. The
    /// implied amplitude `Ω = C₆/r_b⁶` must respect the device cap.
    pub fn new(
        positions: Vec<[f64; 2]>,
        r_b: f64,
        spec: &DeviceSpec,
    ) -> Result<Self, EmulatorError> {
        if positions.is_empty() {
            return Err(EmulatorError::EmptyRegister);
        }
        if !(r_b.is_finite() && r_b > 0.0) {
            return Err(EmulatorError::BlockadeRadiusInfeasible { lo: r_b, hi: r_b });
        }
        let omega = spec.c6 / r_b.powi(6);
        if omega > spec.max_amp {
            return Err(EmulatorError::AmplitudeOutOfRange {
                segment: 0,
                omega,
                max: spec.max_amp,
            });
        }
        Ok(Self { positions, omega, r_b, c6: spec.c6 })
    }

    pub fn n_qubits(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    /// Drive amplitude realizing the blockade radius: `Ω = C₆/r_b⁶`.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn blockade_radius(&self) -> f64 {
        self.r_b
    }

    pub fn c6(&self) -> f64 {
        self.c6
    }

    /// Pair interaction `C₆/d⁶` between qubits `i` and `j`.
    pub fn interaction(&self, i: usize, j: usize) -> f64 {
        let [xi, yi] = self.positions[i];
        let [xj, yj] = self.positions[j];
        let d2 = (xi - xj).powi(2) + (yi - yj).powi(2);
        self.c6 / d2.powi(3)
    }
}

/// Places a unit-disk graph on the device: atoms at the stored coordinates
/// (scaled), blockade radius strictly between the longest edge and the
/// shortest non-edge, so blockade structure reproduces adjacency exactly.
pub fn embed(g: &Graph, spec: &DeviceSpec, cfg: &EmbedConfig) -> Result<Register, EmulatorError> {
    if g.n() == 0 {
        return Err(EmulatorError::EmptyRegister);
    }
    if g.n() > cfg.max_qubits {
        return Err(EmulatorError::TooManyQubits { n: g.n(), max: cfg.max_qubits });
    }
    let coords = g.coords().ok_or(EmulatorError::MissingCoordinates)?;
    let positions: Vec<[f64; 2]> = coords
        .iter()
        .map(|&[x, y]| [x * cfg.scale, y * cfg.scale])
        .collect();

    let labels = g.labels();
    let mut edge_max = 0.0f64;
    let mut nonedge_min = f64::INFINITY;
    for i in 0..g.n() {
        for j in (i + 1)..g.n() {
            let d = ((positions[i][0] - positions[j][0]).powi(2)
                + (positions[i][1] - positions[j][1]).powi(2))
            .sqrt();
            if g.has_edge(labels[i], labels[j]).expect("labels are in graph") {
                edge_max = edge_max.max(d);
            } else {
                nonedge_min = nonedge_min.min(d);
            }
        }
    }

    let lo = edge_max.max(spec.min_blockade_radius());
    let hi = nonedge_min;
    if lo >= hi {
        return Err(EmulatorError::BlockadeRadiusInfeasible { lo, hi });
    }
    let r_b = if hi.is_finite() { 0.5 * (lo + hi) } else { lo * 1.25 };
    Register::new(positions, r_b, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use graph_core::unit_disk_graph;

    #[test]
    fn embedding_a_path_splits_edge_and_nonedge_distances() {
        let g = unit_disk_graph(&[[0.0, 0.0], [5.0, 0.0], [10.0, 0.0]], 6.0).unwrap();
        assert_eq!(g.m(), 2);
        let spec = DeviceSpec::default();
        let reg = embed(&g, &spec, &EmbedConfig::default()).unwrap();
        // Longest edge 5, shortest non-edge 10, device floor ≈ 6.448.
        let lo = spec.min_blockade_radius();
        assert_relative_eq!(reg.blockade_radius(), 0.5 * (lo + 10.0), max_relative = 1e-12);
        assert!(reg.omega() <= spec.max_amp);
        assert_relative_eq!(
            reg.omega(),
            spec.c6 / reg.blockade_radius().powi(6),
            max_relative = 1e-12
        );
    }

    #[test]
    fn scale_stretches_the_layout() {
        let g = unit_disk_graph(&[[0.0, 0.0], [5.0, 0.0]], 6.0).unwrap();
        let cfg = EmbedConfig { scale: 2.0, ..EmbedConfig::default() };
        let reg = embed(&g, &DeviceSpec::default(), &cfg).unwrap();
        assert_eq!(reg.positions()[1], [10.0, 0.0]);
        assert_relative_eq!(reg.interaction(0, 1), reg.c6() / 10f64.powi(6), max_relative = 1e-12);
    }

    #[test]
    fn edgeless_graph_embeds_outside_the_blockade() {
        let g = unit_disk_graph(&[[0.0, 0.0], [20.0, 0.0]], 6.0).unwrap();
        assert_eq!(g.m(), 0);
        let spec = DeviceSpec::default();
        let reg = embed(&g, &spec, &EmbedConfig::default()).unwrap();
        assert!(reg.blockade_radius() > spec.min_blockade_radius());
        assert!(reg.blockade_radius() < 20.0);
    }

    #[test]
    fn single_vertex_uses_the_default_radius_margin() {
        let g = unit_disk_graph(&[[0.0, 0.0]], 6.0).unwrap();
        let spec = DeviceSpec::default();
        let reg = embed(&g, &spec, &EmbedConfig::default()).unwrap();
        assert_relative_eq!(
            reg.blockade_radius(),
            spec.min_blockade_radius() * 1.25,
            max_relative = 1e-12
        );
    }

    #[test]
    fn impossible_separations_are_rejected() {
        // Edge between far atoms, non-edge between near ones: no radius can
        // blockade the edge without swallowing the non-edge.
        let g = Graph::from_edges_with_coords(
            3,
            &[(0, 2)],
            vec![[0.0, 0.0], [5.0, 0.0], [10.0, 0.0]],
        )
        .unwrap();
        let err = embed(&g, &DeviceSpec::default(), &EmbedConfig::default()).unwrap_err();
        assert!(matches!(err, EmulatorError::BlockadeRadiusInfeasible { .. }));
    }

    #[test]
    fn qubit_cap_and_missing_coordinates_are_rejected() {
        let spec = DeviceSpec::default();
        let bare = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            embed(&bare, &spec, &EmbedConfig::default()),
            Err(EmulatorError::MissingCoordinates)
        ));
        let g = unit_disk_graph(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], 1.5).unwrap();
        let tiny = EmbedConfig { max_qubits: 2, ..EmbedConfig::default() };
        assert!(matches!(
            embed(&g, &spec, &tiny),
            Err(EmulatorError::TooManyQubits { n: 3, max: 2 })
        ));
    }
}
