//! One-layer variational pulse optimization that turns the emulator into a
//! maximal-independent-set sampler.
//!
//! The ansatz is two piecewise-constant segments: a resonant mixing segment
//! (Ω from the embedding, δ = 0) whose duration t₁ is the first variational
//! parameter, then a detuned cost segment (same Ω, δ = Ω) with duration t₂.
//! The drive stays on through the cost segment: starting from |0…0⟩ and
//! measuring occupations, a purely diagonal segment would only rotate
//! phases and leave the outcome distribution untouched, so it would waste
//! one of the two variational parameters. With the drive on, the two
//! segment Hamiltonians fail to commute and both durations shape the final
//! state. The cost detuning is capped at Ω — the interaction strength at
//! the connectivity radius — so favoring occupation never out-bids the
//! blockade of the weakest edge. Nelder–Mead minimizes a sampled objective
//! — either the penalized independent-set cost of the measured bitstrings
//! or their classical Ising energy — and the optimized circuit is measured
//! once more for the returned histogram. Blockade physics biases those
//! samples toward maximal independent sets of the embedded graph.

use std::collections::BTreeMap;

use graph_core::Graph;
use mis_sampling::seed::mix3;
use mis_sampling::{HistogramMeta, MisSampler, SampleError, SampleHistogram};
use serde::{Deserialize, Serialize};

use crate::{
    embed, DeviceSpec, EmbedConfig, EmulatorError, QuantumState, Register, SegmentHamiltonian,
    SegmentPropagator,
};

/// Shortest segment duration the optimizer may propose, in µs.
pub const MIN_SEGMENT_DURATION: f64 = 1e-3;

const ROLE_EVAL: u64 = 0x4556_414c;
const ROLE_FINAL: u64 = 0x4649_4e4c;

/// Weight of an in-set edge in the sampled cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PenaltyJson", into = "PenaltyJson")]
pub enum Penalty {
    /// Twice the maximum degree: violating an edge always costs more than
    /// the vertex that caused it earns.
    Auto,
    Fixed(f64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PenaltyJson {
    Name(String),
    Value(f64),
}

impl From<Penalty> for PenaltyJson {
    fn from(p: Penalty) -> Self {
        match p {
            Penalty::Auto => PenaltyJson::Name("auto".into()),
            Penalty::Fixed(v) => PenaltyJson::Value(v),
        }
    }
}

impl TryFrom<PenaltyJson> for Penalty {
    type Error = String;

    fn try_from(j: PenaltyJson) -> Result<Self, String> {
        match j {
            PenaltyJson::Name(s) if s == "auto" => Ok(Penalty::Auto),
            PenaltyJson::Name(s) => Err(format!("unknown penalty {s:?}; use \"auto\" or a number")),
            PenaltyJson::Value(v) if v.is_finite() && v > 0.0 => Ok(Penalty::Fixed(v)),
            PenaltyJson::Value(v) => Err(format!("penalty must be finite and positive, got {v}")),
        }
    }
}

/// What the optimizer scores each evaluation's measurements with.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Mean of `−|z| + penalty·(edges inside z)` over the sampled outcomes.
    #[default]
    MisCost,
    /// Mean classical energy of the outcomes under the cost Hamiltonian.
    IsingEnergy,
}

/// Full specification of a variational sampling run. Serialized form keeps
/// frequencies in MHz and durations in µs; the emulator converts to angular
/// units internally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QaoaConfig {
    /// Ansatz depth. Only one layer is implemented.
    pub layers: usize,
    /// Shots per objective evaluation.
    pub eval_shots: u64,
    /// Objective-evaluation budget for the optimizer.
    pub max_evals: u64,
    /// Shots for the final histogram when no caller override applies.
    pub final_shots: u64,
    pub penalty: Penalty,
    /// Van der Waals coefficient, rad·µs⁻¹·µm⁶.
    pub c6: f64,
    pub max_amp_mhz: f64,
    pub max_det_mhz: f64,
    pub max_duration_us: f64,
    pub objective: Objective,
    /// Stretch applied to graph coordinates at embedding time.
    pub embed_scale: f64,
    pub max_qubits: usize,
}

impl Default for QaoaConfig {
    fn default() -> Self {
        Self {
            layers: 1,
            eval_shots: 50,
            max_evals: 100,
            final_shots: 100,
            penalty: Penalty::Auto,
            c6: DeviceSpec::default().c6,
            max_amp_mhz: 12.0,
            max_det_mhz: 12.0,
            max_duration_us: 3.0,
            objective: Objective::MisCost,
            embed_scale: 1.0,
            max_qubits: 15,
        }
    }
}

impl QaoaConfig {
    pub fn device(&self) -> DeviceSpec {
        let two_pi = 2.0 * std::f64::consts::PI;
        DeviceSpec {
            max_amp: two_pi * self.max_amp_mhz,
            max_det: two_pi * self.max_det_mhz,
            max_duration: self.max_duration_us,
            c6: self.c6,
        }
    }

    pub fn embed_config(&self) -> EmbedConfig {
        EmbedConfig { scale: self.embed_scale, max_qubits: self.max_qubits }
    }
}

/// Average penalized independent-set cost of a histogram whose masks are
/// vertex-label sets of `g`: each shot contributes `−|z|` plus `penalty` per
/// edge with both endpoints selected.
pub fn qaoa_energy(hist: &SampleHistogram, g: &Graph, penalty: f64) -> f64 {
    let mut total = 0.0;
    let mut shots = 0u64;
    for (&mask, &count) in hist.entries() {
        let size = mask.count_ones() as f64;
        let mut conflicts = 0u32;
        for l in graph_core::VertexSet::from_bits(mask).iter() {
            conflicts += (g.neighbors(l).expect("mask within labels").bits() & mask).count_ones();
        }
        let cost = -size + penalty * f64::from(conflicts / 2);
        total += cost * count as f64;
        shots += count;
    }
    total / shots as f64
}

/// Result of a Nelder–Mead run.
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: u64,
}

/// Derivative-free simplex minimization (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Stops when the evaluation budget is spent
/// or the simplex diameter drops under `diameter_tol`.
pub fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    initial_simplex: Vec<Vec<f64>>,
    max_evals: u64,
    diameter_tol: f64,
) -> NelderMeadResult {
    assert!(initial_simplex.len() >= 2, "simplex needs at least two points");
    let dim = initial_simplex[0].len();
    let mut evals = 0u64;
    let mut eval = |x: &[f64], evals: &mut u64| -> f64 {
        *evals += 1;
        f(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = initial_simplex
        .into_iter()
        .map(|x| {
            let v = eval(&x, &mut evals);
            (x, v)
        })
        .collect();

    let diameter = |s: &[(Vec<f64>, f64)]| -> f64 {
        let mut d = 0.0f64;
        for i in 0..s.len() {
            for j in (i + 1)..s.len() {
                let dist = s[i]
                    .0
                    .iter()
                    .zip(&s[j].0)
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                d = d.max(dist);
            }
        }
        d
    };

    while evals < max_evals && diameter(&simplex) >= diameter_tol {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let worst = simplex.len() - 1;
        let centroid: Vec<f64> = (0..dim)
            .map(|d| simplex[..worst].iter().map(|(x, _)| x[d]).sum::<f64>() / worst as f64)
            .collect();
        let at = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst].0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = at(1.0);
        let fr = eval(&reflected, &mut evals);
        if fr < simplex[0].1 {
            let expanded = at(2.0);
            let fe = eval(&expanded, &mut evals);
            simplex[worst] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[worst - 1].1 {
            simplex[worst] = (reflected, fr);
        } else {
            let contracted = if fr < simplex[worst].1 { at(0.5) } else { at(-0.5) };
            let fc = eval(&contracted, &mut evals);
            if fc < simplex[worst].1.min(fr) {
                simplex[worst] = (contracted, fc);
            } else {
                // Shrink everything toward the best point.
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    for (xi, bi) in entry.0.iter_mut().zip(&best) {
                        *xi = bi + 0.5 * (*xi - bi);
                    }
                    entry.1 = eval(&entry.0.clone(), &mut evals);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    NelderMeadResult { x, value, evals }
}

/// Everything fixed about one variational run: the embedded register and the
/// two segment propagators (their Hamiltonians never change — only the two
/// durations are optimized, so both eigendecompositions are reused across
/// every evaluation).
struct VariationalCircuit {
    n: usize,
    mix: SegmentPropagator,
    cost: SegmentPropagator,
    cost_h: SegmentHamiltonian,
    qubit_edges: Vec<(usize, usize)>,
    penalty: f64,
    max_duration: f64,
    objective: Objective,
}

impl VariationalCircuit {
    fn build(g: &Graph, cfg: &QaoaConfig, spec: &DeviceSpec, register: &Register) -> Self {
        let labels = g.labels();
        let pos = |label: usize| labels.iter().position(|&l| l == label).expect("own label");
        let qubit_edges: Vec<(usize, usize)> =
            g.edges().iter().map(|&(a, b)| (pos(a), pos(b))).collect();
        let penalty = match cfg.penalty {
            Penalty::Auto => 2.0 * g.max_degree() as f64,
            Penalty::Fixed(p) => p,
        };
        // The cost tilt equals the drive amplitude, which by construction is
        // the interaction strength at the connectivity radius: occupation is
        // rewarded as strongly as possible without out-bidding the blockade
        // of even the weakest edge. The drive stays on so the segment also
        // moves populations (a diagonal segment before measurement would be
        // invisible to it).
        let mix_h = SegmentHamiltonian::new(register, register.omega(), 0.0);
        let cost_h = SegmentHamiltonian::new(register, register.omega(), register.omega());
        Self {
            n: register.n_qubits(),
            mix: SegmentPropagator::new(mix_h),
            cost: SegmentPropagator::new(cost_h.clone()),
            cost_h,
            qubit_edges,
            penalty,
            max_duration: spec.max_duration,
            objective: cfg.objective,
        }
    }

    /// Clamps both durations into the legal box and rescales proportionally
    /// when their sum would overrun the schedule budget.
    fn project(&self, x: &[f64]) -> [f64; 2] {
        let t1 = x[0].clamp(MIN_SEGMENT_DURATION, self.max_duration);
        let t2 = x[1].clamp(MIN_SEGMENT_DURATION, self.max_duration);
        let total = t1 + t2;
        if total > self.max_duration {
            let s = self.max_duration / total;
            [t1 * s, t2 * s]
        } else {
            [t1, t2]
        }
    }

    fn run(&self, t: [f64; 2]) -> QuantumState {
        let mut state = QuantumState::ground(self.n);
        self.mix.apply(t[0], &mut state);
        self.cost.apply(t[1], &mut state);
        state
    }

    /// Scores measured occupation patterns (qubit-index space).
    fn score(&self, counts: &BTreeMap<u64, u64>) -> f64 {
        let mut total = 0.0;
        let mut shots = 0u64;
        for (&z, &count) in counts {
            let value = match self.objective {
                Objective::MisCost => {
                    let conflicts = self
                        .qubit_edges
                        .iter()
                        .filter(|&&(a, b)| z & (1 << a) != 0 && z & (1 << b) != 0)
                        .count();
                    -(z.count_ones() as f64) + self.penalty * conflicts as f64
                }
                Objective::IsingEnergy => self.cost_h.classical_energy(z),
            };
            total += value * count as f64;
            shots += count;
        }
        total / shots as f64
    }
}

/// Outcome of one optimize-then-measure run.
pub struct QaoaOutcome {
    /// Final-measurement histogram, keyed by vertex-label masks of the input
    /// graph.
    pub histogram: SampleHistogram,
    /// Optimized segment durations `[t₁, t₂]` in µs.
    pub durations: [f64; 2],
    /// Objective value at the optimum (sampled, so noisy).
    pub objective_value: f64,
    /// Objective evaluations spent.
    pub evals: u64,
}

/// Embeds `g`, optimizes the two segment durations, and measures the tuned
/// circuit `shots` times.
pub fn run_qaoa(
    g: &Graph,
    cfg: &QaoaConfig,
    shots: u64,
    seed: u64,
) -> Result<QaoaOutcome, EmulatorError> {
    if cfg.layers != 1 {
        return Err(EmulatorError::BadConfig(format!(
            "only the single-layer ansatz is implemented, got layers = {}",
            cfg.layers
        )));
    }
    if cfg.eval_shots == 0 || cfg.max_evals == 0 {
        return Err(EmulatorError::BadConfig(
            "eval_shots and max_evals must be at least 1".into(),
        ));
    }
    let spec = cfg.device();
    let register = embed(g, &spec, &cfg.embed_config())?;
    let circuit = VariationalCircuit::build(g, cfg, &spec, &register);

    let mut counter = 0u64;
    let objective = |x: &[f64]| -> f64 {
        counter += 1;
        let eval_seed = mix3(seed, counter, ROLE_EVAL);
        let state = circuit.run(circuit.project(x));
        let counts = state.measure(cfg.eval_shots, eval_seed).expect("eval_shots checked above");
        circuit.score(&counts)
    };

    let t0 = spec.max_duration / 4.0;
    let initial_simplex = vec![vec![t0, t0], vec![t0 * 1.1, t0], vec![t0, t0 * 1.1]];
    let nm = nelder_mead(objective, initial_simplex, cfg.max_evals, 1e-4);

    let durations = circuit.project(&nm.x);
    let state = circuit.run(durations);
    let counts = state.measure(shots, mix3(seed, u64::MAX, ROLE_FINAL))?;

    // Map qubit-index masks back onto graph labels.
    let labels = g.labels().to_vec();
    let mut entries: BTreeMap<u64, u64> = BTreeMap::new();
    for (z, count) in counts {
        let mut mask = 0u64;
        let mut rest = z;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            mask |= 1 << labels[i];
        }
        *entries.entry(mask).or_insert(0) += count;
    }
    let histogram = SampleHistogram::new(
        entries,
        HistogramMeta { backend: "qaoa".into(), seed, shots_requested: shots, labels },
    )
    .map_err(|e| EmulatorError::BadConfig(format!("histogram assembly failed: {e}")))?;

    Ok(QaoaOutcome { histogram, durations, objective_value: nm.value, evals: nm.evals })
}

/// [`MisSampler`] adapter: one full variational run per `sample` call.
#[derive(Debug, Clone, Default)]
pub struct QaoaSampler {
    pub config: QaoaConfig,
}

impl MisSampler for QaoaSampler {
    fn name(&self) -> &str {
        "qaoa"
    }

    fn sample(&self, g: &Graph, shots: u64, seed: u64) -> Result<SampleHistogram, SampleError> {
        if shots == 0 {
            return Err(SampleError::ZeroShots);
        }
        run_qaoa(g, &self.config, shots, seed)
            .map(|o| o.histogram)
            .map_err(|e| SampleError::Backend(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn penalized_cost_counts_sizes_and_conflicts() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let mut entries = BTreeMap::new();
        entries.insert(0b101, 3u64); // {0,2}: independent, size 2
        entries.insert(0b011, 1); // {0,1}: one edge inside
        let hist = SampleHistogram::new(
            entries,
            HistogramMeta {
                backend: "test".into(),
                seed: 0,
                shots_requested: 4,
                labels: vec![0, 1, 2],
            },
        )
        .unwrap();
        // 3 shots at −2, 1 shot at −2 + 4·1 = 2 → mean −1.
        assert_relative_eq!(qaoa_energy(&hist, &g, 4.0), -1.0, epsilon = 1e-12);
    }

    #[test]
    fn nelder_mead_minimizes_a_smooth_bowl() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + (x[1] + 2.0).powi(2);
        let r = nelder_mead(f, vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.0, 0.5]], 300, 1e-7);
        assert!((r.x[0] - 1.0).abs() < 1e-3, "x0 = {}", r.x[0]);
        assert!((r.x[1] + 2.0).abs() < 1e-3, "x1 = {}", r.x[1]);
        assert!(r.evals <= 300);
    }

    #[test]
    fn config_serializes_with_the_documented_field_names() {
        let cfg = QaoaConfig::default();
        let json = serde_json::to_string(&cfg).unwrap();
        assert_eq!(
            json,
            r#"{"layers":1,"eval_shots":50,"max_evals":100,"final_shots":100,"penalty":"auto","c6":5420158.53,"max_amp_mhz":12.0,"max_det_mhz":12.0,"max_duration_us":3.0,"objective":"mis_cost","embed_scale":1.0,"max_qubits":15}"#
        );
        let back: QaoaConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cfg);
        // Partial configs inherit defaults; numeric penalties parse too.
        let sparse: QaoaConfig =
            serde_json::from_str(r#"{"penalty":2.5,"eval_shots":10}"#).unwrap();
        assert_eq!(sparse.penalty, Penalty::Fixed(2.5));
        assert_eq!(sparse.eval_shots, 10);
        assert_eq!(sparse.max_evals, 100);
        assert!(serde_json::from_str::<QaoaConfig>(r#"{"penalty":"huge"}"#).is_err());
        assert!(serde_json::from_str::<QaoaConfig>(r#"{"penalty":-1.0}"#).is_err());
    }

    #[test]
    fn duration_projection_respects_the_budget() {
        let g = graph_core::unit_disk_graph(&[[0.0, 0.0], [5.0, 0.0]], 6.0).unwrap();
        let cfg = QaoaConfig::default();
        let spec = cfg.device();
        let reg = embed(&g, &spec, &cfg.embed_config()).unwrap();
        let circuit = VariationalCircuit::build(&g, &cfg, &spec, &reg);
        let t = circuit.project(&[2.5, 2.5]);
        assert_relative_eq!(t[0] + t[1], spec.max_duration, epsilon = 1e-12);
        assert_relative_eq!(t[0], t[1], epsilon = 1e-12);
        let clamped = circuit.project(&[-1.0, 0.5]);
        assert_eq!(clamped[0], MIN_SEGMENT_DURATION);
        assert_eq!(clamped[1], 0.5);
    }
}
