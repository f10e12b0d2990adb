//! Pulse-level emulator for neutral-atom registers under the Rydberg
//! Hamiltonian, plus a one-layer variational optimizer that exposes the
//! emulator as a maximal-independent-set sampler.
//!
//! The pieces compose bottom-up:
//!
//! - [`DeviceSpec`] — hardware envelope (drive amplitude, detuning, schedule
//!   length, van der Waals coefficient) and the blockade radius it implies.
//! - [`embed`] / [`Register`] — places a unit-disk graph's coordinates so
//!   every edge sits inside the blockade radius and every non-edge outside.
//! - [`PulseSchedule`] — validated piecewise-constant global drive.
//! - [`SegmentHamiltonian`] — matrix-free `H = (Ω/2)Σσₓ − (δ/2)Σσ_z +
//!   Σ C₆/d⁶ nᵢnⱼ` for one segment.
//! - [`evolve`] — exact diagonalization below [`DENSE_DIM_LIMIT`], Krylov
//!   propagation with adaptive substeps above it.
//! - [`run_qaoa`] / [`QaoaSampler`] — Nelder–Mead over the two segment
//!   durations, measuring the tuned circuit into a label-space histogram.
//!
//! Frequencies are angular (rad/µs), durations µs, distances µm.

mod device;
mod evolve;
mod hamiltonian;
mod qaoa;
mod register;
mod schedule;
mod state;

pub use device::DeviceSpec;
pub use evolve::{evolve, evolve_state, SegmentPropagator, DENSE_DIM_LIMIT};
pub use hamiltonian::SegmentHamiltonian;
pub use qaoa::{
    nelder_mead, qaoa_energy, run_qaoa, NelderMeadResult, Objective, Penalty, QaoaConfig,
    QaoaOutcome, QaoaSampler, MIN_SEGMENT_DURATION,
};
pub use register::{embed, EmbedConfig, Register};
pub use schedule::{PulseSchedule, PulseSegment};
pub use state::QuantumState;

/// Everything that can go wrong while building or driving an emulated
/// register.
#[derive(Debug, thiserror::Error)]
pub enum EmulatorError {
    #[error("measurement needs at least one shot")]
    ZeroShots,
    #[error("register must hold at least one atom")]
    EmptyRegister,
    #[error("graph has {n} vertices but the register caps at {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("graph carries no coordinates; embedding needs vertex positions")]
    MissingCoordinates,
    #[error(
        "no blockade radius separates edges from non-edges \
         (needs a radius in ({lo}, {hi}))"
    )]
    BlockadeRadiusInfeasible { lo: f64, hi: f64 },
    #[error("schedule must contain at least one segment")]
    EmptySchedule,
    #[error("segment {segment}: amplitude {omega} rad/µs outside [0, {max}]")]
    AmplitudeOutOfRange { segment: usize, omega: f64, max: f64 },
    #[error("segment {segment}: detuning {delta} rad/µs outside [-{max}, {max}]")]
    DetuningOutOfRange { segment: usize, delta: f64, max: f64 },
    #[error("segment {segment}: duration must be positive and finite")]
    NonPositiveDuration { segment: usize },
    #[error("schedule runs {total} µs, device allows {max} µs")]
    DurationBudgetExceeded { total: f64, max: f64 },
    #[error("invalid run configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Graph(#[from] graph_core::GraphError),
}
