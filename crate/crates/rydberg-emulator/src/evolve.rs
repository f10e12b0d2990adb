//! Time evolution `ψ ↦ exp(−iHt)ψ` for one drive segment at a time.
//!
//! Small systems diagonalize the segment Hamiltonian once and evolve by
//! phase rotation in the eigenbasis — exact for any duration, and the
//! decomposition is reusable across durations, which the variational loop
//! exploits heavily. Larger systems use a Lanczos–Krylov propagator with
//! full reorthogonalization and an a-posteriori error bound that halves the
//! substep until the step error is negligible. Neither path ever
//! renormalizes the state: norm drift is left visible as an accuracy signal.

use num_complex::Complex64;
use spectral_bounds::eigen::{eigen_sym, Eigen, SymMatrix};

use crate::{PulseSchedule, QuantumState, Register, SegmentHamiltonian};

/// Statevector dimension up to which segments are evolved by dense
/// diagonalization (up to 8 qubits). Beyond this the Krylov path takes over.
pub const DENSE_DIM_LIMIT: usize = 256;

/// Krylov subspace cap. With reorthogonalization, ~40 vectors push the
/// local truncation error of a capped-duration segment below 1e-12.
const KRYLOV_MAX_VECTORS: usize = 48;

/// Per-substep truncation tolerance for the Krylov path.
const KRYLOV_STEP_TOL: f64 = 1e-11;

/// Lanczos β below which the Krylov space is exactly invariant.
const BREAKDOWN_TOL: f64 = 1e-13;

/// Ready-to-apply propagator for one segment Hamiltonian.
pub enum SegmentPropagator {
    Dense(Box<Eigen>),
    Krylov(SegmentHamiltonian),
}

impl SegmentPropagator {
    pub fn new(h: SegmentHamiltonian) -> Self {
        if h.dim() <= DENSE_DIM_LIMIT {
            SegmentPropagator::Dense(Box::new(eigen_sym(&h.dense())))
        } else {
            SegmentPropagator::Krylov(h)
        }
    }

    /// Advances `state` by `duration` under this propagator's Hamiltonian.
    pub fn apply(&self, duration: f64, state: &mut QuantumState) {
        match self {
            SegmentPropagator::Dense(eigen) => dense_apply(eigen, duration, state),
            SegmentPropagator::Krylov(h) => krylov_apply(h, duration, state),
        }
    }
}

/// Evolves the register's ground state through a validated schedule.
pub fn evolve(register: &Register, schedule: &PulseSchedule) -> QuantumState {
    let mut state = QuantumState::ground(register.n_qubits());
    evolve_state(register, schedule, &mut state);
    state
}

/// Evolves an arbitrary starting state in place through a schedule.
pub fn evolve_state(register: &Register, schedule: &PulseSchedule, state: &mut QuantumState) {
    for seg in schedule.segments() {
        let h = SegmentHamiltonian::new(register, seg.omega, seg.delta);
        SegmentPropagator::new(h).apply(seg.duration, state);
    }
}

/// Exact evolution in the eigenbasis: ψ' = Q·exp(−iΛt)·Qᵀψ.
fn dense_apply(eigen: &Eigen, t: f64, state: &mut QuantumState) {
    let dim = eigen.n;
    let amps = state.amplitudes_mut();
    debug_assert_eq!(amps.len(), dim);

    // c = Qᵀψ, accumulated row-wise so memory access stays contiguous.
    let mut c = vec![Complex64::ZERO; dim];
    for i in 0..dim {
        let row = &eigen.vectors[i * dim..(i + 1) * dim];
        let amp = amps[i];
        for (ck, &q) in c.iter_mut().zip(row) {
            *ck += amp * q;
        }
    }
    for (ck, &lambda) in c.iter_mut().zip(&eigen.values) {
        *ck *= Complex64::cis(-lambda * t);
    }
    // ψ' = Qc: row i of `vectors` dotted with c.
    for i in 0..dim {
        let row = &eigen.vectors[i * dim..(i + 1) * dim];
        amps[i] = row.iter().zip(&c).map(|(&q, ck)| ck * q).sum();
    }
}

struct KrylovBasis {
    vectors: Vec<Vec<Complex64>>,
    alphas: Vec<f64>,
    betas: Vec<f64>,
    /// β that would extend the basis; ~0 means the span is exactly invariant.
    residual_beta: f64,
}

/// Lanczos with full two-pass reorthogonalization, so the basis stays
/// orthonormal to machine precision even for long recurrences.
fn build_krylov(h: &SegmentHamiltonian, start: &[Complex64]) -> KrylovBasis {
    let dim = start.len();
    let m_max = KRYLOV_MAX_VECTORS.min(dim);
    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(m_max);
    let mut alphas = Vec::with_capacity(m_max);
    let mut betas = Vec::new();
    vectors.push(start.to_vec());
    let mut residual_beta = 0.0;

    let mut w = vec![Complex64::ZERO; dim];
    for j in 0..m_max {
        h.apply(&vectors[j], &mut w);
        let alpha: f64 = vectors[j]
            .iter()
            .zip(&w)
            .map(|(v, wv)| (v.conj() * wv).re)
            .sum();
        alphas.push(alpha);
        for (wv, v) in w.iter_mut().zip(&vectors[j]) {
            *wv -= v * alpha;
        }
        if j > 0 {
            let beta_prev = betas[j - 1];
            for (wv, v) in w.iter_mut().zip(&vectors[j - 1]) {
                *wv -= v * beta_prev;
            }
        }
        // Two reorthogonalization passes against every basis vector.
        for _pass in 0..2 {
            for v in &vectors {
                let c: Complex64 = v.iter().zip(&w).map(|(vi, wi)| vi.conj() * wi).sum();
                for (wv, vi) in w.iter_mut().zip(v) {
                    *wv -= vi * c;
                }
            }
        }
        let beta = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if j + 1 == m_max || beta < BREAKDOWN_TOL {
            residual_beta = beta;
            break;
        }
        betas.push(beta);
        let inv = 1.0 / beta;
        vectors.push(w.iter().map(|x| x * inv).collect());
    }
    KrylovBasis { vectors, alphas, betas, residual_beta }
}

/// exp(−iTτ)e₁ for the tridiagonal Lanczos matrix, via its (small, dense)
/// eigendecomposition. Returns the Krylov coordinates and the magnitude of
/// the last component, which scales the truncation-error estimate.
fn krylov_coefficients(eigen: &Eigen, tau: f64) -> (Vec<Complex64>, f64) {
    let m = eigen.n;
    let mut weights = vec![Complex64::ZERO; m];
    for k in 0..m {
        // (Sᵀe₁)ₖ is row 0 of the eigenvector matrix.
        let s0k = eigen.vector_component(0, k);
        weights[k] = Complex64::cis(-eigen.values[k] * tau) * s0k;
    }
    let mut y = vec![Complex64::ZERO; m];
    for (j, yj) in y.iter_mut().enumerate() {
        let row = &eigen.vectors[j * m..(j + 1) * m];
        *yj = row.iter().zip(&weights).map(|(&s, w)| w * s).sum();
    }
    let tail = y[m - 1].norm();
    (y, tail)
}

fn krylov_apply(h: &SegmentHamiltonian, t: f64, state: &mut QuantumState) {
    let amps = state.amplitudes_mut();
    let mut remaining = t;
    let mut tau = t;
    while remaining > 0.0 {
        let beta0 = amps.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if beta0 == 0.0 {
            return;
        }
        let inv = 1.0 / beta0;
        let start: Vec<Complex64> = amps.iter().map(|x| x * inv).collect();
        let basis = build_krylov(h, &start);
        let m = basis.alphas.len();
        let mut tri = SymMatrix::zeros(m);
        for (i, &a) in basis.alphas.iter().enumerate() {
            tri.set_sym(i, i, a);
        }
        for (i, &b) in basis.betas.iter().enumerate() {
            tri.set_sym(i, i + 1, b);
        }
        let eigen = eigen_sym(&tri);

        tau = tau.min(remaining);
        let y = loop {
            let (y, tail) = krylov_coefficients(&eigen, tau);
            let err = basis.residual_beta * tail * tau.abs();
            if err <= KRYLOV_STEP_TOL || tau <= remaining * 1e-6 {
                break y;
            }
            tau *= 0.5;
        };

        for a in amps.iter_mut() {
            *a = Complex64::ZERO;
        }
        for (yj, vj) in y.iter().zip(&basis.vectors) {
            let scaled = yj * beta0;
            for (a, v) in amps.iter_mut().zip(vj) {
                *a += v * scaled;
            }
        }
        remaining -= tau;
    }
}
