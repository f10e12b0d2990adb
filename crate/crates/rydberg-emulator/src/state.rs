use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::EmulatorError;

/// Statevector over the computational basis. Basis index bit `i` is qubit
/// `i`'s Rydberg occupation (little-endian), so index 0 is the all-ground
/// state.
#[derive(Debug, Clone)]
pub struct QuantumState {
    amps: Vec<Complex64>,
    n_qubits: usize,
}

impl QuantumState {
    /// |0…0⟩ on `n_qubits` qubits.
    pub fn ground(n_qubits: usize) -> Self {
        let mut amps = vec![Complex64::ZERO; 1 << n_qubits];
        amps[0] = Complex64::ONE;
        Self { amps, n_qubits }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// ‖ψ‖₂. Unitary evolution keeps this at 1 up to integrator error; the
    /// emulator never renormalizes, so drift here measures solver quality.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability of measuring the basis state `index`.
    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    /// Projective measurement in the computational basis: a multinomial draw
    /// of `shots` outcomes over |ψ|², keyed by basis index.
    pub fn measure(&self, shots: u64, seed: u64) -> Result<BTreeMap<u64, u64>, EmulatorError> {
        if shots == 0 {
            return Err(EmulatorError::ZeroShots);
        }
        let mut cdf = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cdf.push(acc);
        }
        let total = acc;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * total;
            let idx = cdf.partition_point(|&c| c <= u).min(self.amps.len() - 1);
            *counts.entry(idx as u64).or_insert(0) += 1;
        }
        Ok(counts)
    }
}
