use num_complex::Complex64;
use spectral_bounds::eigen::SymMatrix;

use crate::Register;

/// The Rydberg Hamiltonian for one piecewise-constant drive segment:
///
/// ```text
/// H = (Ω/2) Σᵢ σₓⁱ  −  (δ/2) Σᵢ σᵤⁱ  +  Σᵢ<ⱼ (C₆/dᵢⱼ⁶) nᵢ nⱼ
/// ```
///
/// with `σᵤ|1⟩ = +|1⟩`, so positive detuning lowers the energy of occupied
/// sites and the van der Waals term penalizes every excited pair, edge or
/// not. In the basis of occupation bitstrings the detuning and interaction
/// terms are diagonal and the drive couples states at Hamming distance one.
#[derive(Debug, Clone)]
pub struct SegmentHamiltonian {
    n: usize,
    omega: f64,
    diag: Vec<f64>,
}

impl SegmentHamiltonian {
    pub fn new(register: &Register, omega: f64, delta: f64) -> Self {
        let n = register.n_qubits();
        let dim = 1usize << n;
        let mut pair = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                pair[i * n + j] = register.interaction(i, j);
            }
        }
        let mut diag = vec![0.0; dim];
        for (s, d) in diag.iter_mut().enumerate() {
            let pops = s.count_ones() as i64;
            let sigma_z_total = 2 * pops - n as i64;
            let mut v = -(delta / 2.0) * sigma_z_total as f64;
            let mut rest = s;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let mut others = rest;
                while others != 0 {
                    let j = others.trailing_zeros() as usize;
                    others &= others - 1;
                    v += pair[i * n + j];
                }
            }
            *d = v;
        }
        Self { n, omega, diag }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// y = H x, matrix-free: one diagonal multiply plus `n` bit-flip shuffles.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        let half_omega = 0.5 * self.omega;
        for (s, out) in y.iter_mut().enumerate() {
            let mut acc = x[s] * self.diag[s];
            if half_omega != 0.0 {
                for i in 0..self.n {
                    acc += x[s ^ (1 << i)] * half_omega;
                }
            }
            *out = acc;
        }
    }

    /// ⟨ψ|H|ψ⟩ — real because H is real symmetric.
    pub fn expectation(&self, amps: &[Complex64]) -> f64 {
        let mut hx = vec![Complex64::ZERO; amps.len()];
        self.apply(amps, &mut hx);
        amps.iter().zip(&hx).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// Dense realization, for the exact-diagonalization evolution path.
    pub fn dense(&self) -> SymMatrix {
        let dim = self.dim();
        let mut m = SymMatrix::zeros(dim);
        for s in 0..dim {
            m.set_sym(s, s, self.diag[s]);
            for i in 0..self.n {
                let t = s ^ (1 << i);
                if t > s {
                    m.set_sym(s, t, 0.5 * self.omega);
                }
            }
        }
        m
    }

    /// Energy of one classical occupation pattern (the diagonal entry) —
    /// what an Ising-style objective assigns to a measured bitstring.
    pub fn classical_energy(&self, bitstring: u64) -> f64 {
        self.diag[bitstring as usize]
    }
}
