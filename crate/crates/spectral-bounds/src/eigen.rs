//! Dense symmetric eigensolver: cyclic Jacobi rotations.
//!
//! Jacobi is quadratically convergent once the off-diagonal mass is small and
//! computes small eigenvalues to high *relative* accuracy, which matters here
//! because the bounds divide by extreme eigenvalues. Matrices in this
//! workspace are small (adjacency matrices up to 64×64, truncated evolution
//! operators a few hundred square), so the O(n³) sweep cost is irrelevant.

/// Dense symmetric matrix, row-major. Only symmetry-respecting mutation is
/// exposed so the eigensolver's precondition cannot be violated.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    /// Builds from a generator; `f` is only consulted for `i ≤ j` and the
    /// value is mirrored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    /// Wraps an existing row-major buffer, checking symmetry.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n);
        for i in 0..n {
            for j in (i + 1)..n {
                assert!(
                    data[i * n + j] == data[j * n + i],
                    "matrix is not symmetric at ({i}, {j})"
                );
            }
        }
        SymMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets `(i, j)` and its mirror.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    /// y = A·x
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            y[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
}

/// Eigendecomposition of a symmetric matrix. `values` are sorted descending;
/// `vectors` is row-major with **column** `k` holding the unit eigenvector of
/// `values[k]`.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
    pub n: usize,
}

impl Eigen {
    /// Entry `(i, k)`: component `i` of eigenvector `k`.
    #[inline]
    pub fn vector_component(&self, i: usize, k: usize) -> f64 {
        self.vectors[i * self.n + k]
    }
}

const MAX_SWEEPS: usize = 75;

/// Full eigendecomposition by cyclic Jacobi sweeps.
///
/// Rotation bookkeeping follows the classical formulation (threshold skipping
/// for the first sweeps, `t = sgn(θ)/(|θ| + √(1+θ²))` for stability, deferred
/// diagonal updates through `b`/`z`). Converges when the strict upper
/// triangle underflows to exactly zero, which for f64 happens within a dozen
/// sweeps; eigenvalues come out at ≲1e-9 relative error.
pub fn eigen_sym(m: &SymMatrix) -> Eigen {
    let n = m.n;
    if n == 0 {
        return Eigen { values: vec![], vectors: vec![], n: 0 };
    }
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let mut b: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut d = b.clone();
    let mut z = vec![0.0; n];

    for sweep in 1..=MAX_SWEEPS {
        let mut sm = 0.0;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                sm += a[p * n + q].abs();
            }
        }
        if sm == 0.0 {
            break;
        }
        let tresh = if sweep < 4 { 0.2 * sm / (n * n) as f64 } else { 0.0 };
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let g = 100.0 * apq.abs();
                // After four sweeps, rotations whose target is negligible
                // relative to both diagonal entries are skipped outright.
                if sweep > 4 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[p * n + q] = 0.0;
                    continue;
                }
                if apq.abs() <= tresh {
                    continue;
                }
                let mut h = d[q] - d[p];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                a[p * n + q] = 0.0;
                let rotate = |a: &mut [f64], i: usize, j: usize, k: usize, l: usize| {
                    let g = a[i * n + j];
                    let h = a[k * n + l];
                    a[i * n + j] = g - s * (h + g * tau);
                    a[k * n + l] = h + s * (g - h * tau);
                };
                for j in 0..p {
                    rotate(&mut a, j, p, j, q);
                }
                for j in (p + 1)..q {
                    rotate(&mut a, p, j, j, q);
                }
                for j in (q + 1)..n {
                    rotate(&mut a, p, j, q, j);
                }
                for j in 0..n {
                    rotate(&mut v, j, p, j, q);
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }

    // Sort eigenpairs descending by value.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).expect("eigenvalues are finite"));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new_k] = v[i * n + old_k];
        }
    }
    Eigen { values, vectors, n }
}
