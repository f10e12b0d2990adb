//! Chromatic-number bounds from the adjacency spectrum and the degree
//! sequence.
//!
//! Lower bounds (real-valued; `None` when the quantity they divide by is
//! degenerate):
//! - Hoffman: `1 − λ₁/λₙ`
//! - inertia: `1 + max(n⁺/n⁻, n⁻/n⁺)` over the counts of positive/negative
//!   eigenvalues
//! - principal: `n / (n − λ₁)`
//!
//! Upper bounds (integers): `Δ + 1` and the Welsh–Powell bound
//! `max_i min(dᵢ + 1, i)` over the descending degree sequence (1-based rank).
//! The combined bracket takes the best of whatever is available, with the
//! rounding of the lower bounds configurable.

use graph_core::Graph;
use serde::{Deserialize, Serialize};

use crate::eigen::{eigen_sym, SymMatrix};

/// Relative factor for the default inertia cutoff: `zero_tol = 1e-8 · max|λ|`.
pub const DEFAULT_ZERO_TOL_FACTOR: f64 = 1e-8;

/// How real-valued lower bounds become integers in the combined bracket.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// Conservative default: a fractional bound only certifies its floor.
    #[default]
    Floor,
    /// Tighter reading: χ is an integer, so any real lower bound `b` implies
    /// χ ≥ ⌈b⌉. Kept as an explicit variant for comparison runs.
    Ceil,
}

impl Rounding {
    fn apply(self, x: f64) -> usize {
        let r = match self {
            Rounding::Floor => x.floor(),
            Rounding::Ceil => x.ceil(),
        };
        if r <= 0.0 {
            0
        } else {
            r as usize
        }
    }
}

/// Adjacency eigenvalues (descending) plus the inertia split at `zero_tol`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<f64>,
    pub n_pos: usize,
    pub n_zero: usize,
    pub n_neg: usize,
    pub zero_tol: f64,
}

/// Spectrum with an explicit absolute inertia cutoff: eigenvalues with
/// `|λ| ≤ zero_tol` count as zero.
pub fn spectrum(g: &Graph, zero_tol: f64) -> SpectrumSummary {
    let n = g.n();
    let a = SymMatrix::from_row_major(n, g.adjacency_matrix());
    let eig = eigen_sym(&a);
    summarize(eig.values, zero_tol)
}

/// Spectrum with the default relative cutoff `1e-8 · max|λ|`.
pub fn spectrum_default(g: &Graph) -> SpectrumSummary {
    let n = g.n();
    let a = SymMatrix::from_row_major(n, g.adjacency_matrix());
    let eig = eigen_sym(&a);
    let scale = eig.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    summarize(eig.values, DEFAULT_ZERO_TOL_FACTOR * scale)
}

fn summarize(eigenvalues: Vec<f64>, zero_tol: f64) -> SpectrumSummary {
    let n_pos = eigenvalues.iter().filter(|&&v| v > zero_tol).count();
    let n_neg = eigenvalues.iter().filter(|&&v| v < -zero_tol).count();
    SpectrumSummary {
        n_zero: eigenvalues.len() - n_pos - n_neg,
        eigenvalues,
        n_pos,
        n_neg,
        zero_tol,
    }
}

/// The three spectral lower bounds. A bound is `None` when its defining
/// expression is degenerate for this spectrum (edgeless graphs, vanishing
/// inertia side), never clamped or substituted.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct LowerBounds {
    pub hoffman: Option<f64>,
    pub inertia: Option<f64>,
    pub principal: Option<f64>,
}

pub fn lower_bounds(s: &SpectrumSummary) -> LowerBounds {
    let n = s.eigenvalues.len();
    if n == 0 {
        return LowerBounds::default();
    }
    let lambda_1 = s.eigenvalues[0];
    let lambda_n = s.eigenvalues[n - 1];
    let hoffman = (lambda_n < -s.zero_tol).then(|| 1.0 - lambda_1 / lambda_n);
    let inertia = (s.n_pos > 0 && s.n_neg > 0).then(|| {
        let (p, q) = (s.n_pos as f64, s.n_neg as f64);
        1.0 + (p / q).max(q / p)
    });
    let principal = (n as f64 - lambda_1 > s.zero_tol).then(|| n as f64 / (n as f64 - lambda_1));
    LowerBounds { hoffman, inertia, principal }
}

/// The two degree-based upper bounds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct UpperBounds {
    /// Δ + 1: greedy coloring never needs more.
    pub max_degree: usize,
    /// Welsh–Powell: `max_i min(dᵢ + 1, i)`, degrees descending, `i` 1-based.
    pub welsh_powell: usize,
}

pub fn upper_bounds(g: &Graph) -> UpperBounds {
    let mut degrees = g.degrees();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let welsh_powell = degrees
        .iter()
        .enumerate()
        .map(|(idx, &d)| (d + 1).min(idx + 1))
        .max()
        .unwrap_or(0);
    UpperBounds {
        max_degree: g.max_degree() + (g.n().min(1)),
        welsh_powell,
    }
}

/// Combines the raw bounds into an integer bracket `(lb, ub)`.
///
/// Absent lower bounds are skipped. The result is clamped to the trivial
/// facts χ ≥ 1 (any vertex) and χ ≥ 2 (any edge); the upper bound is the
/// smaller of the two degree bounds.
pub fn combine(lb: &LowerBounds, ub: &UpperBounds, has_edges: bool, rounding: Rounding) -> (usize, usize) {
    let spectral = [lb.hoffman, lb.inertia, lb.principal]
        .into_iter()
        .flatten()
        .map(|b| rounding.apply(b))
        .max()
        .unwrap_or(0);
    let floor = if has_edges { 2 } else { 1 };
    let combined_ub = ub.max_degree.min(ub.welsh_powell);
    (spectral.max(floor), combined_ub)
}

/// Everything the bound machinery knows about one graph: the five raw bounds
/// plus the combined bracket. This is what solver reports embed.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub lb_hoffman: Option<f64>,
    pub lb_inertia: Option<f64>,
    pub lb_principal: Option<f64>,
    pub ub_max_degree: usize,
    pub ub_welsh_powell: usize,
    pub combined_lb: usize,
    pub combined_ub: usize,
}

impl BoundsReport {
    /// Computes all bounds for `g`. Edgeless graphs short-circuit to the
    /// exact bracket (1, 1) without touching the eigensolver; the empty graph
    /// reports (0, 0).
    pub fn compute(g: &Graph, rounding: Rounding) -> BoundsReport {
        let (n, m) = (g.n(), g.m());
        if n == 0 {
            return BoundsReport {
                n,
                m,
                lb_hoffman: None,
                lb_inertia: None,
                lb_principal: None,
                ub_max_degree: 0,
                ub_welsh_powell: 0,
                combined_lb: 0,
                combined_ub: 0,
            };
        }
        if m == 0 {
            return BoundsReport {
                n,
                m,
                lb_hoffman: None,
                lb_inertia: None,
                lb_principal: None,
                ub_max_degree: 1,
                ub_welsh_powell: 1,
                combined_lb: 1,
                combined_ub: 1,
            };
        }
        let s = spectrum_default(g);
        let lb = lower_bounds(&s);
        let ub = upper_bounds(g);
        let (combined_lb, combined_ub) = combine(&lb, &ub, true, rounding);
        debug_assert!(combined_lb <= combined_ub, "bracket inverted on {g:?}");
        BoundsReport {
            n,
            m,
            lb_hoffman: lb.hoffman,
            lb_inertia: lb.inertia,
            lb_principal: lb.principal,
            ub_max_degree: ub.max_degree,
            ub_welsh_powell: ub.welsh_powell,
            combined_lb,
            combined_ub,
        }
    }

    pub fn combined(&self) -> (usize, usize) {
        (self.combined_lb, self.combined_ub)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn five_cycle_spectrum_is_the_golden_ratio_pair() {
        // Eigenvalues of C₅: 2cos(2πk/5) → {2, φ−1, φ−1, −φ, −φ}.
        let s = spectrum_default(&c5());
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let expect = [2.0, phi - 1.0, phi - 1.0, -phi, -phi];
        for (got, want) in s.eigenvalues.iter().zip(expect) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
        }
        assert_eq!((s.n_pos, s.n_zero, s.n_neg), (3, 0, 2));
    }

    #[test]
    fn five_cycle_bounds() {
        let r = BoundsReport::compute(&c5(), Rounding::Floor);
        // 1 + 2/φ = 1 + 2·0.618… = 2.236…
        assert_abs_diff_eq!(r.lb_hoffman.unwrap(), 2.2360679774997896, epsilon = 1e-9);
        assert_abs_diff_eq!(r.lb_inertia.unwrap(), 2.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.lb_principal.unwrap(), 5.0 / 3.0, epsilon = 1e-9);
        assert_eq!(r.ub_max_degree, 3);
        assert_eq!(r.ub_welsh_powell, 3);
        assert_eq!(r.combined(), (2, 3)); // χ(C₅) = 3 sits inside
    }

    #[test]
    fn five_cycle_ceil_mode_tightens_to_three() {
        let r = BoundsReport::compute(&c5(), Rounding::Ceil);
        assert_eq!(r.combined(), (3, 3));
    }

    #[test]
    fn complete_graph_bracket_is_tight() {
        // K₄: λ = {3, −1, −1, −1} → Hoffman 4, inertia 4, principal 4.
        let r = BoundsReport::compute(&k4(), Rounding::Floor);
        assert_abs_diff_eq!(r.lb_hoffman.unwrap(), 4.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.lb_inertia.unwrap(), 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.lb_principal.unwrap(), 4.0, epsilon = 1e-9);
        assert_eq!(r.combined(), (4, 4));
    }

    #[test]
    fn star_shows_welsh_powell_beating_max_degree() {
        // K₁,₃: Δ+1 = 4 but sorted degrees (3,1,1,1) give max min(dᵢ+1, i) = 2.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = BoundsReport::compute(&star, Rounding::Floor);
        assert_eq!(r.ub_max_degree, 4);
        assert_eq!(r.ub_welsh_powell, 2);
        // λ = {√3, 0, 0, −√3}: Hoffman = 2 exactly; inertia (1,2,1) → 2.
        assert_abs_diff_eq!(r.lb_hoffman.unwrap(), 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.lb_inertia.unwrap(), 2.0, epsilon = 1e-12);
        assert_eq!(r.combined(), (2, 2));
    }

    #[test]
    fn edgeless_and_trivial_graphs_short_circuit() {
        let loose = Graph::from_edges(5, &[]).unwrap();
        let r = BoundsReport::compute(&loose, Rounding::Floor);
        assert_eq!(r.combined(), (1, 1));
        assert!(r.lb_hoffman.is_none() && r.lb_inertia.is_none() && r.lb_principal.is_none());

        let single = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(BoundsReport::compute(&single, Rounding::Floor).combined(), (1, 1));

        let empty = Graph::from_edges(0, &[]).unwrap();
        assert_eq!(BoundsReport::compute(&empty, Rounding::Floor).combined(), (0, 0));
    }

    #[test]
    fn absent_bounds_are_skipped_not_substituted() {
        // Edgeless spectrum: all eigenvalues zero → every spectral bound
        // degenerate, bracket comes from the trivial clamps alone.
        let loose = Graph::from_edges(3, &[]).unwrap();
        let s = spectrum_default(&loose);
        assert_eq!((s.n_pos, s.n_zero, s.n_neg), (0, 3, 0));
        let lb = lower_bounds(&s);
        assert!(lb.hoffman.is_none());
        assert!(lb.inertia.is_none());
        // principal = n/(n−0) = 1 is well-defined and kept.
        assert_abs_diff_eq!(lb.principal.unwrap(), 1.0, epsilon = 1e-12);
        let (clb, cub) = combine(&lb, &upper_bounds(&loose), false, Rounding::Floor);
        assert_eq!((clb, cub), (1, 1));
    }

    #[test]
    fn petersen_bracket_contains_chi() {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        let g = Graph::from_edges(10, &edges).unwrap();
        let s = spectrum_default(&g);
        // Known spectrum {3, 1⁵, (−2)⁴}.
        assert_abs_diff_eq!(s.eigenvalues[0], 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.eigenvalues[1], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.eigenvalues[5], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.eigenvalues[6], -2.0, epsilon = 1e-9);
        assert_eq!((s.n_pos, s.n_zero, s.n_neg), (6, 0, 4));
        let r = BoundsReport::compute(&g, Rounding::Floor);
        assert_abs_diff_eq!(r.lb_hoffman.unwrap(), 2.5, epsilon = 1e-9);
        assert_eq!(r.combined(), (2, 4)); // χ(Petersen) = 3
    }
}
