//! Spectral and combinatorial brackets on the chromatic number.
//!
//! The adjacency spectrum comes from an in-crate cyclic Jacobi eigensolver
//! ([`eigen`]): graphs here have at most 64 vertices, so a dependency-free
//! O(n³)-per-sweep method with high relative accuracy beats pulling in a
//! LAPACK binding. [`bounds`] turns the spectrum and the degree sequence into
//! the lower/upper bracket the branch-and-bound solver prunes with.

pub mod bounds;
pub mod eigen;

pub use bounds::{
    combine, lower_bounds, spectrum, spectrum_default, upper_bounds, BoundsReport, LowerBounds,
    Rounding, SpectrumSummary, UpperBounds, DEFAULT_ZERO_TOL_FACTOR,
};
pub use eigen::{eigen_sym, Eigen, SymMatrix};
