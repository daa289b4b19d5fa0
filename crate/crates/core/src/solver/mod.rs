//! Deterministic one-dimensional numerics: Brent root finding, golden-section
//! minimization and fixed-node Gauss–Legendre quadrature.
//!
//! Callables are treated as black boxes and must be pure; the same inputs
//! always produce bit-identical outputs.

mod brent;
mod golden;
mod quadrature;

pub use brent::{brent, brent_root, Bracket, RootResult};
pub use golden::golden_minimize;
pub use quadrature::{gauss_legendre, GaussLegendre, DEFAULT_NODES};

/// Stopping rule shared by the root finder and the minimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl SolverConfig {
    /// Roots: `abs_tol = 1e-12`, 200 iterations.
    pub const ROOT: SolverConfig = SolverConfig { abs_tol: 1e-12, max_iter: 200 };
    /// Minimization: `abs_tol = 1e-9`, 200 iterations.
    pub const MINIMIZE: SolverConfig = SolverConfig { abs_tol: 1e-9, max_iter: 200 };

    pub fn new(abs_tol: f64, max_iter: usize) -> crate::Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(crate::Error::Domain(format!("abs_tol must be > 0, got {abs_tol}")));
        }
        if max_iter == 0 {
            return Err(crate::Error::Domain("max_iter must be >= 1".into()));
        }
        Ok(Self { abs_tol, max_iter })
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::ROOT
    }
}
