//! Privacy accounting for the Gaussian mechanism through the sensitivity index.
//!
//! A Gaussian mechanism that releases `f(D) + N(0, sigma^2 I)` for a query of
//! L2-sensitivity `Delta` is completely described by one number, the
//! sensitivity index `psi = Delta / sigma`. Every guarantee this crate
//! computes is a function of `psi` alone:
//!
//! | view | module | quantity |
//! |------|--------|----------|
//! | (ε, δ)-DP | [`profile`] | tight privacy profile `δ(ε)` and its inverse |
//! | hypothesis testing | [`tradeoff`] | ROC curve `R(x) = Φ(ψ + Φ⁻¹(x))`, AUC `Φ(ψ/√2)` |
//! | Gaussian DP | [`gdp`] | `G_μ`, composition, group privacy, DP-SGD |
//! | Rényi DP | [`rdp`] | `ρ(α) = αψ²/2` and RDP → (ε, δ) conversions |
//!
//! [`oracle`] is a seeded Monte-Carlo adversary used to check the closed
//! forms, [`solver`] holds the 1-D numerics, and [`cli`] backs the `psi-dp`
//! binary.
//!
//! ```
//! use psi_dp::{profile, rdp, SensitivityIndex};
//!
//! let psi = SensitivityIndex::new(1.0).unwrap();
//! let eps = profile::epsilon_of_delta(psi, 1e-5).unwrap();
//! let rdp = rdp::optimal_alpha_conversion(psi, 1e-5, rdp::ConversionMethod::Improved).unwrap();
//! assert!(eps < rdp.epsilon);
//! ```

#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod cli;
mod error;
pub mod gdp;
pub mod mechanism;
pub mod oracle;
pub mod profile;
pub mod rdp;
pub mod solver;
pub mod specfun;
pub mod tradeoff;

pub use error::{Error, Result};
pub use mechanism::{GaussianMechanismParams, PrivacyLossDistribution, SensitivityIndex};
