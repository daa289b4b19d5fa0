use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors returned by the accounting routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request cannot be met by any finite parameter, e.g. `delta = 0`.
    #[error("unsatisfiable: {0}")]
    Unsatisfiable(String),

    /// RDP to (epsilon, delta) conversions need `0 < delta < 1`.
    #[error("RDP conversion undefined for delta = {0}; requires 0 < delta < 1")]
    RdpConversionUndefined(f64),

    /// `alpha * sigma_j^2 + (1 - alpha) * sigma_i^2 <= 0`.
    #[error("Rényi divergence of order {alpha} is infinite")]
    InfiniteDivergence { alpha: f64 },

    /// The operation has no meaningful answer at `psi = 0`.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("no convergence after {iterations} iterations (best iterate {best})")]
    Convergence { iterations: usize, best: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for solver failures (bracketing or iteration limits), as opposed
    /// to invalid or unsatisfiable requests.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Bracket { .. } | Error::Convergence { .. })
    }
}

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(format!("{name} must be finite, got {value}")))
    }
}

pub(crate) fn ensure_nonnegative(name: &str, value: f64) -> Result<f64> {
    ensure_finite(name, value)?;
    if value < 0.0 {
        return Err(Error::domain(format!("{name} must be >= 0, got {value}")));
    }
    Ok(value)
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<f64> {
    ensure_finite(name, value)?;
    if value <= 0.0 {
        return Err(Error::domain(format!("{name} must be > 0, got {value}")));
    }
    Ok(value)
}

/// Checks `0 < p < 1`.
pub(crate) fn ensure_open_unit(name: &str, p: f64) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(Error::domain(format!("{name} must lie in (0, 1), got {p}")))
    }
}
