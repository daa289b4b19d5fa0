//! Gaussian differential privacy: the trade-off function `G_μ`, composition,
//! group privacy and the central-limit accountant for DP-SGD.
//!
//! A Gaussian mechanism with sensitivity index `psi` is `mu`-GDP exactly when
//! `psi <= mu`, and its ROC curve is `1 − G_psi`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_nonnegative, ensure_open_unit, ensure_positive, Error, Result};
use crate::mechanism::SensitivityIndex;
use crate::profile::epsilon_of_delta;
use crate::specfun::{erf, norm_cdf, norm_quantile};

use std::f64::consts::{FRAC_2_SQRT_PI, SQRT_2};

/// Steps below which the asymptotic DP-SGD formula is flagged.
pub const DPSGD_MIN_STEPS: u64 = 100;
/// Sampling rate above which the asymptotic DP-SGD formula is flagged.
pub const DPSGD_MAX_SAMPLING_RATE: f64 = 0.1;

/// The GDP parameter `mu`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct GdpParameter(f64);

impl GdpParameter {
    pub fn new(mu: f64) -> Result<Self> {
        ensure_nonnegative("mu", mu).map(GdpParameter)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<SensitivityIndex> for GdpParameter {
    fn from(psi: SensitivityIndex) -> Self {
        GdpParameter(psi.value())
    }
}

impl TryFrom<f64> for GdpParameter {
    type Error = Error;

    fn try_from(mu: f64) -> Result<Self> {
        GdpParameter::new(mu)
    }
}

impl From<GdpParameter> for f64 {
    fn from(mu: GdpParameter) -> f64 {
        mu.0
    }
}

impl fmt::Display for GdpParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu={}", self.0)
    }
}

/// Noisy SGD with Poisson-style subsampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DpSgdConfig {
    /// Noise multiplier.
    pub sigma: f64,
    /// Fraction of the data used per step, `r ∈ (0, 1]`.
    pub sampling_rate: f64,
    /// Number of steps `T`.
    pub steps: u64,
}

impl DpSgdConfig {
    pub fn new(sigma: f64, sampling_rate: f64, steps: u64) -> Result<Self> {
        let config = Self { sigma, sampling_rate, steps };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("sigma", self.sigma)?;
        ensure_positive("sampling_rate", self.sampling_rate)?;
        if self.sampling_rate > 1.0 {
            return Err(Error::domain(format!(
                "sampling_rate must lie in (0, 1], got {}",
                self.sampling_rate
            )));
        }
        if self.steps == 0 {
            return Err(Error::domain("steps must be >= 1"));
        }
        Ok(())
    }

    /// `s = r √T`.
    pub fn s(&self) -> f64 {
        self.sampling_rate * (self.steps as f64).sqrt()
    }

    /// Regimes where the large-`T`, small-`r` approximation is doubtful.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.steps < DPSGD_MIN_STEPS {
            out.push(format!(
                "steps = {} < {DPSGD_MIN_STEPS}: the DP-SGD formula is asymptotic in the number of steps",
                self.steps
            ));
        }
        if self.sampling_rate > DPSGD_MAX_SAMPLING_RATE {
            out.push(format!(
                "sampling_rate = {} > {DPSGD_MAX_SAMPLING_RATE}: the DP-SGD formula assumes small sampling rates",
                self.sampling_rate
            ));
        }
        out
    }
}

/// `G_μ(α) = Φ(Φ⁻¹(1 − α) − μ)`, the smallest type-II error at type-I
/// error `alpha`.
pub fn g_mu(mu: GdpParameter, alpha: f64) -> Result<f64> {
    ensure_open_unit("alpha", alpha)?;
    Ok(norm_cdf(-norm_quantile(alpha) - mu.0))
}

/// Whether a mechanism with index `psi` is `mu`-GDP.
pub fn psi_is_gdp(psi: SensitivityIndex, mu: GdpParameter) -> bool {
    psi.value() <= mu.0
}

/// Index for groups of `k` individuals: `k ψ`.
pub fn group_privacy(psi: SensitivityIndex, k: u64) -> Result<SensitivityIndex> {
    if k < 1 {
        return Err(Error::domain("group size k must be >= 1"));
    }
    SensitivityIndex::new(k as f64 * psi.value())
}

/// Index of the composition: `sqrt(ψ₁² + … + ψₙ²)`.
///
/// Squares are summed in ascending order after scaling by the largest entry,
/// so the result does not depend on the order of `psis` and does not
/// overflow.
pub fn compose(psis: &[SensitivityIndex]) -> Result<SensitivityIndex> {
    if psis.is_empty() {
        return Err(Error::domain("cannot compose an empty list of mechanisms"));
    }
    let mut values: Vec<f64> = psis.iter().map(|p| p.value()).collect();
    values.sort_by(f64::total_cmp);
    let max = *values.last().expect("nonempty");
    if max == 0.0 {
        return Ok(SensitivityIndex::ZERO);
    }
    let sum: f64 = values.iter().map(|v| (v / max) * (v / max)).sum();
    SensitivityIndex::new(max * sum.sqrt())
}

/// `erf(3y) − 3 erf(y)` without the cancellation of the linear terms.
fn erf_triple_difference(y: f64) -> f64 {
    if y >= 0.5 {
        return erf(3.0 * y) - 3.0 * erf(y);
    }
    // (2/√π) Σ_{n≥1} (−1)ⁿ (3^{2n+1} − 3) y^{2n+1} / (n! (2n+1))
    let y2 = y * y;
    let mut power = y; // y^{2n+1}
    let mut three = 3.0; // 3^{2n+1}
    let mut fact = 1.0;
    let mut sum = 0.0;
    for n in 1..60 {
        power *= y2;
        three *= 9.0;
        fact *= n as f64;
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        let term = sign * (three - 3.0) * power / (fact * (2 * n + 1) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

/// `e^{t²} Φ(3t/2) + 3 Φ(−t/2) − 2` with `t = 1/σ`.
fn dpsgd_inner(sigma: f64) -> f64 {
    let t = 1.0 / sigma;
    let y = t / (2.0 * SQRT_2);
    let m = (t * t).exp_m1();
    let e3 = erf(3.0 * y);
    0.5 * m * (1.0 + e3) + 0.5 * erf_triple_difference(y)
}

/// Asymptotic index of DP-SGD:
/// `ψ = s √2 √(e^{1/σ²} Φ(3/(2σ)) + 3 Φ(−1/(2σ)) − 2)`, `s = r √T`.
pub fn dpsgd_psi(config: &DpSgdConfig) -> Result<SensitivityIndex> {
    config.validate()?;
    let s = config.s();
    let t = 1.0 / config.sigma;
    let root = if t * t < 700.0 {
        dpsgd_inner(config.sigma).max(0.0).sqrt()
    } else {
        // e^{t²/2} √(Φ(3t/2) + e^{−t²}(3Φ(−t/2) − 2))
        let rest = norm_cdf(1.5 * t) + (-t * t).exp() * (3.0 * norm_cdf(-0.5 * t) - 2.0);
        (0.5 * t * t).exp() * rest.sqrt()
    };
    let psi = s * SQRT_2 * root;
    if !psi.is_finite() {
        return Err(Error::domain(format!(
            "DP-SGD index overflows for sigma = {}",
            config.sigma
        )));
    }
    SensitivityIndex::new(psi)
}

/// Smallest `ε` with DP-SGD `(ε, δ)`-DP under the asymptotic accountant.
pub fn dpsgd_epsilon(config: &DpSgdConfig, delta: f64) -> Result<f64> {
    epsilon_of_delta(dpsgd_psi(config)?, delta)
}
