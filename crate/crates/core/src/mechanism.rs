//! The Gaussian mechanism, its sensitivity index and its privacy-loss
//! distribution.
//!
//! All quantities are worst case over adjacent databases: the two output
//! distributions are taken to be exactly `Delta` apart.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_nonnegative, ensure_positive, Error, Result};
use crate::specfun::norm_cdf;

/// Query sensitivity and noise scale of a Gaussian mechanism
/// `M(D) = f(D) + N(0, sigma^2 I)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianMechanismParams {
    /// Global L2-sensitivity `Delta` of the query.
    pub sensitivity: f64,
    /// Noise standard deviation, in the same units as `sensitivity`.
    pub sigma: f64,
}

impl GaussianMechanismParams {
    pub fn new(sensitivity: f64, sigma: f64) -> Result<Self> {
        ensure_positive("sensitivity", sensitivity)?;
        ensure_positive("sigma", sigma)?;
        Ok(Self { sensitivity, sigma })
    }

    pub fn psi(&self) -> Result<SensitivityIndex> {
        psi_from_params(self)
    }
}

/// The sensitivity index `psi = Delta / sigma`.
///
/// `psi = 0` is admitted as the perfect-privacy limit (infinite noise); every
/// operation documents what it returns there.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct SensitivityIndex(f64);

impl SensitivityIndex {
    pub const ZERO: SensitivityIndex = SensitivityIndex(0.0);

    /// Wraps a finite, nonnegative `psi`.
    pub fn new(psi: f64) -> Result<Self> {
        ensure_nonnegative("psi", psi).map(SensitivityIndex)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

impl TryFrom<f64> for SensitivityIndex {
    type Error = Error;

    fn try_from(psi: f64) -> Result<Self> {
        SensitivityIndex::new(psi)
    }
}

impl From<SensitivityIndex> for f64 {
    fn from(psi: SensitivityIndex) -> f64 {
        psi.0
    }
}

impl fmt::Display for SensitivityIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi={}", self.0)
    }
}

/// `psi = Delta / sigma`.
pub fn psi_from_params(params: &GaussianMechanismParams) -> Result<SensitivityIndex> {
    ensure_positive("sensitivity", params.sensitivity)?;
    ensure_positive("sigma", params.sigma)?;
    SensitivityIndex::new(params.sensitivity / params.sigma)
}

/// Distribution of the privacy-loss random variable
/// `Omega = ln(p_D(O) / p_D'(O))` with `O ~ M(D)`, which is `N(psi^2/2, psi^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrivacyLossDistribution {
    pub mean: f64,
    pub variance: f64,
}

impl PrivacyLossDistribution {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

pub fn privacy_loss_distribution(psi: SensitivityIndex) -> PrivacyLossDistribution {
    let variance = psi.0 * psi.0;
    PrivacyLossDistribution { mean: 0.5 * variance, variance }
}

/// `P(Omega >= epsilon) = Φ(psi/2 - epsilon/psi)`.
///
/// An upper bound on the tight `delta(epsilon)` of
/// [`profile::delta_of_epsilon`](crate::profile::delta_of_epsilon). At
/// `psi = 0` the loss is identically zero, so the tail is 0 for `epsilon > 0`
/// and undefined at `epsilon = 0`.
pub fn privacy_loss_tail(psi: SensitivityIndex, epsilon: f64) -> Result<f64> {
    ensure_nonnegative("epsilon", epsilon)?;
    if psi.is_zero() {
        return if epsilon > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Domain("privacy-loss tail at psi = 0, epsilon = 0 is undefined".into()))
        };
    }
    let psi = psi.0;
    Ok(norm_cdf(0.5 * psi - epsilon / psi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(v: f64) -> SensitivityIndex {
        SensitivityIndex::new(v).unwrap()
    }

    #[test]
    fn psi_is_the_ratio() {
        let p = |d, s| psi_from_params(&GaussianMechanismParams::new(d, s).unwrap()).unwrap().value();
        assert_eq!(p(1.0, 1.0), 1.0);
        assert_eq!(p(2.0, 4.0), 0.5);
        assert_eq!(p(1.0, 1e6), 1e-6);
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(GaussianMechanismParams::new(0.0, 1.0).is_err());
        assert!(GaussianMechanismParams::new(1.0, -1.0).is_err());
        let raw = GaussianMechanismParams { sensitivity: -1.0, sigma: 1.0 };
        assert!(matches!(psi_from_params(&raw), Err(Error::Domain(_))));
        assert!(SensitivityIndex::new(-0.1).is_err());
        assert!(SensitivityIndex::new(f64::NAN).is_err());
    }

    #[test]
    fn loss_distribution_moments() {
        let d = privacy_loss_distribution(SensitivityIndex::ZERO);
        assert_eq!((d.mean, d.variance), (0.0, 0.0));
        let d = privacy_loss_distribution(psi(2.0));
        assert_eq!((d.mean, d.variance), (2.0, 4.0));
        let d = privacy_loss_distribution(psi(1.0));
        assert_eq!((d.mean, d.variance), (0.5, 1.0));
    }

    #[test]
    fn loss_tail_values() {
        // Φ(0.5) and Φ(-9.5), 50-digit mpmath
        assert!((privacy_loss_tail(psi(1.0), 0.0).unwrap() - 0.691_462_461_274_013_1).abs() < 1e-15);
        assert_eq!(privacy_loss_tail(psi(2.0), 2.0).unwrap(), 0.5);
        let deep = privacy_loss_tail(psi(1.0), 10.0).unwrap();
        assert!(((deep - 1.049_451_507_536_260_7e-21) / deep).abs() < 1e-13);
    }

    #[test]
    fn loss_tail_at_zero_psi() {
        assert_eq!(privacy_loss_tail(SensitivityIndex::ZERO, 0.5).unwrap(), 0.0);
        assert!(privacy_loss_tail(SensitivityIndex::ZERO, 0.0).is_err());
        assert!(privacy_loss_tail(psi(1.0), -1.0).is_err());
    }

    #[test]
    fn loss_tail_monotone() {
        for &p in &[0.3, 1.0, 3.0] {
            let mut prev = f64::INFINITY;
            for i in 0..200 {
                let t = privacy_loss_tail(psi(p), i as f64 * 0.05).unwrap();
                assert!(t < prev);
                prev = t;
            }
        }
        for i in 1..100 {
            let lo = privacy_loss_tail(psi(i as f64 * 0.05), 1.0).unwrap();
            let hi = privacy_loss_tail(psi((i + 1) as f64 * 0.05), 1.0).unwrap();
            assert!(hi > lo);
        }
    }

    #[test]
    fn serde_validates_psi() {
        let ok: SensitivityIndex = serde_json::from_str("1.5").unwrap();
        assert_eq!(ok.value(), 1.5);
        assert!(serde_json::from_str::<SensitivityIndex>("-2").is_err());
    }
}
