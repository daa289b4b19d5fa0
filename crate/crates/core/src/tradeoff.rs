//! Hypothesis-testing view: the worst-case ROC curve of an adversary
//! distinguishing `M(D)` from `M(D')`.
//!
//! Orientation: the null hypothesis is `D'` with outputs centred at 0, the
//! alternative is `D` centred at `+Delta`, and the test rejects the null when
//! the output is at least the threshold `c`. With this convention the
//! likelihood-ratio test traces
//!
//! ```text
//! R(x) = Φ(ψ + Φ⁻¹(x)),   AUC = Φ(ψ/√2)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{ensure_nonnegative, ensure_open_unit, Error, Result};
use crate::mechanism::{GaussianMechanismParams, SensitivityIndex};
use crate::solver::{gauss_legendre, DEFAULT_NODES};
use crate::specfun::{log_norm_cdf, norm_cdf, norm_pdf, norm_quantile, norm_sf};

use std::f64::consts::FRAC_1_SQRT_2;

/// Half-width of the z-window used by [`auc_by_quadrature`]; the standard
/// normal mass outside it is below 1e-32.
const QUADRATURE_Z_HALF_WIDTH: f64 = 12.0;

/// Default number of rows in an exported curve.
pub const DEFAULT_CURVE_POINTS: usize = 256;

/// The worst-case ROC curve of a Gaussian mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffCurve {
    pub psi: SensitivityIndex,
}

impl TradeoffCurve {
    pub fn new(psi: SensitivityIndex) -> Self {
        Self { psi }
    }

    pub fn roc(&self, x: f64) -> Result<f64> {
        roc(self.psi, x)
    }

    /// `R(Φ(z)) = Φ(z + ψ)`: the curve in probit coordinates.
    pub fn roc_at_z(&self, z: f64) -> f64 {
        norm_cdf(z + self.psi.value())
    }

    pub fn auc(&self) -> f64 {
        auc(self.psi)
    }

    pub fn tangent(&self, epsilon: f64) -> Result<TangentResult> {
        tangent_intercept(self.psi, epsilon)
    }

    pub fn sample(&self, points: usize) -> Result<Vec<CurvePoint>> {
        sample_curve(self.psi, points)
    }
}

/// `(FPR, TPR)` of the threshold test at cut-off `threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub fpr: f64,
    pub tpr: f64,
    pub threshold: f64,
}

/// Tangent to the ROC curve with slope `e^ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentResult {
    pub epsilon: f64,
    pub tangency_x: f64,
    /// `R(tangency_x) = Φ(ψ/2 − ε/ψ)`, the privacy-loss tail probability.
    pub tangency_y: f64,
    /// y-intercept `tangency_y − e^ε tangency_x`; equals the tight `δ(ε)`.
    pub intercept: f64,
}

impl TangentResult {
    pub fn slope(&self) -> f64 {
        self.epsilon.exp()
    }

    /// The tangent line evaluated at `x`.
    pub fn line(&self, x: f64) -> f64 {
        self.slope() * x + self.intercept
    }
}

/// A row of an exported curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: f64,
    pub roc: f64,
}

/// `R(x) = Φ(ψ + Φ⁻¹(x))` for `0 < x < 1`; the identity at `psi = 0`.
pub fn roc(psi: SensitivityIndex, x: f64) -> Result<f64> {
    ensure_open_unit("x", x)?;
    if psi.is_zero() {
        return Ok(x);
    }
    Ok(norm_cdf(psi.value() + norm_quantile(x)))
}

/// Area under the ROC curve, `Φ(ψ/√2)`.
pub fn auc(psi: SensitivityIndex) -> f64 {
    norm_cdf(psi.value() * FRAC_1_SQRT_2)
}

/// TPR and FPR of the test "reject `D'` when the output is `>= c`".
///
/// `TPR(c) = 1 − Φ((c − Δ)/σ)`, `FPR(c) = 1 − Φ(c/σ)`; `c = ±inf` gives the
/// corners `(0, 0)` and `(1, 1)`.
pub fn operating_point(params: &GaussianMechanismParams, c: f64) -> Result<OperatingPoint> {
    crate::mechanism::psi_from_params(params)?;
    if c.is_nan() {
        return Err(Error::domain("threshold must not be NaN"));
    }
    let fpr = norm_sf(c / params.sigma);
    let tpr = norm_sf((c - params.sensitivity) / params.sigma);
    Ok(OperatingPoint { fpr, tpr, threshold: c })
}

/// `∫₀¹ R(x) dx` by 129-node Gauss–Legendre quadrature.
///
/// The integral is taken after substituting `x = Φ(z)`, i.e. as
/// `∫ R(Φ(z)) φ(z) dz` over `|z| ≤ 12`, which clamps `x` to
/// `[Φ(−12), Φ(12)]`. In `x` itself the integrand has an infinite slope at 0
/// and a fixed rule cannot reach 1e-8 once `psi >= 2`.
pub fn auc_by_quadrature(psi: SensitivityIndex) -> f64 {
    let curve = TradeoffCurve::new(psi);
    gauss_legendre(
        |z| curve.roc_at_z(z) * norm_pdf(z),
        -QUADRATURE_Z_HALF_WIDTH,
        QUADRATURE_Z_HALF_WIDTH,
        DEFAULT_NODES,
    )
}

/// Tangent to `R` with slope `e^t` for any real `t`.
///
/// `R'(x) = exp(−ψ Φ⁻¹(x) − ψ²/2)`, so the tangency point solves
/// `Φ⁻¹(x₀) = −t/ψ − ψ/2`.
pub fn tangent_with_log_slope(psi: SensitivityIndex, log_slope: f64) -> Result<TangentResult> {
    if psi.is_zero() {
        return Err(Error::Degenerate(
            "the ROC curve at psi = 0 is the diagonal; it has no tangent of slope other than 1".into(),
        ));
    }
    if !log_slope.is_finite() {
        return Err(Error::domain(format!("log-slope must be finite, got {log_slope}")));
    }
    let psi = psi.value();
    let z0 = -log_slope / psi - 0.5 * psi;
    let tangency_x = norm_cdf(z0);
    let tangency_y = norm_cdf(z0 + psi);
    let intercept = tangency_y - (log_slope + log_norm_cdf(z0)).exp();
    Ok(TangentResult { epsilon: log_slope, tangency_x, tangency_y, intercept })
}

/// Tangent with slope `e^ε`, `ε >= 0`. Its intercept is the tight `δ(ε)`.
pub fn tangent_intercept(psi: SensitivityIndex, epsilon: f64) -> Result<TangentResult> {
    ensure_nonnegative("epsilon", epsilon)?;
    tangent_with_log_slope(psi, epsilon)
}

/// `z`-window for [`sample_curve`]: 14 units wide, placed so that the ROC
/// values span `[Φ(−7), Φ(7)]` and both columns stay strictly increasing in
/// `f64`.
fn curve_z_window(psi: f64) -> (f64, f64) {
    let hi = 7.0 - psi;
    let lo = (hi - 14.0).max(-37.0);
    (lo, hi.max(lo + 1.0))
}

/// Samples `R` at `points` rows: the corners `(0, 0)` and `(1, 1)` plus
/// `points − 2` interior rows spaced uniformly in `z = Φ⁻¹(x)`.
///
/// Uniform z-spacing concentrates rows in the two corners of the unit square.
/// Both columns are strictly increasing for `psi <= 30`.
pub fn sample_curve(psi: SensitivityIndex, points: usize) -> Result<Vec<CurvePoint>> {
    if points < 3 {
        return Err(Error::domain(format!("curve export needs at least 3 points, got {points}")));
    }
    let curve = TradeoffCurve::new(psi);
    let (lo, hi) = curve_z_window(psi.value());
    let interior = points - 2;
    let mut rows = Vec::with_capacity(points);
    rows.push(CurvePoint { x: 0.0, roc: 0.0 });
    for i in 0..interior {
        let t = if interior == 1 { 0.5 } else { i as f64 / (interior - 1) as f64 };
        let z = lo + (hi - lo) * t;
        let x = norm_cdf(z);
        let roc = if psi.is_zero() { x } else { curve.roc_at_z(z) };
        rows.push(CurvePoint { x, roc });
    }
    rows.push(CurvePoint { x: 1.0, roc: 1.0 });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::delta_of_epsilon;

    fn psi(v: f64) -> SensitivityIndex {
        SensitivityIndex::new(v).unwrap()
    }

    #[test]
    fn roc_reference_values() {
        assert_eq!(roc(psi(0.0), 0.3).unwrap(), 0.3);
        let x = norm_cdf(-1.0);
        assert!((roc(psi(1.0), x).unwrap() - 0.5).abs() < 1e-15);
        // Φ(2 + Φ⁻¹(0.1)), 50-digit mpmath
        assert!((roc(psi(2.0), 0.1).unwrap() - 0.763_759_584_105_883_1).abs() < 1e-14);
    }

    #[test]
    fn roc_domain() {
        assert!(roc(psi(1.0), 0.0).is_err());
        assert!(roc(psi(1.0), 1.0).is_err());
        assert!(roc(psi(1.0), f64::NAN).is_err());
    }

    #[test]
    fn auc_reference_values() {
        assert_eq!(auc(psi(0.0)), 0.5);
        assert!((auc(psi(38.0 * 2f64.sqrt())) - 1.0).abs() <= 1e-15);
        assert!((auc(psi(2f64.sqrt())) - 0.841_344_746_068_542_9).abs() < 1e-15);
    }

    #[test]
    fn quadrature_reference_values() {
        assert!((auc_by_quadrature(psi(0.0)) - 0.5).abs() < 1e-12);
        assert!((auc_by_quadrature(psi(1.0)) - 0.760_249_938_906_523_3).abs() < 1e-8);
        assert!((auc_by_quadrature(psi(6.0)) - 0.999_988_954_751_500_7).abs() < 1e-8);
    }

    #[test]
    fn quadrature_matches_closed_form_on_grid() {
        for &p in &[0.0, 0.1, 0.5, 1.0, 2.0, 4.0, 6.0] {
            assert!((auc_by_quadrature(psi(p)) - auc(psi(p))).abs() <= 1e-8, "psi {p}");
        }
    }

    #[test]
    fn roc_increasing_and_above_diagonal() {
        for &p in &[0.0, 0.3, 1.0, 3.0] {
            let mut prev = 0.0;
            for i in 1..1000 {
                let x = i as f64 / 1000.0;
                let r = roc(psi(p), x).unwrap();
                assert!(r > prev);
                if p == 0.0 {
                    assert_eq!(r, x);
                } else {
                    assert!(r > x);
                }
                prev = r;
            }
        }
    }

    #[test]
    fn roc_self_duality_on_grid() {
        for &p in &[0.5, 1.0, 2.0] {
            for i in 1..100 {
                let x = i as f64 / 100.0;
                let r = roc(psi(p), x).unwrap();
                assert!((roc(psi(p), 1.0 - r).unwrap() - (1.0 - x)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn operating_points() {
        let p = GaussianMechanismParams::new(2.0, 1.0).unwrap();
        let top = operating_point(&p, f64::INFINITY).unwrap();
        assert_eq!((top.fpr, top.tpr), (0.0, 0.0));
        let bottom = operating_point(&p, f64::NEG_INFINITY).unwrap();
        assert_eq!((bottom.fpr, bottom.tpr), (1.0, 1.0));
        let mid = operating_point(&p, 1.0).unwrap();
        assert!((mid.tpr - 0.841_344_746_068_542_9).abs() < 1e-15);
        assert!((mid.fpr - 0.158_655_253_931_457_05).abs() < 1e-15);
        assert!(operating_point(&p, f64::NAN).is_err());
    }

    #[test]
    fn operating_points_lie_on_the_curve() {
        let p = GaussianMechanismParams::new(1.5, 0.7).unwrap();
        let s = p.psi().unwrap();
        for i in -40..40 {
            let c = 0.1 * i as f64;
            let op = operating_point(&p, c).unwrap();
            assert!(op.fpr <= op.tpr);
            assert!((roc(s, op.fpr).unwrap() - op.tpr).abs() < 1e-13, "c = {c}");
        }
    }

    #[test]
    fn tangent_reference_values() {
        let t = tangent_intercept(psi(2.0), 2.0).unwrap();
        assert!((t.tangency_x - 0.022_750_131_948_179_207).abs() < 1e-16);
        assert_eq!(t.tangency_y, 0.5);
        assert!((t.intercept - 0.331_897_998_776_829_4).abs() < 1e-15);
        assert!(matches!(tangent_intercept(psi(0.0), 1.0), Err(Error::Degenerate(_))));
        assert!(tangent_intercept(psi(1.0), -1.0).is_err());
    }

    #[test]
    fn tangent_intercept_is_the_tight_delta() {
        for &p in &[0.5, 1.0, 2.0, 4.0] {
            for &e in &[0.0, 0.5, 1.0, 2.0, 5.0] {
                let t = tangent_intercept(psi(p), e).unwrap();
                let d = delta_of_epsilon(psi(p), e).unwrap();
                assert!((t.intercept - d).abs() <= 1e-10);
                let tail = crate::mechanism::privacy_loss_tail(psi(p), e).unwrap();
                assert!((t.tangency_y - tail).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn tangent_lies_above_curve() {
        for &p in &[0.5, 1.0, 3.0] {
            for &e in &[0.0, 0.7, 2.0] {
                let t = tangent_intercept(psi(p), e).unwrap();
                for i in 1..1000 {
                    let x = i as f64 / 1000.0;
                    assert!(roc(psi(p), x).unwrap() <= t.line(x) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn reflected_tangent_has_reciprocal_slope() {
        // reflecting y = e^ε x + δ about y = 1 − x gives
        // y = e^{−ε} x + 1 − (1 − δ) e^{−ε}
        for &p in &[0.5, 1.0, 2.5] {
            for &e in &[0.2, 1.0, 3.0] {
                let t = tangent_intercept(psi(p), e).unwrap();
                let r = tangent_with_log_slope(psi(p), -e).unwrap();
                let reflected = 1.0 - (1.0 - t.intercept) * (-e).exp();
                assert!((r.intercept - reflected).abs() < 1e-12);
                // tangency points map onto each other under (x, y) -> (1 − y, 1 − x)
                assert!((r.tangency_x - (1.0 - t.tangency_y)).abs() < 1e-12);
                assert!((r.tangency_y - (1.0 - t.tangency_x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn curve_shape() {
        for &p in &[0.0, 0.5, 1.0, 6.0, 20.0] {
            let rows = sample_curve(psi(p), DEFAULT_CURVE_POINTS).unwrap();
            assert_eq!(rows.len(), 256);
            for w in rows.windows(2) {
                assert!(w[0].x < w[1].x, "psi {p}");
                assert!(w[0].roc < w[1].roc, "psi {p}");
            }
            if p == 0.0 {
                assert!(rows.iter().all(|r| r.x == r.roc));
            }
        }
        assert!(sample_curve(psi(1.0), 2).is_err());
    }
}
