//! Rényi-DP view of the Gaussian mechanism and the two RDP to `(ε, δ)`
//! conversions, with a search for the best order `α`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::mechanism::SensitivityIndex;
use crate::profile::epsilon_of_delta;
use crate::solver::{golden_minimize, SolverConfig};

/// Number of points in the α grid of [`optimal_alpha_conversion`].
pub const ALPHA_GRID_POINTS: usize = 200;
/// Smallest order on the α grid.
pub const ALPHA_MIN: f64 = 1.0 + 1e-4;
/// Largest order on the α grid.
pub const ALPHA_MAX: f64 = 1024.0;

/// A point `(α, ρ)` of an RDP curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RdpPoint {
    pub alpha: f64,
    pub rho: f64,
}

/// How `(ε, δ)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConversionMethod {
    /// `ε = ρ(α) + ln(1/δ)/(α − 1)`.
    Standard,
    /// `ε = ρ(α) + ln((α − 1)/α) − (ln δ + ln α)/(α − 1)`.
    Improved,
    /// Exact inversion of the privacy profile.
    Profile,
}

impl ConversionMethod {
    pub const ALL: [ConversionMethod; 3] =
        [ConversionMethod::Profile, ConversionMethod::Standard, ConversionMethod::Improved];

    pub fn name(self) -> &'static str {
        match self {
            ConversionMethod::Standard => "standard",
            ConversionMethod::Improved => "improved",
            ConversionMethod::Profile => "profile",
        }
    }
}

impl fmt::Display for ConversionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for ConversionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(ConversionMethod::Standard),
            "improved" => Ok(ConversionMethod::Improved),
            "profile" => Ok(ConversionMethod::Profile),
            other => Err(Error::domain(format!("unknown conversion method {other:?}"))),
        }
    }
}

/// An `ε` together with the order that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConversionResult {
    pub epsilon: f64,
    /// Minimizing order; `None` for [`ConversionMethod::Profile`], `+inf`
    /// when `psi = 0` (the bound keeps decreasing in α).
    pub alpha_star: Option<f64>,
    pub method: ConversionMethod,
}

fn check_alpha(alpha: f64) -> Result<f64> {
    ensure_finite("alpha", alpha)?;
    if alpha <= 1.0 {
        return Err(Error::domain(format!("RDP order must be > 1, got {alpha}")));
    }
    Ok(alpha)
}

fn check_conversion_delta(delta: f64) -> Result<f64> {
    if delta > 0.0 && delta < 1.0 {
        Ok(delta)
    } else {
        Err(Error::RdpConversionUndefined(delta))
    }
}

/// `ρ(α) = α ψ² / 2`. Order 1 is the KL limit.
pub fn rdp_curve(psi: SensitivityIndex, alpha: f64) -> Result<RdpPoint> {
    ensure_finite("alpha", alpha)?;
    if alpha < 1.0 {
        return Err(Error::domain(format!("RDP order must be >= 1, got {alpha}")));
    }
    let p = psi.value();
    Ok(RdpPoint { alpha, rho: 0.5 * alpha * p * p })
}

/// Rényi divergence of order `alpha` from `N(mean_i, sigma_i² I)` to
/// `N(mean_j, sigma_j² I)`.
///
/// With `D = α σ_j² + (1 − α) σ_i²` and `d` the dimension:
///
/// ```text
/// d ln(σ_j/σ_i) + d/(2(α−1)) ln(σ_j²/D) + α ‖μ_i − μ_j‖² / (2D)
/// ```
pub fn gaussian_renyi_divergence(
    mean_i: &[f64],
    sigma_i: f64,
    mean_j: &[f64],
    sigma_j: f64,
    alpha: f64,
) -> Result<f64> {
    if mean_i.len() != mean_j.len() {
        return Err(Error::domain(format!(
            "mean vectors differ in length ({} vs {})",
            mean_i.len(),
            mean_j.len()
        )));
    }
    if mean_i.is_empty() {
        return Err(Error::domain("mean vectors must have at least one component"));
    }
    ensure_positive("sigma_i", sigma_i)?;
    ensure_positive("sigma_j", sigma_j)?;
    let alpha = check_alpha(alpha)?;
    for &m in mean_i.iter().chain(mean_j) {
        ensure_finite("mean component", m)?;
    }
    let vi = sigma_i * sigma_i;
    let vj = sigma_j * sigma_j;
    let denom = alpha * vj + (1.0 - alpha) * vi;
    if denom.is_nan() || denom <= 0.0 {
        return Err(Error::InfiniteDivergence { alpha });
    }
    let dist2: f64 = mean_i.iter().zip(mean_j).map(|(a, b)| (a - b) * (a - b)).sum();
    let d = mean_i.len() as f64;
    // σ_j²/D = 1 − (α − 1)(σ_j² − σ_i²)/D
    let ln_ratio = (-(alpha - 1.0) * (vj - vi) / denom).ln_1p();
    Ok(d * (sigma_j / sigma_i).ln()
        + d / (2.0 * (alpha - 1.0)) * ln_ratio
        + 0.5 * alpha * dist2 / denom)
}

fn standard_unchecked(psi: f64, alpha: f64, ln_delta: f64) -> f64 {
    0.5 * alpha * psi * psi - ln_delta / (alpha - 1.0)
}

fn improved_unchecked(psi: f64, alpha: f64, ln_delta: f64) -> f64 {
    0.5 * alpha * psi * psi + (-1.0 / alpha).ln_1p() - (ln_delta + alpha.ln()) / (alpha - 1.0)
}

/// `ε = α ψ²/2 + ln(1/δ)/(α − 1)`.
pub fn standard_conversion(psi: SensitivityIndex, alpha: f64, delta: f64) -> Result<f64> {
    let delta = check_conversion_delta(delta)?;
    let alpha = check_alpha(alpha)?;
    Ok(standard_unchecked(psi.value(), alpha, delta.ln()))
}

/// `ε = α ψ²/2 + ln((α − 1)/α) − (ln δ + ln α)/(α − 1)`.
///
/// Never larger than [`standard_conversion`]. May be negative for tiny `psi`
/// and large `delta`; [`optimal_alpha_conversion`] clamps at 0.
pub fn improved_conversion(psi: SensitivityIndex, alpha: f64, delta: f64) -> Result<f64> {
    let delta = check_conversion_delta(delta)?;
    let alpha = check_alpha(alpha)?;
    Ok(improved_unchecked(psi.value(), alpha, delta.ln()))
}

/// The α grid: [`ALPHA_GRID_POINTS`] orders log-spaced on
/// `[ALPHA_MIN, ALPHA_MAX]`.
pub fn alpha_grid() -> Vec<f64> {
    let (lo, hi) = (ALPHA_MIN.ln(), ALPHA_MAX.ln());
    let n = ALPHA_GRID_POINTS - 1;
    (0..=n).map(|i| (lo + (hi - lo) * i as f64 / n as f64).exp()).collect()
}

/// Minimizes an RDP conversion over `α ∈ [ALPHA_MIN, ALPHA_MAX]`.
///
/// Grid minimum first, then golden-section refinement on the two neighbouring
/// grid cells. The bound is convex in α for the Gaussian curve, so the grid
/// cell containing the minimum is always one of them.
pub fn optimal_alpha_conversion(
    psi: SensitivityIndex,
    delta: f64,
    method: ConversionMethod,
) -> Result<ConversionResult> {
    let delta = check_conversion_delta(delta)?;
    let conv: fn(f64, f64, f64) -> f64 = match method {
        ConversionMethod::Standard => standard_unchecked,
        ConversionMethod::Improved => improved_unchecked,
        ConversionMethod::Profile => {
            return Err(Error::domain("the profile conversion has no RDP order to optimize"))
        }
    };
    if psi.is_zero() {
        return Ok(ConversionResult { epsilon: 0.0, alpha_star: Some(f64::INFINITY), method });
    }
    let p = psi.value();
    let ln_delta = delta.ln();
    let f = |alpha: f64| conv(p, alpha, ln_delta);

    let grid = alpha_grid();
    let (k, _) = grid
        .iter()
        .map(|&a| f(a))
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty grid");
    let lo = grid[k.saturating_sub(1)];
    let hi = grid[(k + 1).min(grid.len() - 1)];
    let (alpha_star, eps) = golden_minimize(f, lo, hi, &SolverConfig::MINIMIZE)?;
    Ok(ConversionResult { epsilon: eps.max(0.0), alpha_star: Some(alpha_star), method })
}

/// `ε` for a target `δ` by any of the three methods.
pub fn convert(psi: SensitivityIndex, delta: f64, method: ConversionMethod) -> Result<ConversionResult> {
    match method {
        ConversionMethod::Profile => Ok(ConversionResult {
            epsilon: epsilon_of_delta(psi, delta)?,
            alpha_star: None,
            method,
        }),
        _ => optimal_alpha_conversion(psi, delta, method),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(v: f64) -> SensitivityIndex {
        SensitivityIndex::new(v).unwrap()
    }

    #[test]
    fn curve_values() {
        assert_eq!(rdp_curve(SensitivityIndex::ZERO, 7.0).unwrap().rho, 0.0);
        assert_eq!(rdp_curve(psi(1.0), 2.0).unwrap().rho, 1.0);
        assert_eq!(rdp_curve(psi(2.0), 3.0).unwrap().rho, 6.0);
        assert_eq!(rdp_curve(psi(1.0), 1.0).unwrap().rho, 0.5);
        assert!(rdp_curve(psi(1.0), 0.5).is_err());
    }

    #[test]
    fn curve_scaling_is_exact() {
        for &p in &[0.3, 1.7, 5.0] {
            for &a in &[1.5, 2.0, 10.0] {
                let r = rdp_curve(psi(p), a).unwrap().rho;
                assert_eq!(rdp_curve(psi(p), 2.0 * a).unwrap().rho, 2.0 * r);
                assert_eq!(rdp_curve(psi(2.0 * p), a).unwrap().rho, 4.0 * r);
            }
        }
    }

    #[test]
    fn divergence_values() {
        assert_eq!(gaussian_renyi_divergence(&[0.3], 1.2, &[0.3], 1.2, 3.0).unwrap(), 0.0);
        // closed form, confirmed by numerical integration at 50 digits
        let v = gaussian_renyi_divergence(&[0.0], 1.0, &[1.0], 2.0, 2.0).unwrap();
        assert!((v - 0.556_196_429_449_376_8).abs() < 1e-15);
        assert!(matches!(
            gaussian_renyi_divergence(&[0.0], 2.0, &[0.0], 1.0, 5.0),
            Err(Error::InfiniteDivergence { .. })
        ));
        assert!(gaussian_renyi_divergence(&[0.0], 1.0, &[0.0, 1.0], 1.0, 2.0).is_err());
        assert!(gaussian_renyi_divergence(&[], 1.0, &[], 1.0, 2.0).is_err());
        assert!(gaussian_renyi_divergence(&[0.0], 1.0, &[1.0], 1.0, 1.0).is_err());
    }

    #[test]
    fn divergence_matches_curve_for_equal_variances() {
        for &(delta, sigma) in &[(1.0, 1.0), (0.3, 2.0), (5.0, 0.7)] {
            let p = psi(delta / sigma);
            for &a in &[1.5, 2.0, 8.0, 64.0] {
                let mi = [0.0, 0.0];
                let mj = [0.6 * delta, 0.8 * delta];
                let d = gaussian_renyi_divergence(&mi, sigma, &mj, sigma, a).unwrap();
                let swapped = gaussian_renyi_divergence(&mj, sigma, &mi, sigma, a).unwrap();
                let rho = rdp_curve(p, a).unwrap().rho;
                assert!((d - rho).abs() <= 1e-12 * rho.max(1.0));
                assert_eq!(d, swapped);
            }
        }
    }

    #[test]
    fn conversion_values() {
        let e = standard_conversion(SensitivityIndex::ZERO, 2.0, (-1.0f64).exp()).unwrap();
        assert!((e - 1.0).abs() < 1e-15);
        let s = standard_conversion(psi(1.0), 2.0, 1e-5).unwrap();
        assert!((s - 12.512_925_464_970_228).abs() < 1e-13);
        let i = improved_conversion(psi(1.0), 2.0, 1e-5).unwrap();
        assert!((i - 11.126_631_103_850_338).abs() < 1e-13);
        assert!(i < s);
        assert!(standard_conversion(psi(1.0), 1.0 + 1e-12, 0.5).unwrap() > 1e11);
    }

    #[test]
    fn conversion_errors() {
        for d in [0.0, 1.0, -0.5, 2.0, f64::NAN] {
            assert!(matches!(standard_conversion(psi(1.0), 2.0, d), Err(Error::RdpConversionUndefined(_))));
            assert!(matches!(improved_conversion(psi(1.0), 2.0, d), Err(Error::RdpConversionUndefined(_))));
            assert!(matches!(
                optimal_alpha_conversion(psi(1.0), d, ConversionMethod::Improved),
                Err(Error::RdpConversionUndefined(_))
            ));
        }
        assert!(standard_conversion(psi(1.0), 1.0, 0.1).is_err());
        assert!(improved_conversion(psi(1.0), 0.5, 0.1).is_err());
        assert!(optimal_alpha_conversion(psi(1.0), 0.1, ConversionMethod::Profile).is_err());
    }

    #[test]
    fn improved_never_exceeds_standard() {
        let grid: Vec<f64> = alpha_grid().into_iter().filter(|&a| a >= 1.1).collect();
        for &p in &[0.1, 1.0, 4.0] {
            for &d in &[1e-2, 1e-5, 1e-9] {
                for &a in &grid {
                    let s = standard_conversion(psi(p), a, d).unwrap();
                    let i = improved_conversion(psi(p), a, d).unwrap();
                    assert!(i <= s, "psi {p} delta {d} alpha {a}");
                }
            }
        }
    }

    #[test]
    fn gap_closes_for_large_alpha() {
        let gap = |a| standard_conversion(psi(1.0), a, 1e-5).unwrap() - improved_conversion(psi(1.0), a, 1e-5).unwrap();
        let (g64, g256, g1024) = (gap(64.0), gap(256.0), gap(1024.0));
        assert!(g64 > g256 && g256 > g1024);
        assert!(g1024 < 0.01);
    }

    #[test]
    fn standard_optimum_matches_closed_form() {
        // α* = 1 + sqrt(2 ln(1/δ))/ψ
        for &p in &[0.5, 1.0, 3.0] {
            let l = (1e5f64).ln();
            let a = 1.0 + (2.0 * l).sqrt() / p;
            let exact = standard_conversion(psi(p), a, 1e-5).unwrap();
            let r = optimal_alpha_conversion(psi(p), 1e-5, ConversionMethod::Standard).unwrap();
            assert!((r.epsilon - exact).abs() < 1e-9);
            assert!((r.alpha_star.unwrap() - a).abs() < 1e-3);
        }
    }

    #[test]
    fn alpha_star_regimes() {
        let high = optimal_alpha_conversion(psi(4.0), 1e-5, ConversionMethod::Improved).unwrap();
        let low = optimal_alpha_conversion(psi(0.5), 1e-5, ConversionMethod::Improved).unwrap();
        assert!(high.alpha_star.unwrap() <= 3.0);
        assert!(low.alpha_star.unwrap() > high.alpha_star.unwrap());
        assert!(low.alpha_star.unwrap() >= 4.0);
    }

    #[test]
    fn profile_dominates_rdp() {
        for &p in &[0.05, 0.5, 1.0, 2.0, 6.0] {
            for &d in &[1e-3, 1e-5, 1e-10] {
                let exact = convert(psi(p), d, ConversionMethod::Profile).unwrap().epsilon;
                let i = convert(psi(p), d, ConversionMethod::Improved).unwrap().epsilon;
                let s = convert(psi(p), d, ConversionMethod::Standard).unwrap().epsilon;
                assert!(exact <= i && i <= s, "psi {p} delta {d}: {exact} {i} {s}");
            }
        }
    }

    #[test]
    fn zero_psi() {
        let r = optimal_alpha_conversion(SensitivityIndex::ZERO, 1e-5, ConversionMethod::Improved).unwrap();
        assert_eq!(r.epsilon, 0.0);
        assert_eq!(r.alpha_star, Some(f64::INFINITY));
        assert_eq!(convert(SensitivityIndex::ZERO, 1e-5, ConversionMethod::Profile).unwrap().alpha_star, None);
    }

    #[test]
    fn bound_is_unimodal_on_grid() {
        for &p in &[0.2, 1.0, 5.0] {
            for m in [standard_unchecked, improved_unchecked] {
                let vals: Vec<f64> = alpha_grid().iter().map(|&a| m(p, a, (1e-5f64).ln())).collect();
                let k = vals.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
                assert!(vals[..=k].windows(2).all(|w| w[0] >= w[1]));
                assert!(vals[k..].windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in ConversionMethod::ALL {
            assert_eq!(m.name().parse::<ConversionMethod>().unwrap(), m);
        }
        assert!("rdp".parse::<ConversionMethod>().is_err());
    }
}
