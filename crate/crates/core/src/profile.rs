//! The (ε, δ) privacy profile of the Gaussian mechanism.
//!
//! The mechanism is (ε, δ)-DP exactly when
//!
//! ```text
//! δ ≥ δ(ε) = Φ(ψ/2 − ε/ψ) − e^ε Φ(−ψ/2 − ε/ψ)
//! ```
//!
//! [`delta_of_epsilon`] evaluates the right-hand side without cancellation or
//! overflow, [`epsilon_of_delta`] inverts it with Brent's method, and
//! [`calibrate_sigma`] inverts it in the noise scale.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_nonnegative, ensure_positive, Error, Result};
use crate::mechanism::SensitivityIndex;
use crate::solver::{brent, Bracket, SolverConfig};
use crate::specfun::{erf, erfc, erfcx, log_norm_cdf, norm_quantile};

use std::f64::consts::FRAC_1_SQRT_2;

/// A point `(ε, δ)` of a privacy profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub epsilon: f64,
    pub delta: f64,
}

/// Smallest noise scale meeting an (ε, δ) target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationResult {
    pub sigma: f64,
    pub psi: f64,
    /// `δ(ε)` at the returned `sigma`; never above the requested δ.
    pub achieved_delta: f64,
}

/// `δ(ε)` as a number together with its logarithm, which stays finite after
/// the number itself underflows.
#[derive(Debug, Clone, Copy)]
struct ProfileValue {
    delta: f64,
    ln_delta: f64,
}

fn profile_value(psi: f64, epsilon: f64) -> ProfileValue {
    if psi == 0.0 {
        return ProfileValue { delta: 0.0, ln_delta: f64::NEG_INFINITY };
    }
    let a = 0.5 * psi - epsilon / psi;
    let b = -0.5 * psi - epsilon / psi;
    if a < -1.0 {
        // Both terms are lower tails. Writing Φ(t) = ½ e^{−t²/2} erfcx(−t/√2)
        // and using b² − a² = 2ε, the factor e^ε cancels exactly:
        //   δ = ½ e^{−a²/2} (erfcx(−a/√2) − erfcx(−b/√2))
        let diff = erfcx(-a * FRAC_1_SQRT_2) - erfcx(-b * FRAC_1_SQRT_2);
        if diff.is_nan() || diff <= 0.0 {
            return ProfileValue { delta: 0.0, ln_delta: f64::NEG_INFINITY };
        }
        let hi = a * a;
        let lo = a.mul_add(a, -hi);
        let ln_delta = -0.5 * hi - 0.5 * lo + (0.5 * diff).ln();
        let delta = 0.5 * diff * (-0.5 * hi).exp() * (-0.5 * lo).exp();
        return ProfileValue { delta, ln_delta };
    }
    // a ≥ −1 and b = a − ψ ≤ 0. Split δ = [Φ(a) − Φ(b)] − (e^ε − 1) Φ(b);
    // the first bracket comes from erf/erfc so small ψ keeps its digits.
    let head = if a <= 0.0 {
        0.5 * (erfc(-a * FRAC_1_SQRT_2) - erfc(-b * FRAC_1_SQRT_2))
    } else {
        0.5 * (erf(a * FRAC_1_SQRT_2) + erf(-b * FRAC_1_SQRT_2))
    };
    let tail = if epsilon == 0.0 {
        0.0
    } else {
        (epsilon.exp_m1().ln() + log_norm_cdf(b)).exp()
    };
    let delta = (head - tail).max(0.0);
    ProfileValue { delta, ln_delta: delta.ln() }
}

fn check_psi_epsilon(psi: SensitivityIndex, epsilon: f64) -> Result<f64> {
    ensure_nonnegative("epsilon", epsilon)?;
    Ok(psi.value())
}

/// Tight `δ(ε)` of the Gaussian mechanism with sensitivity index `psi`.
///
/// Returns 0 for `psi = 0`.
pub fn delta_of_epsilon(psi: SensitivityIndex, epsilon: f64) -> Result<f64> {
    let psi = check_psi_epsilon(psi, epsilon)?;
    Ok(profile_value(psi, epsilon).delta)
}

/// `ln δ(ε)`; finite far past the point where `δ(ε)` underflows.
pub fn ln_delta_of_epsilon(psi: SensitivityIndex, epsilon: f64) -> Result<f64> {
    let psi = check_psi_epsilon(psi, epsilon)?;
    Ok(profile_value(psi, epsilon).ln_delta)
}

fn check_target_delta(delta: f64) -> Result<f64> {
    if delta.is_nan() || delta >= 1.0 {
        return Err(Error::domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    if delta <= 0.0 {
        return Err(Error::Unsatisfiable(
            "no finite epsilon gives delta = 0 for the Gaussian mechanism".into(),
        ));
    }
    Ok(delta)
}

/// Smallest `ε ≥ 0` with `δ(ε) ≤ delta`, to within `1e-12`.
///
/// Exactly 0 when `delta ≥ δ(0)` and for `psi = 0`.
pub fn epsilon_of_delta(psi: SensitivityIndex, delta: f64) -> Result<f64> {
    let target = check_target_delta(delta)?;
    solve_epsilon(psi.value(), target.ln(), |v| v.delta <= target)
}

/// Smallest `ε ≥ 0` with `ln δ(ε) ≤ ln_delta`, for targets below the `f64`
/// range of δ itself.
pub fn epsilon_of_ln_delta(psi: SensitivityIndex, ln_delta: f64) -> Result<f64> {
    if ln_delta.is_nan() || ln_delta >= 0.0 {
        return Err(Error::domain(format!("ln delta must be < 0, got {ln_delta}")));
    }
    if ln_delta == f64::NEG_INFINITY {
        return Err(Error::Unsatisfiable(
            "no finite epsilon gives delta = 0 for the Gaussian mechanism".into(),
        ));
    }
    solve_epsilon(psi.value(), ln_delta, |v| v.ln_delta <= ln_delta)
}

fn solve_epsilon(psi: f64, ln_target: f64, satisfied: impl Fn(&ProfileValue) -> bool) -> Result<f64> {
    if psi == 0.0 || satisfied(&profile_value(psi, 0.0)) {
        return Ok(0.0);
    }
    // δ(ε) is strictly decreasing; compare in log space so targets far below
    // the f64 range of δ itself still resolve.
    let g = |eps: f64| profile_value(psi, eps).ln_delta - ln_target;

    let mut hi = 1.0;
    let mut g_hi = g(hi);
    while g_hi > 0.0 {
        hi *= 2.0;
        if hi > 1e18 {
            return Err(Error::Convergence { iterations: 60, best: hi });
        }
        g_hi = g(hi);
    }
    let lo = if hi == 1.0 { 0.0 } else { 0.5 * hi };
    let bracket = Bracket { lo, hi, f_lo: g(lo), f_hi: g_hi };
    let r = brent(g, bracket, &SolverConfig::ROOT)?;
    // report the end of the final bracket that satisfies the target,
    // nudged up if rounding between δ and ln δ disagrees
    let mut eps = if r.bracket.f_hi <= 0.0 { r.bracket.hi } else { r.bracket.lo };
    let mut step = f64::EPSILON * eps.max(1.0);
    while !satisfied(&profile_value(psi, eps)) && step < 1e-13 {
        eps += step;
        step *= 2.0;
    }
    Ok(eps)
}

/// Closed-form ε from the privacy-loss tail bound `Φ(ψ/2 − ε/ψ) ≤ δ`:
/// `max(0, ψ²/2 − ψ Φ⁻¹(δ))`.
///
/// Never smaller than [`epsilon_of_delta`].
pub fn tail_bound_epsilon(psi: SensitivityIndex, delta: f64) -> Result<f64> {
    let delta = check_target_delta(delta)?;
    let psi = psi.value();
    Ok((0.5 * psi * psi - psi * norm_quantile(delta)).max(0.0))
}

/// Smallest `sigma` such that the mechanism with this sensitivity is
/// (ε, δ)-DP, to relative tolerance `1e-12`.
///
/// The profile depends on `sensitivity / sigma` only, so the solve runs in
/// `psi` and `sigma = sensitivity / psi`.
pub fn calibrate_sigma(sensitivity: f64, epsilon: f64, delta: f64) -> Result<CalibrationResult> {
    ensure_positive("sensitivity", sensitivity)?;
    ensure_nonnegative("epsilon", epsilon)?;
    let target = check_target_delta(delta)?;
    let ln_target = target.ln();
    // increasing in psi
    let g = |psi: f64| profile_value(psi, epsilon).ln_delta - ln_target;

    let (mut lo, mut hi) = (1.0, 1.0);
    let mut g_lo = g(lo);
    let mut g_hi = g_lo;
    let mut steps = 0;
    while g_lo > 0.0 {
        hi = lo;
        g_hi = g_lo;
        lo *= 0.5;
        g_lo = g(lo);
        steps += 1;
        if steps > 1100 {
            return Err(Error::Convergence { iterations: steps, best: lo });
        }
    }
    while g_hi <= 0.0 {
        lo = hi;
        g_lo = g_hi;
        hi *= 2.0;
        g_hi = g(hi);
        steps += 1;
        if steps > 1100 {
            return Err(Error::Convergence { iterations: steps, best: hi });
        }
    }
    let config = SolverConfig { abs_tol: 1e-13 * lo, ..SolverConfig::ROOT };
    let r = brent(g, Bracket { lo, hi, f_lo: g_lo, f_hi: g_hi }, &config)?;
    let mut psi = if r.bracket.f_hi <= 0.0 { r.bracket.hi } else { r.bracket.lo };
    // the caller sees sensitivity / sigma, which may round above psi; step
    // psi down until that value meets the target
    let mut sigma = sensitivity / psi;
    let mut achieved = profile_value(sensitivity / sigma, epsilon).delta;
    let mut step = f64::EPSILON;
    while achieved > target && step < 1e-12 {
        psi *= 1.0 - step;
        step *= 2.0;
        sigma = sensitivity / psi;
        achieved = profile_value(sensitivity / sigma, epsilon).delta;
    }
    Ok(CalibrationResult { sigma, psi: sensitivity / sigma, achieved_delta: achieved })
}

/// Samples of the profile `(ε, δ(ε))` on a uniform ε grid.
pub fn profile_curve(psi: SensitivityIndex, eps_max: f64, points: usize) -> Result<Vec<ProfilePoint>> {
    ensure_positive("eps_max", eps_max)?;
    if points < 2 {
        return Err(Error::domain("profile curve needs at least 2 points"));
    }
    (0..points)
        .map(|i| {
            let epsilon = eps_max * i as f64 / (points - 1) as f64;
            delta_of_epsilon(psi, epsilon).map(|delta| ProfilePoint { epsilon, delta })
        })
        .collect()
}
