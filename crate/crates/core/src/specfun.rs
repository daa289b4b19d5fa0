//! Standard normal CDF, survival function, quantile and log-CDF.
//!
//! Everything rests on a complementary error function built from the
//! FreeBSD/Sun `s_erf.c` rational approximations (the same ones behind Go's
//! `math.Erfc` and musl's `erfc`). From those pieces we also get the scaled
//! function `erfcx(x) = exp(x^2) erfc(x)` without ever forming `exp(x^2)`,
//! which keeps tail probabilities accurate to full relative precision until
//! they leave the normal range of `f64` (around `z = 37.5`).
//!
//! The unchecked functions ([`norm_cdf`], [`norm_sf`], [`norm_quantile`],
//! [`log_norm_cdf`]) are what the rest of the crate uses internally; the
//! `std_normal_*` wrappers validate their input.

#![allow(clippy::excessive_precision)]

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const SQRT_PI_OVER_2: f64 = 1.253_314_137_315_500_3;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

// erx = (float)0.84506291151
const ERX: f64 = 8.45062911510467529297e-01;

// erf on [0, 0.84375]
const EFX: f64 = 1.28379167095512586316e-01;
const PP0: f64 = 1.28379167095512558561e-01;
const PP1: f64 = -3.25042107247001499370e-01;
const PP2: f64 = -2.84817495755985104766e-02;
const PP3: f64 = -5.77027029648944159157e-03;
const PP4: f64 = -2.37630166566501626084e-05;
const QQ1: f64 = 3.97917223959155352819e-01;
const QQ2: f64 = 6.50222499887672944485e-02;
const QQ3: f64 = 5.08130628187576562776e-03;
const QQ4: f64 = 1.32494738004321644526e-04;
const QQ5: f64 = -3.96022827877536812320e-06;

// erf on [0.84375, 1.25]
const PA0: f64 = -2.36211856075265944077e-03;
const PA1: f64 = 4.14856118683748331666e-01;
const PA2: f64 = -3.72207876035701323847e-01;
const PA3: f64 = 3.18346619901161753674e-01;
const PA4: f64 = -1.10894694282396677476e-01;
const PA5: f64 = 3.54783043256182359371e-02;
const PA6: f64 = -2.16637559486879084300e-03;
const QA1: f64 = 1.06420880400844228286e-01;
const QA2: f64 = 5.40397917702171048937e-01;
const QA3: f64 = 7.18286544141962662868e-02;
const QA4: f64 = 1.26171219808761642112e-01;
const QA5: f64 = 1.36370839120290507362e-02;
const QA6: f64 = 1.19844998467991074170e-02;

// erfc on [1.25, 1/0.35]
const RA0: f64 = -9.86494403484714822705e-03;
const RA1: f64 = -6.93858572707181764372e-01;
const RA2: f64 = -1.05586262253232909814e+01;
const RA3: f64 = -6.23753324503260060396e+01;
const RA4: f64 = -1.62396669462573470355e+02;
const RA5: f64 = -1.84605092906711035994e+02;
const RA6: f64 = -8.12874355063065934246e+01;
const RA7: f64 = -9.81432934416914548592e+00;
const SA1: f64 = 1.96512716674392571292e+01;
const SA2: f64 = 1.37657754143519042600e+02;
const SA3: f64 = 4.34565877475229228821e+02;
const SA4: f64 = 6.45387271733267880336e+02;
const SA5: f64 = 4.29008140027567833386e+02;
const SA6: f64 = 1.08635005541779435134e+02;
const SA7: f64 = 6.57024977031928170135e+00;
const SA8: f64 = -6.04244152148580987438e-02;

// erfc on [1/0.35, 28]
const RB0: f64 = -9.86494292470009928597e-03;
const RB1: f64 = -7.99283237680523006574e-01;
const RB2: f64 = -1.77579549177547519889e+01;
const RB3: f64 = -1.60636384855821916062e+02;
const RB4: f64 = -6.37566443368389627722e+02;
const RB5: f64 = -1.02509513161107724954e+03;
const RB6: f64 = -4.83519191608651397019e+02;
const SB1: f64 = 3.03380607434824582924e+01;
const SB2: f64 = 3.25792512996573918826e+02;
const SB3: f64 = 1.53672958608443695994e+03;
const SB4: f64 = 3.19985821950859553908e+03;
const SB5: f64 = 2.55305040643316442583e+03;
const SB6: f64 = 4.74528541206955367215e+02;
const SB7: f64 = -2.24409524465858183362e+01;

/// R(x^2) on [0, 0.84375), with erf(x) = x + x * R(x^2).
fn erf_small_ratio(x: f64) -> f64 {
    let z = x * x;
    let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
    let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
    r / s
}

/// erf(x) - erx on [0.84375, 1.25).
fn erf_near_one(x: f64) -> f64 {
    let s = x - 1.0;
    let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
    let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
    p / q
}

/// R/S - 0.5625 on [1.25, 28), so that erfc(x) = exp(-x^2 + g(x)) / x.
fn erfc_tail_exponent(x: f64) -> f64 {
    let s = 1.0 / (x * x);
    let (r, t) = if x < 1.0 / 0.35 {
        (
            RA0 + s * (RA1 + s * (RA2 + s * (RA3 + s * (RA4 + s * (RA5 + s * (RA6 + s * RA7)))))),
            1.0 + s
                * (SA1 + s * (SA2 + s * (SA3 + s * (SA4 + s * (SA5 + s * (SA6 + s * (SA7 + s * SA8))))))),
        )
    } else {
        (
            RB0 + s * (RB1 + s * (RB2 + s * (RB3 + s * (RB4 + s * (RB5 + s * RB6))))),
            1.0 + s * (SB1 + s * (SB2 + s * (SB3 + s * (SB4 + s * (SB5 + s * (SB6 + s * SB7)))))),
        )
    };
    r / t - 0.5625
}

/// `exp(-x^2)` with the square carried in two pieces.
fn exp_neg_sq(x: f64) -> f64 {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    (-hi).exp() * (-lo).exp()
}

/// `exp(-z^2 / 2)`, see [`exp_neg_sq`].
fn exp_neg_half_sq(z: f64) -> f64 {
    if z.is_infinite() {
        return 0.0;
    }
    let hi = z * z;
    let lo = z.mul_add(z, -hi);
    (-0.5 * hi).exp() * (-0.5 * lo).exp()
}

/// The error function.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax < 0.84375 {
        if ax < 2.0_f64.powi(-28) {
            ax + EFX * ax
        } else {
            ax + ax * erf_small_ratio(ax)
        }
    } else if ax < 1.25 {
        ERX + erf_near_one(ax)
    } else if ax < 6.0 {
        1.0 - (erfc_tail_exponent(ax)).exp() * exp_neg_sq(ax) / ax
    } else {
        1.0
    };
    v.copysign(x)
}

/// The complementary error function, `1 - erf(x)` without cancellation.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    if ax < 0.84375 {
        if ax < 2.0_f64.powi(-56) {
            return 1.0 - x;
        }
        let y = erf_small_ratio(x);
        if x < 0.25 {
            return 1.0 - (x + x * y);
        }
        // keeps the last bits for x in [0.25, 0.84375)
        return 0.5 - (x * y + (x - 0.5));
    }
    if ax < 1.25 {
        let t = ERX + erf_near_one(ax);
        return if x > 0.0 { 1.0 - t } else { 1.0 + t };
    }
    if x < 0.0 {
        return if ax >= 6.0 { 2.0 } else { 2.0 - erfcx(ax) * exp_neg_sq(ax) };
    }
    if ax < 28.0 {
        erfc_tail_exponent(ax).exp() * exp_neg_sq(ax) / ax
    } else {
        0.0
    }
}

/// The scaled complementary error function `exp(x^2) erfc(x)`.
///
/// Finite for every `x > -26.6`; overflows to `+inf` below that.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        let hi = x * x;
        if hi > 709.0 {
            return f64::INFINITY;
        }
        let lo = x.mul_add(x, -hi);
        return 2.0 * hi.exp() * lo.exp() - erfcx(-x);
    }
    if x < 1.25 {
        // exp(x^2) <= exp(1.5625): no precision lost in the product
        return (x * x).exp() * erfc(x);
    }
    if x < 28.0 {
        return erfc_tail_exponent(x).exp() / x;
    }
    // asymptotic series; terms shrink by (2k - 1) / (2 x^2) <= 0.02 here
    let inv2x2 = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..12 {
        term *= -((2 * k - 1) as f64) * inv2x2;
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    FRAC_1_SQRT_PI / x * sum
}

/// Lower tail `Φ(-t)` for `t >= 1`, with full relative precision.
fn lower_tail(t: f64) -> f64 {
    0.5 * exp_neg_half_sq(t) * erfcx(t * FRAC_1_SQRT_2)
}

/// Standard normal CDF `Φ(z)`. Saturates to 0 and 1 at `∓inf`.
pub fn norm_cdf(z: f64) -> f64 {
    if z.is_nan() {
        f64::NAN
    } else if z < -1.0 {
        lower_tail(-z)
    } else if z > 1.0 {
        1.0 - lower_tail(z)
    } else {
        0.5 * erfc(-z * FRAC_1_SQRT_2)
    }
}

/// Standard normal survival function `1 - Φ(z) = Φ(-z)`.
pub fn norm_sf(z: f64) -> f64 {
    norm_cdf(-z)
}

/// Standard normal density.
pub fn norm_pdf(z: f64) -> f64 {
    exp_neg_half_sq(z) / SQRT_2PI
}

/// `ln Φ(z)`, finite for every finite `z`.
pub fn log_norm_cdf(z: f64) -> f64 {
    if z.is_nan() {
        f64::NAN
    } else if z < -1.0 {
        let t = -z;
        let hi = t * t;
        let lo = t.mul_add(t, -hi);
        (0.5 * erfcx(t * FRAC_1_SQRT_2)).ln() - 0.5 * hi - 0.5 * lo
    } else if z > 1.0 {
        (-lower_tail(z)).ln_1p()
    } else {
        norm_cdf(z).ln()
    }
}

// Acklam's rational approximation, relative error < 1.15e-9.
const ACKLAM_A: [f64; 6] = [
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.383577518672690e+02,
    -3.066479806614716e+01,
    2.506628277459239e+00,
];
const ACKLAM_B: [f64; 5] = [
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
];
const ACKLAM_C: [f64; 6] = [
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
];
const ACKLAM_D: [f64; 4] = [
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
];
const ACKLAM_P_LOW: f64 = 0.02425;

/// Initial guess for `Φ⁻¹(p)`, `0 < p <= 0.5`.
fn acklam_lower(p: f64) -> f64 {
    let [a0, a1, a2, a3, a4, a5] = ACKLAM_A;
    let [b0, b1, b2, b3, b4] = ACKLAM_B;
    let [c0, c1, c2, c3, c4, c5] = ACKLAM_C;
    let [d0, d1, d2, d3] = ACKLAM_D;
    if p < ACKLAM_P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((c0 * q + c1) * q + c2) * q + c3) * q + c4) * q + c5)
            / ((((d0 * q + d1) * q + d2) * q + d3) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((a0 * r + a1) * r + a2) * r + a3) * r + a4) * r + a5) * q
            / (((((b0 * r + b1) * r + b2) * r + b3) * r + b4) * r + 1.0)
    }
}

/// `(Φ(x) - p) / φ(x)`, the Newton correction, without under- or overflow.
fn newton_ratio(x: f64, p: f64) -> f64 {
    if x > -1.0 {
        (norm_cdf(x) - p) * SQRT_2PI * (0.5 * x * x).exp()
    } else {
        // Φ(x)/φ(x) = sqrt(pi/2) erfcx(-x/sqrt2); p/φ(x) in log space
        SQRT_PI_OVER_2 * erfcx(-x * FRAC_1_SQRT_2) - (p.ln() + 0.5 * x * x + LN_SQRT_2PI).exp()
    }
}

fn quantile_lower(p: f64) -> f64 {
    if p == 0.5 {
        return 0.0;
    }
    let mut x = acklam_lower(p);
    for _ in 0..2 {
        let u = newton_ratio(x, p);
        // Halley step
        x -= u / (1.0 + 0.5 * x * u);
    }
    x
}

/// Standard normal quantile `Φ⁻¹(p)`; `∓inf` at `p = 0, 1`, NaN outside `[0, 1]`.
pub fn norm_quantile(p: f64) -> f64 {
    if p.is_nan() || !(0.0..=1.0).contains(&p) {
        f64::NAN
    } else if p == 0.0 {
        f64::NEG_INFINITY
    } else if p == 1.0 {
        f64::INFINITY
    } else if p <= 0.5 {
        quantile_lower(p)
    } else {
        // 1 - p is exact for p in [0.5, 1]
        -quantile_lower(1.0 - p)
    }
}

/// `Φ(z)` for finite `z`.
pub fn std_normal_cdf(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::domain(format!("z-score must be finite, got {z}")));
    }
    Ok(norm_cdf(z))
}

/// `1 - Φ(z)` for finite `z`, accurate in the upper tail.
pub fn std_normal_cdf_complement(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::domain(format!("z-score must be finite, got {z}")));
    }
    Ok(norm_sf(z))
}

/// `Φ⁻¹(p)` for `0 < p < 1`.
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("probability must lie in (0, 1), got {p}")));
    }
    Ok(norm_quantile(p))
}
