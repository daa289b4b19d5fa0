use super::SolverConfig;
use crate::error::{Error, Result};

/// An interval with the function values at its ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends. Does not check for a sign change.
    pub fn new(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::Domain(format!("bracket needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Bracket { lo, hi, f_lo: f(lo), f_hi: f(hi) })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn has_sign_change(&self) -> bool {
        (self.f_lo <= 0.0 && self.f_hi >= 0.0) || (self.f_lo >= 0.0 && self.f_hi <= 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    /// Best estimate of the root (smallest `|f|` of the final bracket).
    pub root: f64,
    pub f_root: f64,
    /// Final bracket; still contains a sign change.
    pub bracket: Bracket,
    pub iterations: usize,
}

/// Brent's method (Brent 1973, `zeroin`): inverse quadratic interpolation and
/// secant steps guarded by bisection.
///
/// Stops when the bracket is narrower than `abs_tol` (plus a few ulps of the
/// iterate) or `f` vanishes exactly.
pub fn brent(mut f: impl FnMut(f64) -> f64, bracket: Bracket, config: &SolverConfig) -> Result<RootResult> {
    let Bracket { lo, hi, f_lo, f_hi } = bracket;
    if f_lo.is_nan() || f_hi.is_nan() || !bracket.has_sign_change() {
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }
    let done = |root: f64, f_root: f64, other: f64, f_other: f64, iterations| {
        let (lo, hi, f_lo, f_hi) = if root <= other {
            (root, other, f_root, f_other)
        } else {
            (other, root, f_other, f_root)
        };
        RootResult { root, f_root, bracket: Bracket { lo, hi, f_lo, f_hi }, iterations }
    };
    if f_lo == 0.0 {
        return Ok(done(lo, 0.0, lo, 0.0, 0));
    }
    if f_hi == 0.0 {
        return Ok(done(hi, 0.0, hi, 0.0, 0));
    }

    // b: best iterate, a: previous b, c: contrapoint with f(c) of opposite sign
    let (mut a, mut fa) = (lo, f_lo);
    let (mut b, mut fb) = (hi, f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for iter in 1..=config.max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * config.abs_tol;
        let m = 0.5 * (c - b);
        if fb == 0.0 {
            return Ok(done(b, fb, b, fb, iter));
        }
        if m.abs() <= tol {
            return Ok(done(b, fb, c, fc, iter));
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::Convergence { iterations: iter, best: a });
        }
    }
    Err(Error::Convergence { iterations: config.max_iter, best: b })
}

/// Root of `f` inside `bracket`; see [`brent`].
pub fn brent_root(f: impl FnMut(f64) -> f64, bracket: Bracket, config: &SolverConfig) -> Result<f64> {
    brent(f, bracket, config).map(|r| r.root)
}
