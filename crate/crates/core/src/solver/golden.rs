use super::SolverConfig;
use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(argmin, f(argmin))` once the search interval is narrower than
/// `abs_tol`.
pub fn golden_minimize(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    config: &SolverConfig,
) -> Result<(f64, f64)> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..config.max_iter {
        if b - a <= config.abs_tol {
            let x = 0.5 * (a + b);
            let fx = f(x);
            // the midpoint is not guaranteed to beat the interior probes
            let best = [(x, fx), (x1, f1), (x2, f2)]
                .into_iter()
                .fold((x, fx), |acc, p| if p.1 < acc.1 { p } else { acc });
            return Ok(best);
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let best = if f1 <= f2 { x1 } else { x2 };
    Err(Error::Convergence { iterations: config.max_iter, best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let (x, fx) = golden_minimize(|x| (x - 3.0).powi(2), 0.0, 10.0, &SolverConfig::MINIMIZE).unwrap();
        assert!((x - 3.0).abs() <= 1e-9);
        assert!(fx <= 1e-18);
    }

    #[test]
    fn symmetric_function_lands_on_midpoint() {
        let (x, _) = golden_minimize(|x| (x - 5.0).abs(), 0.0, 10.0, &SolverConfig::MINIMIZE).unwrap();
        assert!((x - 5.0).abs() <= 1e-9);
    }

    #[test]
    fn minimum_at_boundary() {
        let (x, _) = golden_minimize(|x| x, 1.0, 2.0, &SolverConfig::MINIMIZE).unwrap();
        assert!((x - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn iteration_limit() {
        let cfg = SolverConfig { abs_tol: 1e-12, max_iter: 5 };
        assert!(matches!(
            golden_minimize(|x| x * x, -1.0, 1.0, &cfg),
            Err(Error::Convergence { .. })
        ));
    }
}
