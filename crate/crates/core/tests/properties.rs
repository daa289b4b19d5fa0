use proptest::prelude::*;

use psi_dp::gdp::{compose, g_mu, group_privacy, GdpParameter};
use psi_dp::mechanism::privacy_loss_tail;
use psi_dp::profile::{calibrate_sigma, delta_of_epsilon, epsilon_of_delta, tail_bound_epsilon};
use psi_dp::rdp::{
    gaussian_renyi_divergence, improved_conversion, rdp_curve, standard_conversion, ConversionMethod,
};
use psi_dp::specfun::{norm_cdf, norm_quantile};
use psi_dp::tradeoff::{roc, tangent_intercept};
use psi_dp::SensitivityIndex;

fn psi(v: f64) -> SensitivityIndex {
    SensitivityIndex::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cdf_symmetry(z in -30.0f64..30.0) {
        prop_assert!((norm_cdf(z) + norm_cdf(-z) - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn quantile_inverts_cdf(p in 1e-300f64..1.0) {
        prop_assume!(p < 1.0 - 1e-15);
        prop_assert!((norm_cdf(norm_quantile(p)) - p).abs() <= 1e-13);
    }

    #[test]
    fn profile_is_decreasing(p in 0.05f64..8.0, e in 0.0f64..20.0, de in 1e-3f64..2.0) {
        let a = delta_of_epsilon(psi(p), e).unwrap();
        let b = delta_of_epsilon(psi(p), e + de).unwrap();
        prop_assert!(b <= a);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn profile_is_increasing_in_psi(p in 0.05f64..8.0, dp in 1e-3f64..2.0, e in 0.0f64..10.0) {
        prop_assert!(delta_of_epsilon(psi(p), e).unwrap() <= delta_of_epsilon(psi(p + dp), e).unwrap());
    }

    #[test]
    fn tail_bounds_tight_delta(p in 0.05f64..8.0, e in 0.0f64..20.0) {
        prop_assert!(privacy_loss_tail(psi(p), e).unwrap() >= delta_of_epsilon(psi(p), e).unwrap());
    }

    #[test]
    fn epsilon_inverts_delta(p in 0.1f64..6.0, e in 0.01f64..15.0) {
        let d = delta_of_epsilon(psi(p), e).unwrap();
        prop_assume!(d > 1e-300);
        prop_assert!((epsilon_of_delta(psi(p), d).unwrap() - e).abs() <= 1e-9);
    }

    #[test]
    fn conversions_are_ordered(p in 0.05f64..6.0, ld in -20.0f64..-1.0) {
        let d = 10f64.powf(ld);
        let exact = epsilon_of_delta(psi(p), d).unwrap();
        let tail = tail_bound_epsilon(psi(p), d).unwrap();
        let imp = psi_dp::rdp::convert(psi(p), d, ConversionMethod::Improved).unwrap().epsilon;
        let std = psi_dp::rdp::convert(psi(p), d, ConversionMethod::Standard).unwrap().epsilon;
        prop_assert!(exact <= tail + 1e-12);
        prop_assert!(exact <= imp + 1e-9);
        prop_assert!(imp <= std + 1e-9);
    }

    #[test]
    fn improved_beats_standard_pointwise(p in 0.0f64..6.0, a in 1.1f64..1024.0, ld in -12.0f64..-0.5) {
        let d = 10f64.powf(ld);
        prop_assert!(improved_conversion(psi(p), a, d).unwrap() <= standard_conversion(psi(p), a, d).unwrap());
    }

    #[test]
    fn calibration_is_feasible_and_scale_equivariant(s in 0.01f64..100.0, e in 0.05f64..5.0, ld in -12.0f64..-1.0) {
        let d = 10f64.powf(ld);
        let c = calibrate_sigma(s, e, d).unwrap();
        prop_assert!(c.achieved_delta <= d);
        let unit = calibrate_sigma(1.0, e, d).unwrap();
        prop_assert!((c.sigma / s - unit.sigma).abs() <= 1e-9 * unit.sigma);
    }

    #[test]
    fn roc_is_self_dual(p in 0.0f64..5.0, x in 1e-6f64..(1.0 - 1e-6)) {
        let r = roc(psi(p), x).unwrap();
        // 1 − R(x) through the survival function; subtracting from 1 loses
        // the digits that R' amplifies near the origin
        let complement = norm_cdf(-(p + norm_quantile(x)));
        prop_assert!((complement - (1.0 - r)).abs() <= 1e-15);
        prop_assume!(complement > 0.0);
        let back = roc(psi(p), complement).unwrap();
        prop_assert!((back - (1.0 - x)).abs() <= 1e-12);
        prop_assert!(r >= x);
    }

    #[test]
    fn roc_is_one_minus_g(p in 0.0f64..5.0, x in 1e-6f64..(1.0 - 1e-6)) {
        let g = g_mu(GdpParameter::new(p).unwrap(), x).unwrap();
        prop_assert!((roc(psi(p), x).unwrap() - (1.0 - g)).abs() <= 1e-13);
    }

    #[test]
    fn tangent_supports_curve(p in 0.2f64..5.0, e in 0.0f64..5.0, x in 1e-6f64..(1.0 - 1e-6)) {
        let t = tangent_intercept(psi(p), e).unwrap();
        prop_assert!(roc(psi(p), x).unwrap() <= t.line(x) + 1e-12);
    }

    #[test]
    fn compose_ignores_order(mut xs in prop::collection::vec(0.0f64..10.0, 1..12)) {
        let a: Vec<_> = xs.iter().map(|&v| psi(v)).collect();
        xs.reverse();
        let b: Vec<_> = xs.iter().map(|&v| psi(v)).collect();
        prop_assert_eq!(compose(&a).unwrap(), compose(&b).unwrap());
        let max = xs.iter().cloned().fold(0.0, f64::max);
        prop_assert!(compose(&a).unwrap().value() >= max);
    }

    #[test]
    fn group_is_linear(p in 0.0f64..10.0, k in 1u64..1000) {
        let g = group_privacy(psi(p), k).unwrap().value();
        prop_assert_eq!(g, k as f64 * p);
        prop_assert!(g <= group_privacy(psi(p), k + 1).unwrap().value());
    }

    #[test]
    fn renyi_equal_variance_reduces_to_curve(d in 0.0f64..5.0, s in 0.1f64..5.0, a in 1.01f64..200.0) {
        let div = gaussian_renyi_divergence(&[d], s, &[0.0], s, a).unwrap();
        let rho = rdp_curve(psi(d / s), a).unwrap().rho;
        prop_assert!((div - rho).abs() <= 1e-12 * rho.max(1.0));
    }

    #[test]
    fn renyi_is_nonnegative(mi in -3.0f64..3.0, mj in -3.0f64..3.0, si in 0.5f64..2.0, sj in 0.5f64..2.0, a in 1.01f64..4.0) {
        match gaussian_renyi_divergence(&[mi], si, &[mj], sj, a) {
            Ok(v) => prop_assert!(v >= -1e-12),
            Err(e) => {
                let infinite = matches!(e, psi_dp::Error::InfiniteDivergence { .. });
                prop_assert!(infinite, "unexpected error {}", e);
            }
        }
    }
}
