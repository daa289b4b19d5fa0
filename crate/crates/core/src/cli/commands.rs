use super::output::{Output, OutputEnvelope, Table};
use super::MethodArg;
use crate::error::{Error, Result};
use crate::gdp::{self, DpSgdConfig};
use crate::mechanism::SensitivityIndex;
use crate::oracle::{self, McConfig, RNG_ALGORITHM};
use crate::profile::{calibrate_sigma, epsilon_of_delta};
use crate::rdp::{optimal_alpha_conversion, rdp_curve, ConversionMethod};
use crate::tradeoff;

/// Orders at which `convert` reports `ρ(α)`.
const RDP_SAMPLE_ORDERS: [u32; 6] = [2, 4, 8, 16, 32, 64];

pub(super) fn convert(psi: f64, delta: f64, method: MethodArg) -> Result<Output> {
    let p = SensitivityIndex::new(psi)?;
    let mut e = OutputEnvelope::new("convert");
    e.input("psi", psi).input("delta", delta).input(
        "method",
        match method {
            MethodArg::Profile => "profile",
            MethodArg::RdpStandard => "rdp-standard",
            MethodArg::RdpImproved => "rdp-improved",
            MethodArg::All => "all",
        },
    );
    if matches!(method, MethodArg::Profile | MethodArg::All) {
        e.result("epsilon_profile", epsilon_of_delta(p, delta)?);
    }
    for (arg, m, key) in [
        (MethodArg::RdpStandard, ConversionMethod::Standard, "rdp_standard"),
        (MethodArg::RdpImproved, ConversionMethod::Improved, "rdp_improved"),
    ] {
        if method == arg || method == MethodArg::All {
            let r = optimal_alpha_conversion(p, delta, m)?;
            e.result(&format!("epsilon_{key}"), r.epsilon);
            e.result(&format!("alpha_star_{key}"), r.alpha_star);
        }
    }
    e.result("gdp_mu", p.value());
    e.result("auc", tradeoff::auc(p));
    for a in RDP_SAMPLE_ORDERS {
        e.result(&format!("rho_alpha_{a}"), rdp_curve(p, a as f64)?.rho);
    }
    Ok(Output::Envelope(e))
}

pub(super) fn calibrate(sensitivity: f64, epsilon: f64, delta: f64) -> Result<Output> {
    let c = calibrate_sigma(sensitivity, epsilon, delta)?;
    let mut e = OutputEnvelope::new("calibrate");
    e.input("sensitivity", sensitivity).input("epsilon", epsilon).input("delta", delta);
    e.result("sigma", c.sigma).result("psi", c.psi).result("achieved_delta", c.achieved_delta);
    Ok(Output::Envelope(e))
}

fn maybe_epsilon(e: &mut OutputEnvelope, psi: SensitivityIndex, delta: Option<f64>) -> Result<()> {
    if let Some(d) = delta {
        e.input("delta", d);
        e.result("epsilon", epsilon_of_delta(psi, d)?);
    }
    Ok(())
}

pub(super) fn compose(psis: &[f64], delta: Option<f64>) -> Result<Output> {
    let list = psis.iter().map(|&p| SensitivityIndex::new(p)).collect::<Result<Vec<_>>>()?;
    let total = gdp::compose(&list)?;
    let mut e = OutputEnvelope::new("compose");
    e.input("psis", psis.to_vec());
    e.result("psi", total.value());
    maybe_epsilon(&mut e, total, delta)?;
    Ok(Output::Envelope(e))
}

pub(super) fn group(psi: f64, k: u64, delta: Option<f64>) -> Result<Output> {
    let g = gdp::group_privacy(SensitivityIndex::new(psi)?, k)?;
    let mut e = OutputEnvelope::new("group");
    e.input("psi", psi).input("k", k);
    e.result("psi", g.value());
    maybe_epsilon(&mut e, g, delta)?;
    Ok(Output::Envelope(e))
}

pub(super) fn dpsgd(sigma: f64, sampling_rate: f64, steps: u64, delta: Option<f64>) -> Result<Output> {
    let config = DpSgdConfig::new(sigma, sampling_rate, steps)?;
    let psi = gdp::dpsgd_psi(&config)?;
    let mut e = OutputEnvelope::new("dpsgd");
    e.input("sigma", sigma).input("sampling_rate", sampling_rate).input("steps", steps);
    e.result("s", config.s()).result("psi", psi.value());
    maybe_epsilon(&mut e, psi, delta)?;
    e.warnings = config.warnings();
    Ok(Output::Envelope(e))
}

pub(super) fn roc(psi: f64, points: usize, epsilon: Option<f64>) -> Result<Output> {
    let p = SensitivityIndex::new(psi)?;
    let curve = tradeoff::sample_curve(p, points)?;
    let mut e = OutputEnvelope::new("roc");
    e.input("psi", psi).input("points", points as u64);
    e.result("auc", tradeoff::auc(p));
    let mut columns = vec!["x", "roc"];
    let tangent = match epsilon {
        Some(eps) => {
            let t = tradeoff::tangent_intercept(p, eps)?;
            e.input("epsilon", eps);
            e.result("tangent_intercept", t.intercept)
                .result("tangency_x", t.tangency_x)
                .result("tangency_y", t.tangency_y);
            columns.push("tangent_epsilon_intercept");
            Some(t)
        }
        None => None,
    };
    let rows = curve
        .iter()
        .map(|pt| {
            let mut row = vec![pt.x, pt.roc];
            if let Some(t) = &tangent {
                row.push(t.line(pt.x));
            }
            row
        })
        .collect();
    Ok(Output::Table(Table { envelope: e, columns, rows }))
}

pub(super) fn sweep(delta: f64, psi_min: f64, psi_max: f64, steps: usize) -> Result<Output> {
    SensitivityIndex::new(psi_min)?;
    SensitivityIndex::new(psi_max)?;
    if psi_max < psi_min {
        return Err(Error::Domain(format!("psi_max = {psi_max} is below psi_min = {psi_min}")));
    }
    if steps == 0 {
        return Err(Error::Domain("steps must be >= 1".into()));
    }
    let mut e = OutputEnvelope::new("sweep");
    e.input("delta", delta)
        .input("psi_min", psi_min)
        .input("psi_max", psi_max)
        .input("steps", steps as u64);
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let psi = if steps == 1 {
            psi_min
        } else {
            psi_min + (psi_max - psi_min) * i as f64 / (steps - 1) as f64
        };
        let p = SensitivityIndex::new(psi)?;
        let exact = epsilon_of_delta(p, delta)?;
        let std = optimal_alpha_conversion(p, delta, ConversionMethod::Standard)?;
        let imp = optimal_alpha_conversion(p, delta, ConversionMethod::Improved)?;
        rows.push(vec![
            psi,
            exact,
            std.epsilon,
            std.alpha_star.unwrap_or(f64::NAN),
            imp.epsilon,
            imp.alpha_star.unwrap_or(f64::NAN),
        ]);
    }
    let columns = vec!["psi", "eps_profile", "eps_rdp_standard", "alpha_std", "eps_rdp_improved", "alpha_imp"];
    Ok(Output::Table(Table { envelope: e, columns, rows }))
}

/// Envelope of the `k`-standard-error test.
const MC_SE_MULTIPLIER: f64 = 3.0;

pub(super) fn mc_verify(psi: f64, samples: u64, seed: u64, epsilon: Option<f64>) -> Result<Output> {
    let p = SensitivityIndex::new(psi)?;
    let config = McConfig::new(p, samples, seed)?;
    let mut e = OutputEnvelope::new("mc-verify");
    e.input("psi", psi).input("samples", samples).input("seed", seed);
    e.result("rng", RNG_ALGORITHM);

    let auc = oracle::mc_auc(&config)?;
    let exact = tradeoff::auc(p);
    e.result("auc_mc", auc.value)
        .result("auc_mc_std_error", auc.std_error)
        .result("auc_analytic", exact)
        .result("auc_pass", auc.covers(exact, MC_SE_MULTIPLIER));

    // symmetric threshold c = Delta/2
    let c = 0.5 * psi;
    let (fpr, tpr) = oracle::mc_operating_point(&config, c)?;
    let fpr_exact = crate::specfun::norm_sf(c);
    let tpr_exact = crate::specfun::norm_sf(c - psi);
    e.result("fpr_mc", fpr.value)
        .result("fpr_mc_std_error", fpr.std_error)
        .result("fpr_analytic", fpr_exact)
        .result("tpr_mc", tpr.value)
        .result("tpr_mc_std_error", tpr.std_error)
        .result("tpr_analytic", tpr_exact)
        .result(
            "operating_point_pass",
            fpr.covers(fpr_exact, MC_SE_MULTIPLIER) && tpr.covers(tpr_exact, MC_SE_MULTIPLIER),
        );

    if let Some(eps) = epsilon {
        e.input("epsilon", eps);
        let tail = oracle::mc_privacy_loss_tail(&config, eps)?;
        let exact = crate::mechanism::privacy_loss_tail(p, eps)?;
        e.result("tail_mc", tail.value)
            .result("tail_mc_std_error", tail.std_error)
            .result("tail_analytic", exact)
            .result("tail_pass", tail.covers(exact, MC_SE_MULTIPLIER));
    }
    if samples < 1000 {
        e.warnings.push(format!("samples = {samples}: standard errors are unreliable below 1000 samples"));
    }
    Ok(Output::Envelope(e))
}
