//! Simulated membership attacks against the closed forms.
//!
//! cargo run --release --example monte_carlo_check -- 1.0 1000000 7

use psi_dp::mechanism::privacy_loss_tail;
use psi_dp::oracle::{mc_auc, mc_operating_point, mc_privacy_loss_moments, mc_privacy_loss_tail, McConfig, RNG_ALGORITHM};
use psi_dp::specfun::norm_sf;
use psi_dp::tradeoff::auc;
use psi_dp::{Result, SensitivityIndex};

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let psi = SensitivityIndex::new(args.first().map_or(1.0, |a| a.parse().expect("psi")))?;
    let samples = args.get(1).map_or(200_000, |a| a.parse().expect("samples"));
    let seed = args.get(2).map_or(7, |a| a.parse().expect("seed"));
    let config = McConfig::new(psi, samples, seed)?;
    println!("{psi}, {samples} samples, seed {seed}, {RNG_ALGORITHM}");

    let a = mc_auc(&config)?;
    println!("AUC      {:.5} ± {:.5}   exact {:.5}", a.value, a.std_error, auc(psi));

    let c = 0.5 * psi.value();
    let (fpr, tpr) = mc_operating_point(&config, c)?;
    println!("FPR(c)   {:.5} ± {:.5}   exact {:.5}", fpr.value, fpr.std_error, norm_sf(c));
    println!("TPR(c)   {:.5} ± {:.5}   exact {:.5}", tpr.value, tpr.std_error, norm_sf(c - psi.value()));

    if !psi.is_zero() {
        for eps in [0.0, 0.5, 1.0, 2.0] {
            let t = mc_privacy_loss_tail(&config, eps)?;
            println!(
                "P(loss >= {eps}) {:.5} ± {:.5}   exact {:.5}",
                t.value,
                t.std_error,
                privacy_loss_tail(psi, eps)?
            );
        }
    }
    let (m, v) = mc_privacy_loss_moments(&config)?;
    let p = psi.value();
    println!("loss mean {:.5} (exact {:.5}), variance {:.5} (exact {:.5})", m.value, 0.5 * p * p, v.value, p * p);
    Ok(())
}
