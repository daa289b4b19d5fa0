//! The tight delta(epsilon) curve next to the privacy-loss tail bound.

use psi_dp::mechanism::{privacy_loss_distribution, privacy_loss_tail};
use psi_dp::profile::{ln_delta_of_epsilon, profile_curve};
use psi_dp::{Result, SensitivityIndex};

fn main() -> Result<()> {
    let psi = SensitivityIndex::new(1.5)?;
    let loss = privacy_loss_distribution(psi);
    println!("privacy loss ~ N({}, {})", loss.mean, loss.variance);
    println!("{:>8} {:>14} {:>14}", "epsilon", "delta", "tail bound");
    for p in profile_curve(psi, 8.0, 17)? {
        println!("{:>8.2} {:>14.6e} {:>14.6e}", p.epsilon, p.delta, privacy_loss_tail(psi, p.epsilon)?);
    }
    // far beyond the f64 range of delta itself
    println!("ln delta(200) = {:.4}", ln_delta_of_epsilon(psi, 200.0)?);
    Ok(())
}
