//! The RDP curve of the Gaussian mechanism and both RDP conversions as
//! functions of the order alpha.

use psi_dp::profile::epsilon_of_delta;
use psi_dp::rdp::{
    gaussian_renyi_divergence, improved_conversion, optimal_alpha_conversion, rdp_curve, standard_conversion,
    ConversionMethod,
};
use psi_dp::{Result, SensitivityIndex};

fn main() -> Result<()> {
    let psi = SensitivityIndex::new(1.0)?;
    let delta = 1e-5;

    println!("{:>6} {:>8} {:>10} {:>10}", "alpha", "rho", "standard", "improved");
    for alpha in [1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 16.0, 32.0, 64.0] {
        println!(
            "{alpha:>6} {:>8.3} {:>10.4} {:>10.4}",
            rdp_curve(psi, alpha)?.rho,
            standard_conversion(psi, alpha, delta)?,
            improved_conversion(psi, alpha, delta)?
        );
    }
    for method in [ConversionMethod::Standard, ConversionMethod::Improved] {
        let r = optimal_alpha_conversion(psi, delta, method)?;
        println!("best {method}: epsilon {:.6} at alpha {:.4}", r.epsilon, r.alpha_star.unwrap_or(f64::NAN));
    }
    println!("profile:       epsilon {:.6}", epsilon_of_delta(psi, delta)?);

    // unequal variances
    let d = gaussian_renyi_divergence(&[0.0, 0.0], 1.0, &[1.0, 0.5], 1.5, 2.0)?;
    println!("D_2(N(0, I) || N((1, 0.5), 2.25 I)) = {d:.6}");
    Ok(())
}
