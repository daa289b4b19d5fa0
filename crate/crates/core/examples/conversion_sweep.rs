//! Profile vs RDP conversions over psi in [0.1, 6] at delta 1e-5, printed
//! as CSV.

use psi_dp::profile::epsilon_of_delta;
use psi_dp::rdp::{optimal_alpha_conversion, ConversionMethod};
use psi_dp::{Result, SensitivityIndex};

fn main() -> Result<()> {
    let delta = 1e-5;
    println!("psi,eps_profile,eps_rdp_standard,alpha_std,eps_rdp_improved,alpha_imp");
    for i in 0..60 {
        let psi = SensitivityIndex::new(0.1 + 5.9 * i as f64 / 59.0)?;
        let std = optimal_alpha_conversion(psi, delta, ConversionMethod::Standard)?;
        let imp = optimal_alpha_conversion(psi, delta, ConversionMethod::Improved)?;
        println!(
            "{:.4},{:.6},{:.6},{:.4},{:.6},{:.4}",
            psi.value(),
            epsilon_of_delta(psi, delta)?,
            std.epsilon,
            std.alpha_star.unwrap_or(f64::NAN),
            imp.epsilon,
            imp.alpha_star.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
