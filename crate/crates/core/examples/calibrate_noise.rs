//! Smallest noise scale for an (epsilon, delta) target.
//!
//! cargo run --example calibrate_noise -- 1.0 1.0 1e-5

use psi_dp::profile::{calibrate_sigma, tail_bound_epsilon};
use psi_dp::{Result, SensitivityIndex};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let sensitivity = args.next().unwrap_or(1.0);
    let epsilon = args.next().unwrap_or(1.0);
    let delta = args.next().unwrap_or(1e-5);

    let c = calibrate_sigma(sensitivity, epsilon, delta)?;
    println!("sigma          = {:.10}", c.sigma);
    println!("psi            = {:.10}", c.psi);
    println!("achieved delta = {:.6e} (target {delta:e})", c.achieved_delta);

    let loose = tail_bound_epsilon(SensitivityIndex::new(c.psi)?, delta)?;
    println!("the one-term tail bound would only certify epsilon = {loose:.4} at this sigma");
    Ok(())
}
