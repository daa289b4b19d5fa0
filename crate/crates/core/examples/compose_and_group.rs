//! Composition of heterogeneous releases and group privacy.

use psi_dp::gdp::{compose, g_mu, group_privacy, psi_is_gdp, GdpParameter};
use psi_dp::profile::epsilon_of_delta;
use psi_dp::{GaussianMechanismParams, Result};

fn main() -> Result<()> {
    // a histogram, a mean and a count released from the same data
    let releases = [
        GaussianMechanismParams::new(1.0, 4.0)?,
        GaussianMechanismParams::new(0.1, 0.3)?,
        GaussianMechanismParams::new(1.0, 2.5)?,
    ];
    let psis = releases.iter().map(|p| p.psi()).collect::<Result<Vec<_>>>()?;
    let total = compose(&psis)?;
    println!("individual: {:?}", psis.iter().map(|p| p.value()).collect::<Vec<_>>());
    println!("composed:   {total}, epsilon at 1e-6 = {:.4}", epsilon_of_delta(total, 1e-6)?);

    let budget = GdpParameter::new(0.6)?;
    println!("within 0.6-GDP: {}", psi_is_gdp(total, budget));
    println!("type II error floor at alpha 0.05: {:.4}", g_mu(GdpParameter::from(total), 0.05)?);

    for k in [1, 2, 5, 10] {
        let g = group_privacy(total, k)?;
        println!("group of {k:>2}: {g}, epsilon at 1e-6 = {:.3}", epsilon_of_delta(g, 1e-6)?);
    }
    Ok(())
}
