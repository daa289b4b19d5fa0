//! Epsilon at a fixed delta for one mechanism, by every conversion.
//!
//! cargo run --example convert_budget -- 1.0 1e-5

use psi_dp::rdp::{convert, ConversionMethod};
use psi_dp::tradeoff::auc;
use psi_dp::{GaussianMechanismParams, Result};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let sigma = args.next().unwrap_or(1.0);
    let delta = args.next().unwrap_or(1e-5);

    let params = GaussianMechanismParams::new(1.0, sigma)?;
    let psi = params.psi()?;
    println!("sensitivity 1, sigma {sigma} -> {psi}");
    println!("AUC of the best membership test: {:.6}", auc(psi));

    for method in ConversionMethod::ALL {
        let r = convert(psi, delta, method)?;
        match r.alpha_star {
            Some(a) => println!("{:>9}: epsilon = {:.6} (alpha* = {a:.3})", method, r.epsilon),
            None => println!("{:>9}: epsilon = {:.6}", method, r.epsilon),
        }
    }
    Ok(())
}
