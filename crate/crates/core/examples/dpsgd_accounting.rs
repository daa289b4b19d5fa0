//! Budget of a DP-SGD run from the central-limit accountant.
//!
//! cargo run --example dpsgd_accounting -- 1.0 0.01 10000

use psi_dp::gdp::{dpsgd_epsilon, dpsgd_psi, DpSgdConfig};
use psi_dp::Result;

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let sigma = args.first().map_or(1.0, |a| a.parse().expect("sigma"));
    let rate = args.get(1).map_or(0.01, |a| a.parse().expect("sampling rate"));
    let steps = args.get(2).map_or(10_000, |a| a.parse().expect("steps"));

    let config = DpSgdConfig::new(sigma, rate, steps)?;
    for w in config.warnings() {
        eprintln!("warning: {w}");
    }
    println!("s = r sqrt(T) = {:.4}", config.s());
    println!("psi           = {:.6}", dpsgd_psi(&config)?.value());
    for delta in [1e-3, 1e-5, 1e-7] {
        println!("epsilon at delta {delta:e}: {:.4}", dpsgd_epsilon(&config, delta)?);
    }

    println!("\nnoise multiplier vs epsilon (delta 1e-5):");
    for s in [0.6, 0.8, 1.0, 1.5, 2.0, 4.0] {
        let c = DpSgdConfig::new(s, rate, steps)?;
        println!("  sigma {s:>4}: {:.4}", dpsgd_epsilon(&c, 1e-5)?);
    }
    Ok(())
}
