//! Monte-Carlo adversary: simulates the Gaussian mechanism on a pair of
//! adjacent inputs and estimates AUC, operating points and the privacy-loss
//! tail empirically.
//!
//! Everything is in standardized units (`sigma = 1`, `Delta = psi`): outputs
//! under `D'` are `N(0, 1)` and outputs under `D` are `N(psi, 1)`.
//!
//! Draws come from ChaCha20 seeded with [`rand_chacha::rand_core::SeedableRng::seed_from_u64`];
//! uniforms take the top 53 bits of each `u64`, normals use the Box–Muller
//! transform with both outputs consumed in order. Estimates are single
//! threaded and bit-reproducible for a given [`McConfig`].

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mechanism::SensitivityIndex;

use std::f64::consts::TAU;

/// Identifier of the random stream, recorded alongside estimates.
pub const RNG_ALGORITHM: &str = "chacha20(seed_from_u64)+box-muller";

/// Sample size and seed of a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub psi: SensitivityIndex,
    pub samples: u64,
    pub seed: u64,
}

impl McConfig {
    pub fn new(psi: SensitivityIndex, samples: u64, seed: u64) -> Result<Self> {
        let config = Self { psi, samples, seed };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::domain("samples must be >= 1"));
        }
        Ok(())
    }
}

/// A Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl McEstimate {
    /// Proportion `hits / n` with the Wald standard error.
    fn proportion(hits: f64, n: u64) -> Self {
        let p = hits / n as f64;
        McEstimate { value: p, std_error: (p * (1.0 - p) / n as f64).sqrt(), samples: n }
    }

    /// Whether `target` lies within `k` standard errors of the estimate.
    pub fn covers(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.std_error
    }
}

/// Standard normal variates from a seeded ChaCha20 stream.
#[derive(Debug, Clone)]
pub struct NormalStream {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl NormalStream {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha20Rng::seed_from_u64(seed), spare: None }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }
}

/// `P(b > a)` for `a ~ N(0, 1)`, `b ~ N(psi, 1)`, ties counting one half.
pub fn mc_auc(config: &McConfig) -> Result<McEstimate> {
    config.validate()?;
    let psi = config.psi.value();
    let mut rng = NormalStream::new(config.seed);
    let mut hits = 0.0;
    for _ in 0..config.samples {
        let a = rng.normal();
        let b = rng.normal() + psi;
        if b > a {
            hits += 1.0;
        } else if b == a {
            hits += 0.5;
        }
    }
    Ok(McEstimate::proportion(hits, config.samples))
}

/// Empirical `(FPR, TPR)` of the test "output `>= c`", with `c` in standardized
/// units (threshold divided by `sigma`).
pub fn mc_operating_point(config: &McConfig, c: f64) -> Result<(McEstimate, McEstimate)> {
    config.validate()?;
    if c.is_nan() {
        return Err(Error::domain("threshold must not be NaN"));
    }
    let psi = config.psi.value();
    let mut rng = NormalStream::new(config.seed);
    let (mut fp, mut tp) = (0u64, 0u64);
    for _ in 0..config.samples {
        if rng.normal() >= c {
            fp += 1;
        }
        if rng.normal() + psi >= c {
            tp += 1;
        }
    }
    Ok((
        McEstimate::proportion(fp as f64, config.samples),
        McEstimate::proportion(tp as f64, config.samples),
    ))
}

/// Privacy-loss samples `Ω = ln p_D(O) − ln p_D'(O) = ψ O − ψ²/2`, `O ~ N(ψ, 1)`.
fn privacy_loss_samples(config: &McConfig) -> impl Iterator<Item = f64> {
    let psi = config.psi.value();
    let mut rng = NormalStream::new(config.seed);
    (0..config.samples).map(move |_| {
        let o = rng.normal() + psi;
        let ln_p_d = -0.5 * (o - psi) * (o - psi);
        let ln_p_d_prime = -0.5 * o * o;
        ln_p_d - ln_p_d_prime
    })
}

/// Fraction of privacy-loss samples with `Ω >= epsilon`.
pub fn mc_privacy_loss_tail(config: &McConfig, epsilon: f64) -> Result<McEstimate> {
    config.validate()?;
    if config.psi.is_zero() {
        return Err(Error::Degenerate("the privacy loss is identically 0 at psi = 0".into()));
    }
    if epsilon.is_nan() {
        return Err(Error::domain("epsilon must not be NaN"));
    }
    let hits = privacy_loss_samples(config).filter(|&w| w >= epsilon).count();
    Ok(McEstimate::proportion(hits as f64, config.samples))
}

/// Sample mean and sample variance of the privacy loss.
///
/// The variance's standard error uses the sample fourth central moment.
pub fn mc_privacy_loss_moments(config: &McConfig) -> Result<(McEstimate, McEstimate)> {
    config.validate()?;
    if config.samples < 2 {
        return Err(Error::domain("moments need at least 2 samples"));
    }
    let n = config.samples as f64;
    let mean = privacy_loss_samples(config).sum::<f64>() / n;
    let (mut m2, mut m4) = (0.0, 0.0);
    for w in privacy_loss_samples(config) {
        let d2 = (w - mean) * (w - mean);
        m2 += d2;
        m4 += d2 * d2;
    }
    let var = m2 / (n - 1.0);
    let m4 = m4 / n;
    let pop_var = m2 / n;
    Ok((
        McEstimate { value: mean, std_error: (var / n).sqrt(), samples: config.samples },
        McEstimate {
            value: var,
            std_error: ((m4 - pop_var * pop_var).max(0.0) / n).sqrt(),
            samples: config.samples,
        },
    ))
}
