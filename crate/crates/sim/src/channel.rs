//! BPSK over the binary-input AWGN channel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Result, SimError};

/// An operating point: `Eb/N0` in dB for a code of rate `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    ebn0_db: f64,
    rate: f64,
}

impl ChannelSpec {
    pub fn new(ebn0_db: f64, rate: f64) -> Result<Self> {
        if !ebn0_db.is_finite() {
            return Err(SimError::param(format!("Eb/N0 must be finite, got {ebn0_db}")));
        }
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(SimError::param(format!("code rate must be in (0, 1], got {rate}")));
        }
        Ok(Self { ebn0_db, rate })
    }

    pub fn ebn0_db(&self) -> f64 {
        self.ebn0_db
    }

    /// `sigma^2 = 1 / (2 R 10^(Eb/N0 / 10))` for unit-energy symbols.
    pub fn noise_variance(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }

    pub fn sigma(&self) -> f64 {
        self.noise_variance().sqrt()
    }
}

/// Maps bit 0 to +1 and bit 1 to -1.
pub fn bpsk_modulate(x: &[u8]) -> Vec<f64> {
    x.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect()
}

/// Adds zero-mean Gaussian noise of standard deviation `sigma`, drawn from a
/// generator seeded with `seed`.
pub fn awgn_channel(sym: &[f64], sigma: f64, seed: u64) -> Vec<f64> {
    add_noise(sym, sigma, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn add_noise(sym: &[f64], sigma: f64, rng: &mut impl Rng) -> Vec<f64> {
    assert!(sigma >= 0.0, "noise deviation must be non-negative");
    sym.iter()
        .map(|&s| {
            let n: f64 = rng.sample(StandardNormal);
            s + sigma * n
        })
        .collect()
}

/// `2 y / sigma^2`; positive values favour bit 0.
pub fn channel_llr(y: &[f64], sigma: f64) -> Vec<f64> {
    let scale = 2.0 / (sigma * sigma);
    y.iter().map(|&v| scale * v).collect()
}
