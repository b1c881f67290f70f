//! Monte Carlo checks of the closed-form metrics against the fading sampler.

use alloc::vec::Vec;

use crate::channel::{self, AntennaConfig, LinkBudget};
use crate::rng;
use crate::{Error, Result};

/// Event counts over joint SNR draws.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OutageTally {
    pub samples: u64,
    /// Draws with `γ_B > μ`.
    pub bob_success: u64,
    /// Draws with `γ_E > 2^{R_e} - 1`.
    pub eve_leak: u64,
}

impl OutageTally {
    pub fn merge(self, other: OutageTally) -> OutageTally {
        OutageTally {
            samples: self.samples + other.samples,
            bob_success: self.bob_success + other.bob_success,
            eve_leak: self.eve_leak + other.eve_leak,
        }
    }

    pub fn p_success(&self) -> f64 {
        self.bob_success as f64 / self.samples as f64
    }

    pub fn p_secrecy_outage(&self) -> f64 {
        self.eve_leak as f64 / self.samples as f64
    }
}

/// Thresholds that turn an SNR pair into success and leakage events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventThresholds {
    pub mu: f64,
    /// `2^{R_e} - 1`.
    pub leak: f64,
}

impl EventThresholds {
    pub fn new(mu: f64, r_e: f64) -> Result<Self> {
        if !(mu >= 0.0) {
            return Err(Error::domain("threshold mu", mu));
        }
        if !(r_e > 0.0) {
            return Err(Error::domain("protection rate R_e", r_e));
        }
        Ok(EventThresholds { mu, leak: crate::secrecy::reliability_threshold(r_e) })
    }
}

/// Counts events over block `block` of the `seed` stream family.
pub fn tally_block(
    cfg: &AntennaConfig,
    lb: &LinkBudget,
    th: EventThresholds,
    seed: u64,
    block: u64,
    len: usize,
) -> OutageTally {
    let mut r = rng::stream(seed, block);
    let mut t = OutageTally { samples: len as u64, ..Default::default() };
    for _ in 0..len {
        let s = channel::sample_joint_snr(cfg, lb, &mut r);
        t.bob_success += u64::from(s.gamma_b > th.mu);
        t.eve_leak += u64::from(s.gamma_e > th.leak);
    }
    t
}

/// Sequential tally over `samples` draws.
pub fn tally(cfg: &AntennaConfig, lb: &LinkBudget, th: EventThresholds, samples: usize, seed: u64) -> OutageTally {
    rng::blocks(samples)
        .map(|(b, len)| tally_block(cfg, lb, th, seed, b, len))
        .fold(OutageTally::default(), OutageTally::merge)
}

/// Raw SNR draws of one block, `(γ_B, γ_E)` columns.
pub fn sample_block(cfg: &AntennaConfig, lb: &LinkBudget, seed: u64, block: u64, len: usize) -> (Vec<f64>, Vec<f64>) {
    let mut r = rng::stream(seed, block);
    (0..len)
        .map(|_| {
            let s = channel::sample_joint_snr(cfg, lb, &mut r);
            (s.gamma_b, s.gamma_e)
        })
        .unzip()
}

/// Kolmogorov–Smirnov distance between the empirical CDF of `samples` and
/// `cdf`. Sorts `samples` in place.
pub fn ks_distance<F>(samples: &mut [f64], mut cdf: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if samples.is_empty() {
        return Err(Error::Contract("KS distance needs at least one sample"));
    }
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x)?;
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}
