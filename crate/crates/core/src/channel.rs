//! SNR laws of the legitimate (TAS + MRC) and eavesdropper (MRC) links.
//!
//! With `y = γ / γ̄`, Bob's post-combining SNR under best-antenna selection has
//! CDF `P(N_B, y)^{N_A}` while Eve, whose channel is independent of the
//! selection, sees a plain `Gamma(N_E, γ̄_E)` law.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::specfun::{self, GammaShape};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AntennaConfig {
    n_a: u32,
    n_b: u32,
    n_e: u32,
}

impl AntennaConfig {
    pub fn new(n_a: u32, n_b: u32, n_e: u32) -> Result<Self> {
        if n_a == 0 || n_b == 0 || n_e == 0 {
            return Err(Error::Contract("antenna counts must be at least 1"));
        }
        Ok(AntennaConfig { n_a, n_b, n_e })
    }

    /// Transmit antennas at Alice.
    pub fn n_a(&self) -> u32 {
        self.n_a
    }

    /// Receive antennas at Bob.
    pub fn n_b(&self) -> u32 {
        self.n_b
    }

    /// Antennas at Eve.
    pub fn n_e(&self) -> u32 {
        self.n_e
    }

    pub(crate) fn shape_b(&self) -> GammaShape {
        GammaShape::from_count(self.n_b)
    }

    pub(crate) fn shape_e(&self) -> GammaShape {
        GammaShape::from_count(self.n_e)
    }
}

impl core::fmt::Display for AntennaConfig {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}x{}x{}", self.n_a, self.n_b, self.n_e)
    }
}

impl core::str::FromStr for AntennaConfig {
    type Err = Error;

    /// Parses `NAxNBxNE`, e.g. `4x2x1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.trim().split(['x', 'X']);
        let mut next = || -> Result<u32> {
            it.next()
                .and_then(|t| t.trim().parse().ok())
                .ok_or(Error::Contract("antenna configuration must look like NAxNBxNE"))
        };
        let (a, b, e) = (next()?, next()?, next()?);
        if it.next().is_some() {
            return Err(Error::Contract("antenna configuration must look like NAxNBxNE"));
        }
        AntennaConfig::new(a, b, e)
    }
}

/// Average per-antenna SNRs, linear scale.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LinkBudget {
    gamma_bar_b: f64,
    gamma_bar_e: f64,
}

impl LinkBudget {
    pub fn new(gamma_bar_b: f64, gamma_bar_e: f64) -> Result<Self> {
        if !(gamma_bar_b > 0.0 && gamma_bar_b.is_finite()) {
            return Err(Error::domain("legitimate average SNR", gamma_bar_b));
        }
        if !(gamma_bar_e > 0.0 && gamma_bar_e.is_finite()) {
            return Err(Error::domain("eavesdropper average SNR", gamma_bar_e));
        }
        Ok(LinkBudget { gamma_bar_b, gamma_bar_e })
    }

    pub fn from_db(snr_b_db: f64, snr_e_db: f64) -> Result<Self> {
        LinkBudget::new(crate::db_to_linear(snr_b_db), crate::db_to_linear(snr_e_db))
    }

    pub fn gamma_bar_b(&self) -> f64 {
        self.gamma_bar_b
    }

    pub fn gamma_bar_e(&self) -> f64 {
        self.gamma_bar_e
    }

    /// Relative gain `γ̄_B / γ̄_E`.
    pub fn rho(&self) -> f64 {
        self.gamma_bar_b / self.gamma_bar_e
    }

    pub fn with_gamma_bar_b(self, gamma_bar_b: f64) -> Result<Self> {
        LinkBudget::new(gamma_bar_b, self.gamma_bar_e)
    }
}

/// One joint fading realization after antenna selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrSamplePair {
    pub gamma_b: f64,
    pub gamma_e: f64,
}

fn check_snr(gamma: f64) -> Result<()> {
    if gamma >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain("SNR", gamma))
    }
}

pub fn legit_snr_cdf(gamma: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    check_snr(gamma)?;
    let p = specfun::reg_lower_gamma(cfg.shape_b(), gamma / lb.gamma_bar_b)?;
    Ok(libm::pow(p, cfg.n_a as f64))
}

pub fn legit_snr_pdf(gamma: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    check_snr(gamma)?;
    let y = gamma / lb.gamma_bar_b;
    let p = specfun::reg_lower_gamma(cfg.shape_b(), y)?;
    let n_a = cfg.n_a as f64;
    let density = specfun::gamma_density(cfg.n_b as f64, y) / lb.gamma_bar_b;
    Ok(n_a * libm::pow(p, n_a - 1.0) * density)
}

pub fn eve_snr_cdf(gamma: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    check_snr(gamma)?;
    specfun::reg_lower_gamma(cfg.shape_e(), gamma / lb.gamma_bar_e)
}

pub fn eve_snr_pdf(gamma: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    check_snr(gamma)?;
    Ok(specfun::gamma_density(cfg.n_e as f64, gamma / lb.gamma_bar_e) / lb.gamma_bar_e)
}

/// Squared norm of `len` i.i.d. unit-variance circularly-symmetric complex
/// Gaussian coefficients.
fn complex_gaussian_energy<R: Rng + ?Sized>(len: u32, rng: &mut R) -> f64 {
    let mut energy = 0.0;
    for _ in 0..len {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        // Each quadrature has variance 1/2.
        energy += 0.5 * (re * re + im * im);
    }
    energy
}

/// Draws one fading realization and applies transmit antenna selection.
///
/// Rows are drawn in antenna order, Bob's coefficients first then Eve's. The
/// selected antenna maximizes Bob's row energy; ties keep the lowest index.
pub fn sample_joint_snr<R: Rng + ?Sized>(cfg: &AntennaConfig, lb: &LinkBudget, rng: &mut R) -> SnrSamplePair {
    let mut best_b = f64::NEG_INFINITY;
    let mut best_e = 0.0;
    for _ in 0..cfg.n_a {
        let row_b = complex_gaussian_energy(cfg.n_b, rng);
        let row_e = complex_gaussian_energy(cfg.n_e, rng);
        if row_b > best_b {
            best_b = row_b;
            best_e = row_e;
        }
    }
    SnrSamplePair { gamma_b: lb.gamma_bar_b * best_b, gamma_e: lb.gamma_bar_e * best_e }
}

/// Bits needed to feed back the selected antenna index, `⌈log₂ N_A⌉`.
pub fn feedback_bits(cfg: &AntennaConfig) -> u32 {
    u32::BITS - (cfg.n_a - 1).leading_zeros()
}
