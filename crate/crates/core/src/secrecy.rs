//! Reliability and secrecy metrics for fixed-rate wiretap codes.
//!
//! A wiretap code is described by its transmission rate `R_b` and its
//! confidential rate `R_s`; the difference `R_e = R_b - R_s` is spent on
//! confusing the eavesdropper. Bob decodes whenever his SNR clears the
//! on-off threshold `μ ≥ 2^{R_b} - 1`, and a secrecy outage happens whenever
//! Eve's capacity exceeds `R_e`.

use core::f64::consts::LN_2;

use crate::channel::{self, AntennaConfig, LinkBudget};
use crate::specfun;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RatePolicy {
    r_b: f64,
    r_s: f64,
    mu: f64,
}

impl RatePolicy {
    pub fn new(r_b: f64, r_s: f64, mu: f64) -> Result<Self> {
        if !(r_b > 0.0 && r_b.is_finite()) {
            return Err(Error::domain("transmission rate R_b", r_b));
        }
        if !(r_s >= 0.0) {
            return Err(Error::domain("secrecy rate R_s", r_s));
        }
        if r_s >= r_b {
            return Err(Error::Contract("secrecy rate R_s must be below transmission rate R_b"));
        }
        if !(mu >= reliability_threshold(r_b)) {
            return Err(Error::Contract("threshold mu must be at least 2^R_b - 1"));
        }
        Ok(RatePolicy { r_b, r_s, mu })
    }

    /// Policy with the smallest admissible threshold `μ = 2^{R_b} - 1`.
    pub fn with_optimal_threshold(r_b: f64, r_s: f64) -> Result<Self> {
        RatePolicy::new(r_b, r_s, reliability_threshold(r_b))
    }

    pub fn r_b(&self) -> f64 {
        self.r_b
    }

    pub fn r_s(&self) -> f64 {
        self.r_s
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Rate spent on protection against leakage.
    pub fn r_e(&self) -> f64 {
        self.r_b - self.r_s
    }
}

/// QoS floor `σ` on the success probability and ceiling `ε` on the secrecy
/// outage probability. Both lie strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SecurityConstraints {
    sigma: f64,
    epsilon: f64,
}

impl SecurityConstraints {
    pub fn new(sigma: f64, epsilon: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::domain("QoS floor sigma", sigma));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::domain("secrecy outage ceiling epsilon", epsilon));
        }
        Ok(SecurityConstraints { sigma, epsilon })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Which rate ceiling enforces the QoS floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum RbBound {
    /// Inverse incomplete gamma; meets `p_suc = σ` exactly.
    #[default]
    Exact,
    /// Exponential-power approximation. Can exceed the exact ceiling for
    /// `N_B ≥ 2`.
    ClosedForm,
}

/// Smallest on-off threshold that still lets Bob decode at rate `r_b`.
pub fn reliability_threshold(r_b: f64) -> f64 {
    libm::expm1(r_b * LN_2)
}

fn log2_1p(x: f64) -> f64 {
    libm::log1p(x) / LN_2
}

/// `p_suc = Pr[γ_B > μ] = 1 - P(N_B, μ/γ̄_B)^{N_A}`.
pub fn p_success(mu: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    if !(mu >= 0.0) {
        return Err(Error::domain("threshold mu", mu));
    }
    Ok(1.0 - channel::legit_snr_cdf(mu, cfg, lb)?)
}

/// `p_so = Pr[γ_E > 2^{R_b - R_s} - 1]`.
pub fn p_secrecy_outage(r_b: f64, r_s: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    if !(r_s < r_b) {
        return Err(Error::Contract("secrecy outage needs R_s < R_b"));
    }
    leakage_probability(r_b - r_s, cfg, lb)
}

/// Probability that Eve's capacity exceeds the protection rate `r_e`.
pub(crate) fn leakage_probability(r_e: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    let threshold = reliability_threshold(r_e);
    specfun::reg_upper_gamma(cfg.shape_e(), threshold / lb.gamma_bar_e())
}

/// Secure throughput `T_s = R_s · p_suc(μ)`.
pub fn secure_throughput(policy: &RatePolicy, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    throughput(policy.r_s, policy.mu, cfg, lb)
}

/// `R_s · p_suc(μ)` without the [`RatePolicy`] contract, e.g. for `μ` below the
/// reliability threshold.
pub fn throughput(r_s: f64, mu: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    if !(r_s >= 0.0) {
        return Err(Error::domain("secrecy rate R_s", r_s));
    }
    Ok(r_s * p_success(mu, cfg, lb)?)
}

/// Largest `R_b` whose optimal threshold keeps `p_suc ≥ σ`:
/// `log₂(1 + γ̄_B P⁻¹(N_B, (1-σ)^{1/N_A}))`.
///
/// Returns `0` when the threshold underflows, i.e. no positive rate meets σ.
pub fn max_rb_exact(c: &SecurityConstraints, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    let target = libm::exp(libm::log1p(-c.sigma) / cfg.n_a() as f64);
    let y = specfun::inv_reg_lower_gamma(cfg.shape_b(), target)?;
    Ok(log2_1p(lb.gamma_bar_b() * y))
}

/// Exponential-power approximation of the QoS rate ceiling:
/// `log₂(1 + γ̄_B α ln(1/ξ))` with `α = Γ(N_B+1)^{1/N_B}` and
/// `ξ = 1 - (1-σ)^{1/(N_A N_B)}`.
pub fn max_rb_closed_form(c: &SecurityConstraints, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    let alpha = specfun::gamma_bound_alpha(cfg.shape_b());
    let diversity = (cfg.n_a() as f64) * (cfg.n_b() as f64);
    let xi = -libm::expm1(libm::log1p(-c.sigma) / diversity);
    if !(xi > 0.0) {
        return Ok(0.0);
    }
    let y = -libm::log(xi);
    Ok(log2_1p(lb.gamma_bar_b() * alpha * y))
}

/// QoS rate ceiling along the selected path.
pub fn max_rb(bound: RbBound, c: &SecurityConstraints, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    match bound {
        RbBound::Exact => max_rb_exact(c, cfg, lb),
        RbBound::ClosedForm => max_rb_closed_form(c, cfg, lb),
    }
}

/// Protection rate that pins `p_so = ε`:
/// `R_e = log₂(1 + γ̄_E P⁻¹(N_E, 1 - ε))`. The confidential rate for a given
/// `R_b` is then `R_b - R_e`.
pub fn min_re_for_secrecy(c: &SecurityConstraints, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    let z = specfun::inv_reg_lower_gamma(cfg.shape_e(), 1.0 - c.epsilon)?;
    Ok(log2_1p(lb.gamma_bar_e() * z))
}

/// Supremum of the QoS levels compatible with a positive secrecy rate under
/// leakage ceiling `ε`, in the exponential-power form
/// `1 - (1 - exp(-P⁻¹(N_E, 1-ε) / (ρ α)))^{N_A N_B}`.
pub fn tradeoff_sigma_bound(epsilon: f64, cfg: &AntennaConfig, rho: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain("secrecy outage ceiling epsilon", epsilon));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::domain("SNR ratio rho", rho));
    }
    let z = specfun::inv_reg_lower_gamma(cfg.shape_e(), 1.0 - epsilon)?;
    let alpha = specfun::gamma_bound_alpha(cfg.shape_b());
    let diversity = (cfg.n_a() as f64) * (cfg.n_b() as f64);
    let base = -libm::expm1(-z / (rho * alpha));
    Ok(1.0 - libm::pow(base, diversity))
}

/// Same frontier evaluated through the exact success probability:
/// `1 - P(N_B, P⁻¹(N_E, 1-ε) / ρ)^{N_A}`.
pub fn tradeoff_sigma_bound_exact(epsilon: f64, cfg: &AntennaConfig, rho: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain("secrecy outage ceiling epsilon", epsilon));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::domain("SNR ratio rho", rho));
    }
    let z = specfun::inv_reg_lower_gamma(cfg.shape_e(), 1.0 - epsilon)?;
    let p = specfun::reg_lower_gamma(cfg.shape_b(), z / rho)?;
    Ok(1.0 - libm::pow(p, cfg.n_a() as f64))
}

/// Feasibility verdict with its margins.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Feasibility {
    pub feasible: bool,
    pub bound: RbBound,
    /// Protection rate `R_e` required by `ε`.
    pub r_e: f64,
    /// QoS rate ceiling along `bound`.
    pub r_b_max: f64,
    /// `r_b_max - r_e`; positive when feasible.
    pub rate_margin: f64,
    /// Largest σ compatible with `ε` along `bound`.
    pub sigma_ceiling: f64,
    /// `sigma_ceiling - σ`; positive when feasible.
    pub sigma_margin: f64,
}

pub fn is_feasible(c: &SecurityConstraints, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<Feasibility> {
    feasibility(RbBound::Exact, c, cfg, lb)
}

pub fn feasibility(
    bound: RbBound,
    c: &SecurityConstraints,
    cfg: &AntennaConfig,
    lb: &LinkBudget,
) -> Result<Feasibility> {
    let r_e = min_re_for_secrecy(c, cfg, lb)?;
    let r_b_max = max_rb(bound, c, cfg, lb)?;
    let sigma_ceiling = match bound {
        RbBound::Exact => tradeoff_sigma_bound_exact(c.epsilon, cfg, lb.rho())?,
        RbBound::ClosedForm => tradeoff_sigma_bound(c.epsilon, cfg, lb.rho())?,
    };
    Ok(Feasibility {
        feasible: r_e < r_b_max,
        bound,
        r_e,
        r_b_max,
        rate_margin: r_b_max - r_e,
        sigma_ceiling,
        sigma_margin: sigma_ceiling - c.sigma,
    })
}
