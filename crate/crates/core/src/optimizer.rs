//! Secure-throughput maximization over the transmission rate.
//!
//! With `p_so` pinned to `ε` through the protection rate `R_e`, the problem
//! collapses to one dimension:
//!
//! ```text
//! maximize  T_s(R_b) = (R_b - R_e) (1 - P(N_B, (2^{R_b} - 1)/γ̄_B)^{N_A})
//! over      R_e < R_b ≤ R_b^max
//! ```
//!
//! `T_s` is concave there, so the maximizer is the root of
//! `dT_s/dR_b` when it falls inside the interval and the QoS ceiling
//! `R_b^max` otherwise. The root is found by bisection.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::channel::{AntennaConfig, LinkBudget};
use crate::roots::{self, Tolerance};
use crate::secrecy::{self, Feasibility, SecurityConstraints};
use crate::specfun;
use crate::{Error, Result};

pub use crate::secrecy::RbBound;

/// Offset above `R_e` where the search bracket starts.
const BRACKET_OFFSET: f64 = 1e-9;

/// What determined the returned transmission rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Binding {
    /// Stationary point of `T_s` inside `(R_e, R_b^max)`.
    Interior,
    /// `T_s` still increasing at the QoS ceiling.
    QosCeiling,
    /// No positive secrecy rate meets both constraints.
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ThroughputSolution {
    pub r_b_star: f64,
    pub r_s_star: f64,
    pub r_e: f64,
    pub mu_star: f64,
    pub t_s_star: f64,
    pub achieved_p_suc: f64,
    pub achieved_p_so: f64,
    pub binding: Binding,
    /// Stationarity residual at `r_b_star` (zero for an exact interior root).
    pub residual: f64,
    /// QoS ceiling used for the search.
    pub r_b_max: f64,
    pub bound: RbBound,
    pub iterations: usize,
}

impl ThroughputSolution {
    pub fn is_feasible(&self) -> bool {
        self.binding != Binding::Infeasible
    }
}

/// `T_s(R_b) = (R_b - R_e) · p_suc(2^{R_b} - 1)`.
pub fn throughput_at(r_b: f64, r_e: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    if !(r_b >= r_e) {
        return Err(Error::Contract("throughput needs R_b >= R_e"));
    }
    Ok((r_b - r_e) * secrecy::p_success(secrecy::reliability_threshold(r_b), cfg, lb)?)
}

/// `1 - P(N_B, y)^{N_A} - β y^{N_B-1} e^{-y} P(N_B, y)^{N_A-1}` with
/// `y = (2^{R_b} - 1)/γ̄_B` and
/// `β = ln 2 · N_A (R_b - R_e) 2^{R_b} / (Γ(N_B) γ̄_B)`.
///
/// This is exactly `dT_s/dR_b`: positive while throughput is still rising.
pub fn stationarity_residual(r_b: f64, r_e: f64, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<f64> {
    if !(r_b > r_e) {
        return Err(Error::Contract("stationarity residual needs R_b > R_e"));
    }
    let g = lb.gamma_bar_b();
    let y = secrecy::reliability_threshold(r_b) / g;
    let n_a = cfg.n_a() as f64;
    let p = specfun::reg_lower_gamma(cfg.shape_b(), y)?;
    let lhs = 1.0 - libm::pow(p, n_a);
    // β / Γ(N_B) folded into the unit-scale gamma density.
    let scale = LN_2 * n_a * (r_b - r_e) * libm::exp2(r_b) / g;
    let rhs = scale * specfun::gamma_density(cfg.n_b() as f64, y) * libm::pow(p, n_a - 1.0);
    Ok(lhs - rhs)
}

/// Maximizes secure throughput with the exact QoS ceiling.
pub fn optimize(c: &SecurityConstraints, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<ThroughputSolution> {
    optimize_with(RbBound::Exact, c, cfg, lb)
}

pub fn optimize_with(
    bound: RbBound,
    c: &SecurityConstraints,
    cfg: &AntennaConfig,
    lb: &LinkBudget,
) -> Result<ThroughputSolution> {
    let feas = secrecy::feasibility(bound, c, cfg, lb)?;
    if !feas.feasible {
        return Ok(infeasible(&feas));
    }
    let (r_e, r_b_max) = (feas.r_e, feas.r_b_max);
    let lo = r_e + BRACKET_OFFSET;
    let residual = |r_b: f64| stationarity_residual(r_b, r_e, cfg, lb);

    let (r_b_star, binding, iterations) = if lo >= r_b_max || residual(r_b_max)? >= 0.0 {
        (r_b_max, Binding::QosCeiling, 0)
    } else if residual(lo)? <= 0.0 {
        (lo, Binding::Interior, 0)
    } else {
        // Propagate evaluation failures out of the closure.
        let mut failure = None;
        let root = roots::bisect(
            |x| match residual(x) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            lo,
            r_b_max,
            Tolerance { x_abs: 1e-13, max_iter: 400 },
        );
        if let Some(e) = failure {
            return Err(e);
        }
        let root = root?;
        (root.x, Binding::Interior, root.iterations)
    };

    let mu_star = secrecy::reliability_threshold(r_b_star);
    let achieved_p_suc = secrecy::p_success(mu_star, cfg, lb)?;
    let r_s_star = r_b_star - r_e;
    Ok(ThroughputSolution {
        r_b_star,
        r_s_star,
        r_e,
        mu_star,
        t_s_star: r_s_star * achieved_p_suc,
        achieved_p_suc,
        achieved_p_so: secrecy::p_secrecy_outage(r_b_star, r_s_star, cfg, lb)?,
        binding,
        residual: residual(r_b_star)?,
        r_b_max,
        bound,
        iterations,
    })
}

fn infeasible(feas: &Feasibility) -> ThroughputSolution {
    ThroughputSolution {
        r_b_star: 0.0,
        r_s_star: 0.0,
        r_e: feas.r_e,
        mu_star: 0.0,
        t_s_star: 0.0,
        achieved_p_suc: 0.0,
        achieved_p_so: 0.0,
        binding: Binding::Infeasible,
        residual: 0.0,
        r_b_max: feas.r_b_max,
        bound: feas.bound,
        iterations: 0,
    }
}

/// Parameter varied across a sweep, together with its grid.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepAxis {
    Sigma(Vec<f64>),
    Epsilon(Vec<f64>),
    /// Linear average SNR of the legitimate link.
    GammaBarB(Vec<f64>),
    Configs(Vec<AntennaConfig>),
}

impl SweepAxis {
    pub fn len(&self) -> usize {
        match self {
            SweepAxis::Sigma(g) | SweepAxis::Epsilon(g) | SweepAxis::GammaBarB(g) => g.len(),
            SweepAxis::Configs(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Sigma(_) => "sigma",
            SweepAxis::Epsilon(_) => "epsilon",
            SweepAxis::GammaBarB(_) => "gamma_bar_b",
            SweepAxis::Configs(_) => "config",
        }
    }
}

/// One sweep grid point with its scenario and outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub cfg: AntennaConfig,
    pub lb: LinkBudget,
    pub sigma: f64,
    pub epsilon: f64,
    /// Infeasibility is reported inside the solution; only invalid grid
    /// values (e.g. σ = 1) end up as errors.
    pub outcome: Result<ThroughputSolution>,
}

/// Solves grid point `index` of `axis`; everything not on the axis comes
/// from the base scenario.
pub fn sweep_row(
    axis: &SweepAxis,
    index: usize,
    bound: RbBound,
    base: &SecurityConstraints,
    cfg: &AntennaConfig,
    lb: &LinkBudget,
) -> SweepRow {
    let (mut sigma, mut epsilon, mut cfg, mut lb_row) = (base.sigma(), base.epsilon(), *cfg, Ok(*lb));
    match axis {
        SweepAxis::Sigma(g) => sigma = g[index],
        SweepAxis::Epsilon(g) => epsilon = g[index],
        SweepAxis::GammaBarB(g) => lb_row = lb.with_gamma_bar_b(g[index]),
        SweepAxis::Configs(g) => cfg = g[index],
    }
    let lb_used = *lb_row.as_ref().unwrap_or(lb);
    let outcome = lb_row.and_then(|l| {
        let c = SecurityConstraints::new(sigma, epsilon)?;
        optimize_with(bound, &c, &cfg, &l)
    });
    SweepRow { index, cfg, lb: lb_used, sigma, epsilon, outcome }
}

/// Solves every grid point in order. Fails only on an empty grid.
pub fn sweep(
    axis: &SweepAxis,
    bound: RbBound,
    base: &SecurityConstraints,
    cfg: &AntennaConfig,
    lb: &LinkBudget,
) -> Result<Vec<SweepRow>> {
    if axis.is_empty() {
        return Err(Error::Contract("sweep grid must not be empty"));
    }
    Ok((0..axis.len()).map(|i| sweep_row(axis, i, bound, base, cfg, lb)).collect())
}
