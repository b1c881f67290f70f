//! Rayon-backed versions of the core's block-structured jobs.
//!
//! Each job is cut into the same blocks the sequential core uses and results
//! are merged in block order, so output matches the core bit for bit.

use rayon::prelude::*;
use tas_secrecy_core::montecarlo::{self, EventThresholds, OutageTally};
use tas_secrecy_core::optimizer::{self, RbBound, SweepAxis, SweepRow};
use tas_secrecy_core::smartgrid::{self, ExperimentReport, RoleStats};
use tas_secrecy_core::{rng, AntennaConfig, Error, LinkBudget, LoadProfile, Role, SecurityConstraints};

type CoreResult<T> = tas_secrecy_core::Result<T>;

pub fn sweep(
    axis: &SweepAxis,
    bound: RbBound,
    base: &SecurityConstraints,
    cfg: &AntennaConfig,
    lb: &LinkBudget,
) -> CoreResult<Vec<SweepRow>> {
    if axis.is_empty() {
        return Err(Error::Contract("sweep grid must not be empty"));
    }
    Ok((0..axis.len()).into_par_iter().map(|i| optimizer::sweep_row(axis, i, bound, base, cfg, lb)).collect())
}

pub fn tally(cfg: &AntennaConfig, lb: &LinkBudget, th: EventThresholds, samples: usize, seed: u64) -> OutageTally {
    let blocks: Vec<_> = rng::blocks(samples).collect();
    blocks
        .par_iter()
        .map(|&(b, len)| montecarlo::tally_block(cfg, lb, th, seed, b, len))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(OutageTally::default(), OutageTally::merge)
}

/// `(γ_B, γ_E)` draws in stream order.
pub fn sample_snrs(cfg: &AntennaConfig, lb: &LinkBudget, samples: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let blocks: Vec<_> = rng::blocks(samples).collect();
    let parts: Vec<(Vec<f64>, Vec<f64>)> =
        blocks.par_iter().map(|&(b, len)| montecarlo::sample_block(cfg, lb, seed, b, len)).collect();
    let mut gb = Vec::with_capacity(samples);
    let mut ge = Vec::with_capacity(samples);
    for (b, e) in parts {
        gb.extend(b);
        ge.extend(e);
    }
    (gb, ge)
}

pub fn role_trial_values(
    profile: &LoadProfile,
    role: Role,
    p_receive: f64,
    trials: usize,
    seed: u64,
) -> CoreResult<Vec<f64>> {
    let blocks: Vec<_> = rng::blocks(trials).collect();
    let parts = blocks
        .par_iter()
        .map(|&(b, len)| smartgrid::trial_block(profile, role, p_receive, seed, b, len))
        .collect::<CoreResult<Vec<_>>>()?;
    Ok(parts.concat())
}

/// Experiment outcome together with the per-trial NRMSD of each role.
pub struct Experiment {
    pub report: ExperimentReport,
    pub bob_values: Vec<f64>,
    pub eve_values: Vec<f64>,
}

pub fn run_experiment(
    profile: &LoadProfile,
    cfg: &AntennaConfig,
    lb: &LinkBudget,
    constraints: &SecurityConstraints,
    trials: usize,
    seed: u64,
) -> CoreResult<Experiment> {
    if trials == 0 {
        return Err(Error::Contract("at least one trial is required"));
    }
    let solution = smartgrid::experiment_solution(cfg, lb, constraints)?;
    let stats = |role, p| -> CoreResult<(RoleStats, Vec<f64>)> {
        let v = role_trial_values(profile, role, p, trials, seed)?;
        Ok((smartgrid::summarize(role, p, &v)?, v))
    };
    let (bob, bob_values) = stats(Role::Bob, solution.achieved_p_suc)?;
    let (eve, eve_values) = stats(Role::Eve, solution.achieved_p_so)?;
    Ok(Experiment { report: ExperimentReport { solution, bob, eve }, bob_values, eve_values })
}
