//! Load-profile telemetry over the wiretap link.
//!
//! A meter sends one average-power sample per period `τ`. Each sample reaches
//! Bob with probability `p_suc` and leaks to Eve with probability `p_so`;
//! both rebuild the curve by linear interpolation and are scored by RMSD
//! normalized with the mean of the true series.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::channel::{AntennaConfig, LinkBudget};
use crate::optimizer::{self, ThroughputSolution};
use crate::rng;
use crate::secrecy::SecurityConstraints;
use crate::{Error, Result};

/// Samples per day at the default 15-minute period.
pub const DAILY_SAMPLES: usize = 96;
pub const DEFAULT_TAU_HOURS: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LoadProfile {
    tau_hours: f64,
    samples: Vec<f64>,
    label: String,
}

impl LoadProfile {
    pub fn new(label: impl Into<String>, tau_hours: f64, samples: Vec<f64>) -> Result<Self> {
        if !(tau_hours > 0.0 && tau_hours.is_finite()) {
            return Err(Error::domain("sampling period", tau_hours));
        }
        if samples.len() < 2 {
            return Err(Error::Contract("a load profile needs at least two samples"));
        }
        if let Some(&bad) = samples.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::domain("power sample", bad));
        }
        Ok(LoadProfile { tau_hours, samples, label: label.into() })
    }

    pub fn tau_hours(&self) -> f64 {
        self.tau_hours
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        mean(&self.samples)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasurePattern {
    pub received: Vec<bool>,
}

impl ErasurePattern {
    pub fn received_count(&self) -> usize {
        self.received.iter().filter(|r| **r).count()
    }
}

impl From<Vec<bool>> for ErasurePattern {
    fn from(received: Vec<bool>) -> Self {
        ErasurePattern { received }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Role {
    Bob,
    Eve,
}

impl Role {
    fn stream_tag(self) -> u32 {
        match self {
            Role::Bob => 1,
            Role::Eve => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport {
    pub y: Vec<f64>,
    pub rmsd: f64,
    pub nrmsd: f64,
    pub received_count: usize,
    pub receiver_role: Role,
}

impl ReconstructionReport {
    pub fn evaluate(profile: &LoadProfile, pattern: &ErasurePattern, role: Role) -> Result<Self> {
        let y = reconstruct(profile, pattern)?;
        let rmsd = rmsd(&y, profile.samples())?;
        let nrmsd = nrmsd(&y, profile.samples())?;
        Ok(ReconstructionReport { y, rmsd, nrmsd, received_count: pattern.received_count(), receiver_role: role })
    }
}

/// I.i.d. Bernoulli(`p_receive`) reception mask of length `n`.
pub fn simulate_reception<R: Rng + ?Sized>(n: usize, p_receive: f64, rng: &mut R) -> Result<ErasurePattern> {
    if !(0.0..=1.0).contains(&p_receive) {
        return Err(Error::domain("receive probability", p_receive));
    }
    Ok(ErasurePattern { received: (0..n).map(|_| rng.random_bool(p_receive)).collect() })
}

/// Rebuilds the series from the received samples.
///
/// Interior gaps are filled linearly between the nearest received neighbours,
/// leading and trailing gaps hold the nearest received value, and a pattern
/// with nothing received gives all zeros.
pub fn reconstruct(profile: &LoadProfile, pattern: &ErasurePattern) -> Result<Vec<f64>> {
    let x = profile.samples();
    if pattern.received.len() != x.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: pattern.received.len() });
    }
    let kept: Vec<usize> = (0..x.len()).filter(|&k| pattern.received[k]).collect();
    let (Some(&first), Some(&last)) = (kept.first(), kept.last()) else {
        return Ok(vec![0.0; x.len()]);
    };
    let mut y = vec![0.0; x.len()];
    y[..first].fill(x[first]);
    y[last..].fill(x[last]);
    for w in kept.windows(2) {
        let (i, j) = (w[0], w[1]);
        let span = (j - i) as f64;
        for (k, yk) in y[i..j].iter_mut().enumerate() {
            *yk = x[i] + (x[j] - x[i]) * (k as f64 / span);
        }
    }
    for &k in &kept {
        y[k] = x[k];
    }
    Ok(y)
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Root mean square deviation between a reconstruction `y` and the truth `x`.
pub fn rmsd(y: &[f64], x: &[f64]) -> Result<f64> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    if x.is_empty() {
        return Err(Error::Contract("RMSD needs at least one sample"));
    }
    let ss: f64 = y.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(libm::sqrt(ss / x.len() as f64))
}

/// RMSD divided by the mean of the true series `x`.
pub fn nrmsd(y: &[f64], x: &[f64]) -> Result<f64> {
    let r = rmsd(y, x)?;
    let m = mean(x);
    if !(m > 0.0) {
        return Err(Error::ZeroMean);
    }
    Ok(r / m)
}

/// Summary of repeated erasure/reconstruction rounds for one receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RoleStats {
    pub role: Role,
    pub p_receive: f64,
    pub trials: usize,
    pub mean_nrmsd: f64,
    /// Sample standard deviation (zero for a single trial).
    pub std_nrmsd: f64,
}

/// NRMSD of each trial in one block. Block `block` of `role` always uses the
/// same stream, so blocks can run on any worker.
pub fn trial_block(
    profile: &LoadProfile,
    role: Role,
    p_receive: f64,
    seed: u64,
    block: u64,
    len: usize,
) -> Result<Vec<f64>> {
    let mut r = rng::tagged_stream(seed, role.stream_tag(), block);
    (0..len)
        .map(|_| {
            let pattern = simulate_reception(profile.len(), p_receive, &mut r)?;
            let y = reconstruct(profile, &pattern)?;
            nrmsd(&y, profile.samples())
        })
        .collect()
}

/// Reduces per-trial NRMSD values (in trial order) to [`RoleStats`].
pub fn summarize(role: Role, p_receive: f64, values: &[f64]) -> Result<RoleStats> {
    if values.is_empty() {
        return Err(Error::Contract("at least one trial is required"));
    }
    let m = mean(values);
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64
    } else {
        0.0
    };
    Ok(RoleStats { role, p_receive, trials: values.len(), mean_nrmsd: m, std_nrmsd: libm::sqrt(var) })
}

/// Per-trial NRMSD values for `trials` rounds, in trial order.
pub fn role_trial_values(
    profile: &LoadProfile,
    role: Role,
    p_receive: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(trials);
    for (b, len) in rng::blocks(trials) {
        out.extend(trial_block(profile, role, p_receive, seed, b, len)?);
    }
    Ok(out)
}

pub fn role_trials(profile: &LoadProfile, role: Role, p_receive: f64, trials: usize, seed: u64) -> Result<RoleStats> {
    if trials == 0 {
        return Err(Error::Contract("at least one trial is required"));
    }
    let values = role_trial_values(profile, role, p_receive, trials, seed)?;
    summarize(role, p_receive, &values)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExperimentReport {
    pub solution: ThroughputSolution,
    pub bob: RoleStats,
    pub eve: RoleStats,
}

/// Optimizes the link, then replays the profile through Bob's success
/// probability and Eve's secrecy outage probability.
pub fn run_experiment(
    profile: &LoadProfile,
    cfg: &AntennaConfig,
    lb: &LinkBudget,
    constraints: &SecurityConstraints,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let solution = experiment_solution(cfg, lb, constraints)?;
    let bob = role_trials(profile, Role::Bob, solution.achieved_p_suc, trials, seed)?;
    let eve = role_trials(profile, Role::Eve, solution.achieved_p_so, trials, seed)?;
    Ok(ExperimentReport { solution, bob, eve })
}

/// Optimal operating point for the experiment; infeasibility is an error here.
pub fn experiment_solution(
    cfg: &AntennaConfig,
    lb: &LinkBudget,
    constraints: &SecurityConstraints,
) -> Result<ThroughputSolution> {
    let solution = optimizer::optimize(constraints, cfg, lb)?;
    if !solution.is_feasible() {
        return Err(Error::Infeasible { r_e: solution.r_e, r_b_max: solution.r_b_max });
    }
    // Probabilities can overshoot [0, 1] by rounding only.
    Ok(ThroughputSolution {
        achieved_p_suc: solution.achieved_p_suc.clamp(0.0, 1.0),
        achieved_p_so: solution.achieved_p_so.clamp(0.0, 1.0),
        ..solution
    })
}

/// Shapes of the synthetic households.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    /// Constant base load.
    Flat,
    /// Base load with a breakfast peak and a larger evening peak.
    MorningEveningPeaks,
    /// Base load with a single afternoon peak.
    AfternoonPeak,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::Flat => "flat",
            ProfileKind::MorningEveningPeaks => "morning-evening-peaks",
            ProfileKind::AfternoonPeak => "afternoon-peak",
        }
    }
}

impl core::str::FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "flat" => Ok(ProfileKind::Flat),
            "morning-evening-peaks" => Ok(ProfileKind::MorningEveningPeaks),
            "afternoon-peak" => Ok(ProfileKind::AfternoonPeak),
            _ => Err(Error::Contract("profile kind must be flat, morning-evening-peaks or afternoon-peak")),
        }
    }
}

fn bump(hour: f64, center: f64, width: f64) -> f64 {
    let d = (hour - center) / width;
    libm::exp(-0.5 * d * d)
}

/// One synthetic day at 15-minute resolution (96 samples, watts).
pub fn synth_profile<R: Rng + ?Sized>(kind: ProfileKind, rng: &mut R) -> LoadProfile {
    let samples = (0..DAILY_SAMPLES)
        .map(|n| {
            let hour = (n as f64 + 0.5) * DEFAULT_TAU_HOURS;
            let clean = match kind {
                ProfileKind::Flat => return 120.0,
                ProfileKind::MorningEveningPeaks => {
                    250.0 + 1800.0 * bump(hour, 7.5, 0.75) + 2400.0 * bump(hour, 19.5, 1.25)
                }
                ProfileKind::AfternoonPeak => 200.0 + 2600.0 * bump(hour, 15.0, 1.5),
            };
            // Appliance cycling noise, ±10 %.
            clean * (0.9 + 0.2 * rng.random::<f64>())
        })
        .collect();
    LoadProfile { tau_hours: DEFAULT_TAU_HOURS, samples, label: String::from(kind.name()) }
}

/// Averages `(seconds, watts)` rows into consecutive bins of `window_secs`
/// starting at the first timestamp. Timestamps must increase strictly and
/// every bin must hold at least one row.
pub fn bin_means(rows: &[(f64, f64)], window_secs: f64) -> Result<Vec<f64>> {
    if !(window_secs > 0.0 && window_secs.is_finite()) {
        return Err(Error::domain("averaging window", window_secs));
    }
    let Some(&(t0, _)) = rows.first() else {
        return Err(Error::Contract("no rows to average"));
    };
    let mut sums: Vec<(f64, usize)> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for &(t, w) in rows {
        if !(t > prev) {
            return Err(Error::Contract("timestamps must be strictly increasing"));
        }
        prev = t;
        let bin = libm::floor((t - t0) / window_secs) as usize;
        if sums.len() <= bin {
            sums.resize(bin + 1, (0.0, 0));
        }
        sums[bin].0 += w;
        sums[bin].1 += 1;
    }
    sums.into_iter()
        .map(|(s, c)| if c == 0 { Err(Error::Contract("averaging bin has no samples")) } else { Ok(s / c as f64) })
        .collect()
}
