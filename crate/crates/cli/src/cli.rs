//! Command-line grammar.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tas_secrecy_core::{AntennaConfig, LinkBudget, ProfileKind, RbBound, SecurityConstraints};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "tas-secrecy", version, about = "Secure throughput of transmit-antenna-selection wiretap links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Success probability, secrecy outage and secure throughput of one rate policy.
    Metrics(MetricsArgs),
    /// Maximize secure throughput under QoS and secrecy constraints.
    Optimize(OptimizeArgs),
    /// Reliability/security frontier over (epsilon, rho).
    Tradeoff(TradeoffArgs),
    /// Optimize along a parameter grid.
    Sweep(SweepArgs),
    /// Compare closed-form metrics with a seeded fading simulation.
    Validate(ValidateArgs),
    /// Replay a load profile through Bob's and Eve's erasure channels.
    Reconstruct(ReconstructArgs),
}

#[derive(Debug, Clone, Args)]
pub struct LinkArgs {
    /// Transmit antennas at Alice.
    #[arg(long, default_value_t = 1)]
    pub na: u32,
    /// Receive antennas at Bob.
    #[arg(long, default_value_t = 1)]
    pub nb: u32,
    /// Antennas at Eve.
    #[arg(long, default_value_t = 1)]
    pub ne: u32,
    /// Average SNR of the legitimate link, dB.
    #[arg(long = "snr-b-db", default_value_t = 10.0, allow_hyphen_values = true)]
    pub snr_b_db: f64,
    /// Average SNR at the eavesdropper, dB.
    #[arg(long = "snr-e-db", default_value_t = 0.0, allow_hyphen_values = true)]
    pub snr_e_db: f64,
}

impl LinkArgs {
    pub fn config(&self) -> Result<AntennaConfig> {
        Ok(AntennaConfig::new(self.na, self.nb, self.ne)?)
    }

    pub fn budget(&self) -> Result<LinkBudget> {
        Ok(LinkBudget::from_db(self.snr_b_db, self.snr_e_db)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConstraintArgs {
    /// Minimum success probability (QoS floor), in (0, 1).
    #[arg(long, default_value_t = 0.9)]
    pub sigma: f64,
    /// Maximum secrecy outage probability, in (0, 1).
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
}

impl ConstraintArgs {
    pub fn constraints(&self) -> Result<SecurityConstraints> {
        Ok(SecurityConstraints::new(self.sigma, self.epsilon)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Overwrite an existing output file.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum RbBoundArg {
    #[default]
    Exact,
    ClosedForm,
}

impl From<RbBoundArg> for RbBound {
    fn from(b: RbBoundArg) -> Self {
        match b {
            RbBoundArg::Exact => RbBound::Exact,
            RbBoundArg::ClosedForm => RbBound::ClosedForm,
        }
    }
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    /// Transmission rate R_b, bits/s/Hz.
    #[arg(long)]
    pub rb: f64,
    /// Confidential rate R_s, bits/s/Hz.
    #[arg(long)]
    pub rs: f64,
    /// On-off threshold (linear SNR); defaults to 2^R_b - 1.
    #[arg(long)]
    pub mu: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
    #[arg(long = "rb-bound", value_enum, default_value_t = RbBoundArg::Exact)]
    pub rb_bound: RbBoundArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TradeoffArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    /// Secrecy outage grid, `a,b,c` or `start:stop:step`.
    #[arg(long = "epsilon-grid", default_value = "0.01:0.30:0.01")]
    pub epsilon_grid: String,
    /// SNR ratio grid in dB, `a,b,c` or `start:stop:step`.
    #[arg(long = "rho-db-grid", default_value = "0:15:0.5", allow_hyphen_values = true)]
    pub rho_db_grid: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Sigma,
    Epsilon,
    /// Legitimate average SNR, grid in dB.
    SnrBDb,
    /// Antenna configurations, grid like `1x1x1,4x2x2`.
    Config,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
    #[arg(long, value_enum)]
    pub axis: AxisArg,
    /// Grid values, `a,b,c` or `start:stop:step` (configs: `NAxNBxNE,...`).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long = "rb-bound", value_enum, default_value_t = RbBoundArg::Exact)]
    pub rb_bound: RbBoundArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
    /// Transmission rate; with --rs, overrides the optimized operating point.
    #[arg(long, requires = "rs")]
    pub rb: Option<f64>,
    #[arg(long, requires = "rb")]
    pub rs: Option<f64>,
    #[arg(long, requires = "rb")]
    pub mu: Option<f64>,
    /// Number of joint fading draws.
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: usize,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Flat,
    MorningEveningPeaks,
    AfternoonPeak,
}

impl From<ProfileArg> for ProfileKind {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Flat => ProfileKind::Flat,
            ProfileArg::MorningEveningPeaks => ProfileKind::MorningEveningPeaks,
            ProfileArg::AfternoonPeak => ProfileKind::AfternoonPeak,
        }
    }
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
    /// Load profile CSV (`timestamp-or-index,watts`).
    #[arg(long, conflicts_with = "profile")]
    pub input: Option<PathBuf>,
    /// Synthetic household used when no --input is given.
    #[arg(long, value_enum, default_value_t = ProfileArg::MorningEveningPeaks)]
    pub profile: ProfileArg,
    /// Average high-rate input into bins of this many seconds.
    #[arg(long = "window-secs", requires = "input")]
    pub window_secs: Option<f64>,
    /// Sampling period of pre-binned input, hours.
    #[arg(long = "tau-hours", default_value_t = 0.25)]
    pub tau_hours: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
    /// Also write per-trial NRMSD values as CSV.
    #[arg(long = "per-trial")]
    pub per_trial: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Parses `a,b,c` or an inclusive `start:stop:step` range.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    let values = if s.contains(':') {
        let parts: Vec<f64> = s
            .split(':')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("bad range {s:?}"))?;
        let [start, stop, step] = parts[..] else {
            bail!("range must be start:stop:step, got {s:?}");
        };
        if !(step > 0.0) || !(stop >= start) {
            bail!("range needs step > 0 and stop >= start, got {s:?}");
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| start + i as f64 * step).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad grid value {t:?}")))
            .collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        bail!("grid must hold finite values, got {s:?}");
    }
    Ok(values)
}

pub fn parse_configs(s: &str) -> Result<Vec<AntennaConfig>> {
    s.split(',').map(|t| t.parse::<AntennaConfig>().with_context(|| format!("bad configuration {t:?}"))).collect()
}
