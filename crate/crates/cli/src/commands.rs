//! Subcommand implementations. Each builds a [`Report`]; writing is left to
//! [`run`].

use anyhow::{bail, Result};
use serde_json::{json, Value};
use tas_secrecy_core::channel::{self, eve_snr_cdf, legit_snr_cdf};
use tas_secrecy_core::montecarlo::{ks_distance, EventThresholds};
use tas_secrecy_core::optimizer::{self, SweepAxis};
use tas_secrecy_core::secrecy::{self, RatePolicy};
use tas_secrecy_core::smartgrid::{self, RoleStats};
use tas_secrecy_core::{db_to_linear, linear_to_db, rng, AntennaConfig, LinkBudget, RbBound, ThroughputSolution};

use crate::cli::{
    parse_configs, parse_grid, AxisArg, Cli, Command, ConstraintArgs, LinkArgs, MetricsArgs, OptimizeArgs,
    ReconstructArgs, SweepArgs, TradeoffArgs, ValidateArgs,
};
use crate::ingest::{ingest_csv, IngestOptions};
use crate::output::{self, row, Report, Row};
use crate::parallel;

pub fn run(cli: Cli) -> Result<()> {
    let (report, out) = match &cli.command {
        Command::Metrics(a) => (metrics(a)?, &a.out),
        Command::Optimize(a) => (optimize(a)?, &a.out),
        Command::Tradeoff(a) => (tradeoff(a)?, &a.out),
        Command::Sweep(a) => (sweep(a)?, &a.out),
        Command::Validate(a) => (validate(a)?, &a.out),
        Command::Reconstruct(a) => {
            if !a.out.force {
                for p in [&a.out.output, &a.per_trial].into_iter().flatten() {
                    if p.exists() {
                        bail!("{} already exists (pass --force to overwrite)", p.display());
                    }
                }
            }
            let (report, per_trial) = reconstruct(a)?;
            if let Some(path) = &a.per_trial {
                output::emit(&per_trial, Some(path), a.out.force)?;
            }
            (report, &a.out)
        }
    };
    output::emit(&report.render(out.format)?, out.output.as_deref(), out.force)
}

fn link_inputs(l: &LinkArgs) -> Result<Row> {
    let lb = l.budget()?;
    Ok(row(json!({
        "n_a": l.na,
        "n_b": l.nb,
        "n_e": l.ne,
        "snr_b_db": l.snr_b_db,
        "snr_e_db": l.snr_e_db,
        "gamma_bar_b_linear": lb.gamma_bar_b(),
        "gamma_bar_e_linear": lb.gamma_bar_e(),
        "rho_db": linear_to_db(lb.rho()),
    })))
}

fn with_constraints(mut r: Row, c: &ConstraintArgs) -> Row {
    r.insert("sigma".into(), json!(c.sigma));
    r.insert("epsilon".into(), json!(c.epsilon));
    r
}

fn bound_name(b: RbBound) -> &'static str {
    match b {
        RbBound::Exact => "exact",
        RbBound::ClosedForm => "closed-form",
    }
}

fn solution_fields(s: &ThroughputSolution) -> Row {
    let binding = serde_json::to_value(s.binding).unwrap_or(Value::Null);
    row(json!({
        "binding": binding,
        "r_b_star_bps_hz": s.r_b_star,
        "r_s_star_bps_hz": s.r_s_star,
        "r_e_bps_hz": s.r_e,
        "mu_star_linear": s.mu_star,
        "t_s_star_bps_hz": s.t_s_star,
        "achieved_p_suc": s.achieved_p_suc,
        "achieved_p_so": s.achieved_p_so,
        "residual": s.residual,
        "r_b_max_bps_hz": s.r_b_max,
        "rb_bound": bound_name(s.bound),
        "iterations": s.iterations,
    }))
}

pub fn metrics(a: &MetricsArgs) -> Result<Report> {
    let (cfg, lb) = (a.link.config()?, a.link.budget()?);
    let mu = a.mu.unwrap_or_else(|| secrecy::reliability_threshold(a.rb));
    let policy = RatePolicy::new(a.rb, a.rs, mu)?;
    let mut inputs = link_inputs(&a.link)?;
    inputs.insert("r_b_bps_hz".into(), json!(a.rb));
    inputs.insert("r_s_bps_hz".into(), json!(a.rs));
    inputs.insert("mu_linear".into(), json!(mu));
    let mut report = Report::new("metrics", inputs);
    report.rows.push(row(json!({
        "p_suc": secrecy::p_success(policy.mu(), &cfg, &lb)?,
        "p_so": secrecy::p_secrecy_outage(policy.r_b(), policy.r_s(), &cfg, &lb)?,
        "t_s_bps_hz": secrecy::secure_throughput(&policy, &cfg, &lb)?,
        "r_e_bps_hz": policy.r_e(),
        "feedback_bits": channel::feedback_bits(&cfg),
    })));
    Ok(report)
}

pub fn optimize(a: &OptimizeArgs) -> Result<Report> {
    let (cfg, lb, c) = (a.link.config()?, a.link.budget()?, a.constraints.constraints()?);
    let bound = RbBound::from(a.rb_bound);
    let mut inputs = with_constraints(link_inputs(&a.link)?, &a.constraints);
    inputs.insert("rb_bound".into(), json!(bound_name(bound)));
    let sol = optimizer::optimize_with(bound, &c, &cfg, &lb)?;
    let f = secrecy::feasibility(bound, &c, &cfg, &lb)?;
    let mut r = row(json!({ "feasible": sol.is_feasible() }));
    r.extend(solution_fields(&sol));
    r.extend(row(json!({
        "r_b_max_exact_bps_hz": secrecy::max_rb_exact(&c, &cfg, &lb)?,
        "r_b_max_closed_form_bps_hz": secrecy::max_rb_closed_form(&c, &cfg, &lb)?,
        "rate_margin_bps_hz": f.rate_margin,
        "sigma_ceiling": f.sigma_ceiling,
        "sigma_margin": f.sigma_margin,
        "sigma_bound_closed_form": secrecy::tradeoff_sigma_bound(c.epsilon(), &cfg, lb.rho())?,
        "feedback_bits": channel::feedback_bits(&cfg),
    })));
    let mut report = Report::new("optimize", inputs);
    report.rows.push(r);
    Ok(report)
}

pub fn tradeoff(a: &TradeoffArgs) -> Result<Report> {
    let cfg = a.link.config()?;
    let eps = parse_grid(&a.epsilon_grid)?;
    let rho_db = parse_grid(&a.rho_db_grid)?;
    let inputs = row(json!({
        "n_a": cfg.n_a(),
        "n_b": cfg.n_b(),
        "n_e": cfg.n_e(),
        "epsilon_grid": eps,
        "rho_db_grid": rho_db,
    }));
    let mut report = Report::new("tradeoff", inputs);
    for &r_db in &rho_db {
        let rho = db_to_linear(r_db);
        for &e in &eps {
            report.rows.push(row(json!({
                "epsilon": e,
                "rho_db": r_db,
                "sigma_bound_closed_form": secrecy::tradeoff_sigma_bound(e, &cfg, rho)?,
                "sigma_bound_exact": secrecy::tradeoff_sigma_bound_exact(e, &cfg, rho)?,
            })));
        }
    }
    Ok(report)
}

pub fn sweep(a: &SweepArgs) -> Result<Report> {
    let (cfg, lb, c) = (a.link.config()?, a.link.budget()?, a.constraints.constraints()?);
    let bound = RbBound::from(a.rb_bound);
    let axis = match a.axis {
        AxisArg::Sigma => SweepAxis::Sigma(parse_grid(&a.grid)?),
        AxisArg::Epsilon => SweepAxis::Epsilon(parse_grid(&a.grid)?),
        AxisArg::SnrBDb => SweepAxis::GammaBarB(parse_grid(&a.grid)?.into_iter().map(db_to_linear).collect()),
        AxisArg::Config => SweepAxis::Configs(parse_configs(&a.grid)?),
    };
    let mut inputs = with_constraints(link_inputs(&a.link)?, &a.constraints);
    inputs.insert("axis".into(), json!(axis.name()));
    inputs.insert("grid".into(), json!(a.grid));
    inputs.insert("rb_bound".into(), json!(bound_name(bound)));
    let mut report = Report::new("sweep", inputs);
    for r in parallel::sweep(&axis, bound, &c, &cfg, &lb)? {
        let mut out = row(json!({
            "index": r.index,
            "config": r.cfg.to_string(),
            "snr_b_db": linear_to_db(r.lb.gamma_bar_b()),
            "snr_e_db": linear_to_db(r.lb.gamma_bar_e()),
            "sigma": r.sigma,
            "epsilon": r.epsilon,
        }));
        match &r.outcome {
            Ok(sol) => {
                out.insert("feasible".into(), json!(sol.is_feasible()));
                out.extend(solution_fields(sol));
            }
            Err(e) => {
                out.insert("feasible".into(), json!(false));
                out.insert("error".into(), json!(e.to_string()));
            }
        }
        report.rows.push(out);
    }
    Ok(report)
}

/// Operating point checked by `validate`: explicit rates, or the optimum.
fn validation_policy(a: &ValidateArgs, cfg: &AntennaConfig, lb: &LinkBudget) -> Result<RatePolicy> {
    match (a.rb, a.rs) {
        (Some(rb), Some(rs)) => {
            let mu = a.mu.unwrap_or_else(|| secrecy::reliability_threshold(rb));
            Ok(RatePolicy::new(rb, rs, mu)?)
        }
        _ => {
            let sol = optimizer::optimize(&a.constraints.constraints()?, cfg, lb)?;
            if !sol.is_feasible() {
                return Err(tas_secrecy_core::Error::Infeasible { r_e: sol.r_e, r_b_max: sol.r_b_max }.into());
            }
            Ok(RatePolicy::new(sol.r_b_star, sol.r_s_star, sol.mu_star)?)
        }
    }
}

pub fn validate(a: &ValidateArgs) -> Result<Report> {
    let (cfg, lb) = (a.link.config()?, a.link.budget()?);
    let Some(seed) = a.seed else { bail!("--seed is required") };
    if a.trials == 0 {
        bail!("--trials must be positive");
    }
    let policy = validation_policy(a, &cfg, &lb)?;
    let mut inputs = with_constraints(link_inputs(&a.link)?, &a.constraints);
    inputs.extend(row(json!({
        "r_b_bps_hz": policy.r_b(),
        "r_s_bps_hz": policy.r_s(),
        "mu_linear": policy.mu(),
        "trials": a.trials,
        "seed": seed,
    })));

    let p_suc = secrecy::p_success(policy.mu(), &cfg, &lb)?;
    let p_so = secrecy::p_secrecy_outage(policy.r_b(), policy.r_s(), &cfg, &lb)?;
    let t = parallel::tally(&cfg, &lb, EventThresholds::new(policy.mu(), policy.r_e())?, a.trials, seed);
    let (mut gb, mut ge) = parallel::sample_snrs(&cfg, &lb, a.trials, seed);
    let ks_b = ks_distance(&mut gb, |g| legit_snr_cdf(g, &cfg, &lb))?;
    let ks_e = ks_distance(&mut ge, |g| eve_snr_cdf(g, &cfg, &lb))?;

    let mut report = Report::new("validate", inputs);
    report.rows.push(row(json!({
        "p_suc_closed_form": p_suc,
        "p_suc_empirical": t.p_success(),
        "p_suc_abs_diff": (t.p_success() - p_suc).abs(),
        "p_so_closed_form": p_so,
        "p_so_empirical": t.p_secrecy_outage(),
        "p_so_abs_diff": (t.p_secrecy_outage() - p_so).abs(),
        "ks_gamma_b": ks_b,
        "ks_gamma_e": ks_e,
    })));
    Ok(report)
}

fn role_row(profile: &str, s: &RoleStats) -> Row {
    let role = serde_json::to_value(s.role).unwrap_or(Value::Null);
    row(json!({
        "profile": profile,
        "role": role,
        "trials": s.trials,
        "p_receive": s.p_receive,
        "mean_nrmsd": s.mean_nrmsd,
        "std_nrmsd": s.std_nrmsd,
    }))
}

/// Returns the report and the per-trial CSV (`trial,role,nrmsd`).
pub fn reconstruct(a: &ReconstructArgs) -> Result<(Report, String)> {
    let (cfg, lb, c) = (a.link.config()?, a.link.budget()?, a.constraints.constraints()?);
    let Some(seed) = a.seed else { bail!("--seed is required") };
    let profile = match &a.input {
        Some(path) => ingest_csv(path, IngestOptions { window_secs: a.window_secs, tau_hours: a.tau_hours })?,
        None => smartgrid::synth_profile(a.profile.into(), &mut rng::stream(seed, u64::MAX)),
    };
    let mut inputs = with_constraints(link_inputs(&a.link)?, &a.constraints);
    inputs.extend(row(json!({
        "profile": profile.label(),
        "profile_samples": profile.len(),
        "tau_hours": profile.tau_hours(),
        "profile_mean_w": profile.mean(),
        "trials": a.trials,
        "seed": seed,
    })));
    if let Some(w) = a.window_secs {
        inputs.insert("window_secs".into(), json!(w));
    }

    let exp = parallel::run_experiment(&profile, &cfg, &lb, &c, a.trials, seed)?;
    let mut report = Report::new("reconstruct", inputs);
    for s in [&exp.report.bob, &exp.report.eve] {
        let mut r = role_row(profile.label(), s);
        r.insert("t_s_star_bps_hz".into(), json!(exp.report.solution.t_s_star));
        r.insert("r_b_star_bps_hz".into(), json!(exp.report.solution.r_b_star));
        r.insert("r_s_star_bps_hz".into(), json!(exp.report.solution.r_s_star));
        report.rows.push(r);
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["trial", "role", "nrmsd"])?;
    for (role, values) in [("bob", &exp.bob_values), ("eve", &exp.eve_values)] {
        for (i, v) in values.iter().enumerate() {
            w.write_record([i.to_string(), role.to_string(), v.to_string()])?;
        }
    }
    Ok((report, String::from_utf8(w.into_inner()?)?))
}
