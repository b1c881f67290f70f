//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tas_secrecy::cli::{Cli, Command};
use tas_secrecy::commands;
use tas_secrecy::parallel;
use tas_secrecy_core::montecarlo::EventThresholds;
use tas_secrecy_core::optimizer::{self, stationarity_residual, throughput_at};
use tas_secrecy_core::secrecy::{self, max_rb_closed_form, max_rb_exact, tradeoff_sigma_bound};
use tas_secrecy_core::smartgrid::{nrmsd, reconstruct, synth_profile};
use tas_secrecy_core::{
    db_to_linear, rng, AntennaConfig, Binding, ErasurePattern, LinkBudget, LoadProfile, ProfileKind, RbBound, Role,
    SecurityConstraints, SweepAxis,
};

struct Outcome {
    ok: bool,
    lines: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: String) {
        self.ok &= ok;
        self.lines.push(format!("{} {msg}", if ok { "ok  " } else { "FAIL" }));
    }
}

fn cfg(a: u32, b: u32, e: u32) -> AntennaConfig {
    AntennaConfig::new(a, b, e).unwrap()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let rho = db_to_linear(5.0);
    for ((a, b, e), want, tol) in [((1, 1, 1), 0.601, 0.005), ((4, 1, 1), 0.9747, 0.005), ((4, 1, 2), 0.860, 0.01)] {
        let got = tradeoff_sigma_bound(0.2, &cfg(a, b, e), rho).unwrap();
        o.check((got - want).abs() <= tol, format!("({a},{b},{e}) eps=0.2 rho=5dB: {got:.5} vs {want} ± {tol}"));
    }

    // (4,2,2) over the open region eps > 0.1, rho > 5 dB: the bound grows in
    // both arguments, so the infimum is the limit at the corner.
    let c = cfg(4, 2, 2);
    let mut inf = f64::INFINITY;
    let mut arg = (0.0, 0.0);
    let mut probe = |e: f64, r_db: f64| {
        let v = tradeoff_sigma_bound(e, &c, db_to_linear(r_db)).unwrap();
        if v < inf {
            inf = v;
            arg = (e, r_db);
        }
    };
    probe(0.1 + 1e-12, 5.0 + 1e-12);
    for i in 1..=100 {
        for j in 1..=100 {
            probe(0.1 + 0.002 * i as f64, 5.0 + 0.1 * j as f64);
        }
    }
    o.check(
        inf > 0.99,
        format!("(4,2,2) inf over eps>0.1, rho>5dB: {inf:.5} at eps={:.3}, rho={:.2}dB (need > 0.99)", arg.0, arg.1),
    );
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let mut worst: f64 = 0.0;
    for snr_db in [0.0, 10.0, 20.0] {
        let lb = LinkBudget::from_db(snr_db, 0.0).unwrap();
        for k in 50..=99 {
            let sigma = k as f64 / 100.0;
            let c = SecurityConstraints::new(sigma, 0.1).unwrap();
            for ne in 1..=3 {
                let got = max_rb_closed_form(&c, &cfg(1, 1, ne), &lb).unwrap();
                let want = (1.0 + lb.gamma_bar_b() * (1.0 / sigma).ln()).log2();
                worst = worst.max((got - want).abs());
            }
        }
    }
    o.check(worst <= 1e-9, format!("R_b^max(1,1,·) vs log2(1+g ln(1/sigma)): max |diff| {worst:.2e}"));

    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let eps = 0.01 + 0.09 * i as f64;
        for j in 0..10 {
            let rho = db_to_linear(-5.0 + 2.5 * j as f64);
            let got = tradeoff_sigma_bound(eps, &cfg(1, 1, 1), rho).unwrap();
            worst = worst.max((got - eps.powf(1.0 / rho)).abs());
        }
    }
    o.check(worst <= 1e-9, format!("sigma-bound(1,1,1) vs eps^(1/rho) on 10x10 grid: max |diff| {worst:.2e}"));
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let lb = LinkBudget::from_db(10.0, 0.0).unwrap();
    let cases = [
        ((1, 1, 1), 1.5, 0.6),
        ((4, 1, 2), 2.0, 1.0),
        ((1, 2, 1), 2.5, 0.8),
        ((4, 4, 2), 3.5, 1.4),
        ((4, 2, 1), 3.0, 1.2),
    ];
    for (i, ((a, b, e), r_b, r_e)) in cases.into_iter().enumerate() {
        let c = cfg(a, b, e);
        let mu = secrecy::reliability_threshold(r_b);
        let t = parallel::tally(&c, &lb, EventThresholds::new(mu, r_e).unwrap(), 1_000_000, 1000 + i as u64);
        let p_suc = secrecy::p_success(mu, &c, &lb).unwrap();
        let p_so = secrecy::p_secrecy_outage(r_b, r_b - r_e, &c, &lb).unwrap();
        let (ds, dl) = ((t.p_success() - p_suc).abs(), (t.p_secrecy_outage() - p_so).abs());
        o.check(
            ds <= 0.005 && dl <= 0.005,
            format!("{c}: p_suc {:.4} vs {p_suc:.4}, p_so {:.4} vs {p_so:.4}", t.p_success(), t.p_secrecy_outage()),
        );
    }
    o
}

struct Scenario {
    cfg: AntennaConfig,
    lb: LinkBudget,
    c: SecurityConstraints,
}

fn random_feasible(count: usize, seed: u64) -> Vec<Scenario> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let cfg = cfg(r.random_range(1..=4), r.random_range(1..=4), r.random_range(1..=3));
        let lb = LinkBudget::from_db(r.random_range(0.0..20.0), r.random_range(-5.0..5.0)).unwrap();
        let c = SecurityConstraints::new(r.random_range(0.5..0.99), r.random_range(0.01..0.5)).unwrap();
        if secrecy::is_feasible(&c, &cfg, &lb).unwrap().feasible {
            out.push(Scenario { cfg, lb, c });
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for s in random_feasible(10, 4242) {
        let sol = optimizer::optimize(&s.c, &s.cfg, &s.lb).unwrap();
        let r_e = secrecy::min_re_for_secrecy(&s.c, &s.cfg, &s.lb).unwrap();
        let r_max = max_rb_exact(&s.c, &s.cfg, &s.lb).unwrap();
        let mut oracle = throughput_at(r_max, r_e, &s.cfg, &s.lb).unwrap();
        let mut k = 1;
        while r_e + k as f64 * 1e-4 <= r_max {
            oracle = oracle.max(throughput_at(r_e + k as f64 * 1e-4, r_e, &s.cfg, &s.lb).unwrap());
            k += 1;
        }
        let gap = (sol.t_s_star - oracle).abs();
        let residual = match sol.binding {
            Binding::Interior => stationarity_residual(sol.r_b_star, sol.r_e, &s.cfg, &s.lb).unwrap().abs(),
            _ => 0.0,
        };
        let constraints = sol.achieved_p_so <= s.c.epsilon() + 1e-9 && sol.achieved_p_suc >= s.c.sigma() - 1e-9;
        o.check(
            gap <= 1e-6 && residual <= 1e-8 && constraints,
            format!(
                "{} sigma={:.3} eps={:.3}: |T_s - oracle| {gap:.1e}, {:?} residual {residual:.1e}, p_suc {:.4}, p_so {:.4}",
                s.cfg,
                s.c.sigma(),
                s.c.epsilon(),
                sol.binding,
                sol.achieved_p_suc,
                sol.achieved_p_so
            ),
        );
    }
    o
}

fn t_star(axis: SweepAxis, base: &SecurityConstraints, c: &AntennaConfig, lb: &LinkBudget) -> Vec<f64> {
    parallel::sweep(&axis, RbBound::Exact, base, c, lb)
        .unwrap()
        .into_iter()
        .map(|r| r.outcome.unwrap().t_s_star)
        .collect()
}

fn nondecreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] >= w[0] - 1e-12)
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let eps: Vec<f64> = (1..=50).map(|k| k as f64 / 100.0).collect();
    let sig: Vec<f64> = (50..=99).map(|k| k as f64 / 100.0).collect();
    let snr: Vec<f64> = (0..=60).map(|k| db_to_linear(k as f64 * 0.5)).collect();
    for c in [cfg(1, 1, 1), cfg(4, 1, 2), cfg(4, 2, 2), cfg(2, 3, 1)] {
        let lb = LinkBudget::from_db(10.0, 0.0).unwrap();
        let base = SecurityConstraints::new(0.9, 0.1).unwrap();
        let g = t_star(SweepAxis::GammaBarB(snr.clone()), &base, &c, &lb);
        o.check(nondecreasing(&g), format!("{c}: T_s*(snr_b 0..30 dB) nondecreasing"));
        let mut s = t_star(SweepAxis::Sigma(sig.clone()), &base, &c, &lb);
        s.reverse();
        o.check(nondecreasing(&s), format!("{c}: T_s*(sigma 0.50..0.99) nonincreasing"));
        let mut all = true;
        for sigma in [0.5, 0.7, 0.9, 0.95] {
            let base = SecurityConstraints::new(sigma, 0.1).unwrap();
            all &= nondecreasing(&t_star(SweepAxis::Epsilon(eps.clone()), &base, &c, &lb));
        }
        o.check(all, format!("{c}: T_s*(eps 0.01..0.50) nondecreasing at sigma in {{0.5,0.7,0.9,0.95}}"));
    }
    o
}

fn mean_var(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    (m, v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0) / n)
}

/// One-sided z-test of mean(a) > mean(b) at 99 %.
fn z_greater(a: &[f64], b: &[f64]) -> f64 {
    let ((ma, va), (mb, vb)) = (mean_var(a), mean_var(b));
    (ma - mb) / (va + vb).sqrt()
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let peaky = synth_profile(ProfileKind::MorningEveningPeaks, &mut rng::stream(6, 0));

    let full = parallel::role_trial_values(&peaky, Role::Bob, 1.0, 100, 1).unwrap();
    o.check(full.iter().all(|&v| v == 0.0), "NRMSD is zero at p_receive = 1".into());

    let mut r = ChaCha8Rng::seed_from_u64(66);
    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let n = r.random_range(2..200);
        let (a, b) = (r.random_range(0.0..1000.0), r.random_range(-5.0..5.0));
        let x: Vec<f64> = (0..n).map(|k| a + 1000.0 + b * k as f64).collect();
        let mut mask: Vec<bool> = (0..n).map(|_| r.random_bool(0.3)).collect();
        mask[0] = true;
        mask[n - 1] = true;
        let p = LoadProfile::new("affine", 0.25, x.clone()).unwrap();
        let y = reconstruct(&p, &ErasurePattern::from(mask)).unwrap();
        worst = worst.max(nrmsd(&y, &x).unwrap());
    }
    o.check(worst <= 1e-12, format!("affine profiles recovered exactly (2000 patterns, max NRMSD {worst:.1e})"));

    let grid = [0.9, 0.5, 0.2, 0.05];
    let runs: Vec<Vec<f64>> =
        grid.iter().map(|&q| parallel::role_trial_values(&peaky, Role::Bob, q, 10_000, 61).unwrap()).collect();
    for (i, w) in runs.windows(2).enumerate() {
        let z = z_greater(&w[1], &w[0]);
        o.check(
            z > 2.326,
            format!(
                "mean NRMSD p={} -> p={}: {:.4} -> {:.4} (z = {z:.1})",
                grid[i],
                grid[i + 1],
                mean_var(&w[0]).0,
                mean_var(&w[1]).0
            ),
        );
    }

    let lb = LinkBudget::from_db(10.0, 0.0).unwrap();
    for (c, sigma, eps) in
        [(cfg(4, 2, 2), 0.9, 0.2), (cfg(4, 2, 2), 0.9, 0.1), (cfg(4, 1, 1), 0.8, 0.3), (cfg(2, 2, 1), 0.7, 0.2)]
    {
        let k = SecurityConstraints::new(sigma, eps).unwrap();
        let exp = parallel::run_experiment(&peaky, &c, &lb, &k, 10_000, 62).unwrap();
        let sol = exp.report.solution;
        if sol.achieved_p_so < sol.achieved_p_suc {
            let z = z_greater(&exp.eve_values, &exp.bob_values);
            o.check(
                z > 2.326,
                format!(
                    "{c} sigma={sigma} eps={eps}: Eve {:.4} > Bob {:.4} (z = {z:.1})",
                    exp.report.eve.mean_nrmsd, exp.report.bob.mean_nrmsd
                ),
            );
        }
    }
    o
}

fn render(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(args).unwrap();
    let (report, format) = match &cli.command {
        Command::Validate(a) => (commands::validate(a).unwrap(), a.out.format),
        Command::Reconstruct(a) => {
            let (r, per_trial) = commands::reconstruct(a).unwrap();
            return r.render(a.out.format).unwrap() + &per_trial;
        }
        Command::Sweep(a) => (commands::sweep(a).unwrap(), a.out.format),
        _ => unreachable!(),
    };
    report.render(format).unwrap()
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let runs: [&[&str]; 4] = [
        &["tas-secrecy", "validate", "--na", "4", "--nb", "2", "--ne", "2", "--trials", "200000", "--seed", "7"],
        &["tas-secrecy", "validate", "--trials", "50000", "--seed", "7", "--rb", "1", "--rs", "0.4", "--format", "csv"],
        &["tas-secrecy", "reconstruct", "--na", "4", "--nb", "2", "--ne", "2", "--trials", "40000", "--seed", "9"],
        &["tas-secrecy", "sweep", "--na", "4", "--axis", "epsilon", "--grid", "0.01:0.3:0.01"],
    ];
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    for args in runs {
        let a = render(args);
        let b = render(args);
        let c = single.install(|| render(args));
        o.check(
            a == b && a == c,
            format!("{} byte-identical across reruns and thread counts ({} bytes)", args[1..].join(" "), a.len()),
        );
    }
    o
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("trade-off frontier values", criterion_1),
        ("single-antenna identities", criterion_2),
        ("closed form vs Monte Carlo", criterion_3),
        ("optimizer vs grid oracle", criterion_4),
        ("sweep shapes", criterion_5),
        ("reconstruction properties", criterion_6),
        ("determinism", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let verdict = if out.ok { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {} {name} ({:.2?})", i + 1, t.elapsed());
        for l in &out.lines {
            println!("       {l}");
        }
        failed += usize::from(!out.ok);
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
