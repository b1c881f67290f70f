use tas_secrecy_core::channel::{self, eve_snr_cdf, eve_snr_pdf, legit_snr_cdf, legit_snr_pdf};
use tas_secrecy_core::montecarlo::{self, ks_distance, EventThresholds};
use tas_secrecy_core::secrecy::{self, reliability_threshold};
use tas_secrecy_core::{rng, AntennaConfig, LinkBudget};

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

fn draws(cfg: &AntennaConfig, lb: &LinkBudget, n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut b = Vec::with_capacity(n);
    let mut e = Vec::with_capacity(n);
    for (blk, len) in rng::blocks(n) {
        let (x, y) = montecarlo::sample_block(cfg, lb, seed, blk, len);
        b.extend(x);
        e.extend(y);
    }
    (b, e)
}

#[test]
fn densities_integrate_to_one() {
    let cfg = AntennaConfig::new(4, 2, 3).unwrap();
    let lb = LinkBudget::new(10.0, 2.0).unwrap();
    let legit = simpson(|g| legit_snr_pdf(g, &cfg, &lb).unwrap(), 0.0, 500.0, 200_000);
    assert!((legit - 1.0).abs() < 1e-6, "{legit}");
    let eve = simpson(|g| eve_snr_pdf(g, &cfg, &lb).unwrap(), 0.0, 100.0, 200_000);
    assert!((eve - 1.0).abs() < 1e-6, "{eve}");
    let cfg1 = AntennaConfig::new(1, 1, 1).unwrap();
    let eve1 = simpson(|g| eve_snr_pdf(g, &cfg1, &lb).unwrap(), 0.0, 100.0, 200_000);
    assert!((eve1 - 1.0).abs() < 1e-6);
}

#[test]
fn empirical_cdf_of_bob_matches_closed_form() {
    let cfg = AntennaConfig::new(4, 2, 2).unwrap();
    let lb = LinkBudget::new(10.0, 1.0).unwrap();
    let (mut b, mut e) = draws(&cfg, &lb, 1_000_000, 17);
    let d = ks_distance(&mut b, |g| legit_snr_cdf(g, &cfg, &lb)).unwrap();
    assert!(d < 0.005, "KS(γ_B) = {d}");
    let d = ks_distance(&mut e, |g| eve_snr_cdf(g, &cfg, &lb)).unwrap();
    assert!(d < 0.005, "KS(γ_E) = {d}");
}

#[test]
fn eve_mean_is_shape_times_scale() {
    let cfg = AntennaConfig::new(3, 1, 2).unwrap();
    let lb = LinkBudget::new(10.0, 1.0).unwrap();
    let (_, e) = draws(&cfg, &lb, 1_000_000, 3);
    let m = e.iter().sum::<f64>() / e.len() as f64;
    assert!((m - 2.0).abs() < 0.01, "{m}");
}

/// Two-sample Kolmogorov–Smirnov statistic.
fn ks_two_sample(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

#[test]
fn eve_law_does_not_depend_on_selection() {
    let lb = LinkBudget::new(10.0, 1.0).unwrap();
    let n = 100_000;
    let (_, e1) = draws(&AntennaConfig::new(1, 2, 2).unwrap(), &lb, n, 21);
    let (_, e4) = draws(&AntennaConfig::new(4, 2, 2).unwrap(), &lb, n, 22);
    let d = ks_two_sample(e1, e4);
    // Critical value at α = 0.01: 1.628 · sqrt(2/n).
    let crit = 1.628 * (2.0 / n as f64).sqrt();
    assert!(d < crit, "D = {d}, critical {crit}");
}

#[test]
fn outage_probabilities_match_simulation() {
    let cases = [
        ((1, 1, 1), 1.5, 0.6),
        ((4, 1, 1), 2.0, 1.0),
        ((4, 2, 2), 2.5, 1.2),
        ((1, 4, 2), 3.0, 0.8),
        ((4, 4, 1), 3.5, 2.0),
    ];
    let lb = LinkBudget::from_db(10.0, 0.0).unwrap();
    for (i, ((a, b, e), r_b, r_e)) in cases.into_iter().enumerate() {
        let cfg = AntennaConfig::new(a, b, e).unwrap();
        let mu = reliability_threshold(r_b);
        let th = EventThresholds::new(mu, r_e).unwrap();
        let t = montecarlo::tally(&cfg, &lb, th, 1_000_000, 100 + i as u64);
        let p_suc = secrecy::p_success(mu, &cfg, &lb).unwrap();
        let p_so = secrecy::p_secrecy_outage(r_b, r_b - r_e, &cfg, &lb).unwrap();
        assert!((t.p_success() - p_suc).abs() < 0.005, "{cfg}: {} vs {p_suc}", t.p_success());
        assert!((t.p_secrecy_outage() - p_so).abs() < 0.005, "{cfg}: {} vs {p_so}", t.p_secrecy_outage());
    }
}

#[test]
fn joint_sampler_is_seed_deterministic() {
    let cfg = AntennaConfig::new(2, 3, 1).unwrap();
    let lb = LinkBudget::new(4.0, 1.0).unwrap();
    let mut r1 = rng::stream(5, 1);
    let mut r2 = rng::stream(5, 1);
    let a: Vec<_> = (0..1000).map(|_| channel::sample_joint_snr(&cfg, &lb, &mut r1)).collect();
    let b: Vec<_> = (0..1000).map(|_| channel::sample_joint_snr(&cfg, &lb, &mut r2)).collect();
    assert_eq!(a, b);
}
