use proptest::prelude::*;
use tas_secrecy_core::smartgrid::{nrmsd, reconstruct, rmsd};
use tas_secrecy_core::specfun::{inv_reg_lower_gamma, reg_lower_gamma, GammaShape};
use tas_secrecy_core::{ErasurePattern, LoadProfile};

proptest! {
    #[test]
    fn lower_gamma_is_monotone_cdf(a in 0.2f64..30.0, z1 in 0.0f64..80.0, dz in 0.0f64..20.0) {
        let s = GammaShape::new(a).unwrap();
        let p1 = reg_lower_gamma(s, z1).unwrap();
        let p2 = reg_lower_gamma(s, z1 + dz).unwrap();
        prop_assert!((0.0..=1.0).contains(&p1));
        prop_assert!(p2 >= p1 - 1e-15);
    }

    #[test]
    fn inverse_round_trips(a in 0.2f64..30.0, p in 1e-8f64..0.999_999) {
        let s = GammaShape::new(a).unwrap();
        let z = inv_reg_lower_gamma(s, p).unwrap();
        prop_assert!((reg_lower_gamma(s, z).unwrap() - p).abs() <= 1e-10);
    }

    #[test]
    fn affine_profiles_are_recovered(
        offset in 0.0f64..500.0,
        slope in -2.0f64..2.0,
        inner in proptest::collection::vec(any::<bool>(), 2..120),
    ) {
        let n = inner.len() + 2;
        let x: Vec<f64> = (0..n).map(|k| offset + 300.0 + slope * k as f64).collect();
        let mut mask = vec![true];
        mask.extend(inner);
        mask.push(true);
        let p = LoadProfile::new("affine", 0.25, x.clone()).unwrap();
        let y = reconstruct(&p, &ErasurePattern::from(mask)).unwrap();
        for (a, b) in y.iter().zip(&x) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn received_samples_kept_and_rmsd_bounded(
        x in proptest::collection::vec(0.0f64..5000.0, 2..150),
        seed in any::<u64>(),
        scale in 0.01f64..100.0,
    ) {
        let mask: Vec<bool> = (0..x.len()).map(|k| (seed >> (k % 64)) & 1 == 1).collect();
        let p = LoadProfile::new("p", 0.25, x.clone()).unwrap();
        let y = reconstruct(&p, &ErasurePattern::from(mask.clone())).unwrap();
        for k in 0..x.len() {
            if mask[k] {
                prop_assert_eq!(y[k], x[k]);
            }
        }
        let r = rmsd(&y, &x).unwrap();
        let max_dev = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(r >= 0.0 && r <= max_dev + 1e-9);

        let mean = x.iter().sum::<f64>() / x.len() as f64;
        if mean > 0.0 {
            let xs: Vec<f64> = x.iter().map(|v| v * scale).collect();
            let ys: Vec<f64> = y.iter().map(|v| v * scale).collect();
            let a = nrmsd(&y, &x).unwrap();
            let b = nrmsd(&ys, &xs).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
        }
    }

    #[test]
    fn sparse_reception_flattens(
        x in proptest::collection::vec(0.0f64..5000.0, 2..100),
        pick in any::<prop::sample::Index>(),
        any_received in any::<bool>(),
    ) {
        let n = x.len();
        let mut mask = vec![false; n];
        if any_received {
            mask[pick.index(n)] = true;
        }
        let p = LoadProfile::new("p", 0.25, x.clone()).unwrap();
        let y = reconstruct(&p, &ErasurePattern::from(mask)).unwrap();
        let expect = if any_received { x[pick.index(n)] } else { 0.0 };
        prop_assert!(y.iter().all(|v| *v == expect));
    }
}
