use besselsub_core::bessel::BesselParameters;
use besselsub_core::geometry::{
    admissibility_check, check_disk_subordination, check_subordination, gamma_lambda_kappa,
    gamma_mu, key_inequality_check, winding_number, BoundaryCurve, GAMMA_MAX,
};
use besselsub_core::operators::apply_b_over_z;
use besselsub_core::PowerSeries;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn gamma_bounded_with_peak_on_the_diagonal() {
    let mut best = (0.0, 0.0, 0.0);
    for i in 0..200 {
        let lambda = i as f64 / 200.0;
        for j in 1..=200 {
            let kappa = -1.0 + 2.0 * j as f64 / 200.0;
            let g = gamma_lambda_kappa(lambda, kappa).unwrap();
            assert!(g > 0.0 && g <= GAMMA_MAX + 1e-12);
            if g > best.0 {
                best = (g, lambda, kappa);
            }
        }
    }
    let (_, lambda, kappa) = best;
    assert!(((1.0 - lambda) - (kappa + 1.0)).abs() <= 0.01 + 1e-12);
}

#[test]
fn gamma_at_lambda_zero_is_gamma_mu() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let kappa: f64 = rng.gen_range(-0.999..20.0);
        let b = kappa + 1.0;
        let direct = (1.0 + b * b - f64::sqrt(1.0 + b.powi(4))) / (4.0 * b);
        assert!((gamma_lambda_kappa(0.0, kappa).unwrap() - direct).abs() < 1e-14);
        assert_eq!(
            gamma_lambda_kappa(0.0, kappa).unwrap(),
            gamma_mu(kappa).unwrap()
        );
    }
}

#[test]
fn key_inequality_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let lambda = rng.gen_range(0.0..1.0);
        let kappa = rng.gen_range(-0.999_999..50.0);
        assert!(
            key_inequality_check(lambda, kappa).unwrap(),
            "({lambda}, {kappa})"
        );
    }
    assert!(key_inequality_check(0.0, -0.999).unwrap());
}

#[test]
fn admissibility_sweep() {
    let s: Vec<f64> = (0..10_000)
        .map(|k| -50.0 + 100.0 * k as f64 / 9_999.0)
        .collect();
    for lambda in [0.0, 0.5, 0.9] {
        for kappa in [-0.5, 0.5, 3.0] {
            let report = admissibility_check(lambda, kappa, &s).unwrap();
            assert!(report.passed, "({lambda}, {kappa}): {}", report.value);
        }
    }
}

#[test]
fn subordination_is_transitive_on_nested_images() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let a = c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4));
        let s = rng.gen_range(0.5..0.95);
        let t = rng.gen_range(0.5..0.95);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        // G = z + a z^2, F(z) = G(s z), f(z) = F(t e^{i theta} z)
        let big_g = PowerSeries::new(vec![c(0.0, 0.0), c(1.0, 0.0), a]).unwrap();
        let big_f = PowerSeries::new(vec![c(0.0, 0.0), c(s, 0.0), a * s * s]).unwrap();
        let w = Complex64::from_polar(t, theta);
        let f = PowerSeries::new(vec![c(0.0, 0.0), w * s, a * s * s * w * w]).unwrap();

        let first = check_subordination(&f, &big_f, 0.9, 0.95, 512).unwrap();
        let second = check_subordination(&big_f, &big_g, 0.95, 0.99, 512).unwrap();
        assert!(first.holds() && first.margin > 0.0);
        assert!(second.holds() && second.margin > 0.0);
        assert!(check_subordination(&f, &big_g, 0.9, 0.99, 512)
            .unwrap()
            .holds());
    }
}

#[test]
fn disk_oracle_agrees_with_general_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let alpha = Complex64::from_polar(
            rng.gen_range(0.0..0.8),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let radius = rng.gen_range(alpha.norm() + 0.05..1.0);
        let g = PowerSeries::new(vec![c(1.0, 0.0), alpha]).unwrap();
        let disk = check_disk_subordination(&g, radius).unwrap();

        let f = PowerSeries::new(vec![c(0.0, 0.0), alpha]).unwrap();
        let target = PowerSeries::new(vec![c(0.0, 0.0), c(radius, 0.0)]).unwrap();
        let general = check_subordination(&f, &target, 0.9999, 1.0 - 1e-8, 512).unwrap();
        assert_eq!(disk.outcome, general.outcome);
        assert!((disk.margin - general.margin).abs() < 1e-6);
    }
}

#[test]
fn theorem_bounds_contract_with_kappa() {
    for a in [0.1, 0.3, 0.49] {
        let g = PowerSeries::quadratic(c(a, 0.0), 8).unwrap();
        for k in 1..=110 {
            let kappa = -1.0 + 0.1 * k as f64;
            // index kappa + 1 (p = kappa, b = 1); B_{kappa+1}(g)/z = 1 - (a c / (4 (kappa+1))) z
            let next = BesselParameters::new(kappa, 1.0, c(1.0, 0.0)).unwrap();
            let premise = apply_b_over_z(&next, &g).unwrap().coeff(1).norm();
            let conclusion = apply_b_over_z(&next.shifted(1).unwrap(), &g)
                .unwrap()
                .coeff(1)
                .norm();
            assert!((premise - a / (4.0 * (kappa + 1.0))).abs() < 1e-15);
            assert!(premise > conclusion);
        }
    }
}

fn quadratic_curve(a: Complex64, rho: f64) -> BoundaryCurve {
    BoundaryCurve::sample(&PowerSeries::quadratic(a, 4).unwrap(), rho, 256).unwrap()
}

proptest! {
    #[test]
    fn winding_respects_rotation_and_reversal(
        a in (-0.45f64..0.45, -0.45f64..0.45),
        rho in 0.3f64..0.99,
        by in 0usize..256,
        w in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let curve = quadratic_curve(c(a.0, a.1), rho);
        let w = c(w.0, w.1);
        let Ok(n) = winding_number(&curve, w) else { return Ok(()); };
        prop_assert!(n == 0 || n == 1);
        prop_assert_eq!(winding_number(&curve.rotated(by), w).unwrap(), n);
        prop_assert_eq!(winding_number(&curve.reversed(), w).unwrap(), -n);
    }
}
