use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use specgame::powerlaw::{
    fit_alpha, fit_summary, goodness_of_fit, ks_distance, scan_xmin, vuong_test, FitError, Preferred,
};

/// Inverse-CDF Pareto draws, written out independently of the library.
fn pareto(n: usize, x_min: f64, alpha: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = 1.0 - rng.random::<f64>();
            x_min * u.powf(-1.0 / (alpha - 1.0))
        })
        .collect()
}

fn exponential(n: usize, shift: f64, rate: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exp = Exp::new(rate).unwrap();
    (0..n).map(|_| shift + exp.sample(&mut rng)).collect()
}

/// Sup over every tail point of the gap between the empirical CDF, on both
/// sides of its step, and the fitted CDF.
fn brute_force_ks(samples: &[f64], x_min: f64, alpha: f64) -> f64 {
    let mut tail: Vec<f64> = samples.iter().copied().filter(|&x| x >= x_min).collect();
    tail.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = tail.len() as f64;
    let mut d: f64 = 0.0;
    for (i, x) in tail.iter().enumerate() {
        let f = 1.0 - (x / x_min).powf(1.0 - alpha);
        d = d.max((f - i as f64 / n).abs()).max((f - (i + 1) as f64 / n).abs());
    }
    d
}

#[test]
fn recovers_pareto_exponent_at_true_xmin() {
    for seed in 0..5 {
        let x = pareto(10_000, 1.0, 2.5, seed);
        let alpha = fit_alpha(&x, 1.0).unwrap();
        assert!((alpha - 2.5).abs() < 0.05, "seed {seed}: {alpha}");
    }
}

#[test]
fn pure_pareto_scan_starts_near_the_minimum() {
    let x = pareto(5_000, 3.0, 2.2, 9);
    let fit = scan_xmin(&x).unwrap();
    let mut sorted = x.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // The x_min lies in the lower part of the sample and the tail is large.
    assert!(fit.x_min <= sorted[x.len() / 4], "{fit:?}");
    assert!((fit.alpha - 2.2).abs() < 0.1, "{fit:?}");
    assert!(fit.ks_distance <= 0.03);
}

#[test]
fn mixture_changepoint_is_found_within_a_decade() {
    // Uniform body on [1, 100) and a Pareto tail from 100 with α = 2.5.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut x: Vec<f64> = (0..4_000).map(|_| rng.random_range(1.0..100.0)).collect();
    x.extend(pareto(4_000, 100.0, 2.5, 5));
    let fit = scan_xmin(&x).unwrap();
    assert!(fit.x_min >= 100.0 / 10f64.sqrt() && fit.x_min <= 100.0 * 10f64.sqrt(), "{fit:?}");
    assert!((fit.alpha - 2.5).abs() < 0.15, "{fit:?}");
}

#[test]
fn scan_ks_matches_brute_force() {
    let x = pareto(800, 2.0, 1.9, 21);
    let fit = scan_xmin(&x).unwrap();
    let bf = brute_force_ks(&x, fit.x_min, fit.alpha);
    assert!((fit.ks_distance - bf).abs() < 1e-12);
    assert!((ks_distance(&x, fit.x_min, fit.alpha) - bf).abs() < 1e-12);
    assert_eq!(fit.n_tail, x.iter().filter(|&&v| v >= fit.x_min).count());
    assert!(x.contains(&fit.x_min));
}

#[test]
fn integer_data_with_ties() {
    let x: Vec<f64> = pareto(3_000, 9.0, 2.0, 6).iter().map(|v| v.floor()).collect();
    let fit = scan_xmin(&x).unwrap();
    let bf = brute_force_ks(&x, fit.x_min, fit.alpha);
    assert!((fit.ks_distance - bf).abs() < 1e-12);
}

#[test]
fn gof_accepts_pareto_and_rejects_exponential() {
    let x = pareto(1_000, 1.0, 2.5, 3);
    let fit = scan_xmin(&x).unwrap();
    let g = goodness_of_fit(&x, &fit, 100, 1).unwrap();
    assert!(g.p_value > 0.1, "{g:?}");
    assert_eq!(g.n_bootstrap + g.n_failed, 100);

    let y = exponential(1_000, 1.0, 1.0, 3);
    let fit = scan_xmin(&y).unwrap();
    let g = goodness_of_fit(&y, &fit, 100, 1).unwrap();
    assert!(g.p_value < 0.1, "{g:?}");
}

#[test]
fn gof_is_reproducible_and_seed_sensitive() {
    let x = pareto(400, 1.0, 2.0, 8);
    let fit = scan_xmin(&x).unwrap();
    let a = goodness_of_fit(&x, &fit, 120, 77).unwrap();
    let b = goodness_of_fit(&x, &fit, 120, 77).unwrap();
    assert_eq!(a.p_value.to_bits(), b.p_value.to_bits());
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let c = pool.install(|| goodness_of_fit(&x, &fit, 120, 77).unwrap());
    assert_eq!(a, c);
}

#[test]
fn gof_is_calibrated_on_model_data() {
    let mut plausible = 0;
    for seed in 0..20 {
        let x = pareto(300, 1.0, 2.3, 100 + seed);
        let fit = scan_xmin(&x).unwrap();
        if goodness_of_fit(&x, &fit, 100, seed).unwrap().p_value > 0.1 {
            plausible += 1;
        }
    }
    // Expected about 18 of 20; 14 or more has probability > 0.99.
    assert!(plausible >= 14, "{plausible}");
}

#[test]
fn gof_rejects_bad_input() {
    let x = pareto(300, 1.0, 2.3, 1);
    let fit = scan_xmin(&x).unwrap();
    assert_eq!(goodness_of_fit(&x, &fit, 50, 0), Err(FitError::TooFewReplicates { needed: 100, got: 50 }));
    let mut bad = fit;
    bad.alpha = 0.5;
    assert!(matches!(goodness_of_fit(&x, &bad, 100, 0), Err(FitError::InvalidFit(_))));
    let mut bad = fit;
    bad.n_tail += 1;
    assert!(matches!(goodness_of_fit(&x, &bad, 100, 0), Err(FitError::InvalidFit(_))));
}

#[test]
fn vuong_prefers_the_generating_model() {
    let mut power = 0;
    let mut expo = 0;
    for seed in 0..100 {
        let x = pareto(1_000, 1.0, 2.5, seed);
        if vuong_test(&x, 1.0).unwrap().preferred == Preferred::PowerLaw {
            power += 1;
        }
        let y = exponential(1_000, 1.0, 0.5, seed);
        let y_min = y.iter().copied().fold(f64::INFINITY, f64::min);
        if vuong_test(&y, y_min).unwrap().preferred == Preferred::Exponential {
            expo += 1;
        }
    }
    assert!(power >= 95, "{power}");
    assert!(expo >= 95, "{expo}");
}

#[test]
fn summary_bundles_all_results() {
    let x = pareto(600, 5.0, 2.1, 12);
    let s = fit_summary(&x, 100, 3).unwrap();
    assert_eq!(s.n_samples, 600);
    assert!(s.p_gof.is_some());
    let json = serde_json::to_string(&s).unwrap();
    for key in ["alpha", "x_min", "ks", "p_gof", "vuong_lr", "vuong_p"] {
        assert!(json.contains(&format!("\"{key}\"")), "{json}");
    }
    assert!(fit_summary(&x, 0, 3).unwrap().p_gof.is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exponent_is_scale_equivariant(seed in any::<u64>(), c in 1e-3f64..1e3) {
        let x = pareto(200, 1.0, 2.0, seed);
        let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
        let a = fit_alpha(&x, 1.0).unwrap();
        let b = fit_alpha(&scaled, c).unwrap();
        prop_assert!((a - b).abs() < 1e-9 * a);
    }

    #[test]
    fn scanned_ks_equals_brute_force(values in proptest::collection::vec(1u32..500, 20..200)) {
        let x: Vec<f64> = values.iter().map(|&v| v as f64).collect();
        match scan_xmin(&x) {
            Ok(fit) => {
                prop_assert!(fit.alpha > 1.0);
                prop_assert!(fit.n_tail >= 10);
                prop_assert!((0.0..=1.0).contains(&fit.ks_distance));
                prop_assert!((fit.ks_distance - brute_force_ks(&x, fit.x_min, fit.alpha)).abs() < 1e-12);
            }
            Err(e) => prop_assert_eq!(e, FitError::NoCandidate(10)),
        }
    }
}
