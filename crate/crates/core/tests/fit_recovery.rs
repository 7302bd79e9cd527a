use dlcz_core::analysis::{
    fit_cross_correlation, fit_decay, fit_visibility_dephasing, linear_grid, DecayLaw, DecaySeries,
};
use dlcz_core::model::{cross_correlation_from_efficiency, SingleEnsembleConfig};
use dlcz_core::BOHR_MAGNETON_HZ_PER_GAUSS;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn noisy(values: &[f64], rel: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = Normal::new(0.0, rel).unwrap();
    values.iter().map(|v| v * (1.0 + n.sample(&mut rng))).collect()
}

#[test]
fn decay_lifetime_within_five_percent() {
    let t = linear_grid(0.0, 3e-3, 30);
    let clean: Vec<f64> = t.iter().map(|t| 0.22 * (-t / 1e-3).exp()).collect();
    for seed in 0..100 {
        let y = noisy(&clean, 0.02, seed);
        let fit = fit_decay(&DecaySeries::from_pairs(&t, &y).unwrap(), DecayLaw::Exponential).unwrap();
        let tau = fit.value("tau");
        assert!((tau / 1e-3 - 1.0).abs() < 0.05, "seed {seed}: τ = {tau}");
    }
}

#[test]
fn gaussian_lifetime_within_five_percent() {
    let t = linear_grid(0.0, 3e-3, 30);
    let clean: Vec<f64> = t.iter().map(|t| 0.5 * (-(t / 1.2e-3).powi(2)).exp()).collect();
    for seed in 0..100 {
        let y = noisy(&clean, 0.02, seed);
        let fit = fit_decay(&DecaySeries::from_pairs(&t, &y).unwrap(), DecayLaw::Gaussian).unwrap();
        assert!((fit.value("tau") / 1.2e-3 - 1.0).abs() < 0.05);
    }
}

#[test]
fn xi_se_within_fifteen_percent() {
    let (_, down) = SingleEnsembleConfig::cold_cloud(0.01, 0.4);
    let gamma = |t: f64| down.retrieval(t).unwrap();
    let t = linear_grid(0.0, 3e-3, 30);
    let clean: Vec<f64> =
        t.iter().map(|&t| cross_correlation_from_efficiency(gamma(t), 0.01, 0.26, 3.3e-4).unwrap()).collect();
    for seed in 0..100 {
        let g = noisy(&clean, 0.05, 1000 + seed);
        let fit = fit_cross_correlation(&DecaySeries::from_pairs(&t, &g).unwrap(), gamma, 0.01, 3.3e-4).unwrap();
        let xi = fit.value("xi_se");
        assert!((xi / 0.26 - 1.0).abs() < 0.15, "seed {seed}: ξ = {xi}");
    }
}

#[test]
fn dephasing_fit_within_five_percent() {
    let vg = |t: f64| 0.85 * (1.0 - 0.2 * t / 150e-6);
    let t = linear_grid(0.0, 150e-6, 50);
    let clean: Vec<f64> = t.iter().map(|&t| vg(t) * 0.88 * (-t / 50e-6).exp()).collect();
    for seed in 0..100 {
        let v = noisy(&clean, 0.02, 2000 + seed);
        let fit = fit_visibility_dephasing(&DecaySeries::from_pairs(&t, &v).unwrap(), vg, BOHR_MAGNETON_HZ_PER_GAUSS)
            .unwrap();
        assert!((fit.value("tau_0") / 50e-6 - 1.0).abs() < 0.05, "seed {seed}");
        assert!((fit.value("xi_prime") / 0.88 - 1.0).abs() < 0.05, "seed {seed}");
    }
}
