use dlcz_core::model::{
    coincidence_probability_with_overlap, cross_correlation, single_ensemble_point, visibility, LinkConfig, NoiseField,
    SingleEnsembleConfig,
};
use dlcz_core::stochastic::{
    estimate_statistics, estimate_visibility, estimate_visibility_with, simulate, HeraldPort, LinkTrialSetup, McPlan,
    SingleEnsembleTrialSetup, VisibilityMethod,
};

fn within(x: f64, expected: f64, se: f64, k: f64) -> bool {
    (x - expected).abs() <= k * se
}

#[test]
fn link_estimates_match_closed_form() {
    for (sigma_b, seed) in [(0.0, 11), (1e-3, 12), (2e-3, 13)] {
        let cfg = LinkConfig::lattice_default().with_noise(NoiseField::independent(sigma_b));
        let tau0 = LinkConfig::lattice_default().with_noise(NoiseField::independent(1e-3)).tau_0().as_secs();
        for t in [0.0, tau0 / 2.0, tau0, 2.0 * tau0] {
            let plan = McPlan::new(seed, 12, 100_000);
            let counts = simulate(&LinkTrialSetup::new(&cfg, t).unwrap(), &plan);
            let stats = estimate_statistics(&counts).unwrap();

            let g = cross_correlation(&cfg.node_l, t).unwrap();
            assert!(within(stats.g.value, g, stats.g.std_error, 3.0), "g {:?} vs {g}", stats.g);
            let v = visibility(g, t, cfg.tau_0(), cfg.zeta, cfg.xi_prime).unwrap();
            let ve = stats.visibility;
            assert!(within(ve.v, v, ve.std_error, 3.0), "V {ve:?} vs {v} at t={t}, σ={sigma_b}");

            for b in &counts.theta_bins {
                let model =
                    coincidence_probability_with_overlap(b.theta, &cfg.node_l, cfg.tau_0(), t, cfg.zeta).unwrap();
                let n = b.trials as f64;
                let rate = b.coincidences as f64 / n;
                let se = (model.p_coincidence * (1.0 - model.p_coincidence) / n).sqrt();
                assert!(
                    within(rate, model.p_coincidence, se, 3.5),
                    "P(θ={}) {rate} vs {}",
                    b.theta,
                    model.p_coincidence
                );
            }
        }
    }
}

#[test]
fn herald_port_flips_fringe() {
    let cfg = LinkConfig::lattice_default();
    let counts = simulate(&LinkTrialSetup::new(&cfg, 0.0).unwrap(), &McPlan::new(21, 12, 100_000));
    let s1 = estimate_visibility(&counts).unwrap();
    let s2 = estimate_visibility_with(&counts, VisibilityMethod::CosineFit, HeraldPort::S2).unwrap();
    assert!(s1.amplitude > 0.0 && s2.amplitude < 0.0);
    let se = (s1.std_error.powi(2) + s2.std_error.powi(2)).sqrt();
    assert!(within(s1.v, s2.v, se, 3.0));
}

#[test]
fn max_min_agrees_with_fit() {
    let cfg = LinkConfig::lattice_default();
    let counts = simulate(&LinkTrialSetup::new(&cfg, 0.0).unwrap(), &McPlan::new(22, 12, 100_000));
    let fit = estimate_visibility(&counts).unwrap();
    let mm = estimate_visibility_with(&counts, VisibilityMethod::MaxMin, HeraldPort::S1).unwrap();
    // the max/min estimator picks the extreme bins and is biased upwards
    assert!(mm.v > fit.v - 3.0 * mm.std_error && mm.v < fit.v + 6.0 * mm.std_error, "{fit:?} {mm:?}");
}

#[test]
fn shared_supply_is_immune_to_field_noise() {
    let t = 0.03;
    let quiet = LinkConfig::lattice_default().with_noise(NoiseField::shared(0.0));
    let noisy = LinkConfig::lattice_default().with_noise(NoiseField::shared(4e-3));
    let a = estimate_visibility(&simulate(&LinkTrialSetup::new(&quiet, t).unwrap(), &McPlan::new(31, 12, 100_000)))
        .unwrap();
    let b = estimate_visibility(&simulate(&LinkTrialSetup::new(&noisy, t).unwrap(), &McPlan::new(32, 12, 100_000)))
        .unwrap();
    let se = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    assert!(within(a.v, b.v, se, 3.0), "{a:?} {b:?}");
}

#[test]
fn p11_scales_with_chi_squared() {
    let run = |chi: f64, seed| {
        let mut cfg = LinkConfig::lattice_default();
        cfg.node_l.chi = chi;
        cfg.node_r.chi = chi;
        let c = simulate(&LinkTrialSetup::new(&cfg, 0.0).unwrap(), &McPlan::new(seed, 12, 400_000));
        let s = estimate_statistics(&c).unwrap();
        let joint = c.pij_counts[1][1] as f64 / c.n_trials() as f64;
        (s.p[1][1], s.p_std_error[1][1], joint, c.pij_counts[1][1] as f64)
    };
    let (a, sa, ja, na) = run(0.01, 41);
    let (b, sb, jb, nb) = run(0.02, 42);
    let ratio = jb / ja;
    let se = ratio * (1.0 / na + 1.0 / nb).sqrt();
    assert!(within(ratio, 4.0, se, 3.0), "joint {ratio} ± {se}");
    let ratio = b / a;
    let se = ratio * ((sa / a).powi(2) + (sb / b).powi(2)).sqrt();
    assert!(within(ratio, 2.0, se, 3.0), "conditional {ratio} ± {se}");
}

#[test]
fn mixed_pair_dephases_and_same_pair_does_not() {
    let (chi, eta) = (0.02, 0.4);
    let mixed = SingleEnsembleConfig::mfi_mfs(chi, eta);
    let tau0 = mixed.tau_0().as_secs();
    let v_at = |cfg: &SingleEnsembleConfig, t: f64, seed| {
        estimate_visibility(&simulate(&SingleEnsembleTrialSetup::new(cfg, t).unwrap(), &McPlan::new(seed, 12, 100_000)))
            .unwrap()
    };
    let v0 = v_at(&mixed, 0.0, 51);
    let v1 = v_at(&mixed, tau0, 52);
    let closed0 = single_ensemble_point(&mixed, 0.0).unwrap().visibility;
    let closed1 = single_ensemble_point(&mixed, tau0).unwrap().visibility;
    assert!(within(v0.v, closed0, v0.std_error, 3.0), "{v0:?} vs {closed0}");
    assert!(within(v1.v, closed1, v1.std_error, 3.0), "{v1:?} vs {closed1}");
    let ratio = v1.v / v0.v;
    let se = ratio * ((v0.std_error / v0.v).powi(2) + (v1.std_error / v1.v).powi(2)).sqrt();
    assert!(within(ratio, closed1 / closed0, se, 3.0), "{ratio} ± {se}");

    let same = SingleEnsembleConfig::mfs_mfs(chi, eta);
    let a = v_at(&same, 200e-6, 53);
    let mut quiet = same;
    quiet.noise.sigma_b = 0.0;
    let b = v_at(&quiet, 200e-6, 54);
    let se = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    assert!(within(a.v, b.v, se, 3.0));
}
