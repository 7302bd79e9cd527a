use alloc::vec::Vec;
use core::ops::Range;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_time, Result};
use crate::math;
use crate::model::{EnsembleParams, LinkConfig, SingleEnsembleConfig};

use super::counts::CountsRecord;
use super::rng::{TrialRandomness, TrialRng};
use super::sampling::{sample_link_phases_with, sample_lorentzian_with};

/// Stokes detector that heralded a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeraldPort {
    S1,
    S2,
}

/// Detector record of one write/read cycle.
///
/// `as_clicks` are the D_aS1/D_aS2 detectors behind the anti-Stokes beam
/// splitter and are only simulated when a Stokes detector fired. The
/// `direct_*` flags are per-node readouts without beam splitters, used for
/// p_ij and the single-node cross-correlation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrialOutcome {
    /// Click at D_S1.
    pub heralded: bool,
    /// D_S1 if it clicked, otherwise D_S2 if it clicked.
    pub herald_port: Option<HeraldPort>,
    pub stokes_clicks: [bool; 2],
    pub as_clicks: [bool; 2],
    /// Excitations created per node (L, R) or per mode (U, D).
    pub excitations: [u8; 2],
    pub direct_stokes: [bool; 2],
    pub direct_anti_stokes: [bool; 2],
}

/// Anything that can run one trial at a given interferometer phase.
pub trait TrialSource {
    fn run_trial(&self, theta: f64, rng: &mut TrialRng) -> TrialOutcome;
}

/// Per-arm probabilities at a fixed storage time.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Arm {
    p_one: f64,
    p_two: f64,
    eta: f64,
    /// Retrieved and detected, `γη`.
    retrieve: f64,
    /// Spontaneous-emission noise photon detected, `χ(1-γ)ξ_se η`.
    spontaneous: f64,
    /// Background click, `Zη`.
    background: f64,
}

impl Arm {
    fn new(p: &EnsembleParams, t: f64) -> Result<Self> {
        p.validate()?;
        let gamma = p.retrieval(t)?;
        let norm = 1.0 + p.chi + p.chi * p.chi;
        Ok(Arm {
            p_one: p.chi / norm,
            p_two: p.chi * p.chi / norm,
            eta: p.eta,
            retrieve: gamma * p.eta,
            spontaneous: p.chi * (1.0 - gamma) * p.xi_se * p.eta,
            background: p.z_noise * p.eta,
        })
    }

    fn excitations(&self, rng: &mut TrialRng) -> u8 {
        let u: f64 = rng.random();
        if u < self.p_two {
            2
        } else if u < self.p_two + self.p_one {
            1
        } else {
            0
        }
    }
}

fn bernoulli(rng: &mut TrialRng, p: f64) -> bool {
    rng.random::<f64>() < p
}

fn port(rng: &mut TrialRng) -> usize {
    usize::from(rng.random::<bool>())
}

/// Two-arm engine shared by the link and the single-ensemble experiment.
///
/// `delta` is the stored phase difference plus θ, and `contrast` the ideal
/// fringe contrast `ζξ'` of the single-excitation component.
fn run_two_arm(arms: &[Arm; 2], contrast: f64, delta: f64, rng: &mut TrialRng) -> TrialOutcome {
    let k = [arms[0].excitations(rng), arms[1].excitations(rng)];
    let mut out = TrialOutcome { excitations: k, ..TrialOutcome::default() };

    for (arm, &n) in arms.iter().zip(&k) {
        for _ in 0..n {
            if bernoulli(rng, arm.eta) {
                out.stokes_clicks[port(rng)] = true;
            }
        }
    }
    out.heralded = out.stokes_clicks[0];
    out.herald_port = match out.stokes_clicks {
        [true, _] => Some(HeraldPort::S1),
        [false, true] => Some(HeraldPort::S2),
        [false, false] => None,
    };

    for (i, (arm, &n)) in arms.iter().zip(&k).enumerate() {
        let mut hit = false;
        for _ in 0..n {
            hit |= bernoulli(rng, arm.eta);
        }
        out.direct_stokes[i] = hit;
    }

    if let Some(herald) = out.herald_port {
        if k[0] + k[1] == 1 {
            let (wl, wr) = (arms[0].retrieve, arms[1].retrieve);
            if bernoulli(rng, 0.5 * (wl + wr)) {
                let overlap = 2.0 * math::sqrt(wl * wr) / (wl + wr);
                let sign = if herald == HeraldPort::S1 { 1.0 } else { -1.0 };
                let p_first = 0.5 * (1.0 + sign * contrast * overlap * math::cos(delta));
                let p = if bernoulli(rng, p_first) { 0 } else { 1 };
                out.as_clicks[p] = true;
            }
        } else {
            for (arm, &n) in arms.iter().zip(&k) {
                for _ in 0..n {
                    if bernoulli(rng, arm.retrieve) {
                        out.as_clicks[port(rng)] = true;
                    }
                }
            }
        }
        for arm in arms {
            if bernoulli(rng, arm.spontaneous) {
                out.as_clicks[port(rng)] = true;
            }
            if bernoulli(rng, arm.background) {
                out.as_clicks[port(rng)] = true;
            }
        }
    }

    for (i, (arm, &n)) in arms.iter().zip(&k).enumerate() {
        let mut hit = false;
        for _ in 0..n {
            hit |= bernoulli(rng, arm.retrieve);
        }
        hit |= bernoulli(rng, arm.spontaneous);
        hit |= bernoulli(rng, arm.background);
        out.direct_anti_stokes[i] = hit;
    }
    out
}

/// A link prepared for trials at one storage time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkTrialSetup {
    cfg: LinkConfig,
    t: f64,
    arms: [Arm; 2],
}

impl LinkTrialSetup {
    pub fn new(cfg: &LinkConfig, t: f64) -> Result<Self> {
        check_time(t)?;
        cfg.validate()?;
        Ok(LinkTrialSetup { cfg: *cfg, t, arms: [Arm::new(&cfg.node_l, t)?, Arm::new(&cfg.node_r, t)?] })
    }
}

impl TrialSource for LinkTrialSetup {
    fn run_trial(&self, theta: f64, rng: &mut TrialRng) -> TrialOutcome {
        let (phi_l, phi_r) = sample_link_phases_with(&self.cfg, self.t, rng);
        let mut delta = phi_l - phi_r + theta;
        if self.cfg.residual_phase_jitter > 0.0 {
            let z: f64 = rng.sample(StandardNormal);
            delta += self.cfg.residual_phase_jitter * z;
        }
        run_two_arm(&self.arms, self.cfg.zeta * self.cfg.xi_prime, delta, rng)
    }
}

/// Two spin-wave modes of one ensemble prepared for trials at one storage time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleEnsembleTrialSetup {
    cfg: SingleEnsembleConfig,
    t: f64,
    arms: [Arm; 2],
}

impl SingleEnsembleTrialSetup {
    pub fn new(cfg: &SingleEnsembleConfig, t: f64) -> Result<Self> {
        check_time(t)?;
        cfg.validate()?;
        Ok(SingleEnsembleTrialSetup {
            cfg: *cfg,
            t,
            arms: [Arm::new(&cfg.ensemble_u, t)?, Arm::new(&cfg.ensemble_d, t)?],
        })
    }
}

impl TrialSource for SingleEnsembleTrialSetup {
    fn run_trial(&self, theta: f64, rng: &mut TrialRng) -> TrialOutcome {
        let db = sample_lorentzian_with(self.cfg.noise.sigma_b, rng);
        let mu = self.cfg.mode_d.mu_prime - self.cfg.mode_u.mu_prime;
        let delta = math::TAU * mu * db * self.t + theta;
        run_two_arm(&self.arms, self.cfg.zeta * self.cfg.xi_prime, delta, rng)
    }
}

/// One link trial at storage time `t` and interferometer phase `theta`.
pub fn run_link_trial(cfg: &LinkConfig, t: f64, theta: f64, r: TrialRandomness) -> Result<TrialOutcome> {
    Ok(LinkTrialSetup::new(cfg, t)?.run_trial(theta, &mut r.rng()))
}

/// One trial of the two-mode single-ensemble interferometer.
pub fn run_single_ensemble_trial(
    cfg: &SingleEnsembleConfig,
    t: f64,
    theta: f64,
    r: TrialRandomness,
) -> Result<TrialOutcome> {
    Ok(SingleEnsembleTrialSetup::new(cfg, t)?.run_trial(theta, &mut r.rng()))
}

/// `n` equally spaced phases over [0, 2π).
pub fn theta_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| math::TAU * k as f64 / n as f64).collect()
}

/// Seed, phase bins and trial budget of one Monte-Carlo point.
///
/// Trial `i` of bin `b` uses stream `b * trials_per_bin + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct McPlan {
    pub seed: u64,
    pub thetas: Vec<f64>,
    pub trials_per_bin: u64,
}

impl McPlan {
    pub fn new(seed: u64, theta_points: usize, trials_per_bin: u64) -> Self {
        McPlan { seed, thetas: theta_grid(theta_points), trials_per_bin }
    }

    pub fn total_trials(&self) -> u64 {
        self.trials_per_bin * self.thetas.len() as u64
    }
}

/// Runs trials `range` of phase bin `bin` into a fresh record.
pub fn simulate_chunk<S: TrialSource + ?Sized>(
    source: &S,
    plan: &McPlan,
    bin: usize,
    range: Range<u64>,
) -> CountsRecord {
    let mut counts = CountsRecord::new(&plan.thetas);
    let theta = plan.thetas[bin];
    let offset = bin as u64 * plan.trials_per_bin;
    for i in range {
        let mut rng = TrialRandomness::new(plan.seed, offset + i).rng();
        counts.record(bin, &source.run_trial(theta, &mut rng));
    }
    counts
}

/// Runs the whole plan on the calling thread.
pub fn simulate<S: TrialSource + ?Sized>(source: &S, plan: &McPlan) -> CountsRecord {
    let mut counts = CountsRecord::new(&plan.thetas);
    for bin in 0..plan.thetas.len() {
        let chunk = simulate_chunk(source, plan, bin, 0..plan.trials_per_bin);
        counts.merge(&chunk).expect("chunks of one plan share their phase grid");
    }
    counts
}
