//! Shot-by-shot Monte-Carlo simulation of heralded single-excitation
//! entanglement and estimators that recover V, g, p_ij and C from counts.
//!
//! Every trial draws from its own counter-based stream keyed by
//! `(seed, trial_index)`, so a [`CountsRecord`] depends only on the seed and
//! the parameters, never on how trials are scheduled. Counts are plain integer
//! tallies, and [`CountsRecord::merge`] is commutative and associative.
//!
//! Each trial prepares one heralded (or not) state and reads it out three
//! ways: through the anti-Stokes beam splitter (fringe), directly per node
//! (p_ij), and directly per node on the Stokes side (singles for g). The
//! readouts draw independent detection randomness, so each one has the exact
//! marginal statistics of a dedicated measurement run.

mod counts;
mod estimate;
mod rng;
mod sampling;
mod trial;

pub use counts::{CountsRecord, NodeSingles, ThetaBin};
pub use estimate::{
    estimate_cross_correlation, estimate_statistics, estimate_visibility, estimate_visibility_with, herald_rate,
    RateEstimate, Statistics, VisibilityEstimate, VisibilityMethod,
};
pub use rng::{derive_seed, TrialRandomness, TrialRng};
pub use sampling::{
    lorentzian_from_uniform, mc_phase_average, sample_link_phases, sample_link_phases_with, sample_lorentzian,
    sample_lorentzian_with, PhaseAverage,
};
pub use trial::{
    run_link_trial, run_single_ensemble_trial, simulate, simulate_chunk, theta_grid, HeraldPort, LinkTrialSetup,
    McPlan, SingleEnsembleTrialSetup, TrialOutcome, TrialSource,
};
