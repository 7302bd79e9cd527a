//! Closed-form model of spin-wave decay, SMFF dephasing, photon counting
//! probabilities, visibility and concurrence.
//!
//! Units follow the usual cold-atom mix: seconds, Hz/G for magnetic
//! sensitivities, Gauss for fields, rad/m for wavevectors.
//!
//! Every function here is pure.

mod concurrence;
mod decay;
mod dephasing;
mod detection;
mod link;
mod params;

pub use concurrence::{concurrence_from_probs, concurrence_margin, concurrence_param, concurrence_param_averaged};
pub use decay::{amplitude_factor, motion_lifetimes, retrieval_efficiency, MotionLifetimes};
pub use dephasing::{dephasing_lifetime, lorentzian_characteristic};
pub use detection::{
    coincidence_probability, coincidence_probability_with_overlap, cross_correlation,
    cross_correlation_from_efficiency, visibility, CoincidenceBreakdown,
};
pub use link::{link_point, single_ensemble_point, LinkPoint, SingleEnsemblePoint};
pub use params::{
    DecayModel, EnsembleParams, LinkConfig, ModeLabel, MotionBroadeningParams, NoiseField, SingleEnsembleConfig,
    SpinWaveMode, SupplyTopology,
};
