//! Decoherence of single-excitation entanglement in DLCZ quantum-repeater links.
//!
//! The crate has three layers:
//!
//! - [`model`]: closed-form spin-wave decay, Lorentzian dephasing from slow
//!   magnetic-field fluctuations, detection probabilities, visibility and
//!   concurrence.
//! - [`stochastic`]: a shot-by-shot Monte-Carlo engine that simulates the
//!   heralded link (and the single-ensemble two-mode variant) with
//!   counter-based randomness, and estimators that turn counts back into
//!   visibility, cross-correlation and concurrence.
//! - [`analysis`]: least-squares fits, entanglement-lifetime root finding,
//!   lifetime tables and figure curves.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and parallel
//! drivers live in the `dlcz-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
mod error;
mod lifetime;
pub(crate) mod math;
pub mod model;
pub mod stochastic;

pub use error::{Error, Result};
pub use lifetime::Lifetime;

/// Bohr magneton over Planck's constant, in Hz/G.
pub const BOHR_MAGNETON_HZ_PER_GAUSS: f64 = 1.399_624_493_61e6;
