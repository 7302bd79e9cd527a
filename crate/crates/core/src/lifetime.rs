use core::fmt;

use crate::math;

/// A decay lifetime that may be infinite.
///
/// Lifetimes are stored through their rate so that an absent decay channel
/// (`rate == 0`) is exact rather than a large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lifetime {
    Finite(f64),
    Infinite,
}

impl Lifetime {
    /// Lifetime with decay rate `rate` (1/s). A zero rate is infinite.
    pub fn from_rate(rate: f64) -> Self {
        if rate > 0.0 && rate.is_finite() {
            Lifetime::Finite(1.0 / rate)
        } else if rate == 0.0 {
            Lifetime::Infinite
        } else if rate == f64::INFINITY {
            Lifetime::Finite(0.0)
        } else {
            panic!("decay rate must be non-negative, got {rate}")
        }
    }

    /// Lifetime of `secs` seconds; `f64::INFINITY` maps to [`Lifetime::Infinite`].
    pub fn from_secs(secs: f64) -> Self {
        if secs == f64::INFINITY {
            Lifetime::Infinite
        } else {
            Lifetime::Finite(secs)
        }
    }

    pub fn rate(self) -> f64 {
        match self {
            Lifetime::Finite(0.0) => f64::INFINITY,
            Lifetime::Finite(tau) => 1.0 / tau,
            Lifetime::Infinite => 0.0,
        }
    }

    /// Seconds, with `f64::INFINITY` for the infinite case.
    pub fn as_secs(self) -> f64 {
        match self {
            Lifetime::Finite(tau) => tau,
            Lifetime::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Lifetime::Infinite)
    }

    /// `exp(-t / tau)`, exactly 1 for an infinite lifetime.
    pub fn decay(self, t: f64) -> f64 {
        match self {
            Lifetime::Infinite => 1.0,
            Lifetime::Finite(_) => math::exp(-t * self.rate()),
        }
    }
}

impl fmt::Display for Lifetime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lifetime::Finite(tau) => write!(f, "{tau} s"),
            Lifetime::Infinite => f.write_str("inf"),
        }
    }
}
