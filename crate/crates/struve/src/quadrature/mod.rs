//! Integration back-ends.
//!
//! Integrands receive a [`Node`] carrying the abscissa together with its exact
//! distances to the interval ends, so kernels like `(1 - t^2)^s` can be formed
//! without cancellation after an endpoint substitution.

mod accel;
mod gk;
mod oscillatory;
mod semi_infinite;
mod vertical;

pub use accel::{aitken_iterated, AccelerationState};
pub use gk::{integrate_finite, integrate_fn};
pub use oscillatory::integrate_bessel_oscillatory;
pub use semi_infinite::{integrate_semi_infinite_decay, Decay};
pub use vertical::integrate_vertical_line;

use crate::config::{EvalResult, NumericConfig};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    /// x - a, exact where a substitution produced it.
    pub from_a: f64,
    /// b - x, exact where a substitution produced it (infinite on half-lines).
    pub to_b: f64,
}

/// Behaviour of the integrand at an interval end.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Endpoint {
    #[default]
    Regular,
    /// Finite limit supplied by the caller; nodes never touch the end itself.
    Removable(f64),
    /// Integrand behaves like |x - end|^beta, beta > -1.
    Algebraic(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite { a: f64, b: f64 },
    SemiInfinite { a: f64, decay: Decay },
    BesselOscillatory { nu: f64, scale: f64, p: f64 },
}

pub struct QuadratureProblem<'a> {
    pub integrand: &'a (dyn Fn(Node) -> f64 + Sync),
    pub domain: Domain,
    pub left: Endpoint,
    pub right: Endpoint,
}

impl<'a> QuadratureProblem<'a> {
    pub fn finite(integrand: &'a (dyn Fn(Node) -> f64 + Sync), a: f64, b: f64) -> Self {
        QuadratureProblem {
            integrand,
            domain: Domain::Finite { a, b },
            left: Endpoint::Regular,
            right: Endpoint::Regular,
        }
    }

    pub fn semi_infinite(integrand: &'a (dyn Fn(Node) -> f64 + Sync), a: f64, decay: Decay) -> Self {
        QuadratureProblem {
            integrand,
            domain: Domain::SemiInfinite { a, decay },
            left: Endpoint::Regular,
            right: Endpoint::Regular,
        }
    }

    pub fn with_left(mut self, e: Endpoint) -> Self {
        self.left = e;
        self
    }

    pub fn with_right(mut self, e: Endpoint) -> Self {
        self.right = e;
        self
    }

    pub fn solve(&self, cfg: &NumericConfig) -> Result<EvalResult> {
        match self.domain {
            Domain::Finite { a, b } => integrate_finite(self.integrand, a, b, self.left, self.right, cfg),
            Domain::SemiInfinite { a, decay } => {
                integrate_semi_infinite_decay(self.integrand, a, decay, self.left, cfg)
            }
            Domain::BesselOscillatory { nu, scale, p } => {
                let f = self.integrand;
                let g = |x: f64| f(Node { x, from_a: x, to_b: f64::INFINITY });
                integrate_bessel_oscillatory(&g, nu, scale, p, self.left, cfg)
            }
        }
    }
}
