//! Coefficient sequences, exponent sequences and the fractional-part operator.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type Indexed = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// Sign behaviour of a coefficient sequence, used to pick a tail model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPattern {
    /// All terms share one sign.
    Positive,
    /// a_n = (-1)^{n-1} |a_n| with |a_n| eventually smooth and monotone.
    Alternating,
    /// No usable structure; only absolute bounds apply.
    General,
}

/// A real sequence a_n (n >= 1), optionally with a smooth extension a(s) and a'(s).
#[derive(Clone)]
pub struct CoefficientSequence {
    term: Indexed,
    extension: Option<(Scalar, Scalar)>,
    /// limsup |a_n|^{1/n}.
    pub root_limsup: f64,
    /// |a_n| <= C n^p for large n, as (C, p).
    pub power_bound: (f64, f64),
    pub sign: SignPattern,
    /// Some(q) when n^{-q'} |a_n| is a completely monotone function of n for every q' >= q.
    pub monotone_from: Option<f64>,
}

impl fmt::Debug for CoefficientSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientSequence")
            .field("root_limsup", &self.root_limsup)
            .field("power_bound", &self.power_bound)
            .field("sign", &self.sign)
            .field("monotone_from", &self.monotone_from)
            .field("extension", &self.extension.is_some())
            .finish()
    }
}

impl CoefficientSequence {
    pub fn from_fn(term: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        CoefficientSequence {
            term: Arc::new(term),
            extension: None,
            root_limsup: 1.0,
            power_bound: (1.0, 0.0),
            sign: SignPattern::General,
            monotone_from: None,
        }
    }

    /// a_n = 1, extended by the constant 1.
    pub fn ones() -> Self {
        CoefficientSequence::from_fn(|_| 1.0)
            .with_extension(|_| 1.0, |_| 0.0)
            .with_sign(SignPattern::Positive)
    }

    /// a_n = (-1)^{n-1}, extended by cos(pi (s - 1)).
    pub fn alternating_ones() -> Self {
        use std::f64::consts::PI;
        CoefficientSequence::from_fn(|n| if n % 2 == 1 { 1.0 } else { -1.0 })
            .with_extension(|s| (PI * (s - 1.0)).cos(), |s| -PI * (PI * (s - 1.0)).sin())
            .with_sign(SignPattern::Alternating)
            .with_completely_monotone(0.0)
    }

    /// a_n = n^p.
    pub fn power(p: f64) -> Self {
        CoefficientSequence::from_fn(move |n| (n as f64).powf(p))
            .with_extension(move |s| s.powf(p), move |s| p * s.powf(p - 1.0))
            .with_sign(SignPattern::Positive)
            .with_power_bound(1.0, p)
    }

    pub fn with_extension(
        mut self,
        a: impl Fn(f64) -> f64 + Send + Sync + 'static,
        da: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.extension = Some((Arc::new(a), Arc::new(da)));
        self
    }

    pub fn with_sign(mut self, sign: SignPattern) -> Self {
        self.sign = sign;
        self
    }

    pub fn with_power_bound(mut self, c: f64, p: f64) -> Self {
        self.power_bound = (c, p);
        self
    }

    /// Declares n^{-q'} |a_n| completely monotone in n for all q' >= q.
    pub fn with_completely_monotone(mut self, q: f64) -> Self {
        self.monotone_from = Some(q);
        self
    }

    pub fn with_root_limsup(mut self, l: f64) -> Self {
        self.root_limsup = l;
        self
    }

    pub fn at(&self, n: u64) -> f64 {
        (self.term)(n)
    }

    pub fn has_extension(&self) -> bool {
        self.extension.is_some()
    }

    /// (a(s), a'(s)) from the smooth extension.
    pub fn smooth(&self, s: f64) -> Option<(f64, f64)> {
        self.extension.as_ref().map(|(a, da)| (a(s), da(s)))
    }

    /// Largest relative mismatch between a_n and a(n) over the first `count` integers.
    pub fn extension_mismatch(&self, count: u64) -> Option<f64> {
        let (a, _) = self.extension.as_ref()?;
        let mut worst = 0.0f64;
        for n in 1..=count {
            let exact = self.at(n);
            let ext = a(n as f64);
            worst = worst.max((exact - ext).abs() / exact.abs().max(1e-300));
        }
        Some(worst)
    }
}

/// The exponents lambda_n of a Dirichlet series sum a_n e^{-r lambda_n}.
#[derive(Clone)]
pub enum Exponents {
    /// lambda_n = ln n, the ordinary Dirichlet series.
    Log,
    /// lambda_n = step * n.
    Linear { step: f64 },
    /// Any strictly increasing non-negative sequence with its inverse.
    Custom { lambda: Scalar, inverse: Scalar },
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponents::Log => write!(f, "Log"),
            Exponents::Linear { step } => write!(f, "Linear({step})"),
            Exponents::Custom { .. } => write!(f, "Custom"),
        }
    }
}

impl Exponents {
    pub fn custom(
        lambda: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Exponents::Custom { lambda: Arc::new(lambda), inverse: Arc::new(inverse) }
    }

    pub fn at(&self, s: f64) -> f64 {
        match self {
            Exponents::Log => s.ln(),
            Exponents::Linear { step } => step * s,
            Exponents::Custom { lambda, .. } => lambda(s),
        }
    }

    pub fn inverse(&self, t: f64) -> f64 {
        match self {
            Exponents::Log => t.exp(),
            Exponents::Linear { step } => t / step,
            Exponents::Custom { inverse, .. } => inverse(t),
        }
    }

    /// e^{-r lambda_n}.
    pub fn weight(&self, r: f64, n: u64) -> f64 {
        match self {
            Exponents::Log => (n as f64).powf(-r),
            _ => (-r * self.at(n as f64)).exp(),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if let Exponents::Linear { step } = self {
            if !(*step > 0.0) {
                return domain("linear exponents need a positive step");
            }
        }
        if let Exponents::Custom { lambda, inverse } = self {
            let mut prev = lambda(1.0);
            if !(prev >= 0.0) {
                return domain("exponents must be non-negative");
            }
            for n in 2..=16 {
                let l = lambda(n as f64);
                if !(l > prev) {
                    return domain("exponents must be strictly increasing");
                }
                if (inverse(l) - n as f64).abs() > 1e-9 * n as f64 {
                    return domain("supplied inverse does not invert the exponents");
                }
                prev = l;
            }
        }
        Ok(())
    }
}

/// The operator a |-> a(x) + {x} a'(x).
#[derive(Debug, Clone, Copy, Default)]
pub struct FracOperator;

impl FracOperator {
    pub fn apply(&self, a: f64, da: f64, x: f64) -> f64 {
        a + (x - x.floor()) * da
    }

    pub fn apply_seq(&self, seq: &CoefficientSequence, x: f64) -> Result<f64> {
        match seq.smooth(x) {
            Some((a, da)) => Ok(self.apply(a, da, x)),
            None => Err(crate::error::Error::Usage("sequence has no smooth extension".into())),
        }
    }
}
