//! Tolerances, budgets and the result record shared by every routine.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PrecisionTier {
    Standard,
    #[default]
    Compensated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
    pub precision_tier: PrecisionTier,
    /// Maximum number of adaptive subdivisions (or cells) per integral.
    pub quad_budget: usize,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-15,
            max_terms: 20_000,
            precision_tier: PrecisionTier::Compensated,
            quad_budget: 2000,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) {
            return Err(Error::Usage("rel_tol must be > 0 and abs_tol >= 0".into()));
        }
        if self.max_terms < 8 {
            return Err(Error::Usage("max_terms must be at least 8".into()));
        }
        if self.quad_budget < 16 {
            return Err(Error::Usage("quad_budget must be at least 16".into()));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_quad_budget(mut self, quad_budget: usize) -> Self {
        self.quad_budget = quad_budget;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_tier(mut self, tier: PrecisionTier) -> Self {
        self.precision_tier = tier;
        self
    }

    /// Error target for a value of the given magnitude.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    pub fn accepts(&self, value: f64, err: f64) -> bool {
        err.is_finite() && value.is_finite() && err <= self.target(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    /// Absolute error estimate.
    pub err_est: f64,
    /// Terms summed or integrand evaluations spent.
    pub work: u64,
    pub converged: bool,
}

impl EvalResult {
    /// Builds a result whose convergence flag follows the config target.
    pub fn checked(value: f64, err_est: f64, work: u64, cfg: &NumericConfig) -> Self {
        EvalResult {
            value,
            err_est,
            work,
            converged: cfg.accepts(value, err_est),
        }
    }

    pub fn exact(value: f64) -> Self {
        EvalResult {
            value,
            err_est: 0.0,
            work: 0,
            converged: true,
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        EvalResult {
            value: self.value * factor,
            err_est: self.err_est * factor.abs(),
            ..self
        }
    }

    /// Linear combination `self + c * other`, errors added in absolute value.
    pub fn axpy(self, c: f64, other: EvalResult) -> Self {
        EvalResult {
            value: self.value + c * other.value,
            err_est: self.err_est + c.abs() * other.err_est,
            work: self.work + other.work,
            converged: self.converged && other.converged,
        }
    }


    pub fn relative_error(&self) -> f64 {
        if self.value == 0.0 {
            if self.err_est == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.err_est / self.value.abs()
        }
    }
}

/// Product with relative errors combined to first order.
impl std::ops::Mul for EvalResult {
    type Output = EvalResult;

    fn mul(self, other: EvalResult) -> EvalResult {
        EvalResult {
            value: self.value * other.value,
            err_est: self.err_est * other.value.abs()
                + other.err_est * self.value.abs()
                + self.err_est * other.err_est,
            work: self.work + other.work,
            converged: self.converged && other.converged,
        }
    }
}
