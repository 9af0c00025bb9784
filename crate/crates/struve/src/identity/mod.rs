//! Two-route verification of series-equals-integral identities.
//!
//! Each check computes a left and a right side through routines that share no
//! code embodying the identity itself, and reports the residual against the
//! combined error estimates plus a class tolerance.

mod checks;
pub mod closed_forms;
mod registry;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::{EvalResult, NumericConfig};
use crate::error::Error;

pub use checks::{
    check_bessel_cahen, check_cahen_eta, check_cahen_zeta, check_coth_kernel, check_hamburger, check_kapteyn_routes,
    check_mathieu_kernel, check_mathieu_routes, check_mellin_barnes, check_mellin_kernel, check_neumann_forms,
    check_ode_kapteyn, check_ode_mse, check_ode_schloemilch, check_omega_kernel, check_omega_routes,
    check_sonin_gubler, check_struve_integral_reps, coth_minus_reciprocal, mellin_barnes_integrand, StruveRep,
    MELLIN_STRIP_MARGIN,
};
pub use registry::{
    default_grid, fine_grid, lookup, registry, run_identity, verify_batch, IdentitySpec, Job, Routine,
    PRIMITIVE_ROUTINES,
};

/// Named real parameters of one identity evaluation.
pub type Params = BTreeMap<String, f64>;

/// Tolerance class of an identity, by the weakest route involved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToleranceClass {
    /// Both sides are series or closed forms.
    Series,
    /// One side is a quadrature on the real line.
    Quadrature,
    /// One side is a vertical-line integral.
    VerticalLine,
    /// Residual compared with a scale other than the two sides (ODE residuals).
    SourceScaled,
}

impl ToleranceClass {
    pub fn relative(self) -> f64 {
        match self {
            ToleranceClass::Series => 1e-9,
            ToleranceClass::Quadrature => 1e-6,
            ToleranceClass::VerticalLine => 1e-5,
            ToleranceClass::SourceScaled => 1e-8,
        }
    }
}

/// One identity evaluated at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: Params,
    pub lhs: EvalResult,
    pub rhs: EvalResult,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

const TINY: f64 = 1e-300;

impl IdentityReport {
    /// Builds a report; `tol` is absolute.
    pub fn new(id: &str, params: Params, lhs: EvalResult, rhs: EvalResult, tol: f64) -> Self {
        let abs_residual = (lhs.value - rhs.value).abs();
        let rel_residual = abs_residual / lhs.value.abs().max(rhs.value.abs()).max(TINY);
        let pass = abs_residual <= lhs.err_est + rhs.err_est + tol && lhs.converged && rhs.converged;
        IdentityReport {
            identity_id: id.to_string(),
            params,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tol,
            pass: pass && abs_residual.is_finite(),
            note: None,
        }
    }

    /// Report with the tolerance taken relative to the larger side.
    pub fn relative(id: &str, params: Params, lhs: EvalResult, rhs: EvalResult, class: ToleranceClass) -> Self {
        let scale = lhs.value.abs().max(rhs.value.abs());
        let scale = if scale.is_finite() { scale } else { 0.0 };
        IdentityReport::new(id, params, lhs, rhs, class.relative() * scale)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Both sides reached their error targets.
    pub fn converged(&self) -> bool {
        self.lhs.converged && self.rhs.converged
    }
}

/// Stand-in for a side whose evaluation failed at run time.
pub(crate) fn failed_side() -> EvalResult {
    EvalResult { value: f64::NAN, err_est: f64::INFINITY, work: 0, converged: false }
}

/// Turns a side's runtime error into a failed side plus a note.
pub(crate) fn side(r: crate::Result<EvalResult>, notes: &mut Vec<String>, label: &str) -> EvalResult {
    match r {
        Ok(v) => v,
        Err(e) => {
            notes.push(format!("{label}: {e}"));
            failed_side()
        }
    }
}

pub(crate) fn finish(report: IdentityReport, notes: Vec<String>) -> IdentityReport {
    if notes.is_empty() {
        report
    } else {
        let joined = notes.join("; ");
        match report.note.clone() {
            Some(n) => report.with_note(format!("{n}; {joined}")),
            None => report.with_note(joined),
        }
    }
}

/// Config for a side computed by finite adaptive quadrature.
pub(crate) fn finite_cfg(cfg: &NumericConfig) -> NumericConfig {
    cfg.with_rel_tol(cfg.rel_tol.max(1e-10))
}

/// Config for a side computed by the oscillatory half-line integrator.
pub(crate) fn oscillatory_cfg(cfg: &NumericConfig) -> NumericConfig {
    cfg.with_rel_tol(cfg.rel_tol.max(1e-9))
}

/// Config for a side computed on a vertical line.
pub(crate) fn vertical_cfg(cfg: &NumericConfig) -> NumericConfig {
    cfg.with_rel_tol(cfg.rel_tol.max(1e-8))
}

pub(crate) fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
