//! Half-order closed forms: D_{1/2}(z) = sqrt(2/(pi z)) (1 - e^{-z}) collapses
//! every Schloemilch-type series to zeta values and polylogarithms.

use std::f64::consts::{LN_2, PI};

use crate::config::NumericConfig;
use crate::error::Result;
use crate::scalar::polylog::polylog;
use crate::scalar::zeta::{eta, zeta};

/// D_{1/2}(z).
pub fn half_order_d(z: f64) -> f64 {
    (2.0 / (PI * z)).sqrt() * -(-z).exp_m1()
}

/// T_{1/2,mu}(x) = sqrt(2/(pi x)) (zeta(mu + 1/2) - Li_{mu+1/2}(e^{-x})).
pub fn half_order_t(mu: f64, x: f64, cfg: &NumericConfig) -> Result<f64> {
    let s = mu + 0.5;
    let li = polylog(s, (-x).exp(), cfg)?.value;
    Ok((2.0 / (PI * x)).sqrt() * (zeta(s)? - li))
}

/// Alternating T_{1/2,mu}(x) = sqrt(2/(pi x)) (eta(mu + 1/2) + Li_{mu+1/2}(-e^{-x})).
pub fn alternating_half_order_t(mu: f64, x: f64, cfg: &NumericConfig) -> Result<f64> {
    let s = mu + 0.5;
    let q = (-x).exp();
    let (e, li) = if s == 1.0 { (LN_2, -q.ln_1p()) } else { (eta(s)?, polylog(s, -q, cfg)?.value) };
    Ok((2.0 / (PI * x)).sqrt() * (e + li))
}

/// Right side Upsilon^{(2)}_{mu+2}(x) - zeta(mu + 1/2) s(x) of the Schloemilch
/// equation at nu = 1/2, where s(x) = sqrt(2/(pi x)).
pub fn half_order_schloemilch_ode(mu: f64, x: f64, cfg: &NumericConfig) -> Result<f64> {
    let q = (-x).exp();
    let li_a = polylog(mu + 0.5, q, cfg)?.value;
    let li_b = polylog(mu + 2.5, q, cfg)?.value;
    let bracket = zeta(mu + 0.5)? - li_a - zeta(mu + 2.5)? + li_b - zeta(mu + 0.5)?;
    Ok((2.0 / (PI * x)).sqrt() * bracket)
}
