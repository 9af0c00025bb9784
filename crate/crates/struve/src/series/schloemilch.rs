//! Schloemilch-type series sum_n (+-1)^{n-1} w(n) D_nu(n x) and the Upsilon
//! series, with first and second x-derivatives.
//!
//! Terms with n x below the expansion threshold come from d_nu; the rest are
//! replaced by the large-argument expansion of D, whose n-sums are Hurwitz zeta
//! (or alternating eta) tails.

use rayon::prelude::*;

use crate::bessel_struve::{d_nu, DifferencePoint, Z_ASYM};
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Error, Result};
use crate::scalar::dd::{KahanSum, FRAC_1_SQRT_PI};
use crate::scalar::gamma::{ln_gamma_pos, rgamma, sin_pi};
use crate::scalar::zeta::{eta_tail, zeta_tail};

const MAX_HEAD: u64 = 10_000_000;

/// Parameters of T (non-alternating) and T-tilde (alternating).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SeriesParams {
    pub nu: f64,
    pub mu: f64,
    pub x: f64,
    pub alternating: bool,
}

impl SeriesParams {
    pub fn new(nu: f64, mu: f64, x: f64, alternating: bool) -> Self {
        SeriesParams { nu, mu, x, alternating }
    }

    pub fn validate(&self) -> Result<()> {
        let SeriesParams { nu, mu, x, alternating } = *self;
        if !(nu > 0.0) || !nu.is_finite() || !mu.is_finite() {
            return domain(format!("Schloemilch series needs finite nu > 0, got nu = {nu}, mu = {mu}"));
        }
        if !(x >= 0.0) || !x.is_finite() {
            return domain(format!("Schloemilch series needs finite x >= 0, got {x}"));
        }
        if alternating && !(mu + 1.0 > nu) {
            return domain(format!("alternating series needs mu + 1 > nu, got mu = {mu}, nu = {nu}"));
        }
        if !alternating && !(mu > nu) {
            return domain(format!("series needs mu > nu, got mu = {mu}, nu = {nu}"));
        }
        Ok(())
    }
}

/// One summand c n^{-m} of the weight w(n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerWeight {
    pub coeff: f64,
    pub exponent: f64,
}

fn weight(ws: &[PowerWeight], n: f64) -> f64 {
    ws.iter().map(|w| w.coeff * n.powf(-w.exponent)).sum()
}

// (x/2)^{nu-1} / (sqrt(pi) Gamma(nu + 1/2))
fn lead_factor(nu: f64, x: f64) -> f64 {
    let h = 0.5 * x;
    if nu + 0.5 < 160.0 {
        h.powf(nu - 1.0) * FRAC_1_SQRT_PI.hi * rgamma(nu + 0.5)
    } else {
        ((nu - 1.0) * h.ln() - 0.5 * std::f64::consts::PI.ln() - ln_gamma_pos(nu + 0.5)).exp()
    }
}

fn signed_tail(s: f64, n: u64, alternating: bool) -> Result<f64> {
    if alternating {
        eta_tail(s, n)
    } else {
        zeta_tail(s, n)
    }
}

/// F(x) = sum_{n>=1} s_n w(n) D_nu(n x) with s_n = (-1)^{n-1} when alternating,
/// together with F'(x) and F''(x).
pub fn weighted_difference_series(
    nu: f64,
    weights: &[PowerWeight],
    x: f64,
    alternating: bool,
    cfg: &NumericConfig,
) -> Result<[EvalResult; 3]> {
    if !(nu > 0.0) || !nu.is_finite() {
        return domain(format!("difference series needs nu > 0, got {nu}"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("difference series needs finite x >= 0, got {x}"));
    }
    if weights.is_empty() {
        return Ok([EvalResult::exact(0.0); 3]);
    }
    let min_m = weights.iter().map(|w| w.exponent).fold(f64::INFINITY, f64::min);
    let need = if alternating { nu - 1.0 } else { nu };
    if !(min_m > need) {
        return domain(format!(
            "weights decay like n^-{min_m}, which needs to exceed {need} for convergence at nu = {nu}"
        ));
    }
    if x == 0.0 {
        return Ok([EvalResult::exact(0.0); 3]);
    }
    let big_n = ((Z_ASYM / x).ceil() as u64).max(1);
    if big_n > MAX_HEAD {
        return Err(Error::Range(format!("x = {x} needs {big_n} direct terms")));
    }

    // head: exact terms
    let points: Vec<DifferencePoint> =
        (1..big_n).into_par_iter().map(|n| d_nu(nu, n as f64 * x, cfg)).collect::<Result<Vec<_>>>()?;
    let mut acc = [KahanSum::new(), KahanSum::new(), KahanSum::new()];
    let mut err = [0.0f64; 3];
    let mut abs_sum = [0.0f64; 3];
    let mut work = 0u64;
    for (i, p) in points.iter().enumerate() {
        let n = (i + 1) as f64;
        let s = if alternating && i % 2 == 1 { -1.0 } else { 1.0 };
        let w = s * weight(weights, n);
        let t = [w * p.value, w * n * p.d1, w * n * n * p.d2];
        for j in 0..3 {
            acc[j].add(t[j]);
            abs_sum[j] += t[j].abs();
        }
        err[0] += (w * p.err[0]).abs();
        err[1] += (w * n * p.err[1]).abs();
        err[2] += (w * n * n * p.err[2]).abs();
        work += p.work;
    }

    // tail: expansion of D summed termwise in n
    let lead = lead_factor(nu, x);
    let h = 0.5 * x;
    let nf = big_n as f64;
    let mut tail = [0.0f64; 3];
    let mut trunc = [0.0f64; 3];
    let mut c = 1.0f64;
    let mut prev_mag = f64::INFINITY;
    let mut k_used = 0;
    for k in 0..64 {
        let kf = k as f64;
        let e = nu - 1.0 - 2.0 * kf;
        // size of this correction relative to the leading term at n = N
        let mag = c.abs() * (nf * h).powf(-2.0 * kf);
        if mag > prev_mag {
            break;
        }
        let mut z = 0.0;
        for w in weights {
            z += w.coeff * signed_tail(w.exponent - e, big_n, alternating)?;
        }
        let base = lead * c * h.powf(-2.0 * kf) * z;
        let t = [base, base * e / x, base * e * (e - 1.0) / (x * x)];
        for j in 0..3 {
            tail[j] += t[j];
            trunc[j] = t[j].abs();
        }
        prev_mag = mag;
        k_used = k + 1;
        let next = c * (-(kf + 0.5) * (nu - 0.5 - kf));
        if next == 0.0 {
            trunc = [0.0; 3];
            break;
        }
        if mag < 1e-18 {
            break;
        }
        c = next;
    }

    // exponentially small part of D dropped by the expansion
    let k_part = if sin_pi(nu) == 0.0 {
        0.0
    } else {
        let z = nf * x;
        let per_term = 2.0 / std::f64::consts::PI * (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp();
        let wmax = weights.iter().map(|w| w.coeff.abs() * nf.powf(-w.exponent)).sum::<f64>();
        per_term * wmax * (2.0 + nu * nu / z) / (-(-x).exp_m1())
    };

    let mut out = [EvalResult::exact(0.0); 3];
    let mut n_pow = 1.0;
    for j in 0..3 {
        let v = acc[j].value() + tail[j];
        let e = err[j]
            + trunc[j]
            + k_part * n_pow
            + 4.0 * f64::EPSILON * (abs_sum[j] + tail[j].abs())
            + 8.0 * f64::EPSILON * tail[j].abs() * k_used as f64;
        out[j] = EvalResult::checked(v, e, work + big_n + k_used as u64, cfg);
        n_pow *= nf;
    }
    Ok(out)
}

fn single(mu: f64) -> [PowerWeight; 1] {
    [PowerWeight { coeff: 1.0, exponent: mu }]
}

/// T_{nu,mu}(x) = sum n^{-mu} D_nu(n x), or its alternating variant.
pub fn schloemilch_t(p: &SeriesParams, cfg: &NumericConfig) -> Result<EvalResult> {
    Ok(schloemilch_t_derivatives(p, cfg)?[0])
}

/// T with its first and second x-derivatives.
pub fn schloemilch_t_derivatives(p: &SeriesParams, cfg: &NumericConfig) -> Result<[EvalResult; 3]> {
    p.validate()?;
    weighted_difference_series(p.nu, &single(p.mu), p.x, p.alternating, cfg)
}

fn upsilon_weights(mu: f64, beta: u32) -> [PowerWeight; 2] {
    [
        PowerWeight { coeff: 1.0, exponent: mu - beta as f64 },
        PowerWeight { coeff: -1.0, exponent: mu },
    ]
}

fn check_upsilon(nu: f64, mu: f64, beta: u32, alternating: bool) -> Result<()> {
    if beta != 1 && beta != 2 {
        return domain(format!("Upsilon is defined for beta in {{1, 2}}, got {beta}"));
    }
    if !(nu > 0.0) {
        return domain(format!("Upsilon needs nu > 0, got {nu}"));
    }
    let gap = mu - beta as f64;
    let need = if alternating { nu - 1.0 } else { nu };
    if !(gap > need) {
        return domain(format!("Upsilon diverges: mu - beta = {gap} must exceed {need}"));
    }
    Ok(())
}

/// Upsilon(x) = sum_{n>=2} (+-1)^{n-1} (n^beta - 1) n^{-mu} D_nu(n x).
pub fn upsilon(nu: f64, mu: f64, beta: u32, x: f64, alternating: bool, cfg: &NumericConfig) -> Result<EvalResult> {
    Ok(upsilon_derivatives(nu, mu, beta, x, alternating, cfg)?[0])
}

/// Upsilon with its first and second x-derivatives.
pub fn upsilon_derivatives(
    nu: f64,
    mu: f64,
    beta: u32,
    x: f64,
    alternating: bool,
    cfg: &NumericConfig,
) -> Result<[EvalResult; 3]> {
    check_upsilon(nu, mu, beta, alternating)?;
    // the n = 1 weight vanishes, so summing from n = 1 is the same series
    weighted_difference_series(nu, &upsilon_weights(mu, beta), x, alternating, cfg)
}

/// Term of the Upsilon series at n, for termwise checks.
pub fn upsilon_term(nu: f64, mu: f64, beta: u32, n: u64, x: f64, alternating: bool, cfg: &NumericConfig) -> Result<f64> {
    let nf = n as f64;
    let s = if alternating && n.is_multiple_of(2) { -1.0 } else { 1.0 };
    Ok(s * (nf.powi(beta as i32) - 1.0) * nf.powf(-mu) * d_nu(nu, nf * x, cfg)?.value)
}
