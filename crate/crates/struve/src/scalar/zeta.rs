//! Riemann zeta, Hurwitz zeta and Dirichlet eta.
//!
//! Everything goes through Euler-Maclaurin on the Hurwitz form, except eta on
//! (0, 1] which uses the Cohen-Villegas-Zagier alternating acceleration.

use num_complex::Complex64;

use super::dd::KahanSum;
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Result};

/// B_{2j} / (2j)! for j = 1..=12.
const BERNOULLI_OVER_FACT: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
];

struct EmOutcome {
    value: f64,
    err: f64,
    terms: u64,
}

/// Hurwitz zeta sum_{k>=0} (q+k)^{-s} for real s > 1, q > 0.
fn hurwitz_em(s: f64, q: f64) -> EmOutcome {
    let w_min = 12f64.max((s.abs() + 24.0) / 3.0);
    let m = if q >= w_min { 0 } else { (w_min - q).ceil() as u64 };
    let mut head = KahanSum::new();
    for k in 0..m {
        head.add((q + k as f64).powf(-s));
    }
    let w = q + m as f64;
    let wps = w.powf(-s);
    let mut tail = KahanSum::new();
    tail.add(w * wps / (s - 1.0));
    tail.add(0.5 * wps);
    let inv_w2 = 1.0 / (w * w);
    // (s)_{2j-1} w^{-s-2j+1}
    let mut fac = s * wps / w;
    let mut last = f64::INFINITY;
    let mut err = 0.0;
    for (j, &b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let term = b * fac;
        tail.add(term);
        last = term.abs();
        let jj = (j + 1) as f64;
        fac *= (s + 2.0 * jj - 1.0) * (s + 2.0 * jj) * inv_w2;
        if last < 1e-18 * (head.value() + tail.value()).abs() {
            break;
        }
    }
    err += last;
    let value = head.value() + tail.value();
    err += 4.0 * f64::EPSILON * value.abs();
    EmOutcome { value, err, terms: m + 12 }
}

pub fn hurwitz_zeta(s: f64, q: f64) -> Result<f64> {
    if !(s > 1.0) || !(q > 0.0) || !q.is_finite() {
        return domain(format!("hurwitz_zeta requires s > 1 and q > 0, got s = {s}, q = {q}"));
    }
    Ok(hurwitz_em(s, q).value)
}

/// sum_{n >= N} n^{-s}, the zeta tail from N.
pub fn zeta_tail(s: f64, n: u64) -> Result<f64> {
    hurwitz_zeta(s, n as f64)
}

/// sum_{n >= N} (-1)^{n-1} n^{-s}, valid for s > 0.
pub fn eta_tail(s: f64, n: u64) -> Result<f64> {
    if !(s > 0.0) || n == 0 {
        return domain("eta_tail requires s > 0 and N >= 1");
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let nf = n as f64;
    if s > 1.0 {
        // sum_{m>=0} (-1)^m (N+m)^{-s} = 2^{-s} [zeta(s, N/2) - zeta(s, (N+1)/2)]
        let a = hurwitz_em(s, nf / 2.0).value;
        let b = hurwitz_em(s, (nf + 1.0) / 2.0).value;
        return Ok(sign * 2f64.powf(-s) * (a - b));
    }
    Ok(sign * cvz_alternating(|k| (nf + k as f64).powf(-s), 28))
}

/// Cohen-Villegas-Zagier sum of sum_{k>=0} (-1)^k a_k for totally monotone a_k.
fn cvz_alternating(a: impl Fn(usize) -> f64, n: usize) -> f64 {
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    let nf = n as f64;
    for k in 0..n {
        c = b - c;
        s += c * a(k);
        let kf = k as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return domain(format!("zeta requires finite s > 1, got {s}"));
    }
    Ok(hurwitz_em(s, 1.0).value)
}

pub fn eta(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return domain(format!("eta requires finite s > 0, got {s}"));
    }
    if s > 1.0 {
        let factor = -((1.0 - s) * std::f64::consts::LN_2).exp_m1();
        return Ok(factor * hurwitz_em(s, 1.0).value);
    }
    Ok(cvz_alternating(|k| ((k + 1) as f64).powf(-s), 28))
}

pub fn zeta_eval(s: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    if !(s > 1.0) || !s.is_finite() {
        return domain(format!("zeta requires finite s > 1, got {s}"));
    }
    let o = hurwitz_em(s, 1.0);
    Ok(EvalResult::checked(o.value, o.err, o.terms, cfg))
}

pub fn eta_eval(s: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    let v = eta(s)?;
    let err = 8.0 * f64::EPSILON * v.abs();
    Ok(EvalResult::checked(v, err, 28, cfg))
}

/// Riemann zeta for complex s with Re s > 1 (used on vertical lines).
pub fn zeta_complex(s: Complex64) -> Result<Complex64> {
    if !(s.re > 1.0) {
        return domain("complex zeta implemented for Re s > 1 only");
    }
    let w_min = 12f64.max((s.norm() + 24.0) / 3.0);
    let m = w_min.ceil() as u64 - 1;
    let mut head = Complex64::new(0.0, 0.0);
    for k in 1..=m {
        head += (-s * (k as f64).ln()).exp();
    }
    let w = (m + 1) as f64;
    let lw = w.ln();
    let wps = (-s * lw).exp();
    let mut tail = wps * w / (s - 1.0) + wps * 0.5;
    let mut fac = s * wps / w;
    let inv_w2 = 1.0 / (w * w);
    for (j, &b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let term = fac * b;
        tail += term;
        let jj = (j + 1) as f64;
        fac = fac * (s + (2.0 * jj - 1.0)) * (s + 2.0 * jj) * inv_w2;
        if term.norm() < 1e-18 * (head + tail).norm() {
            break;
        }
    }
    Ok(head + tail)
}
