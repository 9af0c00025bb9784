//! Generic summation of slowly convergent series.
//!
//! Partial sums are taken at N = N0 2^k and extrapolated by Richardson's scheme
//! under the model S_N - S ~ sum_j c_j N^{-(lead + j)}, which holds for
//! sums of smooth algebraically decaying terms (and for alternating ones when
//! N is even).

use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Result};
use crate::scalar::dd::{DoubleDouble, KahanSum};

const N0: u64 = 16;

/// Richardson extrapolation of partial sums at N0 2^k; returns (value, err).
pub fn richardson_doubling(partials: &[f64], lead: f64) -> (f64, f64) {
    let exps: Vec<f64> = (0..partials.len()).map(|j| lead + j as f64).collect();
    richardson_ladder(partials, &exps)
}

/// Richardson extrapolation of partial sums at N0 2^k under the model
/// S_N - S ~ sum_j c_j N^{-exps[j]}, with `exps` increasing.
pub fn richardson_ladder(partials: &[f64], exps: &[f64]) -> (f64, f64) {
    let m = partials.len();
    if m == 0 {
        return (0.0, f64::INFINITY);
    }
    if m == 1 {
        return (partials[0], f64::INFINITY);
    }
    let mut table: Vec<Vec<f64>> = vec![vec![partials[0]]];
    for (k, &s) in partials.iter().enumerate().skip(1) {
        let mut row = vec![s];
        for j in 1..=k {
            let e = exps.get(j - 1).copied().unwrap_or(f64::INFINITY);
            let factor = 2f64.powf(e) - 1.0;
            let v = row[j - 1] + (row[j - 1] - table[k - 1][j - 1]) / factor;
            row.push(v);
        }
        table.push(row);
    }
    let last = &table[m - 1];
    let prev = &table[m - 2];
    let mut best = (last[0], (last[0] - prev[0]).abs());
    for j in 1..m - 1 {
        let e = (last[j] - prev[j]).abs();
        if e < best.1 {
            best = (last[j], e);
        }
    }
    best
}

/// Sum of term(n), n >= 1, whose partial sums have a power-ladder error with
/// leading exponent `lead`; alternating series must pass even-N partial sums,
/// which the fixed ladder N0 2^k provides.
pub fn sum_power_tail(term: &(dyn Fn(u64) -> f64 + Sync), lead: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    if !(lead > 0.0) {
        return domain(format!("power-tail model needs a positive leading exponent, got {lead}"));
    }
    let cap = (cfg.max_terms as u64).max(4 * N0);
    let mut acc = KahanSum::new();
    let mut abs_sum = 0.0;
    let mut partials = Vec::new();
    let mut n = 0u64;
    let mut next = N0;
    let mut best = (f64::NAN, f64::INFINITY);
    while next <= cap {
        while n < next {
            n += 1;
            let t = term(n);
            acc.add(t);
            abs_sum += t.abs();
        }
        partials.push(acc.value());
        if partials.len() >= 3 {
            let (v, e) = richardson_doubling(&partials, lead);
            // the table amplifies rounding of the partial sums
            let e = e + 16.0 * f64::EPSILON * abs_sum;
            if e < best.1 {
                best = (v, e);
            }
            if e <= 0.25 * cfg.target(v) && partials.len() >= 4 {
                break;
            }
        }
        next *= 2;
    }
    let (value, err) = best;
    Ok(EvalResult::checked(value, err, n, cfg))
}

/// Sum of term(n), n >= 1, where term(n) = (-1)^{n-1} f(n) with f completely
/// monotone, by the Cohen-Villegas-Zagier weights. With d = T_m(3) the
/// truncation error is at most S / d <= f(1) / d, and the weights lie in [0, 1].
pub fn sum_alternating_monotone(term: &(dyn Fn(u64) -> f64 + Sync), cfg: &NumericConfig) -> EvalResult {
    const MAX_M: u64 = 80;
    let a0 = term(1).abs();
    let a1 = term(2).abs();
    // S >= f(1) - f(2) for these series
    let floor = cfg.target(a0 - a1);
    let mut d_prev = DoubleDouble::from(1.0);
    let mut d = DoubleDouble::from(3.0);
    let mut m = 1;
    while m < MAX_M && (m < 2 || a0 / d.to_f64() > 0.25 * floor) {
        let next = d.mul_f64(6.0) - d_prev;
        d_prev = d;
        d = next;
        m += 1;
    }
    let mut b = DoubleDouble::from(-1.0);
    let mut c = -d;
    let mut acc = KahanSum::new();
    let mut abs_sum = 0.0;
    for k in 0..m {
        c = b - c;
        let w = (c / d).to_f64();
        let t = w * term(k + 1).abs();
        acc.add(t);
        abs_sum += t.abs();
        let (kf, mf) = (k as f64, m as f64);
        b = b.mul_f64((kf + mf) * (kf - mf)).div_f64((kf + 0.5) * (kf + 1.0));
    }
    let v = acc.value();
    // same per-term allowance as the Richardson path, without its amplification
    let err = a0 / d.to_f64() + 16.0 * f64::EPSILON * abs_sum + 2.0 * f64::EPSILON * v.abs();
    EvalResult::checked(v, err, m, cfg)
}

/// Sum of a series whose terms eventually decay geometrically.
pub fn sum_geometric(term: &(dyn Fn(u64) -> f64 + Sync), cfg: &NumericConfig) -> Result<EvalResult> {
    let mut acc = KahanSum::new();
    let mut abs_sum = 0.0;
    let mut prev = f64::NAN;
    let mut small = 0;
    for n in 1..=cfg.max_terms as u64 {
        let t = term(n);
        acc.add(t);
        abs_sum += t.abs();
        let ratio = (t / prev).abs();
        prev = t;
        let tail = if t == 0.0 {
            0.0
        } else if ratio < 0.95 {
            t.abs() * ratio / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        if tail <= 0.25 * f64::EPSILON * acc.value().abs() {
            small += 1;
            if small >= 3 {
                let v = acc.value();
                return Ok(EvalResult::checked(v, tail + 2.0 * f64::EPSILON * abs_sum, n, cfg));
            }
        } else {
            small = 0;
        }
    }
    let v = acc.value();
    Ok(EvalResult { value: v, err_est: f64::INFINITY, work: cfg.max_terms as u64, converged: false })
}

/// sum_{n >= 1} 1 / (a^2 + n^2) by the generic engine.
pub fn hamburger_sum(a: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    if !a.is_finite() {
        return domain("hamburger_sum needs finite a");
    }
    let a2 = a * a;
    sum_power_tail(&|n| 1.0 / (a2 + (n as f64) * (n as f64)), 1.0, cfg)
}

/// pi coth(pi a) / (2a) - 1 / (2 a^2), the closed form of [`hamburger_sum`].
pub fn hamburger_closed_form(a: f64) -> f64 {
    use std::f64::consts::PI;
    let pa = PI * a;
    // coth(x) - 1/x written to avoid cancellation for small a
    if pa.abs() < 1e-3 {
        let x2 = pa * pa;
        return PI * PI / 6.0 * (1.0 - x2 / 15.0 + 2.0 * x2 * x2 / 315.0);
    }
    (PI / pa.tanh() - 1.0 / a) / (2.0 * a)
}
