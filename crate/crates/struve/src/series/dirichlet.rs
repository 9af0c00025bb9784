//! Dirichlet series sum a_n e^{-r lambda_n}: direct summation and the Laplace
//! form r int_0^inf e^{-rt} A(t) dt built from the counting sum A.

use rayon::prelude::*;

use super::coefficients::{CoefficientSequence, Exponents, FracOperator, SignPattern};
use super::generic::{richardson_ladder, sum_alternating_monotone, sum_geometric, sum_power_tail};
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_finite, Endpoint, Node};
use crate::scalar::dd::KahanSum;

const N0: u64 = 16;

/// How the remainder of the series is controlled.
#[derive(Debug, Clone, Copy, PartialEq)]
enum TailModel {
    /// Partial sums at N0 2^k extrapolated with this leading exponent.
    Power { lead: f64 },
    /// Terms decay geometrically.
    Geometric,
    /// |term_n| <= c n^p with p < -1, summed until the integral bound is small.
    Bound { c: f64, p: f64 },
}

fn tail_model(a: &CoefficientSequence, lambda: &Exponents, r: f64) -> Result<TailModel> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("Dirichlet series needs r > 0, got {r}"));
    }
    lambda.validate()?;
    match lambda {
        Exponents::Log => {
            if a.root_limsup > 1.0 {
                return domain("coefficients grow geometrically; the series diverges");
            }
            if a.root_limsup < 1.0 {
                return Ok(TailModel::Geometric);
            }
            let (c, p) = a.power_bound;
            let (ok, model) = match a.sign {
                SignPattern::Positive => (r - p > 1.0, TailModel::Power { lead: r - p - 1.0 }),
                SignPattern::Alternating => (r - p > 0.0, TailModel::Power { lead: r - p }),
                SignPattern::General => (r - p > 1.0, TailModel::Bound { c, p: p - r }),
            };
            if !ok {
                return domain(format!("coefficients of order n^{p} make the series diverge at r = {r}"));
            }
            Ok(model)
        }
        Exponents::Linear { step } => {
            if a.root_limsup * (-r * step).exp() >= 1.0 {
                return domain("coefficient growth defeats the exponential weights");
            }
            Ok(TailModel::Geometric)
        }
        Exponents::Custom { .. } => Ok(TailModel::Geometric),
    }
}

/// Exponents of the truncation error of the outer Laplace integral at N.
///
/// The tail is sum_{n >= N} A(n) (n^{-r} - (n+1)^{-r}). The counting sum A(n)
/// has a constant part, contributing N^{-r-j}, and a part of order n^{p+1}
/// (positive terms) or an alternating part of order n^p, contributing
/// N^{p+1-r-j} or N^{p-r-1-j}.
fn laplace_ladder(a: &CoefficientSequence, r: f64) -> Vec<f64> {
    let p = a.power_bound.1;
    let second = match a.sign {
        SignPattern::Alternating => r - p + 1.0,
        _ => r - p - 1.0,
    };
    let mut exps: Vec<f64> = (0..24).flat_map(|j| [r + j as f64, second + j as f64]).filter(|e| *e > 0.0).collect();
    exps.sort_by(|x, y| x.total_cmp(y));
    exps.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
    exps
}

fn sum_bounded(term: &(dyn Fn(u64) -> f64 + Sync), c: f64, p: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    let mut acc = KahanSum::new();
    let mut abs_sum = 0.0;
    for n in 1..=cfg.max_terms as u64 {
        let t = term(n);
        acc.add(t);
        abs_sum += t.abs();
        let tail = c * (n as f64).powf(p + 1.0) / (-(p + 1.0));
        if tail <= 0.25 * cfg.target(acc.value()) {
            let v = acc.value();
            return Ok(EvalResult::checked(v, tail + 2.0 * f64::EPSILON * abs_sum, n, cfg));
        }
    }
    let v = acc.value();
    let n = cfg.max_terms as f64;
    let tail = c * n.powf(p + 1.0) / (-(p + 1.0));
    Ok(EvalResult { value: v, err_est: tail, work: cfg.max_terms as u64, converged: false })
}

/// sum_{n >= 1} a_n e^{-r lambda_n} by direct summation with a model-based tail.
pub fn dirichlet_direct(
    a: &CoefficientSequence,
    lambda: &Exponents,
    r: f64,
    cfg: &NumericConfig,
) -> Result<EvalResult> {
    let model = tail_model(a, lambda, r)?;
    let term = |n: u64| a.at(n) * lambda.weight(r, n);
    // n^{-r} |a_n| completely monotone: the weighted alternating sum needs few terms
    if let (Exponents::Log, SignPattern::Alternating, Some(q)) = (lambda, a.sign, a.monotone_from) {
        if r >= q {
            return Ok(sum_alternating_monotone(&term, cfg));
        }
    }
    match model {
        TailModel::Power { lead } => sum_power_tail(&term, lead, cfg),
        TailModel::Geometric => sum_geometric(&term, cfg),
        TailModel::Bound { c, p } => sum_bounded(&term, c, p, cfg),
    }
}

// int_k^{k+1} (a(u) + {u} a'(u)) du by adaptive quadrature of the smooth extension.
fn cell(a: &CoefficientSequence, k: u64, cfg: &NumericConfig) -> Result<EvalResult> {
    let op = FracOperator;
    let kf = k as f64;
    let f = |n: Node| match a.smooth(n.x) {
        Some((v, dv)) => op.apply(v, dv, kf + n.from_a),
        None => f64::NAN,
    };
    integrate_finite(&f, kf, kf + 1.0, Endpoint::Regular, Endpoint::Regular, cfg)
}

/// The same Dirichlet series through r int_0^inf e^{-rt} A(t) dt, with
/// A(t) = int_0^{[lambda^{-1}(t)]} (a(u) + {u} a'(u)) du assembled cell by cell.
///
/// A is constant between consecutive exponents, so the outer Laplace integral
/// is exact on each interval [lambda_n, lambda_{n+1}); the truncated outer
/// integrals are extrapolated in the upper limit with the direct engine's tail model.
pub fn cahen_laplace(
    a: &CoefficientSequence,
    lambda: &Exponents,
    r: f64,
    cfg: &NumericConfig,
) -> Result<EvalResult> {
    if !a.has_extension() {
        return Err(Error::Usage("the Laplace form needs a smooth extension a(s), a'(s)".into()));
    }
    let model = tail_model(a, lambda, r)?;
    let ladder = laplace_ladder(a, r);
    let cell_cfg = cfg.with_rel_tol((cfg.rel_tol * 0.01).max(1e-15)).with_abs_tol(cfg.abs_tol * 0.01);
    let cap = (cfg.max_terms as u64).max(4 * N0);

    let mut counting = KahanSum::new();
    let mut outer = KahanSum::new();
    let mut abs_outer = 0.0;
    // sum_k cell_err_k e^{-r lambda_{k+1}}, the propagated quadrature error
    let mut quad_err = 0.0;
    let mut partials = Vec::new();
    let mut done = 0u64;
    let mut next = N0;
    let mut best = (f64::NAN, f64::INFINITY);
    let mut last_contrib = [0.0f64; 2];
    while next <= cap {
        let cells: Vec<EvalResult> =
            (done..next).into_par_iter().map(|k| cell(a, k, &cell_cfg)).collect::<Result<Vec<_>>>()?;
        for (i, c) in cells.iter().enumerate() {
            let n = done + i as u64 + 1;
            counting.add(c.value);
            let w_n = lambda.weight(r, n);
            let w_next = lambda.weight(r, n + 1);
            quad_err += c.err_est * w_n;
            let contrib = counting.value() * (w_n - w_next);
            outer.add(contrib);
            abs_outer += contrib.abs();
            last_contrib = [last_contrib[1], contrib];
        }
        done = next;
        let g = outer.value();
        partials.push(g);
        let rounding = 16.0 * f64::EPSILON * abs_outer + quad_err;
        let estimate = match model {
            TailModel::Power { .. } if partials.len() >= 3 => {
                let (v, e) = richardson_ladder(&partials, &ladder);
                Some((v, e + rounding))
            }
            TailModel::Power { .. } => None,
            TailModel::Geometric => {
                let q = (last_contrib[1] / last_contrib[0]).abs();
                let tail = if q < 0.95 { last_contrib[1].abs() * q / (1.0 - q) } else { f64::INFINITY };
                Some((g, tail + rounding))
            }
            TailModel::Bound { c, p } => {
                let tail = c * (done as f64).powf(p + 1.0) / (-(p + 1.0));
                Some((g, tail + rounding))
            }
        };
        if let Some((v, e)) = estimate {
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
    // cell errors are already inside err, so a cell that only cancels is harmless
    Ok(EvalResult::checked(value, err, done, cfg))
}
