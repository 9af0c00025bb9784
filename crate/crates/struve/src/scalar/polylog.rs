//! Polylogarithm Li_alpha(z) for real alpha > 0 and -1 <= z <= 1.

use super::dd::KahanSum;
use super::gamma::rgamma;
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_semi_infinite_decay, Decay, Endpoint, Node};

fn check_args(alpha: f64, z: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return domain(format!("polylog order must be positive, got {alpha}"));
    }
    if !(z.abs() <= 1.0) {
        return domain(format!("polylog argument must satisfy |z| <= 1, got {z}"));
    }
    if z == 1.0 && alpha <= 1.0 {
        return Err(Error::Divergence(format!("Li_{alpha}(1) diverges")));
    }
    Ok(())
}

/// Direct series sum z^n / n^alpha, for |z| < 1.
pub fn polylog_series(alpha: f64, z: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    check_args(alpha, z)?;
    if z.abs() >= 1.0 {
        return domain("series route needs |z| < 1");
    }
    if z == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let mut sum = KahanSum::new();
    let mut zn = 1.0;
    let az = z.abs();
    let mut abs_sum = 0.0;
    for n in 1..=cfg.max_terms {
        zn *= z;
        let term = zn * (n as f64).powf(-alpha);
        sum.add(term);
        abs_sum += term.abs();
        // remaining terms are bounded by a geometric tail
        let tail = term.abs() * az / (1.0 - az);
        if tail <= 0.25 * f64::EPSILON * sum.value().abs() {
            let v = sum.value();
            let err = tail + 2.0 * f64::EPSILON * abs_sum;
            return Ok(EvalResult::checked(v, err, n as u64, cfg));
        }
    }
    let v = sum.value();
    Ok(EvalResult { value: v, err_est: f64::INFINITY, work: cfg.max_terms as u64, converged: false })
}

/// z / Gamma(alpha) * int_0^inf t^{alpha-1} / (e^t - z) dt.
pub fn polylog_integral(alpha: f64, z: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    check_args(alpha, z)?;
    if z == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let gap = 1.0 - z;
    let f = move |n: Node| {
        let t = n.from_a;
        t.powf(alpha - 1.0) / (t.exp_m1() + gap)
    };
    // at z = 1 the denominator vanishes like t
    let beta = if z == 1.0 { alpha - 2.0 } else { alpha - 1.0 };
    let left = if beta == 0.0 { Endpoint::Regular } else { Endpoint::Algebraic(beta) };
    let inner = cfg.with_rel_tol(cfg.rel_tol * 0.5);
    let r = integrate_semi_infinite_decay(&f, 0.0, Decay::Exponential { rate: 1.0 }, left, &inner)?;
    let scale = z * rgamma(alpha);
    let v = r.value * scale;
    let err = r.err_est * scale.abs() + 4.0 * f64::EPSILON * v.abs();
    Ok(EvalResult { value: v, err_est: err, work: r.work, converged: r.converged && cfg.accepts(v, err) })
}

/// Li_alpha(z), series for |z| <= 0.9 and the integral form closer to the unit circle.
pub fn polylog(alpha: f64, z: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    check_args(alpha, z)?;
    if z == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    if z == 1.0 {
        let v = super::zeta::zeta(alpha)?;
        return Ok(EvalResult::checked(v, 4.0 * f64::EPSILON * v, 1, cfg));
    }
    if z.abs() <= 0.9 {
        polylog_series(alpha, z, cfg)
    } else {
        polylog_integral(alpha, z, cfg)
    }
}
