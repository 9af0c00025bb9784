use num_complex::Complex64;

use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Error, Result};

/// Real part of the integral of `f(c + i t)` over t in (-inf, inf).
///
/// `decay` is the declared rate q in |f(c + i t)| <= C e^{-q |t|}. The imaginary
/// part must cancel; a residue above the error estimate is reported as an error.
pub fn integrate_vertical_line(
    f: &(dyn Fn(Complex64) -> Complex64 + Sync),
    c: f64,
    decay: f64,
    cfg: &NumericConfig,
) -> Result<EvalResult> {
    if !(decay > 0.0) || !c.is_finite() {
        return domain("vertical line needs finite c and positive decay rate");
    }
    let at = |t: f64| f(Complex64::new(c, t));
    let centre = at(0.0);
    let scale = centre.norm().max(1e-300);
    let tol = cfg.abs_tol.max(cfg.rel_tol * scale);
    let mut big_t = ((10.0 * scale / tol).ln() / decay).max(4.0);
    let mut evals = 1u64;
    // make sure the integrand really is small at the cut
    for _ in 0..20 {
        let edge = at(big_t).norm().max(at(-big_t).norm());
        evals += 2;
        if edge / decay <= 0.25 * tol {
            break;
        }
        big_t *= 1.25;
    }
    let tail = 2.0 * at(big_t).norm().max(at(-big_t).norm()) / decay;
    let mut h = 0.5f64;
    let n = (big_t / h).ceil() as i64;
    let mut acc = centre;
    let mut abs_acc = centre.norm();
    for k in 1..=n {
        let t = k as f64 * h;
        let v = at(t) + at(-t);
        abs_acc += at(t).norm() + at(-t).norm();
        acc += v;
    }
    evals += 2 * n as u64;
    let mut sum = acc * h;
    let mut diff = f64::INFINITY;
    let mut level = 0;
    while level < 14 {
        // refine: add midpoints
        let mut mids = Complex64::new(0.0, 0.0);
        let m = (big_t / h).ceil() as i64;
        for k in 0..m {
            let t = (k as f64 + 0.5) * h;
            let (a, b) = (at(t), at(-t));
            abs_acc += a.norm() + b.norm();
            mids += a + b;
        }
        evals += 2 * m as u64;
        let finer = sum * 0.5 + mids * (0.5 * h);
        diff = (finer - sum).norm();
        sum = finer;
        h *= 0.5;
        level += 1;
        if diff <= 0.5 * cfg.target(sum.re).max(cfg.abs_tol) && level >= 2 {
            break;
        }
    }
    let rounding = 16.0 * f64::EPSILON * abs_acc * h;
    let err = diff + tail + rounding;
    if sum.im.abs() > err + 16.0 * f64::EPSILON * sum.norm() {
        return Err(Error::SymmetryViolation { imag: sum.im, err });
    }
    Ok(EvalResult::checked(sum.re, err, evals, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::complex::ln_gamma_complex;

    #[test]
    fn inverse_mellin_of_gamma_at_one() {
        let f = |p: Complex64| ln_gamma_complex(p).exp();
        let cfg = NumericConfig::default();
        let r = integrate_vertical_line(&f, 1.0, std::f64::consts::FRAC_PI_2, &cfg).unwrap();
        let v = r.value / (2.0 * std::f64::consts::PI);
        assert!((v - (-1f64).exp()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn conjugate_symmetric_has_no_imaginary_part() {
        // e^{p^2} on p = i t is e^{-t^2}; times an odd imaginary part that must cancel
        let f = |p: Complex64| (p * p).exp() * Complex64::new(1.0, p.im.sin());
        let r = integrate_vertical_line(&f, 0.0, 1.0, &NumericConfig::default()).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn asymmetric_integrand_is_flagged() {
        let f = |p: Complex64| Complex64::new(0.0, 1.0) * (-(p.im * p.im)).exp();
        let r = integrate_vertical_line(&f, 0.0, 1.0, &NumericConfig::default());
        assert!(matches!(r, Err(Error::SymmetryViolation { .. })));
    }
}
