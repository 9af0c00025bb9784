use super::gk::integrate_finite;
use super::{Endpoint, Node};
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Result};

/// Declared tail behaviour of a half-line integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// |f(x)| <= C e^{-rate x} eventually.
    Exponential { rate: f64 },
    /// |f(x)| ~ C x^exponent with exponent < -1.
    Algebraic { exponent: f64 },
    /// f(x) = sum c_j x^{p_j} + O(e^{-remainder_rate x}); each p_j < -1 and the
    /// tail of the power part is integrated in closed form.
    PowerTail { terms: [(f64, f64); 3], remainder_rate: f64 },
}

fn power_tail(terms: &[(f64, f64); 3], t: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut integral = 0.0;
    for &(c, p) in terms {
        if c != 0.0 {
            value += c * t.powf(p);
            integral += c * t.powf(p + 1.0) / (-(p + 1.0));
        }
    }
    (value, integral)
}

/// Integral of `f` over [a, inf) for a declared decay class.
pub fn integrate_semi_infinite_decay(
    f: &(dyn Fn(Node) -> f64 + Sync),
    a: f64,
    decay: Decay,
    left: Endpoint,
    cfg: &NumericConfig,
) -> Result<EvalResult> {
    if !a.is_finite() {
        return domain("semi-infinite integral needs a finite lower bound");
    }
    let eval = |x: f64| f(Node { x, from_a: x - a, to_b: f64::INFINITY });
    match decay {
        Decay::Exponential { rate } => {
            if !(rate > 0.0) {
                return domain("exponential decay rate must be positive");
            }
            let mut len = 38.0 / rate;
            let mut work = 0;
            for _ in 0..8 {
                let t = a + len;
                let r = integrate_finite(f, a, t, left, Endpoint::Regular, cfg)?;
                work += r.work;
                let edge = eval(t).abs().max(eval(t + 1.0 / rate).abs() * std::f64::consts::E);
                let tail = edge / rate;
                if tail <= 0.25 * cfg.target(r.value) || tail == 0.0 {
                    let err = r.err_est + tail;
                    let converged = r.converged && cfg.accepts(r.value, err);
                    return Ok(EvalResult { value: r.value, err_est: err, work, converged });
                }
                len *= 1.6;
            }
            let t = a + len;
            let r = integrate_finite(f, a, t, left, Endpoint::Regular, cfg)?;
            let tail = eval(t).abs() / rate;
            Ok(EvalResult { value: r.value, err_est: r.err_est + tail, work: work + r.work, converged: false })
        }
        Decay::Algebraic { exponent } => {
            if !(exponent < -1.0) {
                return domain(format!("algebraic decay exponent {exponent} does not give a convergent integral"));
            }
            // x = a + (1 - s)/s; the x -> inf end becomes s -> 0
            let g = move |n: Node| {
                let s = n.x;
                let one_minus = n.to_b;
                if s <= 0.0 {
                    return 0.0;
                }
                let d = one_minus / s;
                f(Node { x: a + d, from_a: d, to_b: f64::INFINITY }) / (s * s)
            };
            // the original left end sits at s = 1
            integrate_finite(&g, 0.0, 1.0, Endpoint::Algebraic(-exponent - 2.0), left, cfg)
        }
        Decay::PowerTail { terms, remainder_rate } => {
            if terms.iter().any(|&(c, p)| c != 0.0 && !(p < -1.0)) {
                return domain("power tail terms must have exponent < -1");
            }
            if !(remainder_rate > 0.0) {
                return domain("power tail remainder rate must be positive");
            }
            let mut t = a + (38.0 / remainder_rate).max(1.0);
            let mut work = 0;
            for _ in 0..8 {
                let r = integrate_finite(f, a, t, left, Endpoint::Regular, cfg)?;
                work += r.work;
                let (asym, tail_int) = power_tail(&terms, t);
                let rem = (eval(t) - asym).abs() / remainder_rate;
                let value = r.value + tail_int;
                if rem <= 0.25 * cfg.target(value) {
                    let err = r.err_est + rem + 4.0 * f64::EPSILON * tail_int.abs();
                    return Ok(EvalResult { value, err_est: err, work, converged: r.converged && cfg.accepts(value, err) });
                }
                t = a + (t - a) * 1.6;
            }
            let r = integrate_finite(f, a, t, left, Endpoint::Regular, cfg)?;
            let (asym, tail_int) = power_tail(&terms, t);
            let rem = (eval(t) - asym).abs() / remainder_rate;
            Ok(EvalResult { value: r.value + tail_int, err_est: r.err_est + rem, work: work + r.work, converged: false })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    #[test]
    fn exponential_examples() {
        let f = |n: Node| n.x * (-n.x).exp();
        let r = integrate_semi_infinite_decay(&f, 0.0, Decay::Exponential { rate: 1.0 }, Endpoint::Regular, &cfg())
            .unwrap();
        assert!((r.value - 1.0).abs() < 1e-13 && r.converged, "{r:?}");
        let f = |n: Node| if n.x == 0.0 { 1.0 } else { n.x / n.x.exp_m1() };
        let r = integrate_semi_infinite_decay(&f, 0.0, Decay::Exponential { rate: 1.0 }, Endpoint::Regular, &cfg())
            .unwrap();
        assert!((r.value - PI * PI / 6.0).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn algebraic_substitution() {
        // int_0^inf dx / (1 + x)^2.5 = 1/1.5
        let f = |n: Node| (1.0 + n.x).powf(-2.5);
        let r = integrate_semi_infinite_decay(&f, 0.0, Decay::Algebraic { exponent: -2.5 }, Endpoint::Regular, &cfg())
            .unwrap();
        assert!((r.value - 1.0 / 1.5).abs() < 1e-13, "{r:?}");
        // slow decay near the admissible edge: int_1^inf x^{-1.25} = 4
        let f = |n: Node| n.x.powf(-1.25);
        let r = integrate_semi_infinite_decay(&f, 1.0, Decay::Algebraic { exponent: -1.25 }, Endpoint::Regular, &cfg())
            .unwrap();
        assert!((r.value - 4.0).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn power_tail_closed_form() {
        // f = x^{-2} + e^{-x} on [1, inf): 1 + e^{-1}
        let f = |n: Node| n.x.powi(-2) + (-n.x).exp();
        let decay = Decay::PowerTail { terms: [(1.0, -2.0), (0.0, 0.0), (0.0, 0.0)], remainder_rate: 1.0 };
        let r = integrate_semi_infinite_decay(&f, 1.0, decay, Endpoint::Regular, &cfg()).unwrap();
        assert!((r.value - (1.0 + (-1f64).exp())).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn bad_declarations_rejected() {
        let f = |n: Node| n.x;
        assert!(integrate_semi_infinite_decay(&f, 0.0, Decay::Algebraic { exponent: -0.5 }, Endpoint::Regular, &cfg())
            .is_err());
        assert!(integrate_semi_infinite_decay(&f, 0.0, Decay::Exponential { rate: 0.0 }, Endpoint::Regular, &cfg())
            .is_err());
    }
}
