//! Kapteyn series K(x) = sum alpha_n n^{-mu} D_{nu n}(n x) and its Gegenbauer
//! integral form.

use super::coefficients::CoefficientSequence;
use crate::bessel_struve::d_nu;
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Result};
use crate::quadrature::{integrate_finite, Endpoint, Node};
use crate::scalar::dd::{KahanSum, FRAC_1_SQRT_PI};
use crate::scalar::gamma::ln_gamma_pos;

/// Right end of the convergence interval: 2 min(1, nu / (e L^{1/nu})),
/// L = limsup |alpha_n|^{1/n}.
pub fn kapteyn_domain_bound(alpha: &CoefficientSequence, nu: f64) -> f64 {
    let l = alpha.root_limsup.max(1e-300);
    2.0 * (nu / (std::f64::consts::E * l.powf(1.0 / nu))).min(1.0)
}

fn check(alpha: &CoefficientSequence, nu: f64, mu: f64, x: f64) -> Result<()> {
    if !(nu > 0.0) || !nu.is_finite() || !mu.is_finite() {
        return domain(format!("Kapteyn series needs finite nu > 0 and mu, got nu = {nu}, mu = {mu}"));
    }
    if !(mu > nu) {
        return domain(format!("Kapteyn series needs mu > nu, got mu = {mu}, nu = {nu}"));
    }
    let bound = kapteyn_domain_bound(alpha, nu);
    if !(x >= 0.0) || !(x < bound) {
        return domain(format!("x = {x} lies outside the convergence interval (0, {bound})"));
    }
    Ok(())
}

// Sum of a series whose terms decay geometrically; the tail is bounded from
// the observed ratio of the last terms.
struct GeometricSum {
    acc: KahanSum,
    abs_sum: f64,
    err: f64,
    prev: f64,
    ratio: f64,
    small: u32,
}

impl GeometricSum {
    fn new() -> Self {
        GeometricSum { acc: KahanSum::new(), abs_sum: 0.0, err: 0.0, prev: f64::NAN, ratio: 1.0, small: 0 }
    }

    // adds a term; returns the tail bound once three consecutive terms are negligible
    fn push(&mut self, t: f64, t_err: f64, rel: f64) -> Option<f64> {
        self.acc.add(t);
        self.abs_sum += t.abs();
        self.err += t_err;
        let r = (t / self.prev).abs();
        if r.is_finite() {
            self.ratio = r;
        }
        self.prev = t;
        let tail = if t == 0.0 {
            0.0
        } else if self.ratio < 0.99 {
            t.abs() * self.ratio / (1.0 - self.ratio)
        } else {
            f64::INFINITY
        };
        if tail <= rel * self.acc.value().abs() {
            self.small += 1;
            if self.small >= 3 {
                return Some(tail);
            }
        } else {
            self.small = 0;
        }
        None
    }
}

/// K_{nu,mu}(x) = sum_{n>=1} alpha_n n^{-mu} D_{nu n}(n x).
pub fn kapteyn_k(alpha: &CoefficientSequence, nu: f64, mu: f64, x: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    Ok(kapteyn_k_derivatives(alpha, nu, mu, x, cfg)?[0])
}

/// K with its first and second x-derivatives.
pub fn kapteyn_k_derivatives(
    alpha: &CoefficientSequence,
    nu: f64,
    mu: f64,
    x: f64,
    cfg: &NumericConfig,
) -> Result<[EvalResult; 3]> {
    check(alpha, nu, mu, x)?;
    if x == 0.0 {
        return Ok([EvalResult::exact(0.0); 3]);
    }
    let mut sums = [GeometricSum::new(), GeometricSum::new(), GeometricSum::new()];
    let mut work = 0u64;
    let mut tails: [Option<f64>; 3] = [None; 3];
    for n in 1..=cfg.max_terms as u64 {
        let nf = n as f64;
        let p = d_nu(nu * nf, nf * x, cfg)?;
        work += p.work;
        let w = alpha.at(n) * nf.powf(-mu);
        let t = [w * p.value, w * nf * p.d1, w * nf * nf * p.d2];
        let e = [(w * p.err[0]).abs(), (w * nf * p.err[1]).abs(), (w * nf * nf * p.err[2]).abs()];
        for j in 0..3 {
            if tails[j].is_none() {
                tails[j] = sums[j].push(t[j], e[j], 0.25 * f64::EPSILON);
            }
        }
        if tails.iter().all(|t| t.is_some()) {
            break;
        }
    }
    let mut out = [EvalResult::exact(0.0); 3];
    for j in 0..3 {
        let s = &sums[j];
        let v = s.acc.value();
        out[j] = match tails[j] {
            Some(tail) => {
                EvalResult::checked(v, s.err + tail + 2.0 * f64::EPSILON * s.abs_sum, work, cfg)
            }
            None => EvalResult { value: v, err_est: f64::INFINITY, work, converged: false },
        };
    }
    Ok(out)
}

/// The Gegenbauer form (2/sqrt(pi)) int_0^1 (1-t^2)^{-1/2} G(t) dt with
/// G(t) = sum_n alpha_n ((x/2)(1-t^2))^{nu n} e^{-x t n} / (n^{mu - nu n + 1} Gamma(nu n + 1/2)),
/// equal to the Kapteyn series at exponent mu + 1.
pub fn kapteyn_gegenbauer(
    alpha: &CoefficientSequence,
    nu: f64,
    mu: f64,
    x: f64,
    cfg: &NumericConfig,
) -> Result<EvalResult> {
    check(alpha, nu, mu + 1.0, x)?;
    if x == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let h = 0.5 * x;
    let max_terms = cfg.max_terms as u64;
    let inner = |one_minus_t: f64, t: f64| -> f64 {
        let s = one_minus_t * (1.0 + t);
        if s <= 0.0 {
            return 0.0;
        }
        let log_base = (h * s).ln();
        let mut sum = GeometricSum::new();
        for n in 1..=max_terms {
            let nf = n as f64;
            let a = alpha.at(n);
            if a == 0.0 {
                continue;
            }
            let ln_mag = nu * nf * (log_base + nf.ln()) - x * t * nf - (mu + 1.0) * nf.ln() - ln_gamma_pos(nu * nf + 0.5);
            let term = a * ln_mag.exp();
            if sum.push(term, 0.0, 0.25 * f64::EPSILON).is_some() {
                break;
            }
        }
        // (1 - t^2)^{-1/2} folded in here
        sum.acc.value() / s.sqrt()
    };
    let f = |n: Node| inner(n.to_b, n.x);
    let r = integrate_finite(&f, 0.0, 1.0, Endpoint::Regular, Endpoint::Algebraic(-0.5), cfg)?;
    Ok(r.scale(2.0 * FRAC_1_SQRT_PI.hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    #[test]
    fn domain_bound_arithmetic() {
        let b = kapteyn_domain_bound(&CoefficientSequence::ones(), 0.8);
        assert!((b - 1.6 / std::f64::consts::E).abs() < 1e-15);
        assert_eq!(kapteyn_domain_bound(&CoefficientSequence::ones(), 5.0), 2.0);
        assert!(kapteyn_k(&CoefficientSequence::ones(), 0.8, 2.0, 0.7, &cfg()).is_err());
        assert_eq!(kapteyn_k(&CoefficientSequence::ones(), 0.8, 2.0, 0.0, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn direct_matches_brute_force() {
        let r = kapteyn_k(&CoefficientSequence::ones(), 0.8, 2.0, 0.3, &cfg()).unwrap();
        let mut acc = KahanSum::new();
        for n in 1..200u64 {
            let nf = n as f64;
            acc.add(nf.powf(-2.0) * d_nu(0.8 * nf, 0.3 * nf, &cfg()).unwrap().value);
        }
        assert!((r.value - acc.value()).abs() < 1e-15, "{r:?} vs {}", acc.value());
        assert!(r.converged);
    }

    #[test]
    fn gegenbauer_form_matches_shifted_exponent() {
        // reference 0.2289441783155433535981812 from an independent 25-digit evaluation
        let g = kapteyn_gegenbauer(&CoefficientSequence::ones(), 0.8, 1.2, 0.3, &cfg()).unwrap();
        let k = kapteyn_k(&CoefficientSequence::ones(), 0.8, 2.2, 0.3, &cfg()).unwrap();
        assert!((g.value - 0.22894417831554335).abs() < 1e-12, "{g:?}");
        assert!((k.value - 0.22894417831554335).abs() < 1e-13, "{k:?}");
        assert!((g.value - k.value).abs() <= g.err_est + k.err_est);
    }

    #[test]
    fn gegenbauer_with_decaying_coefficients() {
        let alpha = CoefficientSequence::power(-1.0);
        let g = kapteyn_gegenbauer(&alpha, 0.5, 1.0, 0.2, &cfg()).unwrap();
        let k = kapteyn_k(&alpha, 0.5, 2.0, 0.2, &cfg()).unwrap();
        assert!((g.value - k.value).abs() <= g.err_est + k.err_est + 1e-14, "{g:?} {k:?}");
    }
}
