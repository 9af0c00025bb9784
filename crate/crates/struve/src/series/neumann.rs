//! The modified Struve function L_nu as Neumann series of modified Bessel functions I.

use crate::bessel_struve::{cylinder_eval, CylinderKind};
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Result};
use crate::scalar::dd::KahanSum;
use crate::scalar::gamma::{gamma_ln_signed, ln_gamma_pos, rgamma};

/// Which of the three Neumann expansions of L_nu to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum NeumannForm {
    /// Orders 2n + nu + 1, coefficients with Gamma(n + nu + 1); needs -nu not in N.
    First,
    /// Orders n + nu + 1/2.
    Second,
    /// Orders n + 1/2.
    Third,
}

impl NeumannForm {
    pub fn from_index(k: u8) -> Option<Self> {
        match k {
            1 => Some(NeumannForm::First),
            2 => Some(NeumannForm::Second),
            3 => Some(NeumannForm::Third),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            NeumannForm::First => 1,
            NeumannForm::Second => 2,
            NeumannForm::Third => 3,
        }
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

type CoeffFn = Box<dyn Fn(u64) -> Result<f64>>;

/// L_nu(x) summed from the selected Neumann expansion.
pub fn neumann_l(form: NeumannForm, nu: f64, x: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    if !nu.is_finite() || !x.is_finite() || x < 0.0 {
        return domain(format!("neumann_l needs finite nu and x >= 0, got nu = {nu}, x = {x}"));
    }
    if is_nonpositive_integer(nu + 0.5) {
        return domain(format!("Gamma(nu + 1/2) has a pole at nu = {nu}"));
    }
    match form {
        NeumannForm::First => {
            if nu <= -1.0 && nu == nu.floor() {
                return domain(format!("first Neumann form needs -nu not a positive integer, got nu = {nu}"));
            }
            if nu + 1.0 <= -1.0 {
                return domain("first Neumann form needs Bessel orders above -1");
            }
        }
        NeumannForm::Second => {
            if nu + 0.5 <= -1.0 {
                return domain("second Neumann form needs nu > -3/2");
            }
        }
        NeumannForm::Third => {}
    }
    if x == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let pi = std::f64::consts::PI;
    let h = 0.5 * x;
    let (prefactor, order, coeff): (f64, Box<dyn Fn(u64) -> f64>, CoeffFn) = match form {
        NeumannForm::First => {
            let pre = 4.0 / pi.sqrt() * rgamma(nu + 0.5);
            let coeff = move |n: u64| -> Result<f64> {
                let nf = n as f64;
                let (lg, sg) = gamma_ln_signed(nf + nu + 1.0)?;
                let mag = (lg - ln_gamma_pos(nf + 1.0)).exp();
                let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
                Ok(sign * sg * mag * (2.0 * nf + nu + 1.0) / ((2.0 * nf + 1.0) * (2.0 * nf + 2.0 * nu + 1.0)))
            };
            (pre, Box::new(move |n| 2.0 * n as f64 + nu + 1.0), Box::new(coeff))
        }
        NeumannForm::Second => {
            let pre = (x / (2.0 * pi)).sqrt();
            let coeff = move |n: u64| -> Result<f64> {
                let nf = n as f64;
                let mag = (nf * h.ln() - ln_gamma_pos(nf + 1.0)).exp();
                let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
                Ok(sign * mag / (nf + 0.5))
            };
            (pre, Box::new(move |n| n as f64 + nu + 0.5), Box::new(coeff))
        }
        NeumannForm::Third => {
            let pre = h.powf(nu + 0.5) * rgamma(nu + 0.5);
            let coeff = move |n: u64| -> Result<f64> {
                let nf = n as f64;
                let denom = nf + nu + 0.5;
                if denom == 0.0 {
                    return domain("third Neumann form meets a zero denominator");
                }
                let mag = (nf * h.ln() - ln_gamma_pos(nf + 1.0)).exp();
                let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
                Ok(sign * mag / denom)
            };
            (pre, Box::new(move |n| n as f64 + 0.5), Box::new(coeff))
        }
    };
    let term_cfg = cfg.with_rel_tol((cfg.rel_tol * 0.01).max(1e-15));
    let mut acc = KahanSum::new();
    let mut abs_sum = 0.0;
    let mut err = 0.0;
    let mut small = 0;
    let mut work = 0u64;
    for n in 0..cfg.max_terms as u64 {
        let c = coeff(n)?;
        let i = cylinder_eval(CylinderKind::BesselI, order(n), x, &term_cfg)?;
        work += i.work;
        let t = c * i.value;
        acc.add(t);
        abs_sum += t.abs();
        err += (c * i.err_est).abs();
        if t.abs() <= 0.25 * f64::EPSILON * acc.value().abs() || t == 0.0 {
            small += 1;
            if small >= 3 {
                let v = prefactor * acc.value();
                let e = prefactor.abs() * (err + 3.0 * t.abs() + 2.0 * f64::EPSILON * abs_sum);
                return Ok(EvalResult::checked(v, e, work, cfg));
            }
        } else {
            small = 0;
        }
    }
    let v = prefactor * acc.value();
    Ok(EvalResult { value: v, err_est: f64::INFINITY, work, converged: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    #[test]
    fn second_form_half_order_closed_form() {
        let r = neumann_l(NeumannForm::Second, 0.5, 1.0, &cfg()).unwrap();
        let exact = (2.0 / PI).sqrt() * (1f64.cosh() - 1.0);
        assert!((r.value - exact).abs() < 1e-14, "{r:?} vs {exact}");
    }

    #[test]
    fn forms_agree_with_direct_series() {
        for form in [NeumannForm::First, NeumannForm::Second, NeumannForm::Third] {
            for &(nu, x) in &[(1.0, 1.5), (0.25, 0.1), (2.0, 1.9), (-0.3, 0.7)] {
                let r = neumann_l(form, nu, x, &cfg()).unwrap();
                let l = cylinder_eval(CylinderKind::StruveL, nu, x, &cfg()).unwrap();
                assert!((r.value - l.value).abs() <= 1e-13 * l.value.abs(), "{form:?} nu = {nu}, x = {x}: {r:?} {l:?}");
                assert!(r.converged);
            }
        }
    }

    #[test]
    fn vanishes_at_origin_and_rejects_poles() {
        assert_eq!(neumann_l(NeumannForm::First, 1.0, 0.0, &cfg()).unwrap().value, 0.0);
        let tiny = neumann_l(NeumannForm::First, 1.0, 1e-8, &cfg()).unwrap();
        assert!(tiny.value.abs() < 1e-15);
        assert!(neumann_l(NeumannForm::First, -2.0, 1.0, &cfg()).is_err());
        assert!(neumann_l(NeumannForm::Second, -0.5, 1.0, &cfg()).is_err());
        assert_eq!(NeumannForm::from_index(4), None);
    }
}
