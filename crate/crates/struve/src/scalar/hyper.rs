//! Generalized hypergeometric series, 2F1 with the z -> 1 - z connection, and the
//! confluent Fox-Wright function 1Psi1.

use super::dd::KahanSum;
use super::gamma::{gamma, gamma_ln_signed, ln_gamma_pos, rgamma};
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Error, Result};

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

// Geometric bound on the remaining terms from the current term ratio.
fn tail_bound(term: f64, ratio: f64) -> f64 {
    let r = ratio.abs();
    if r < 0.9 {
        term.abs() * r / (1.0 - r)
    } else {
        10.0 * term.abs() / (1.0 - r.min(0.99))
    }
}

/// Sum of pFq by forward term recurrence.
pub fn hyp_pfq(upper: &[f64], lower: &[f64], z: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    if let Some(b) = lower.iter().find(|b| is_nonpositive_integer(**b)) {
        return domain(format!("lower parameter {b} is a pole"));
    }
    if upper.iter().chain(lower).any(|v| !v.is_finite()) || !z.is_finite() {
        return domain("non-finite hypergeometric argument");
    }
    let terminating = upper.iter().any(|a| is_nonpositive_integer(*a));
    let p = upper.len();
    let q = lower.len();
    if !terminating {
        if p > q + 1 {
            return Err(Error::Divergence(format!("{p}F{q} diverges for z != 0")));
        }
        if p == q + 1 && z.abs() >= 1.0 {
            return Err(Error::Divergence(format!("{p}F{q} needs |z| < 1, got {z}")));
        }
    }
    if z == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let thresh = f64::EPSILON / 4.0;
    let mut sum = KahanSum::new();
    let mut abs_sum = 0.0;
    let mut term = 1.0f64;
    sum.add(term);
    abs_sum += 1.0;
    let mut small_run = 0;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let mut ratio = z / (nf + 1.0);
        for a in upper {
            ratio *= a + nf;
        }
        for b in lower {
            ratio /= b + nf;
        }
        term *= ratio;
        n += 1;
        sum.add(term);
        abs_sum += term.abs();
        if term == 0.0 {
            let v = sum.value();
            let err = 2.0 * f64::EPSILON * abs_sum;
            return Ok(EvalResult::checked(v, err, n as u64, cfg));
        }
        let tail = tail_bound(term, ratio);
        if tail <= thresh * sum.value().abs() {
            small_run += 1;
            if small_run >= 3 {
                let v = sum.value();
                let err = tail + 2.0 * f64::EPSILON * abs_sum;
                return Ok(EvalResult::checked(v, err, n as u64, cfg));
            }
        } else {
            small_run = 0;
        }
        if n >= cfg.max_terms {
            let v = sum.value();
            return Ok(EvalResult {
                value: v,
                err_est: 10.0 * term.abs() * (n as f64).max(1.0),
                work: n as u64,
                converged: false,
            });
        }
    }
}

/// Gauss 2F1 on (-inf, 1] using direct series, Pfaff and the 1 - z connection.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    if is_nonpositive_integer(c) {
        return domain(format!("2F1 lower parameter {c} is a pole"));
    }
    if z > 1.0 {
        return domain("2F1 implemented for z <= 1");
    }
    let terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if terminating || z.abs() <= 0.75 {
        return hyp_pfq(&[a, b], &[c], z, cfg);
    }
    let s = c - a - b;
    if z == 1.0 {
        if s <= 0.0 {
            return Err(Error::Divergence("2F1 at z = 1 requires c - a - b > 0".into()));
        }
        let v = gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b);
        return Ok(EvalResult::checked(v, 8.0 * f64::EPSILON * v.abs(), 1, cfg));
    }
    if z < -0.75 {
        // Pfaff: (1 - z)^{-a} 2F1(a, c - b; c; z / (z - 1))
        let w = z / (z - 1.0);
        let inner = hyp2f1(a, c - b, c, w, cfg)?;
        return Ok(inner.scale((1.0 - z).powf(-a)));
    }
    if s == s.round() {
        // logarithmic case: fall back to the slowly converging series
        return hyp_pfq(&[a, b], &[c], z, cfg);
    }
    let w = 1.0 - z;
    let f1 = hyp_pfq(&[a, b], &[a + b - c + 1.0], w, cfg)?;
    let f2 = hyp_pfq(&[c - a, c - b], &[s + 1.0], w, cfg)?;
    let ca = gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b);
    let cb = gamma(c) * gamma(-s) * rgamma(a) * rgamma(b);
    let cb = cb * w.powf(s);
    let v = ca * f1.value + cb * f2.value;
    let err = ca.abs() * f1.err_est
        + cb.abs() * f2.err_est
        + 16.0 * f64::EPSILON * (ca * f1.value).abs().max((cb * f2.value).abs());
    Ok(EvalResult {
        value: v,
        err_est: err,
        work: f1.work + f2.work,
        converged: f1.converged && f2.converged && cfg.accepts(v, err),
    })
}

/// Confluent Fox-Wright function sum_n Gamma(a + rho n)/Gamma(a) * Gamma(b)/Gamma(b + sigma n) * z^n / n!.
pub fn fox_wright_1psi1(
    a: f64,
    rho: f64,
    b: f64,
    sigma: f64,
    z: f64,
    cfg: &NumericConfig,
) -> Result<EvalResult> {
    if !(rho > 0.0) || !(sigma > 0.0) {
        return domain("Fox-Wright strides must be positive");
    }
    let delta = sigma - rho + 1.0;
    let nabla = rho.powf(-rho) * sigma.powf(sigma);
    if delta < 0.0 {
        return Err(Error::Divergence(format!("Fox-Wright diverges: Delta = {delta} < 0")));
    }
    if delta == 0.0 && z.abs() >= nabla {
        return Err(Error::Divergence(format!(
            "Fox-Wright with Delta = 0 needs |z| < {nabla}, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return domain("Fox-Wright base parameters must avoid Gamma poles");
    }
    let (lga, sga) = gamma_ln_signed(a)?;
    let (lgb, sgb) = gamma_ln_signed(b)?;
    let lz = z.abs().ln();
    let thresh = f64::EPSILON / 4.0;
    let mut sum = KahanSum::new();
    let mut abs_sum = 0.0;
    let mut small_run = 0;
    let mut last = 0.0;
    let mut past_peak = false;
    let mut prev_abs = f64::INFINITY;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        let term = if is_nonpositive_integer(b + sigma * nf) {
            0.0
        } else {
            let (lnum, snum) = gamma_ln_signed(a + rho * nf)
                .map_err(|_| Error::Domain(format!("Gamma pole at a + rho*{n}")))?;
            let (lden, sden) = gamma_ln_signed(b + sigma * nf)?;
            let l = lnum - lga - lden + lgb + nf * lz - ln_gamma_pos(nf + 1.0);
            let sign = snum * sga * sden * sgb * if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
            sign * l.exp()
        };
        sum.add(term);
        abs_sum += term.abs();
        last = term.abs();
        if last < prev_abs {
            past_peak = true;
        }
        prev_abs = last;
        if past_peak && last <= thresh * sum.value().abs() {
            small_run += 1;
            if small_run >= 3 {
                let v = sum.value();
                let err = 10.0 * last + 64.0 * f64::EPSILON * abs_sum;
                return Ok(EvalResult::checked(v, err, n as u64 + 1, cfg));
            }
        } else {
            small_run = 0;
        }
    }
    let v = sum.value();
    Ok(EvalResult {
        value: v,
        err_est: 10.0 * last,
        work: cfg.max_terms as u64,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    #[test]
    fn trivial_cases() {
        let r = hyp_pfq(&[0.3, 2.0], &[1.5], 0.0, &cfg()).unwrap();
        assert_eq!(r.value, 1.0);
        let r = hyp_pfq(&[1.0, 1.0], &[2.0], 0.5, &cfg()).unwrap();
        assert!((r.value - 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!(r.converged);
        assert!(hyp_pfq(&[1.0], &[-2.0], 0.5, &cfg()).is_err());
        assert!(hyp_pfq(&[1.0, 1.0], &[2.0], 1.0, &cfg()).is_err());
    }

    #[test]
    fn terminating_series_is_polynomial() {
        // 2F1(1/2, -1; 3/2; t^2) = 1 - t^2/3
        let r = hyp_pfq(&[0.5, -1.0], &[1.5], 0.81, &cfg()).unwrap();
        assert!((r.value - (1.0 - 0.27)).abs() < 1e-15);
    }

    #[test]
    fn connection_formula_near_one() {
        // 2F1(1/2, -1/2; 3/2; t^2) = (t sqrt(1 - t^2) + asin t) / (2 t)
        for &t in &[0.9, 0.99, 0.99999] {
            let r = hyp2f1(0.5, -0.5, 1.5, t * t, &cfg()).unwrap();
            let exact = (t * (1.0 - t * t).sqrt() + t.asin()) / (2.0 * t);
            assert!((r.value - exact).abs() < 1e-13, "t = {t}: {} vs {exact}", r.value);
            assert!(r.converged);
        }
        let r = hyp2f1(0.5, -0.5, 1.5, 1.0, &cfg()).unwrap();
        assert!((r.value - std::f64::consts::PI / 4.0).abs() < 1e-15);
        let r = hyp2f1(1.0, 1.0, 2.0, -3.0, &cfg()).unwrap();
        assert!((r.value - 4f64.ln() / 3.0).abs() < 1e-14);
    }

    #[test]
    fn fox_wright_reduces_to_kummer() {
        let r = fox_wright_1psi1(1.0, 1.0, 2.0, 1.0, 1.0, &cfg()).unwrap();
        assert!((r.value - (std::f64::consts::E - 1.0)).abs() < 1e-14);
        assert_eq!(fox_wright_1psi1(1.0, 1.0, 2.0, 1.0, 0.0, &cfg()).unwrap().value, 1.0);
    }

    #[test]
    fn fox_wright_guard() {
        // Delta = 0 when sigma + 1 = rho; nabla = rho^-rho sigma^sigma
        assert!(fox_wright_1psi1(1.0, 2.0, 1.0, 1.0, 0.2, &cfg()).is_ok());
        assert!(fox_wright_1psi1(1.0, 2.0, 1.0, 1.0, 0.25, &cfg()).is_err());
        assert!(fox_wright_1psi1(1.0, 3.0, 1.0, 1.0, 0.01, &cfg()).is_err());
    }
}
