//! Mathieu series S and its alternating variant, and the complete Omega function.

use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_finite, integrate_semi_infinite_decay, Decay, Endpoint, Node};
use crate::scalar::dd::KahanSum;

/// Evaluation route for the Mathieu series and the Omega function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Series,
    Integral,
    PartialFraction,
}

// Largest |w| / 2 for which sinh(w u) is evaluated directly.
const SINH_GUARD: f64 = 700.0;

/// S(x) = sum 2n/(n^2+x^2)^2 or the alternating sum with (-1)^{n-1}.
pub fn mathieu_s(x: f64, alternating: bool, route: Route, cfg: &NumericConfig) -> Result<EvalResult> {
    if !x.is_finite() || x < 0.0 {
        return domain(format!("Mathieu series needs finite x >= 0, got {x}"));
    }
    match route {
        Route::Series => Ok(mathieu_series(x, alternating, cfg)),
        Route::Integral => mathieu_integral(x, alternating, cfg),
        Route::PartialFraction => Err(Error::Usage("Mathieu series has no partial-fraction route".into())),
    }
}

fn mathieu_series(x: f64, alternating: bool, cfg: &NumericConfig) -> EvalResult {
    let x2 = x * x;
    let f = |n: f64| 2.0 * n / ((x2 + n * n) * (x2 + n * n));
    let big_n = 200f64.max((4.0 * x).ceil()) as u64;
    let mut acc = KahanSum::new();
    let mut abs_sum = 0.0;
    for n in 1..big_n {
        let t = f(n as f64);
        let t = if alternating && n % 2 == 0 { -t } else { t };
        acc.add(t);
        abs_sum += t.abs();
    }
    // tail from n = N by Euler-Maclaurin (or Boole for the alternating sum)
    let nf = big_n as f64;
    let u = x2 + nf * nf;
    let n2 = nf * nf;
    let d1 = 2.0 / (u * u) - 8.0 * n2 / (u * u * u);
    let d3 = -24.0 / u.powi(3) + 288.0 * n2 / u.powi(4) - 384.0 * n2 * n2 / u.powi(5);
    let tail = if alternating {
        let sign = if big_n % 2 == 1 { 1.0 } else { -1.0 };
        sign * (f(nf) / 2.0 - d1 / 4.0 + d3 / 48.0)
    } else {
        1.0 / u + f(nf) / 2.0 - d1 / 12.0 + d3 / 720.0
    };
    acc.add(tail);
    // next correction is f^(5)(N) / 30240 (plain) or / 480 (alternating), with
    // |f^(5)| about 5040 N^-8 while x <= N / 4; bounded here with a factor of 4
    let trunc = if alternating { 42.0 } else { 0.7 } * nf.powi(-8);
    let v = acc.value();
    let err = trunc + 4.0 * f64::EPSILON * (abs_sum + tail.abs());
    EvalResult::checked(v, err, big_n, cfg)
}

fn mathieu_integral(x: f64, alternating: bool, cfg: &NumericConfig) -> Result<EvalResult> {
    if x == 0.0 {
        return domain("the integral route needs x > 0");
    }
    let f = move |n: Node| {
        let t = n.x;
        let den = if alternating { t.exp() + 1.0 } else { t.exp_m1() };
        if t == 0.0 {
            return 0.0;
        }
        t * (x * t).sin() / den
    };
    let inner = cfg.with_rel_tol(cfg.rel_tol * 0.5);
    let r = integrate_semi_infinite_decay(&f, 0.0, Decay::Exponential { rate: 1.0 }, Endpoint::Regular, &inner)?;
    let out = r.scale(1.0 / x);
    Ok(EvalResult::checked(out.value, out.err_est, out.work, cfg))
}

/// Omega(w) = 2 int_0^{1/2} sinh(w u) cot(pi u) du.
pub fn omega(w: f64, route: Route, cfg: &NumericConfig) -> Result<EvalResult> {
    if !w.is_finite() {
        return domain("Omega needs a finite argument");
    }
    if w == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    if w < 0.0 {
        return Ok(omega(-w, route, cfg)?.scale(-1.0));
    }
    if 0.5 * w > SINH_GUARD {
        return Err(Error::Range(format!("Omega({w}) overflows")));
    }
    match route {
        Route::Integral => {
            let pi = std::f64::consts::PI;
            let f = |n: Node| (w * n.x).sinh() / (pi * n.x).tan();
            let r = integrate_finite(&f, 0.0, 0.5, Endpoint::Removable(w / pi), Endpoint::Regular, cfg)?;
            Ok(r.scale(2.0))
        }
        Route::PartialFraction => {
            let wt = w / (2.0 * std::f64::consts::PI);
            let pf = omega_partial_fraction_sum(wt, cfg);
            let s = (std::f64::consts::PI * wt).sinh() / std::f64::consts::PI;
            let v = pf.value * s;
            Ok(EvalResult::checked(v, pf.err_est * s + 4.0 * f64::EPSILON * v.abs(), pf.work, cfg))
        }
        Route::Series => Err(Error::Usage("Omega has integral and partial-fraction routes".into())),
    }
}

/// sum_{n>=1} 2 (-1)^{n-1} n / (n^2 + w^2), equal to pi Omega(2 pi w) / sinh(pi w).
pub fn omega_partial_fraction_sum(w: f64, cfg: &NumericConfig) -> EvalResult {
    let w2 = w * w;
    let f = |n: f64| 2.0 * n / (n * n + w2);
    let big_n = 400f64.max((8.0 * w.abs()).ceil()) as u64;
    let mut acc = KahanSum::new();
    let mut abs_sum = 0.0;
    for n in 1..big_n {
        let t = f(n as f64);
        let t = if n % 2 == 0 { -t } else { t };
        acc.add(t);
        abs_sum += t.abs();
    }
    let nf = big_n as f64;
    let u = nf * nf + w2;
    let n2 = nf * nf;
    let d1 = 2.0 / u - 4.0 * n2 / (u * u);
    let d3 = -12.0 / (u * u) + 96.0 * n2 / u.powi(3) - 96.0 * n2 * n2 / u.powi(4);
    let sign = if big_n % 2 == 1 { 1.0 } else { -1.0 };
    let tail = sign * (f(nf) / 2.0 - d1 / 4.0 + d3 / 48.0);
    acc.add(tail);
    // the omitted fifth-derivative term is about 2 * 120 N^-6 / 480
    let trunc = nf.powi(-6);
    let v = acc.value();
    // each term carries at most three roundings (n^2 is exact), the compensated sum one more
    let rounding = 1.5 * f64::EPSILON * (abs_sum + tail.abs()) + f64::EPSILON * v.abs();
    EvalResult::checked(v, trunc + rounding, big_n, cfg)
}

/// Omega(2 pi x) / sinh(pi x) from the integral, with the exponential growth
/// cancelled inside the integrand.
pub fn omega_ratio(x: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    if !x.is_finite() {
        return domain("omega_ratio needs finite x");
    }
    if x == 0.0 {
        // limit 2 int_0^{1/2} 2u cot(pi u) du = 2 ln 2 / pi
        return Ok(EvalResult::exact(2.0 * std::f64::consts::LN_2 / std::f64::consts::PI));
    }
    if x < 0.0 {
        return omega_ratio(-x, cfg);
    }
    let pi = std::f64::consts::PI;
    let px = pi * x;
    let denom = -(-2.0 * px).exp_m1();
    // sinh(2 pi x u) / sinh(pi x) = e^{pi x (2u - 1)} (1 - e^{-4 pi x u}) / (1 - e^{-2 pi x})
    let f = |n: Node| {
        let u = n.x;
        let num = (px * (2.0 * u - 1.0)).exp() * -(-4.0 * px * u).exp_m1();
        num / denom / (pi * u).tan()
    };
    let limit = 4.0 * px * (-px).exp() / denom / pi;
    let r = integrate_finite(&f, 0.0, 0.5, Endpoint::Removable(limit), Endpoint::Regular, cfg)?;
    Ok(r.scale(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::zeta::zeta;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    #[test]
    fn mathieu_at_zero() {
        let z3 = zeta(3.0).unwrap();
        let s = mathieu_s(0.0, false, Route::Series, &cfg()).unwrap();
        assert!((s.value - 2.0 * z3).abs() < 1e-14, "{s:?}");
        let s = mathieu_s(0.0, true, Route::Series, &cfg()).unwrap();
        assert!((s.value - 1.5 * z3).abs() < 1e-14, "{s:?}");
        assert!(mathieu_s(0.0, false, Route::Integral, &cfg()).is_err());
    }

    #[test]
    fn mathieu_routes_agree() {
        for &x in &[0.5, 1.0, 2.0, 5.0] {
            for alt in [false, true] {
                let a = mathieu_s(x, alt, Route::Series, &cfg()).unwrap();
                let b = mathieu_s(x, alt, Route::Integral, &cfg()).unwrap();
                assert!((a.value - b.value).abs() <= a.err_est + b.err_est, "x = {x} alt = {alt}: {a:?} {b:?}");
                assert!((a.value - b.value).abs() <= 1e-10 * a.value.abs());
            }
        }
    }

    #[test]
    fn omega_basics() {
        assert_eq!(omega(0.0, Route::Integral, &cfg()).unwrap().value, 0.0);
        let a = omega(2.0, Route::Integral, &cfg()).unwrap();
        let b = omega(-2.0, Route::Integral, &cfg()).unwrap();
        assert_eq!(a.value, -b.value);
        assert!(omega(2000.0, Route::Integral, &cfg()).is_err());
    }

    #[test]
    fn omega_routes_agree() {
        let w = 2.0 * std::f64::consts::PI * 1.3;
        let a = omega(w, Route::Integral, &cfg()).unwrap();
        let b = omega(w, Route::PartialFraction, &cfg()).unwrap();
        assert!((a.value - b.value).abs() <= a.err_est + b.err_est, "{a:?} {b:?}");
        // pi Omega(2 pi 1.3) / sinh(1.3 pi), 25-digit reference
        let pf = omega_partial_fraction_sum(1.3, &cfg());
        assert!((pf.value - 0.3530613046856996560).abs() < 1e-14, "{pf:?}");
    }

    #[test]
    fn stable_ratio() {
        for &x in &[0.1, 0.5, 1.0, 3.0, 40.0] {
            let r = omega_ratio(x, &cfg()).unwrap();
            let pf = omega_partial_fraction_sum(x, &cfg());
            let expect = pf.value / std::f64::consts::PI;
            assert!((r.value - expect).abs() <= 1e-12 * expect.abs(), "x = {x}: {r:?} vs {expect}");
        }
        let r0 = omega_ratio(1e-9, &cfg()).unwrap();
        assert!((r0.value - omega_ratio(0.0, &cfg()).unwrap().value).abs() < 1e-8);
    }
}
