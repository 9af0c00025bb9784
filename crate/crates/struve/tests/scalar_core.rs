#![allow(clippy::excessive_precision)]

use std::f64::consts::{LN_2, PI};

use num::{BigInt, BigRational, ToPrimitive};
use proptest::prelude::*;
use struve::scalar::gamma::{pochhammer_real, pow_over_gamma};
use struve::scalar::{eta, gamma, gamma_ln, hyp2f1, hyp_pfq, pochhammer, polylog, rgamma, zeta};
use struve::NumericConfig;

fn cfg() -> NumericConfig {
    NumericConfig::default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn gamma_reference_values() {
    let cases = [
        (0.5, PI.sqrt()),
        (1.0 / 3.0, 2.678_938_534_707_747_6),
        (10.5, 1_133_278.388_948_785_6),
        (25.0, 620_448_401_733_239_439_360_000.0),
        (-0.5, -2.0 * PI.sqrt()),
        (-1.5, 4.0 * PI.sqrt() / 3.0),
    ];
    for (x, want) in cases {
        assert!(rel(gamma(x), want) < 4e-15, "Gamma({x}) = {} vs {want}", gamma(x));
        assert!(rel(rgamma(x), 1.0 / want) < 4e-15, "1/Gamma({x})");
    }
    assert_eq!(rgamma(-3.0), 0.0);
    assert!(rel(gamma_ln(100.0).unwrap(), 359.134_205_369_575_4) < 1e-15);
}

#[test]
fn zeta_and_eta_reference_values() {
    let cases = [
        (zeta(2.0).unwrap(), PI * PI / 6.0),
        (zeta(3.0).unwrap(), 1.202_056_903_159_594_3),
        (zeta(4.0).unwrap(), PI.powi(4) / 90.0),
        (zeta(1.5).unwrap(), 2.612_375_348_685_488_3),
        (eta(2.0).unwrap(), PI * PI / 12.0),
        (eta(1.0).unwrap(), LN_2),
    ];
    for (got, want) in cases {
        assert!(rel(got, want) < 4e-15, "{got} vs {want}");
    }
    assert!(zeta(1.0).is_err());
}

#[test]
fn polylog_reference_values() {
    let c = cfg();
    let li2_half = PI * PI / 12.0 - 0.5 * LN_2 * LN_2;
    assert!(rel(polylog(2.0, 0.5, &c).unwrap().value, li2_half) < 1e-14);
    assert!(rel(polylog(2.0, -1.0, &c).unwrap().value, -PI * PI / 12.0) < 1e-14);
    assert!(rel(polylog(3.0, 1.0, &c).unwrap().value, zeta(3.0).unwrap()) < 1e-14);
    // Li_1(z) = -ln(1 - z), including close to the unit circle
    for z in [0.3, 0.95, -0.99] {
        let r = polylog(1.0, z, &c).unwrap();
        let want = -(-z).ln_1p();
        assert!((r.value - want).abs() <= r.err_est.max(4e-15 * want.abs()), "Li_1({z}) = {r:?}");
    }
}

#[test]
fn hypergeometric_elementary_cases() {
    let c = cfg();
    let e = hyp_pfq(&[], &[], 1.5, &c).unwrap();
    assert!(rel(e.value, 1.5f64.exp()) < 1e-14);
    let z = -2.3;
    let k = hyp_pfq(&[1.0], &[2.0], z, &c).unwrap();
    assert!(rel(k.value, z.exp_m1() / z) < 1e-13);
    let x: f64 = 1.7;
    let s = hyp_pfq(&[], &[1.5], -x * x / 4.0, &c).unwrap();
    assert!(rel(s.value, x.sin() / x) < 1e-14);
    for z in [-3.0, -0.5, 0.4, 0.9] {
        let g = hyp2f1(1.0, 1.0, 2.0, z, &c).unwrap();
        let want = -(-z).ln_1p() / z;
        assert!(rel(g.value, want) < 1e-13, "2F1(1,1;2;{z}) = {g:?}");
    }
}

// Rising factorial of p/q computed exactly.
fn exact_pochhammer(p: i64, q: i64, n: u32) -> f64 {
    let lam = BigRational::new(BigInt::from(p), BigInt::from(q));
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for k in 0..n {
        acc *= lam.clone() + BigRational::from_integer(BigInt::from(k));
    }
    acc.to_f64().unwrap()
}

#[test]
fn pochhammer_matches_exact_rationals() {
    for (p, q) in [(1, 3), (7, 2), (-5, 4), (11, 7)] {
        for n in [0u32, 1, 5, 17, 40, 90] {
            let want = exact_pochhammer(p, q, n);
            let got = pochhammer(p as f64 / q as f64, n);
            let tol = if n <= 64 { 2e-14 } else { 1e-12 };
            assert!((got - want).abs() <= tol * want.abs(), "({p}/{q})_{n}: {got} vs {want}");
        }
    }
}

#[test]
fn large_order_prefactor_is_accurate() {
    // (u)^q / Gamma(g) for u = 85, q = g = 258.5 against its log evaluation
    let (v, r) = pow_over_gamma(85.0, 258.5, 258.5);
    let lg = 258.5 * 85f64.ln() - gamma_ln(258.5).unwrap();
    assert!(rel(v, lg.exp()) < 1e-12, "{v} vs {}", lg.exp());
    assert!(r < 1e-14);
}

proptest! {
    #[test]
    fn duplication_formula(z in 0.3f64..20.0) {
        let lhs = gamma(z) * gamma(z + 0.5);
        let rhs = 2f64.powf(1.0 - 2.0 * z) * PI.sqrt() * gamma(2.0 * z);
        prop_assert!(rel(lhs, rhs) < 1e-13, "z = {}: {} vs {}", z, lhs, rhs);
    }

    #[test]
    fn pochhammer_recurrence_and_gamma_ratio(lam in 0.1f64..15.0, n in 0u32..30) {
        let p = pochhammer(lam, n);
        prop_assert!(rel(pochhammer(lam, n + 1), p * (lam + n as f64)) < 1e-14);
        let g = gamma(lam + n as f64) / gamma(lam);
        prop_assert!(rel(p, g) < 1e-13, "({})_{}: {} vs {}", lam, n, p, g);
        prop_assert!(rel(pochhammer_real(lam, n as f64).unwrap(), p) < 1e-12);
    }

    #[test]
    fn eta_zeta_relation(s in 1.05f64..20.0) {
        let e = eta(s).unwrap();
        let z = zeta(s).unwrap();
        prop_assert!(rel(e, (1.0 - 2f64.powf(1.0 - s)) * z) < 1e-14, "s = {}", s);
    }

    #[test]
    fn reflection_formula(x in 0.05f64..0.95) {
        let prod = gamma(x) * gamma(1.0 - x);
        prop_assert!(rel(prod, PI / (PI * x).sin()) < 1e-14, "x = {}", x);
    }
}
