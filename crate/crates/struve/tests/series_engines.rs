use std::f64::consts::PI;

use struve::bessel_struve::{cylinder_eval, d_nu, CylinderKind};
use struve::identity::closed_forms::{alternating_half_order_t, half_order_t};
use struve::scalar::{eta, zeta};
use struve::series::{
    cahen_laplace, dirichlet_direct, hamburger_closed_form, hamburger_sum, kapteyn_domain_bound, kapteyn_gegenbauer,
    kapteyn_k, mathieu_s, neumann_l, omega, omega_partial_fraction_sum, schloemilch_t, sum_power_tail,
    CoefficientSequence, Exponents, NeumannForm, Route, SeriesParams,
};
use struve::{Error, NumericConfig};

fn cfg() -> NumericConfig {
    NumericConfig::default()
}

fn within(got: struve::EvalResult, want: f64, tol: f64) -> bool {
    (got.value - want).abs() <= tol * want.abs() && (got.value - want).abs() <= got.err_est + 1e-14 * want.abs()
}

#[test]
fn schloemilch_half_order_collapses_to_polylogs() {
    let c = cfg();
    for (mu, x) in [(1.5, 0.5), (2.0, 1.0), (3.0, 2.0), (1.2, 4.0)] {
        let t = schloemilch_t(&SeriesParams::new(0.5, mu, x, false), &c).unwrap();
        let want = half_order_t(mu, x, &c).unwrap();
        assert!(within(t, want, 1e-11), "T({mu}, {x}) = {t:?} vs {want}");
    }
    for (mu, x) in [(0.5, 0.5), (1.0, 1.0), (2.5, 3.0)] {
        let t = schloemilch_t(&SeriesParams::new(0.5, mu, x, true), &c).unwrap();
        let want = alternating_half_order_t(mu, x, &c).unwrap();
        assert!(within(t, want, 1e-11), "alternating T({mu}, {x}) = {t:?} vs {want}");
    }
}

#[test]
fn schloemilch_matches_brute_force_for_fast_decay() {
    // mu - nu = 4: the tail after 20000 terms is far below 1e-12
    let c = cfg();
    let (nu, mu, x) = (1.5, 5.5, 0.8);
    let brute: f64 = (1..20000u64)
        .map(|n| (n as f64).powf(-mu) * d_nu(nu, n as f64 * x, &c).unwrap().value)
        .rev()
        .sum();
    let t = schloemilch_t(&SeriesParams::new(nu, mu, x, false), &c).unwrap();
    assert!((t.value - brute).abs() <= 1e-12 * brute, "{t:?} vs {brute}");
}

#[test]
fn schloemilch_rejects_divergent_parameters() {
    let c = cfg();
    assert!(matches!(schloemilch_t(&SeriesParams::new(1.0, 0.5, 1.0, false), &c), Err(Error::Domain(_))));
    assert!(schloemilch_t(&SeriesParams::new(-1.0, 3.0, 1.0, false), &c).is_err());
}

#[test]
fn neumann_expansions_match_power_series() {
    let c = cfg();
    for (nu, x) in [(0.25, 0.3), (1.0, 1.0), (2.0, 1.9)] {
        let direct = cylinder_eval(CylinderKind::StruveL, nu, x, &c).unwrap().value;
        for k in 1..=3 {
            let form = NeumannForm::from_index(k).unwrap();
            let r = neumann_l(form, nu, x, &c).unwrap();
            assert!(within(r, direct, 1e-12), "form {k} at ({nu}, {x}): {r:?} vs {direct}");
        }
    }
}

#[test]
fn mathieu_series_values() {
    let c = cfg();
    let z3 = zeta(3.0).unwrap();
    assert!(within(mathieu_s(0.0, false, Route::Series, &c).unwrap(), 2.0 * z3, 1e-14));
    assert!(within(mathieu_s(0.0, true, Route::Series, &c).unwrap(), 1.5 * z3, 1e-14));
    for x in [0.5, 1.0, 2.0, 5.0] {
        for alt in [false, true] {
            let s = mathieu_s(x, alt, Route::Series, &c).unwrap();
            let i = mathieu_s(x, alt, Route::Integral, &c.with_rel_tol(1e-10)).unwrap();
            assert!((s.value - i.value).abs() <= 1e-8 * s.value.abs(), "x = {x}, alt = {alt}");
            assert!((s.value - i.value).abs() <= s.err_est + i.err_est);
        }
    }
    assert!(matches!(mathieu_s(1.0, false, Route::PartialFraction, &c), Err(Error::Usage(_))));
}

#[test]
fn omega_routes_and_symmetry() {
    let c = cfg();
    for w in [0.5, 2.0, 8.0, 20.0] {
        let a = omega(w, Route::Integral, &c.with_rel_tol(1e-10)).unwrap();
        let b = omega(w, Route::PartialFraction, &c).unwrap();
        assert!((a.value - b.value).abs() <= a.err_est + b.err_est, "w = {w}: {a:?} {b:?}");
        assert_eq!(omega(-w, Route::PartialFraction, &c).unwrap().value, -b.value);
    }
    // pi Omega(0) / sinh(0) limit of the partial fractions is 2 ln 2
    let pf = omega_partial_fraction_sum(0.0, &c);
    assert!((pf.value - 2.0 * std::f64::consts::LN_2).abs() < 1e-13);
}

#[test]
fn kapteyn_domain_and_guard() {
    let c = cfg();
    let ones = CoefficientSequence::ones();
    let b = kapteyn_domain_bound(&ones, 0.5);
    assert!((b - 1.0 / std::f64::consts::E).abs() < 1e-15);
    assert_eq!(kapteyn_domain_bound(&ones, 5.0), 2.0);
    assert!(matches!(kapteyn_k(&ones, 0.5, 2.0, 1.01 * b, &c), Err(Error::Domain(_))));
    assert!(matches!(kapteyn_gegenbauer(&ones, 0.5, 2.0, 1.01 * b, &c), Err(Error::Domain(_))));
}

#[test]
fn kapteyn_direct_matches_brute_force_and_integral() {
    let c = cfg();
    let ones = CoefficientSequence::ones();
    for nu in [0.5, 0.8] {
        let b = kapteyn_domain_bound(&ones, nu);
        for f in [0.3, 0.6] {
            let x = f * b;
            let brute: f64 = (1..400u64)
                .map(|n| {
                    let nf = n as f64;
                    nf.powf(-2.2) * d_nu(nu * nf, nf * x, &c).unwrap().value
                })
                .rev()
                .sum();
            let k = kapteyn_k(&ones, nu, 2.2, x, &c).unwrap();
            assert!((k.value - brute).abs() <= 1e-12 * brute, "nu = {nu}, x = {x}: {k:?} vs {brute}");
            let g = kapteyn_gegenbauer(&ones, nu, 1.2, x, &c.with_rel_tol(1e-10)).unwrap();
            assert!((k.value - g.value).abs() <= k.err_est + g.err_est, "{k:?} vs {g:?}");
        }
    }
}

#[test]
fn dirichlet_routes_reproduce_zeta_and_eta() {
    let c = cfg();
    let z = dirichlet_direct(&CoefficientSequence::ones(), &Exponents::Log, 3.0, &c).unwrap();
    assert!(within(z, zeta(3.0).unwrap(), 1e-12));
    let e = dirichlet_direct(&CoefficientSequence::alternating_ones(), &Exponents::Log, 2.0, &c).unwrap();
    assert!(within(e, eta(2.0).unwrap(), 1e-12));
    let fc = c.with_rel_tol(1e-10);
    let zl = cahen_laplace(&CoefficientSequence::ones(), &Exponents::Log, 3.0, &fc).unwrap();
    assert!((zl.value - zeta(3.0).unwrap()).abs() <= 1e-9, "{zl:?}");
    let el = cahen_laplace(&CoefficientSequence::alternating_ones(), &Exponents::Log, 2.0, &fc).unwrap();
    assert!((el.value - eta(2.0).unwrap()).abs() <= 1e-9, "{el:?}");
    // Linear exponents: sum e^{-n} = 1 / (e - 1)
    let g = dirichlet_direct(&CoefficientSequence::ones(), &Exponents::Linear { step: 1.0 }, 1.0, &c).unwrap();
    assert!(within(g, 1.0 / (std::f64::consts::E - 1.0), 1e-14));
}

#[test]
fn divergent_dirichlet_series_is_rejected() {
    let c = cfg();
    let r = dirichlet_direct(&CoefficientSequence::ones(), &Exponents::Log, 1.0, &c);
    assert!(matches!(r, Err(Error::Domain(_))), "{r:?}");
}

#[test]
fn generic_engine_on_known_sums() {
    let c = cfg();
    for a in [0.1, 0.5, 1.0, 2.0, 7.0] {
        let r = hamburger_sum(a, &c).unwrap();
        let want = hamburger_closed_form(a);
        assert!(within(r, want, 1e-11), "a = {a}: {r:?} vs {want}");
    }
    let r = sum_power_tail(&|n| (n as f64).powi(-4), 3.0, &c).unwrap();
    assert!(within(r, PI.powi(4) / 90.0, 1e-13));
}

#[test]
fn tighter_tolerance_shrinks_estimates() {
    let loose = NumericConfig::default().with_rel_tol(1e-6);
    let tight = NumericConfig::default().with_rel_tol(1e-12);
    let p = SeriesParams::new(1.0, 2.5, 1.0, false);
    let a = schloemilch_t(&p, &loose).unwrap();
    let b = schloemilch_t(&p, &tight).unwrap();
    assert!(a.converged && b.converged);
    assert!(b.err_est <= a.err_est);
    assert!((a.value - b.value).abs() <= a.err_est + b.err_est);
}
