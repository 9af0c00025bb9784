use std::f64::consts::PI;

use struve::bessel_struve::struve_source;
use struve::identity::{
    check_kapteyn_routes, check_mathieu_kernel, check_ode_kapteyn, check_ode_schloemilch, check_omega_kernel,
    default_grid, fine_grid, lookup, registry, run_identity, verify_batch, IdentityReport, Job, Params,
};
use struve::scalar::gamma::pow_over_gamma;
use struve::scalar::{gamma, polylog, zeta};
use struve::series::{kapteyn_domain_bound, kapteyn_k_derivatives, sum_geometric, CoefficientSequence};
use struve::{Error, EvalResult, NumericConfig};

fn cfg() -> NumericConfig {
    NumericConfig::default()
}

fn all_default_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for spec in registry() {
        for params in default_grid(spec.id).unwrap() {
            jobs.push(Job { id: spec.id.to_string(), params });
        }
    }
    jobs
}

fn key(r: &IdentityReport) -> String {
    format!("{} {:?}", r.identity_id, r.params)
}

#[test]
fn registry_is_complete_and_consistent() {
    let ids: Vec<&str> = registry().iter().map(|s| s.id).collect();
    assert_eq!(ids.len(), 22);
    for spec in registry() {
        assert_eq!(lookup(spec.id).unwrap().id, spec.id);
        let grid = default_grid(spec.id).unwrap();
        assert!(!grid.is_empty(), "{}", spec.id);
        assert!(fine_grid(spec.id).unwrap().len() >= grid.len(), "{}", spec.id);
        for p in &grid {
            let mut names: Vec<&str> = p.keys().map(|k| k.as_str()).collect();
            names.sort_unstable();
            let mut want = spec.params.to_vec();
            want.sort_unstable();
            assert_eq!(names, want, "{}", spec.id);
        }
    }
    assert!(lookup("nonexistent").is_none());
}

#[test]
fn every_default_grid_passes() {
    let reports = verify_batch(&all_default_jobs(), &cfg()).unwrap();
    let failed: Vec<String> = reports.iter().filter(|r| !r.pass).map(key).collect();
    assert!(failed.is_empty(), "failing reports: {failed:#?}");
    assert!(reports.len() >= 200);
}

#[test]
fn batch_output_is_deterministic_and_ordered() {
    let jobs = all_default_jobs();
    let a = verify_batch(&jobs, &cfg()).unwrap();
    let b = verify_batch(&jobs, &cfg()).unwrap();
    assert_eq!(a, b);
    let serial: Vec<IdentityReport> =
        jobs.iter().flat_map(|j| run_identity(&j.id, &j.params, &cfg()).unwrap()).collect();
    assert_eq!(a, serial);
}

#[test]
fn refinement_never_flips_a_pass() {
    let jobs = all_default_jobs();
    // from loose settings through the default 1e-12 and one step beyond
    let ladder = [1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12, 1e-13];
    let runs: Vec<Vec<IdentityReport>> =
        ladder.iter().map(|&t| verify_batch(&jobs, &cfg().with_rel_tol(t)).unwrap()).collect();
    for (k, pair) in runs.windows(2).enumerate() {
        for (loose, tight) in pair[0].iter().zip(&pair[1]) {
            assert_eq!(key(loose), key(tight));
            assert!(
                !loose.pass || tight.pass,
                "{} passes at rel_tol {:e} but fails at {:e}: {tight:?}",
                key(loose),
                ladder[k],
                ladder[k + 1]
            );
        }
    }
}

#[test]
fn bad_identity_requests_are_usage_errors() {
    let c = cfg();
    assert!(matches!(run_identity("no_such_id", &Params::new(), &c), Err(Error::Usage(_))));
    let mut p = Params::new();
    p.insert("nu".into(), 1.0);
    assert!(matches!(run_identity("coth_kernel", &p, &c), Err(Error::Usage(_))));
    p.insert("a".into(), 1.0);
    p.insert("n".into(), 1.5);
    assert!(matches!(run_identity("sonin_gubler", &p, &c), Err(Error::Usage(_))));
}

#[test]
fn out_of_range_parameters_are_domain_errors() {
    let c = cfg();
    assert!(matches!(check_ode_schloemilch(1.0, 0.5, 1.0, false, &c), Err(Error::Domain(_))));
    let b = kapteyn_domain_bound(&CoefficientSequence::ones(), 0.5);
    assert!(matches!(check_kapteyn_routes(0.5, 1.2, 1.05 * b, &c), Err(Error::Domain(_))));
    assert!(matches!(check_ode_kapteyn(0.5, 2.0, b, &c), Err(Error::Domain(_))));
}

fn residual_against(lhs: EvalResult, rhs: f64) -> f64 {
    (lhs.value - rhs).abs() / rhs.abs().max(lhs.value.abs())
}

#[test]
fn halved_prefactor_variant_is_rejected() {
    // the first term of the closed form carries 2^nu; a 2^{nu+1} coefficient
    // must be flagged by the check
    let c = cfg();
    let (nu, a) = (1.0, 1.0);
    let r = check_mathieu_kernel(nu, a, &c).unwrap();
    assert!(r.pass, "{r:?}");
    let q = (-a).exp();
    let li2 = polylog(2.0, q, &c).unwrap().value;
    let second = PI * a.powf(nu) * (li2 - a * (-q).ln_1p()) / (2f64.powf(nu + 1.0) * gamma(nu + 1.0));
    let variant = second + 0.5 * (r.rhs.value - second);
    assert!(residual_against(r.lhs, variant) > 1e3 * 1e-6, "variant residual too small");
}

#[test]
fn pi_scaled_kernel_variant_is_rejected() {
    let c = cfg();
    let r = check_omega_kernel(0.5, 1.0, &c).unwrap();
    assert!(r.pass, "{r:?}");
    assert!(residual_against(r.lhs, PI * r.rhs.value) > 0.5);
}

#[test]
fn source_sign_variant_is_rejected() {
    // same right side with the zeta term added instead of subtracted
    let c = cfg();
    let (nu, mu, x) = (0.5, 2.0, 1.0);
    let r = check_ode_schloemilch(nu, mu, x, false, &c).unwrap();
    assert!(r.pass, "{r:?}");
    assert!((r.rhs.value + 0.858_666_307).abs() < 1e-8);
    let flipped = r.rhs.value + 2.0 * zeta(mu - nu + 1.0).unwrap() * struve_source(nu, x);
    assert!(residual_against(r.lhs, flipped) > 0.1);
}

#[test]
fn first_derivative_kapteyn_variant_is_rejected() {
    // M[K_mu] against (1/x)(K_mu - K_{mu+1})' + sum n^{-mu} s_{nu n}(n x)
    let c = cfg();
    let ones = CoefficientSequence::ones();
    let nu = 0.5;
    let mu = 4.0;
    let x = 0.3 * kapteyn_domain_bound(&ones, nu);
    let r = check_ode_kapteyn(nu, mu - 2.0, x, &c).unwrap();
    assert!(r.pass, "{r:?}");
    let d0 = kapteyn_k_derivatives(&ones, nu, mu, x, &c).unwrap();
    let d1 = kapteyn_k_derivatives(&ones, nu, mu + 1.0, x, &c).unwrap();
    let m = d0[2].value + d0[1].value / x - (1.0 + nu * nu / (x * x)) * d0[0].value;
    let src = sum_geometric(
        &|n| {
            let nf = n as f64;
            2.0 / (x * PI.sqrt()) * pow_over_gamma(0.5 * x * nf, nu * nf, nu * nf + 0.5).0 * nf.powf(-mu - 1.0)
        },
        &c,
    )
    .unwrap()
    .value;
    let variant = (d0[1].value - d1[1].value) / x + src;
    let m_result = EvalResult::exact(m);
    assert!(residual_against(m_result, variant) > 1e-3, "M = {m}, variant = {variant}");
    // the corrected form agrees with the same termwise M[K_mu]
    assert!(residual_against(m_result, r.rhs.value) < 1e-8);
}
