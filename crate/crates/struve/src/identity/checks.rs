//! The individual two-route checks.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::{
    finish, finite_cfg, oscillatory_cfg, params, side, vertical_cfg, IdentityReport, ToleranceClass,
};
use crate::bessel_struve::{cylinder_eval, d_nu, mse_residual, struve_source, CylinderKind};
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Result};
use crate::quadrature::{
    integrate_bessel_oscillatory, integrate_finite, integrate_semi_infinite_decay, integrate_vertical_line, Decay,
    Endpoint, Node,
};
use crate::scalar::complex::ln_gamma_complex;
use crate::scalar::gamma::{gamma, rgamma};
use crate::scalar::hyper::{hyp2f1, hyp_pfq};
use crate::scalar::polylog::polylog;
use crate::scalar::zeta::{eta_eval, zeta_complex, zeta_eval};
use crate::series::{
    cahen_laplace, dirichlet_direct, hamburger_closed_form, hamburger_sum, kapteyn_domain_bound, kapteyn_gegenbauer,
    kapteyn_k, kapteyn_k_derivatives, mathieu_s, neumann_l, omega, omega_ratio, schloemilch_t,
    schloemilch_t_derivatives, sum_geometric, upsilon, CoefficientSequence, Exponents, NeumannForm, Route,
    SeriesParams, SignPattern,
};

/// Distance kept from the edges of the Mellin strip nu < p < nu + 1.
pub const MELLIN_STRIP_MARGIN: f64 = 0.05;

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be finite and positive, got {v}"))
    }
}

// Inner evaluations inside integrands run at full precision.
fn inner_cfg(cfg: &NumericConfig) -> NumericConfig {
    cfg.with_rel_tol(cfg.rel_tol.min(1e-13))
}

/// coth(y) - 1/y without cancellation near 0.
pub fn coth_minus_reciprocal(y: f64) -> f64 {
    if y < 0.0 {
        return -coth_minus_reciprocal(-y);
    }
    if y < 0.25 {
        // sum 2^{2k} B_{2k} y^{2k-1} / (2k)!
        const C: [f64; 7] = [
            1.0 / 3.0,
            -1.0 / 45.0,
            2.0 / 945.0,
            -1.0 / 4725.0,
            2.0 / 93555.0,
            -1382.0 / 638512875.0,
            4.0 / 18243225.0,
        ];
        let y2 = y * y;
        let mut acc = 0.0;
        for c in C.iter().rev() {
            acc = acc * y2 + c;
        }
        return acc * y;
    }
    1.0 / y.tanh() - 1.0 / y
}

/// Integral of J_nu(a x) / ((x^2 + n^2) x^nu) against pi D_nu(a n) / (2 n^{nu+1}).
pub fn check_sonin_gubler(nu: f64, a: f64, n: u32, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    positive("a", a)?;
    if n == 0 {
        return domain("n must be at least 1");
    }
    let nf = n as f64;
    let g = move |x: f64| 1.0 / ((x * x + nf * nf) * x.powf(nu));
    let limit = (0.5 * a).powf(nu) * rgamma(nu + 1.0) / (nf * nf);
    let mut notes = Vec::new();
    let lhs = integrate_bessel_oscillatory(&g, nu, a, nu + 2.0, Endpoint::Removable(limit), &oscillatory_cfg(cfg));
    let lhs = side(lhs, &mut notes, "integral");
    let rhs = d_nu(nu, a * nf, cfg).map(|d| d.result(cfg).scale(PI / (2.0 * nf.powf(nu + 1.0))));
    let rhs = side(rhs, &mut notes, "difference function");
    let p = params(&[("nu", nu), ("a", a), ("n", nf)]);
    Ok(finish(IdentityReport::relative("sonin_gubler", p, lhs, rhs, ToleranceClass::Quadrature), notes))
}

/// Each Neumann expansion of L_nu against the direct power series.
pub fn check_neumann_forms(nu: f64, x: f64, cfg: &NumericConfig) -> Result<Vec<IdentityReport>> {
    if !nu.is_finite() || !(x >= 0.0) || !x.is_finite() {
        return domain(format!("neumann_forms needs finite nu and x >= 0, got nu = {nu}, x = {x}"));
    }
    let mut out = Vec::new();
    for form in [NeumannForm::First, NeumannForm::Second, NeumannForm::Third] {
        let mut notes = Vec::new();
        let lhs = side(neumann_l(form, nu, x, cfg), &mut notes, "Neumann series");
        let rhs = side(cylinder_eval(CylinderKind::StruveL, nu, x, cfg), &mut notes, "power series");
        let p = params(&[("nu", nu), ("x", x), ("form", form.index() as f64)]);
        out.push(finish(IdentityReport::relative("neumann_forms", p, lhs, rhs, ToleranceClass::Series), notes));
    }
    Ok(out)
}

/// Finite-interval representations of L_nu and I_nu.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StruveRep {
    /// L_nu with a 4F5 kernel weighted by (1 - t^2)^{nu + 1/2}.
    Hyper4F5,
    /// L_nu with a 1F2 kernel weighted by (1 - t^2)^nu.
    Hyper1F2A,
    /// L_nu with an unweighted 1F2 kernel.
    Hyper1F2B,
    /// Poisson integral of I_nu.
    BesselPoisson,
}

impl StruveRep {
    pub fn id(self) -> &'static str {
        match self {
            StruveRep::Hyper4F5 => "struve_4f5",
            StruveRep::Hyper1F2A => "struve_1f2_a",
            StruveRep::Hyper1F2B => "struve_1f2_b",
            StruveRep::BesselPoisson => "bessel_i_poisson",
        }
    }
}

/// Series value of L_nu (or I_nu) against a [0, 1] integral representation.
pub fn check_struve_integral_reps(nu: f64, x: f64, which: StruveRep, cfg: &NumericConfig) -> Result<IdentityReport> {
    if !(nu > -0.5) || !nu.is_finite() {
        return domain(format!("integral representations need nu > -1/2, got {nu}"));
    }
    positive("x", x)?;
    let inner = inner_cfg(cfg);
    let kind = if which == StruveRep::BesselPoisson { CylinderKind::BesselI } else { CylinderKind::StruveL };
    let mut notes = Vec::new();
    let lhs = side(cylinder_eval(kind, nu, x, cfg), &mut notes, "power series");
    let one_minus_t2 = |n: Node| n.to_b * (1.0 + n.x);
    let pfq = |up: &[f64], low: &[f64], z: f64| hyp_pfq(up, low, z, &inner).map(|r| r.value).unwrap_or(f64::NAN);
    let (pre, right, integrand): (f64, Endpoint, Box<dyn Fn(Node) -> f64 + Sync>) = match which {
        StruveRep::Hyper4F5 => {
            let pre = x.powf(nu + 1.0) * gamma(nu + 2.0)
                / (PI.sqrt()
                    * 2f64.powf(2.0 * nu - 0.5)
                    * gamma(nu + 1.5)
                    * gamma(0.5 * nu + 0.75)
                    * gamma(0.5 * nu + 1.25));
            let up = [0.5, 0.5 * (nu + 3.0), nu + 0.5, nu + 1.0];
            let low = [1.5, 0.5 * (nu + 1.0), 0.5 * nu + 0.75, 0.5 * nu + 1.25, nu + 1.5];
            let f = move |n: Node| {
                let s = one_minus_t2(n);
                s.powf(nu + 0.5) * (x * n.x).cosh() * pfq(&up, &low, -x * x * s * s / 16.0)
            };
            (pre, Endpoint::Algebraic(nu + 0.5), Box::new(f))
        }
        StruveRep::Hyper1F2A => {
            let pre = x.powf(nu + 1.0) / (2f64.powf(nu - 1.0) * PI * gamma(nu + 1.0));
            let f = move |n: Node| {
                let s = one_minus_t2(n);
                s.powf(nu) * (x * n.x).cosh() * pfq(&[0.5], &[1.5, nu + 1.0], -0.25 * x * x * s)
            };
            (pre, Endpoint::Algebraic(nu), Box::new(f))
        }
        StruveRep::Hyper1F2B => {
            let pre = x.powf(nu + 1.0) / (PI.sqrt() * 2f64.powf(nu) * gamma(nu + 1.5));
            let f = move |n: Node| {
                let s = one_minus_t2(n);
                (x * n.x).cosh() * pfq(&[nu + 0.5], &[1.0, nu + 1.5], -0.25 * x * x * s)
            };
            (pre, Endpoint::Regular, Box::new(f))
        }
        StruveRep::BesselPoisson => {
            let pre = 2.0 * (0.5 * x).powf(nu) / (PI.sqrt() * gamma(nu + 0.5));
            let f = move |n: Node| one_minus_t2(n).powf(nu - 0.5) * (x * n.x).cosh();
            (pre, Endpoint::Algebraic(nu - 0.5), Box::new(f))
        }
    };
    let rhs = integrate_finite(&*integrand, 0.0, 1.0, Endpoint::Regular, right, &finite_cfg(cfg)).map(|r| r.scale(pre));
    let rhs = side(rhs, &mut notes, "integral");
    let p = params(&[("nu", nu), ("x", x)]);
    Ok(finish(IdentityReport::relative(which.id(), p, lhs, rhs, ToleranceClass::Quadrature), notes))
}

/// Integral of J_nu(a x) Omega(2 pi x) / (x^nu sinh(pi x)) against the
/// alternating series sum (-1)^{n-1} n^{-nu} D_nu(a n).
pub fn check_omega_kernel(nu: f64, a: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    positive("a", a)?;
    let inner = inner_cfg(cfg);
    let g = move |x: f64| omega_ratio(x, &inner).map(|r| r.value).unwrap_or(f64::NAN) * x.powf(-nu);
    let limit = 2.0 * LN_2 / PI * (0.5 * a).powf(nu) * rgamma(nu + 1.0);
    let mut notes = Vec::new();
    let lhs = integrate_bessel_oscillatory(&g, nu, a, nu + 2.0, Endpoint::Removable(limit), &oscillatory_cfg(cfg));
    let lhs = side(lhs, &mut notes, "integral");
    let rhs = side(schloemilch_t(&SeriesParams::new(nu, nu, a, true), cfg), &mut notes, "series");
    let p = params(&[("nu", nu), ("a", a)]);
    let report = IdentityReport::relative("omega_kernel", p, lhs, rhs, ToleranceClass::Quadrature)
        .with_note("the Laplace-integral form of the same alternating series is checked by cahen_bessel");
    Ok(finish(report, notes))
}

/// Coefficients a_n = (-1)^{n-1} D_nu(a n) with their smooth extension.
pub fn bessel_coefficients(nu: f64, a: f64, cfg: &NumericConfig) -> CoefficientSequence {
    let c = *cfg;
    let d = move |z: f64| d_nu(nu, z, &c).map(|p| (p.value, p.d1)).unwrap_or((f64::NAN, f64::NAN));
    let lead = 2.0 * (0.5 * a).powf(nu - 1.0) / (PI.sqrt() * gamma(nu + 0.5));
    CoefficientSequence::from_fn(move |n| {
        let s = if n % 2 == 1 { 1.0 } else { -1.0 };
        s * d(a * n as f64).0
    })
    .with_extension(
        move |s| (PI * (s - 1.0)).cos() * d(a * s).0,
        move |s| {
            let (v, dv) = d(a * s);
            -PI * (PI * (s - 1.0)).sin() * v + (PI * (s - 1.0)).cos() * a * dv
        },
    )
    .with_sign(SignPattern::Alternating)
    .with_power_bound(lead, nu - 1.0)
    // n^{-nu} D_nu(a n) is a positive multiple of int_0^1 (1-t^2)^{nu-1/2} e^{-a n t} dt
    .with_completely_monotone(nu)
}

fn cahen_report(id: &str, p: super::Params, a: &CoefficientSequence, r: f64, cfg: &NumericConfig) -> IdentityReport {
    let mut notes = Vec::new();
    let lhs = side(cahen_laplace(a, &Exponents::Log, r, &finite_cfg(cfg)), &mut notes, "Laplace form");
    let rhs = side(dirichlet_direct(a, &Exponents::Log, r, cfg), &mut notes, "direct sum");
    finish(IdentityReport::relative(id, p, lhs, rhs, ToleranceClass::Quadrature), notes)
}

/// Laplace form against direct summation for sum (-1)^{n-1} n^{-nu} D_nu(a n).
pub fn check_bessel_cahen(nu: f64, a: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    positive("a", a)?;
    let seq = bessel_coefficients(nu, a, cfg);
    Ok(cahen_report("cahen_bessel", params(&[("nu", nu), ("a", a)]), &seq, nu, cfg))
}

/// Laplace form against direct summation for zeta(s).
pub fn check_cahen_zeta(s: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    if !(s > 1.0) || !s.is_finite() {
        return domain(format!("zeta series needs s > 1, got {s}"));
    }
    Ok(cahen_report("cahen_zeta", params(&[("s", s)]), &CoefficientSequence::ones(), s, cfg))
}

/// Laplace form against direct summation for eta(s).
pub fn check_cahen_eta(s: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("s", s)?;
    Ok(cahen_report("cahen_eta", params(&[("s", s)]), &CoefficientSequence::alternating_ones(), s, cfg))
}

/// Integral of J_nu(a x) S(x) x^{-nu} against the dilogarithm closed form.
pub fn check_mathieu_kernel(nu: f64, a: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    positive("a", a)?;
    let inner = inner_cfg(cfg);
    let g = move |x: f64| {
        mathieu_s(x, false, Route::Series, &inner).map(|r| r.value).unwrap_or(f64::NAN) * x.powf(-nu)
    };
    let zeta3 = 1.202_056_903_159_594_2;
    let limit = 2.0 * zeta3 * (0.5 * a).powf(nu) * rgamma(nu + 1.0);
    let mut notes = Vec::new();
    let lhs = integrate_bessel_oscillatory(&g, nu, a, nu + 2.0, Endpoint::Removable(limit), &oscillatory_cfg(cfg));
    let lhs = side(lhs, &mut notes, "integral");
    let rhs = mathieu_kernel_rhs(nu, a, cfg);
    let rhs = side(rhs, &mut notes, "closed form");
    let p = params(&[("nu", nu), ("a", a)]);
    Ok(finish(IdentityReport::relative("mathieu_kernel", p, lhs, rhs, ToleranceClass::Quadrature), notes))
}

/// sqrt(pi) a^{nu+2} / (2^nu Gamma(nu + 1/2)) int_0^1 t^2 / (e^{a t} - 1) 2F1(1/2, 1/2 - nu; 3/2; t^2) dt
/// + pi a^nu (Li_2(e^{-a}) + a Li_1(e^{-a})) / (2^{nu+1} Gamma(nu + 1)).
pub fn mathieu_kernel_rhs(nu: f64, a: f64, cfg: &NumericConfig) -> Result<EvalResult> {
    let inner = inner_cfg(cfg);
    let c1 = PI.sqrt() * a.powf(nu + 2.0) / (2f64.powf(nu) * gamma(nu + 0.5));
    let f = move |n: Node| {
        let t = n.x;
        let h = hyp2f1(0.5, 0.5 - nu, 1.5, t * t, &inner).map(|r| r.value).unwrap_or(f64::NAN);
        t * t / (a * t).exp_m1() * h
    };
    let b = 0.5 - nu;
    let right = if b <= 0.0 && b == b.floor() { Endpoint::Regular } else { Endpoint::Algebraic(nu + 0.5) };
    let integral = integrate_finite(&f, 0.0, 1.0, Endpoint::Removable(0.0), right, &finite_cfg(cfg))?;
    let q = (-a).exp();
    let li2 = polylog(2.0, q, cfg)?;
    let li1 = -(-q).ln_1p();
    let c2 = PI * a.powf(nu) / (2f64.powf(nu + 1.0) * gamma(nu + 1.0));
    let second = EvalResult {
        value: c2 * (li2.value + a * li1),
        err_est: c2 * (li2.err_est + 4.0 * f64::EPSILON * a * li1),
        work: li2.work,
        converged: li2.converged,
    };
    Ok(integral.scale(c1).axpy(1.0, second))
}

/// Schloemilch series T_{nu,nu+1}(x) against the integral of
/// J_nu(x t) (coth(pi t) - 1/(pi t)) t^{-nu-1}.
pub fn check_coth_kernel(nu: f64, x: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    positive("x", x)?;
    let mut notes = Vec::new();
    let lhs = side(schloemilch_t(&SeriesParams::new(nu, nu + 1.0, x, false), cfg), &mut notes, "series");
    let g = move |t: f64| coth_minus_reciprocal(PI * t) * t.powf(-nu - 1.0);
    let limit = PI / 3.0 * (0.5 * x).powf(nu) * rgamma(nu + 1.0);
    let rhs = integrate_bessel_oscillatory(&g, nu, x, nu + 1.0, Endpoint::Removable(limit), &oscillatory_cfg(cfg));
    let rhs = side(rhs, &mut notes, "integral");
    let p = params(&[("nu", nu), ("x", x)]);
    Ok(finish(IdentityReport::relative("coth_kernel", p, lhs, rhs, ToleranceClass::Quadrature), notes))
}

/// Mellin transform of x^{-nu-1}(coth(pi x) - 1/(pi x)) against the Beta-zeta closed form.
pub fn check_mellin_kernel(nu: f64, p: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    let d = p - nu;
    if !(MELLIN_STRIP_MARGIN..=1.0 - MELLIN_STRIP_MARGIN).contains(&d) {
        return domain(format!(
            "p = {p} must lie in [nu + {m}, nu + 1 - {m}] for nu = {nu}",
            m = MELLIN_STRIP_MARGIN
        ));
    }
    let f = move |n: Node| n.x.powf(d - 2.0) * coth_minus_reciprocal(PI * n.x);
    let decay = Decay::PowerTail { terms: [(1.0, d - 2.0), (-1.0 / PI, d - 3.0), (0.0, 0.0)], remainder_rate: 2.0 * PI };
    let mut notes = Vec::new();
    let lhs = integrate_semi_infinite_decay(&f, 0.0, decay, Endpoint::Algebraic(d - 1.0), &finite_cfg(cfg));
    let lhs = side(lhs, &mut notes, "transform");
    let al = 0.5 * d;
    let be = 1.0 - 0.5 * d;
    let beta = gamma(al) * gamma(be) / gamma(al + be);
    let rhs = zeta_eval(2.0 - d, cfg).map(|z| z.scale(beta / PI));
    let rhs = side(rhs, &mut notes, "closed form");
    let pm = params(&[("nu", nu), ("p", p)]);
    Ok(finish(IdentityReport::relative("mellin_kernel", pm, lhs, rhs, ToleranceClass::Quadrature), notes))
}

/// 2^{-p} Gamma((nu - p)/2 + 1/2) zeta(nu - p + 2) x^{p-1} / (sin(pi (p - nu)/2) Gamma((nu + p)/2 + 1/2)).
pub fn mellin_barnes_integrand(nu: f64, x: f64, p: Complex64) -> Complex64 {
    let half = Complex64::new(0.5, 0.0);
    let lg = ln_gamma_complex((nu - p) * 0.5 + half) - ln_gamma_complex((nu + p) * 0.5 + half);
    let z = zeta_complex(nu - p + 2.0).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let log_pow = -p * LN_2 + (p - 1.0) * x.ln();
    (lg + log_pow).exp() * z / ((p - nu) * (0.5 * PI)).sin()
}

/// Schloemilch series T_{nu,nu+1}(x) against its inverse-Mellin line integral at c = nu + 1/2.
pub fn check_mellin_barnes(nu: f64, x: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    positive("x", x)?;
    let mut notes = Vec::new();
    let lhs = side(schloemilch_t(&SeriesParams::new(nu, nu + 1.0, x, false), cfg), &mut notes, "series");
    let f = move |p: Complex64| mellin_barnes_integrand(nu, x, p);
    let rhs = integrate_vertical_line(&f, nu + 0.5, 0.5 * PI, &vertical_cfg(cfg)).map(|r| r.scale(0.5 / PI));
    let rhs = side(rhs, &mut notes, "line integral");
    let p = params(&[("nu", nu), ("x", x)]);
    Ok(finish(IdentityReport::relative("mellin_barnes", p, lhs, rhs, ToleranceClass::VerticalLine), notes))
}

fn apply_bessel_operator(d: &[EvalResult; 3], nu: f64, x: f64) -> EvalResult {
    let k = 1.0 + nu * nu / (x * x);
    d[2].axpy(1.0 / x, d[1]).axpy(-k, d[0])
}

/// M[y] = y'' + y'/x - (1 + nu^2/x^2) y against the Struve source for
/// y = I_nu, L_nu and I_nu - L_nu.
pub fn check_ode_mse(nu: f64, x: f64, cfg: &NumericConfig) -> Result<Vec<IdentityReport>> {
    if !(nu > -0.5) || !nu.is_finite() {
        return domain(format!("the Struve equation check needs nu > -1/2, got {nu}"));
    }
    positive("x", x)?;
    let src = struve_source(nu, x);
    let mut out = Vec::new();
    for (ci, cl) in [(1.0, 0.0), (0.0, 1.0), (1.0, -1.0)] {
        let mut notes = Vec::new();
        let rhs = EvalResult::exact(cl * src);
        let lhs = mse_residual(ci, cl, nu, x, cfg).map(|r| EvalResult { value: r.value + rhs.value, ..r });
        let lhs = side(lhs, &mut notes, "operator");
        let p = params(&[("nu", nu), ("x", x), ("coeff_i", ci), ("coeff_l", cl)]);
        let tol = ToleranceClass::SourceScaled.relative() * src.abs();
        out.push(finish(IdentityReport::new("ode_mse", p, lhs, rhs, tol), notes));
    }
    Ok(out)
}

/// M[T_{nu,mu+2}] by termwise derivatives against
/// Upsilon^{(2)}_{mu+2} - zeta(mu - nu + 1) s(x), or the alternating analogue with eta.
pub fn check_ode_schloemilch(nu: f64, mu: f64, x: f64, alternating: bool, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    positive("x", x)?;
    let need = if alternating { nu - 1.0 } else { nu };
    if !(mu > need) || !mu.is_finite() {
        return domain(format!("mu = {mu} must exceed {need} for nu = {nu}"));
    }
    let mut notes = Vec::new();
    let t = schloemilch_t_derivatives(&SeriesParams::new(nu, mu + 2.0, x, alternating), cfg);
    let lhs = side(t.map(|d| apply_bessel_operator(&d, nu, x)), &mut notes, "derivative series");
    let rhs = (|| -> Result<EvalResult> {
        let u = upsilon(nu, mu + 2.0, 2, x, alternating, cfg)?;
        let c = if alternating { eta_eval(mu - nu + 1.0, cfg)? } else { zeta_eval(mu - nu + 1.0, cfg)? };
        Ok(u.axpy(-struve_source(nu, x), c))
    })();
    let rhs = side(rhs, &mut notes, "Upsilon series");
    let id = if alternating { "ode_schloemilch_alt" } else { "ode_schloemilch" };
    let p = params(&[("nu", nu), ("mu", mu), ("x", x)]);
    Ok(finish(IdentityReport::relative(id, p, lhs, rhs, ToleranceClass::Series), notes))
}

/// M[K_{mu+2}] by termwise derivatives against
/// (1 + nu^2/x^2)(K_mu - K_{mu+2}) - sum n^{-mu} s_{nu n}(n x), with alpha_n = 1.
pub fn check_ode_kapteyn(nu: f64, mu: f64, x: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    positive("x", x)?;
    if !(mu > nu) || !mu.is_finite() {
        return domain(format!("Kapteyn check needs mu > nu, got mu = {mu}, nu = {nu}"));
    }
    let alpha = CoefficientSequence::ones();
    let bound = kapteyn_domain_bound(&alpha, nu);
    if !(x < bound) {
        return domain(format!("x = {x} lies outside the convergence interval (0, {bound})"));
    }
    let mut notes = Vec::new();
    let d = kapteyn_k_derivatives(&alpha, nu, mu + 2.0, x, cfg);
    let lhs = side(d.map(|d| apply_bessel_operator(&d, nu, x)), &mut notes, "derivative series");
    let rhs = (|| -> Result<EvalResult> {
        let k0 = kapteyn_k(&alpha, nu, mu, x, cfg)?;
        let k2 = kapteyn_k(&alpha, nu, mu + 2.0, x, cfg)?;
        let src = sum_geometric(&|n| (n as f64).powf(-mu) * struve_source(nu * n as f64, x * n as f64), cfg)?;
        let k = 1.0 + nu * nu / (x * x);
        Ok(k0.axpy(-1.0, k2).scale(k).axpy(-1.0, src))
    })();
    let rhs = side(rhs, &mut notes, "value series");
    let p = params(&[("nu", nu), ("mu", mu), ("x", x)]);
    Ok(finish(IdentityReport::relative("ode_kapteyn", p, lhs, rhs, ToleranceClass::Series), notes))
}

/// Mathieu series against its integral form, both variants.
pub fn check_mathieu_routes(x: f64, cfg: &NumericConfig) -> Result<Vec<IdentityReport>> {
    positive("x", x)?;
    let mut out = Vec::new();
    for alt in [false, true] {
        let mut notes = Vec::new();
        let lhs = side(mathieu_s(x, alt, Route::Series, cfg), &mut notes, "series");
        let rhs = side(mathieu_s(x, alt, Route::Integral, &finite_cfg(cfg)), &mut notes, "integral");
        let p = params(&[("x", x), ("alternating", if alt { 1.0 } else { 0.0 })]);
        out.push(finish(IdentityReport::relative("mathieu_routes", p, lhs, rhs, ToleranceClass::Quadrature), notes));
    }
    Ok(out)
}

/// Omega by its defining integral against the partial-fraction series.
pub fn check_omega_routes(w: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    if !w.is_finite() {
        return domain("w must be finite");
    }
    let mut notes = Vec::new();
    let lhs = side(omega(w, Route::Integral, &finite_cfg(cfg)), &mut notes, "integral");
    let rhs = side(omega(w, Route::PartialFraction, cfg), &mut notes, "partial fractions");
    let p = params(&[("w", w)]);
    Ok(finish(IdentityReport::relative("omega_routes", p, lhs, rhs, ToleranceClass::Quadrature), notes))
}

/// Direct Kapteyn series at exponent mu + 1 against the Gegenbauer integral form at mu.
pub fn check_kapteyn_routes(nu: f64, mu: f64, x: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("nu", nu)?;
    positive("x", x)?;
    if !(mu + 1.0 > nu) || !mu.is_finite() {
        return domain(format!("Kapteyn routes need mu + 1 > nu, got mu = {mu}, nu = {nu}"));
    }
    let alpha = CoefficientSequence::ones();
    let bound = kapteyn_domain_bound(&alpha, nu);
    if !(x < bound) {
        return domain(format!("x = {x} lies outside the convergence interval (0, {bound})"));
    }
    let mut notes = Vec::new();
    let lhs = side(kapteyn_k(&alpha, nu, mu + 1.0, x, cfg), &mut notes, "direct series");
    let rhs = side(kapteyn_gegenbauer(&alpha, nu, mu, x, &finite_cfg(cfg)), &mut notes, "Gegenbauer integral");
    let p = params(&[("nu", nu), ("mu", mu), ("x", x)]);
    Ok(finish(IdentityReport::relative("kapteyn_routes", p, lhs, rhs, ToleranceClass::Quadrature), notes))
}

/// sum 1/(a^2 + n^2) by the generic engine against pi coth(pi a)/(2a) - 1/(2a^2).
pub fn check_hamburger(a: f64, cfg: &NumericConfig) -> Result<IdentityReport> {
    positive("a", a)?;
    let mut notes = Vec::new();
    let lhs = side(hamburger_sum(a, cfg), &mut notes, "series");
    let v = hamburger_closed_form(a);
    let rhs = EvalResult { value: v, err_est: 8.0 * f64::EPSILON * v.abs(), work: 1, converged: true };
    let p = params(&[("a", a)]);
    Ok(finish(IdentityReport::relative("hamburger", p, lhs, rhs, ToleranceClass::Series), notes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::closed_forms;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    #[test]
    fn coth_difference_is_continuous() {
        assert!((coth_minus_reciprocal(0.25) - 0.082_988_165_073_596_568_3).abs() < 4e-16);
        assert!((coth_minus_reciprocal(0.3) - 0.099_405_096_988_408_256_1).abs() < 4e-15);
        assert!((coth_minus_reciprocal(1e-3) - (1e-3 / 3.0 - 1e-9 / 45.0)).abs() < 1e-17);
        assert!((coth_minus_reciprocal(2.0) - (1.0 / 2f64.tanh() - 0.5)).abs() < 1e-16);
    }

    #[test]
    fn sonin_gubler_half_order() {
        let r = check_sonin_gubler(0.5, 1.0, 1, &cfg()).unwrap();
        let exact = PI / 2.0 * (2.0 / PI).sqrt() * (1.0 - (-1f64).exp());
        assert!(r.pass, "{r:?}");
        assert!((r.lhs.value - exact).abs() < 1e-9 && (r.rhs.value - exact).abs() < 1e-14, "{r:?}");
    }

    #[test]
    fn struve_representations() {
        for which in [StruveRep::Hyper4F5, StruveRep::Hyper1F2A, StruveRep::Hyper1F2B, StruveRep::BesselPoisson] {
            let r = check_struve_integral_reps(1.5, 2.0, which, &cfg()).unwrap();
            assert!(r.pass && r.rel_residual < 1e-10, "{r:?}");
        }
        // L_{3/2}(2) to 18 digits
        let r = check_struve_integral_reps(1.5, 2.0, StruveRep::Hyper4F5, &cfg()).unwrap();
        assert!((r.rhs.value - 0.702846261226358296).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn omega_kernel_half_order() {
        let r = check_omega_kernel(0.5, 1.0, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        let exact = closed_forms::alternating_half_order_t(0.5, 1.0, &cfg()).unwrap();
        assert!((r.rhs.value - exact).abs() < 1e-12, "{r:?} vs {exact}");
    }

    #[test]
    fn mathieu_kernel_reference_values() {
        // left sides from an independent 15-digit evaluation
        for &(nu, a, v) in &[(0.5, 1.0, 1.53075862167442), (1.0, 1.0, 1.00399947059435), (1.5, 2.0, 1.26162116490589)] {
            let rhs = mathieu_kernel_rhs(nu, a, &cfg()).unwrap();
            assert!((rhs.value - v).abs() < 1e-12, "nu = {nu}, a = {a}: {rhs:?}");
        }
        let r = check_mathieu_kernel(1.0, 1.0, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn coth_kernel_and_line_integral() {
        let exact = closed_forms::half_order_t(1.5, 2.0, &cfg()).unwrap();
        assert!((exact - 0.848948187953442).abs() < 1e-14);
        let r = check_coth_kernel(0.5, 2.0, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_mellin_barnes(0.5, 2.0, &cfg()).unwrap();
        assert!(r.pass && (r.rhs.value - exact).abs() < 1e-8, "{r:?}");
        let r = check_mellin_barnes(0.5, 0.5, &cfg()).unwrap();
        assert!((r.rhs.value - 1.02382315084294).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn mellin_kernel_centre_of_strip() {
        let r = check_mellin_kernel(1.0, 1.5, &cfg()).unwrap();
        let exact = 2f64.sqrt() * 2.612_375_348_685_488_3;
        assert!((r.rhs.value - exact).abs() < 1e-14, "{r:?}");
        assert!(r.pass && r.rel_residual < 1e-9, "{r:?}");
        assert!(check_mellin_kernel(1.0, 1.01, &cfg()).is_err());
        assert!(check_mellin_kernel(1.0, 2.0, &cfg()).is_err());
    }

    #[test]
    fn ode_checks() {
        for r in check_ode_mse(1.0, 1.0, &cfg()).unwrap() {
            assert!(r.pass, "{r:?}");
        }
        let r = check_ode_schloemilch(0.5, 2.0, 1.0, false, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.lhs.value + 0.858666307).abs() < 1e-8, "{r:?}");
        let r = check_ode_schloemilch(0.5, 1.0, 1.0, true, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_ode_kapteyn(0.8, 2.0, 0.3, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.lhs.value + 0.830174836).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn parameter_guards() {
        assert!(check_sonin_gubler(0.5, 1.0, 0, &cfg()).is_err());
        assert!(check_ode_schloemilch(1.0, 0.5, 1.0, false, &cfg()).is_err());
        assert!(check_ode_kapteyn(0.8, 2.0, 0.7, &cfg()).is_err());
        assert!(check_kapteyn_routes(0.5, 1.2, 0.5, &cfg()).is_err());
    }

    #[test]
    fn route_pairs() {
        for r in check_mathieu_routes(2.0, &cfg()).unwrap() {
            assert!(r.pass && r.rel_residual < 1e-10, "{r:?}");
        }
        let r = check_omega_routes(5.0, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_cahen_eta(2.0, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_hamburger(0.7, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
