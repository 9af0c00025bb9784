//! Identity registry, route manifests, parameter grids and batch runs.

use rayon::prelude::*;
use serde::Serialize;

use super::checks::*;
use super::{params, usage, IdentityReport, Params, ToleranceClass};
use crate::config::NumericConfig;
use crate::error::Result;
use crate::series::{kapteyn_domain_bound, CoefficientSequence};

/// Library routine a side of an identity depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Routine {
    Gamma,
    ZetaEta,
    Polylog,
    Hypergeometric,
    BesselJ,
    CylinderSeries,
    CylinderDerivatives,
    DifferenceFunction,
    DifferenceDerivatives,
    StruveSource,
    WeightedDifferenceSeries,
    FiniteQuadrature,
    OscillatoryQuadrature,
    SemiInfiniteQuadrature,
    VerticalLine,
    NeumannSeries,
    SchloemilchSeries,
    UpsilonSeries,
    KapteynSeries,
    KapteynGegenbauer,
    MathieuSeries,
    MathieuIntegral,
    OmegaIntegral,
    OmegaPartialFraction,
    DirichletDirect,
    CahenLaplace,
    GenericSeries,
    ClosedForm,
}

/// Building blocks that may appear on both sides: none of them embodies one
/// of the verified identities.
pub const PRIMITIVE_ROUTINES: &[Routine] = &[
    Routine::Gamma,
    Routine::ZetaEta,
    Routine::Polylog,
    Routine::Hypergeometric,
    Routine::BesselJ,
    Routine::CylinderSeries,
    Routine::DifferenceFunction,
    Routine::FiniteQuadrature,
];

/// Registry entry for one identity.
#[derive(Debug, Clone, Serialize)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub class: ToleranceClass,
    pub lhs: &'static [Routine],
    pub rhs: &'static [Routine],
    /// Non-primitive routines both sides may use because they only supply
    /// ingredients (values on one side, derivatives on the other).
    pub shared: &'static [Routine],
    pub summary: &'static str,
}

use Routine::*;

static REGISTRY: &[IdentitySpec] = &[
    IdentitySpec {
        id: "sonin_gubler",
        params: &["nu", "a", "n"],
        class: ToleranceClass::Quadrature,
        lhs: &[OscillatoryQuadrature, BesselJ, FiniteQuadrature, Gamma],
        rhs: &[DifferenceFunction],
        shared: &[],
        summary: "int J_nu(ax) / ((x^2+n^2) x^nu) dx = pi D_nu(an) / (2 n^{nu+1})",
    },
    IdentitySpec {
        id: "neumann_forms",
        params: &["nu", "x"],
        class: ToleranceClass::Series,
        lhs: &[NeumannSeries, CylinderSeries, Gamma],
        rhs: &[CylinderSeries],
        shared: &[],
        summary: "three Neumann expansions of L_nu in I_{order} against the power series",
    },
    IdentitySpec {
        id: "struve_4f5",
        params: &["nu", "x"],
        class: ToleranceClass::Quadrature,
        lhs: &[CylinderSeries],
        rhs: &[FiniteQuadrature, Hypergeometric, Gamma],
        shared: &[],
        summary: "L_nu as a [0,1] integral with a 4F5 kernel",
    },
    IdentitySpec {
        id: "struve_1f2_a",
        params: &["nu", "x"],
        class: ToleranceClass::Quadrature,
        lhs: &[CylinderSeries],
        rhs: &[FiniteQuadrature, Hypergeometric, Gamma],
        shared: &[],
        summary: "L_nu as a [0,1] integral with a (1-t^2)^nu 1F2 kernel",
    },
    IdentitySpec {
        id: "struve_1f2_b",
        params: &["nu", "x"],
        class: ToleranceClass::Quadrature,
        lhs: &[CylinderSeries],
        rhs: &[FiniteQuadrature, Hypergeometric, Gamma],
        shared: &[],
        summary: "L_nu as a [0,1] integral with an unweighted 1F2 kernel",
    },
    IdentitySpec {
        id: "bessel_i_poisson",
        params: &["nu", "x"],
        class: ToleranceClass::Quadrature,
        lhs: &[CylinderSeries],
        rhs: &[FiniteQuadrature, Gamma],
        shared: &[],
        summary: "Poisson integral of I_nu",
    },
    IdentitySpec {
        id: "omega_kernel",
        params: &["nu", "a"],
        class: ToleranceClass::Quadrature,
        lhs: &[OscillatoryQuadrature, BesselJ, OmegaIntegral, FiniteQuadrature, Gamma],
        rhs: &[SchloemilchSeries, WeightedDifferenceSeries, DifferenceFunction, ZetaEta],
        shared: &[],
        summary: "int J_nu(ax) Omega(2 pi x) / (x^nu sinh(pi x)) dx = sum (-1)^{n-1} n^{-nu} D_nu(an)",
    },
    IdentitySpec {
        id: "cahen_bessel",
        params: &["nu", "a"],
        class: ToleranceClass::Quadrature,
        lhs: &[CahenLaplace, FiniteQuadrature, DifferenceFunction, DifferenceDerivatives],
        rhs: &[DirichletDirect, DifferenceFunction],
        shared: &[],
        summary: "Laplace form of sum (-1)^{n-1} n^{-nu} D_nu(an) against direct summation",
    },
    IdentitySpec {
        id: "mathieu_kernel",
        params: &["nu", "a"],
        class: ToleranceClass::Quadrature,
        lhs: &[OscillatoryQuadrature, BesselJ, MathieuSeries, FiniteQuadrature, Gamma],
        rhs: &[FiniteQuadrature, Hypergeometric, Polylog, Gamma],
        shared: &[],
        summary: "int J_nu(ax) S(x) x^{-nu} dx against a 2F1 integral plus dilogarithms",
    },
    IdentitySpec {
        id: "coth_kernel",
        params: &["nu", "x"],
        class: ToleranceClass::Quadrature,
        lhs: &[SchloemilchSeries, WeightedDifferenceSeries, DifferenceFunction, ZetaEta],
        rhs: &[OscillatoryQuadrature, BesselJ, FiniteQuadrature, Gamma],
        shared: &[],
        summary: "T_{nu,nu+1}(x) = int J_nu(xt) (coth(pi t) - 1/(pi t)) t^{-nu-1} dt",
    },
    IdentitySpec {
        id: "mellin_kernel",
        params: &["nu", "p"],
        class: ToleranceClass::Quadrature,
        lhs: &[SemiInfiniteQuadrature, FiniteQuadrature],
        rhs: &[Gamma, ZetaEta],
        shared: &[],
        summary: "Mellin transform of x^{-nu-1}(coth(pi x) - 1/(pi x)) against B((p-nu)/2, (nu-p)/2+1) zeta(nu-p+2)/pi",
    },
    IdentitySpec {
        id: "mellin_barnes",
        params: &["nu", "x"],
        class: ToleranceClass::VerticalLine,
        lhs: &[SchloemilchSeries, WeightedDifferenceSeries, DifferenceFunction, ZetaEta],
        rhs: &[VerticalLine, Gamma, ZetaEta],
        shared: &[],
        summary: "T_{nu,nu+1}(x) against its inverse-Mellin line integral",
    },
    IdentitySpec {
        id: "ode_mse",
        params: &["nu", "x"],
        class: ToleranceClass::SourceScaled,
        lhs: &[CylinderDerivatives, CylinderSeries],
        rhs: &[StruveSource, Gamma],
        shared: &[],
        summary: "modified Struve equation for I_nu, L_nu and D_nu",
    },
    IdentitySpec {
        id: "ode_schloemilch",
        params: &["nu", "mu", "x"],
        class: ToleranceClass::Series,
        lhs: &[SchloemilchSeries, WeightedDifferenceSeries, DifferenceDerivatives, ZetaEta],
        rhs: &[UpsilonSeries, WeightedDifferenceSeries, DifferenceFunction, ZetaEta, StruveSource],
        shared: &[WeightedDifferenceSeries],
        summary: "M[T_{nu,mu+2}] = Upsilon_{mu+2} - zeta(mu-nu+1) s(x)",
    },
    IdentitySpec {
        id: "ode_schloemilch_alt",
        params: &["nu", "mu", "x"],
        class: ToleranceClass::Series,
        lhs: &[SchloemilchSeries, WeightedDifferenceSeries, DifferenceDerivatives, ZetaEta],
        rhs: &[UpsilonSeries, WeightedDifferenceSeries, DifferenceFunction, ZetaEta, StruveSource],
        shared: &[WeightedDifferenceSeries],
        summary: "alternating analogue with eta(mu-nu+1)",
    },
    IdentitySpec {
        id: "ode_kapteyn",
        params: &["nu", "mu", "x"],
        class: ToleranceClass::Series,
        lhs: &[KapteynSeries, DifferenceDerivatives],
        rhs: &[KapteynSeries, DifferenceFunction, StruveSource, GenericSeries],
        shared: &[KapteynSeries],
        summary: "M[K_{mu+2}] = (1 + nu^2/x^2)(K_mu - K_{mu+2}) - sum n^{-mu} s_{nu n}(nx)",
    },
    IdentitySpec {
        id: "mathieu_routes",
        params: &["x"],
        class: ToleranceClass::Quadrature,
        lhs: &[MathieuSeries],
        rhs: &[MathieuIntegral, SemiInfiniteQuadrature, FiniteQuadrature],
        shared: &[],
        summary: "Mathieu series S and its alternating variant against their integral forms",
    },
    IdentitySpec {
        id: "omega_routes",
        params: &["w"],
        class: ToleranceClass::Quadrature,
        lhs: &[OmegaIntegral, FiniteQuadrature],
        rhs: &[OmegaPartialFraction],
        shared: &[],
        summary: "Omega(w) by its defining integral against the partial-fraction series",
    },
    IdentitySpec {
        id: "cahen_zeta",
        params: &["s"],
        class: ToleranceClass::Quadrature,
        lhs: &[CahenLaplace, FiniteQuadrature],
        rhs: &[DirichletDirect],
        shared: &[],
        summary: "Laplace form of zeta(s) against direct summation",
    },
    IdentitySpec {
        id: "cahen_eta",
        params: &["s"],
        class: ToleranceClass::Quadrature,
        lhs: &[CahenLaplace, FiniteQuadrature],
        rhs: &[DirichletDirect],
        shared: &[],
        summary: "Laplace form of eta(s) against direct summation",
    },
    IdentitySpec {
        id: "kapteyn_routes",
        params: &["nu", "mu", "x"],
        class: ToleranceClass::Quadrature,
        lhs: &[KapteynSeries, DifferenceFunction],
        rhs: &[KapteynGegenbauer, FiniteQuadrature, Gamma],
        shared: &[],
        summary: "direct Kapteyn series at mu + 1 against the Gegenbauer integral at mu",
    },
    IdentitySpec {
        id: "hamburger",
        params: &["a"],
        class: ToleranceClass::Series,
        lhs: &[GenericSeries],
        rhs: &[ClosedForm],
        shared: &[],
        summary: "sum 1/(a^2+n^2) against pi coth(pi a)/(2a) - 1/(2a^2)",
    },
];

/// All registered identities in a fixed order.
pub fn registry() -> &'static [IdentitySpec] {
    REGISTRY
}

pub fn lookup(id: &str) -> Option<&'static IdentitySpec> {
    REGISTRY.iter().find(|s| s.id == id)
}

/// One identity at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub id: String,
    pub params: Params,
}

fn get(p: &Params, id: &str, key: &str) -> Result<f64> {
    p.get(key).copied().ok_or_else(|| usage(format!("identity {id} needs parameter {key}")))
}

/// Evaluates one identity; unknown ids and missing parameters are usage errors,
/// parameters outside the identity's range are domain errors.
pub fn run_identity(id: &str, p: &Params, cfg: &NumericConfig) -> Result<Vec<IdentityReport>> {
    let spec = lookup(id).ok_or_else(|| usage(format!("unknown identity {id}")))?;
    let v = |k: &str| get(p, spec.id, k);
    let one = |r: Result<IdentityReport>| r.map(|r| vec![r]);
    match spec.id {
        "sonin_gubler" => {
            let n = v("n")?;
            if !(n >= 1.0) || n != n.floor() || n > u32::MAX as f64 {
                return Err(usage(format!("n must be a positive integer, got {n}")));
            }
            one(check_sonin_gubler(v("nu")?, v("a")?, n as u32, cfg))
        }
        "neumann_forms" => check_neumann_forms(v("nu")?, v("x")?, cfg),
        "struve_4f5" => one(check_struve_integral_reps(v("nu")?, v("x")?, StruveRep::Hyper4F5, cfg)),
        "struve_1f2_a" => one(check_struve_integral_reps(v("nu")?, v("x")?, StruveRep::Hyper1F2A, cfg)),
        "struve_1f2_b" => one(check_struve_integral_reps(v("nu")?, v("x")?, StruveRep::Hyper1F2B, cfg)),
        "bessel_i_poisson" => one(check_struve_integral_reps(v("nu")?, v("x")?, StruveRep::BesselPoisson, cfg)),
        "omega_kernel" => one(check_omega_kernel(v("nu")?, v("a")?, cfg)),
        "cahen_bessel" => one(check_bessel_cahen(v("nu")?, v("a")?, cfg)),
        "mathieu_kernel" => one(check_mathieu_kernel(v("nu")?, v("a")?, cfg)),
        "coth_kernel" => one(check_coth_kernel(v("nu")?, v("x")?, cfg)),
        "mellin_kernel" => one(check_mellin_kernel(v("nu")?, v("p")?, cfg)),
        "mellin_barnes" => one(check_mellin_barnes(v("nu")?, v("x")?, cfg)),
        "ode_mse" => check_ode_mse(v("nu")?, v("x")?, cfg),
        "ode_schloemilch" => one(check_ode_schloemilch(v("nu")?, v("mu")?, v("x")?, false, cfg)),
        "ode_schloemilch_alt" => one(check_ode_schloemilch(v("nu")?, v("mu")?, v("x")?, true, cfg)),
        "ode_kapteyn" => one(check_ode_kapteyn(v("nu")?, v("mu")?, v("x")?, cfg)),
        "mathieu_routes" => check_mathieu_routes(v("x")?, cfg),
        "omega_routes" => one(check_omega_routes(v("w")?, cfg)),
        "cahen_zeta" => one(check_cahen_zeta(v("s")?, cfg)),
        "cahen_eta" => one(check_cahen_eta(v("s")?, cfg)),
        "kapteyn_routes" => one(check_kapteyn_routes(v("nu")?, v("mu")?, v("x")?, cfg)),
        "hamburger" => one(check_hamburger(v("a")?, cfg)),
        other => Err(usage(format!("identity {other} has no runner"))),
    }
}

/// Runs jobs in parallel; reports come back in job order.
pub fn verify_batch(jobs: &[Job], cfg: &NumericConfig) -> Result<Vec<IdentityReport>> {
    let results: Vec<Result<Vec<IdentityReport>>> =
        jobs.par_iter().map(|j| run_identity(&j.id, &j.params, cfg)).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn product2(k1: &str, v1: &[f64], k2: &str, v2: &[f64]) -> Vec<Params> {
    let mut out = Vec::new();
    for &a in v1 {
        for &b in v2 {
            out.push(params(&[(k1, a), (k2, b)]));
        }
    }
    out
}

fn single(k: &str, vs: &[f64]) -> Vec<Params> {
    vs.iter().map(|&v| params(&[(k, v)])).collect()
}

fn kapteyn_points(nus: &[f64], mu: f64, fracs: &[f64]) -> Vec<Params> {
    let mut out = Vec::new();
    for &nu in nus {
        let bound = kapteyn_domain_bound(&CoefficientSequence::ones(), nu);
        for &f in fracs {
            out.push(params(&[("nu", nu), ("mu", mu), ("x", f * bound)]));
        }
    }
    out
}

fn schloemilch_points(pairs: &[(f64, f64)], xs: &[f64]) -> Vec<Params> {
    let mut out = Vec::new();
    for &(nu, mu) in pairs {
        for &x in xs {
            out.push(params(&[("nu", nu), ("mu", mu), ("x", x)]));
        }
    }
    out
}

fn mellin_points(nus: &[f64], offsets: &[f64]) -> Vec<Params> {
    let mut out = Vec::new();
    for &nu in nus {
        for &d in offsets {
            out.push(params(&[("nu", nu), ("p", nu + d)]));
        }
    }
    out
}

/// Parameter grid used for acceptance.
pub fn default_grid(id: &str) -> Option<Vec<Params>> {
    let g = match id {
        "sonin_gubler" => {
            let mut out = Vec::new();
            for &nu in &[0.6, 1.0, 1.5, 2.5] {
                for &a in &[0.5, 1.0, 2.0] {
                    for &n in &[1.0, 2.0, 5.0] {
                        out.push(params(&[("nu", nu), ("a", a), ("n", n)]));
                    }
                }
            }
            out
        }
        "neumann_forms" => product2("nu", &[0.25, 1.0, 2.0], "x", &[0.1, 0.5, 1.0, 1.9]),
        "struve_4f5" | "struve_1f2_a" | "struve_1f2_b" | "bessel_i_poisson" => {
            product2("nu", &[0.6, 1.0, 1.5], "x", &[0.5, 1.0, 2.0])
        }
        "omega_kernel" | "cahen_bessel" => product2("nu", &[0.5, 1.0], "a", &[0.5, 1.0]),
        "mathieu_kernel" => product2("nu", &[1.0, 1.5], "a", &[1.0, 2.0]),
        "coth_kernel" => product2("nu", &[0.5, 1.0, 1.5], "x", &[0.5, 1.0, 2.0]),
        "mellin_kernel" => mellin_points(&[0.5, 1.0], &[0.25, 0.5, 0.75]),
        "mellin_barnes" => product2("nu", &[0.5, 1.0], "x", &[0.5, 1.0, 2.0]),
        "ode_mse" => product2("nu", &[0.5, 1.0, 1.5, 2.5], "x", &[0.5, 1.0, 2.0, 5.0]),
        "ode_schloemilch" => schloemilch_points(&[(0.5, 2.0), (1.0, 2.5), (1.5, 3.0)], &[0.5, 1.0, 2.0]),
        "ode_schloemilch_alt" => schloemilch_points(&[(0.5, 1.0), (1.0, 1.5), (1.5, 2.0)], &[0.5, 1.0, 2.0]),
        "ode_kapteyn" => kapteyn_points(&[0.5, 0.8], 2.0, &[0.3, 0.6]),
        "mathieu_routes" => single("x", &[0.5, 1.0, 2.0, 5.0]),
        "omega_routes" => single("w", &[0.5, 2.0, 8.168_140_899_333_462, 20.0]),
        "cahen_zeta" => single("s", &[3.0]),
        "cahen_eta" => single("s", &[2.0]),
        "kapteyn_routes" => kapteyn_points(&[0.5, 0.8], 1.2, &[0.3, 0.6]),
        "hamburger" => single("a", &[0.1, 0.5, 1.0, 2.0]),
        _ => return None,
    };
    Some(g)
}

/// Denser grid for exploratory runs.
pub fn fine_grid(id: &str) -> Option<Vec<Params>> {
    let g = match id {
        "sonin_gubler" => {
            let mut out = Vec::new();
            for &nu in &[0.6, 0.8, 1.0, 1.25, 1.5, 2.0, 2.5] {
                for &a in &[0.25, 0.5, 1.0, 2.0, 4.0] {
                    for &n in &[1.0, 2.0, 3.0, 5.0] {
                        out.push(params(&[("nu", nu), ("a", a), ("n", n)]));
                    }
                }
            }
            out
        }
        "neumann_forms" => product2("nu", &[0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0], "x", &[0.05, 0.1, 0.5, 1.0, 1.5, 1.9]),
        "struve_4f5" | "struve_1f2_a" | "struve_1f2_b" | "bessel_i_poisson" => {
            product2("nu", &[0.6, 0.8, 1.0, 1.25, 1.5, 2.0], "x", &[0.25, 0.5, 1.0, 2.0, 3.0])
        }
        "omega_kernel" | "cahen_bessel" => product2("nu", &[0.5, 0.75, 1.0, 1.5], "a", &[0.5, 1.0, 2.0]),
        "mathieu_kernel" => product2("nu", &[1.0, 1.25, 1.5, 2.0], "a", &[0.5, 1.0, 2.0, 4.0]),
        "coth_kernel" => product2("nu", &[0.5, 0.75, 1.0, 1.5, 2.0], "x", &[0.25, 0.5, 1.0, 2.0, 4.0]),
        "mellin_kernel" => mellin_points(&[0.5, 1.0, 1.5, 2.0], &[0.1, 0.25, 0.5, 0.75, 0.9]),
        "mellin_barnes" => product2("nu", &[0.5, 0.75, 1.0, 1.5], "x", &[0.25, 0.5, 1.0, 2.0]),
        "ode_mse" => product2("nu", &[0.0, 0.5, 1.0, 1.5, 2.5, 4.0], "x", &[0.25, 0.5, 1.0, 2.0, 5.0, 10.0]),
        "ode_schloemilch" => {
            schloemilch_points(&[(0.5, 2.0), (0.5, 3.0), (1.0, 2.5), (1.5, 3.0), (2.0, 4.0)], &[0.25, 0.5, 1.0, 2.0, 4.0])
        }
        "ode_schloemilch_alt" => {
            schloemilch_points(&[(0.5, 1.0), (1.0, 1.5), (1.5, 2.0), (2.0, 2.5)], &[0.25, 0.5, 1.0, 2.0, 4.0])
        }
        "ode_kapteyn" => kapteyn_points(&[0.5, 0.8, 1.0, 1.5], 2.0, &[0.1, 0.3, 0.6, 0.9]),
        "mathieu_routes" => single("x", &[0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0]),
        "omega_routes" => single("w", &[0.1, 0.5, 2.0, 8.168_140_899_333_462, 20.0, 50.0]),
        "cahen_zeta" => single("s", &[2.0, 2.5, 3.0, 4.0]),
        "cahen_eta" => single("s", &[1.0, 1.5, 2.0, 3.0]),
        "kapteyn_routes" => kapteyn_points(&[0.5, 0.8, 1.0, 1.5], 1.2, &[0.1, 0.3, 0.6, 0.9]),
        "hamburger" => single("a", &[0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0]),
        _ => return None,
    };
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn manifests_keep_sides_independent() {
        let primitives: HashSet<_> = PRIMITIVE_ROUTINES.iter().collect();
        for spec in registry() {
            assert!(!spec.lhs.is_empty() && !spec.rhs.is_empty(), "{}", spec.id);
            let lhs: HashSet<_> = spec.lhs.iter().collect();
            for r in spec.rhs {
                let allowed = primitives.contains(r) || spec.shared.contains(r);
                assert!(!lhs.contains(r) || allowed, "{} shares {r:?} across sides", spec.id);
            }
            // derivative data may enter on one side only
            for r in [Routine::DifferenceDerivatives, Routine::CylinderDerivatives] {
                assert!(!(lhs.contains(&r) && spec.rhs.contains(&r)), "{} uses {r:?} on both sides", spec.id);
            }
        }
    }

    #[test]
    fn every_identity_has_grids_and_a_runner() {
        let mut seen = HashSet::new();
        for spec in registry() {
            assert!(seen.insert(spec.id), "duplicate id {}", spec.id);
            let d = default_grid(spec.id).unwrap();
            let f = fine_grid(spec.id).unwrap();
            assert!(!d.is_empty() && f.len() >= d.len(), "{}", spec.id);
            for p in d.iter().chain(&f) {
                for k in spec.params {
                    assert!(p.contains_key(*k), "{} grid lacks {k}", spec.id);
                }
            }
        }
        assert!(default_grid("bogus").is_none());
    }

    #[test]
    fn unknown_ids_and_missing_params_are_usage_errors() {
        let cfg = NumericConfig::default();
        assert!(matches!(run_identity("bogus", &Params::new(), &cfg), Err(crate::Error::Usage(_))));
        assert!(matches!(run_identity("hamburger", &Params::new(), &cfg), Err(crate::Error::Usage(_))));
        let p = params(&[("nu", 1.0), ("a", 1.0), ("n", 1.5)]);
        assert!(matches!(run_identity("sonin_gubler", &p, &cfg), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn batch_keeps_job_order() {
        let cfg = NumericConfig::default();
        let jobs: Vec<Job> = [3.0, 0.5, 1.0]
            .iter()
            .map(|&a| Job { id: "hamburger".into(), params: params(&[("a", a)]) })
            .collect();
        let out = verify_batch(&jobs, &cfg).unwrap();
        let order: Vec<f64> = out.iter().map(|r| r.params["a"]).collect();
        assert_eq!(order, vec![3.0, 0.5, 1.0]);
        assert!(out.iter().all(|r| r.pass));
    }
}
