//! Command-line front end: point evaluation, identity verification and report
//! re-emission. Output goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 all points pass, 1 some report fails, 2 usage error, 3 some
//! evaluation did not converge (takes precedence over 1).

use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use struve::bessel_struve::{cylinder_eval, d_nu, CylinderKind};
use struve::identity::{default_grid, fine_grid, registry, verify_batch, Job, Params};
use struve::report::{emit_evals, emit_reports, parse_reports, EvalRow, Format, ReportRow};
use struve::scalar::hyp_pfq;
use struve::scalar::polylog::polylog;
use struve::scalar::zeta::{eta_eval, zeta_eval};
use struve::series::schloemilch::{schloemilch_t, SeriesParams};
use struve::series::{kapteyn_k, mathieu_s, omega, CoefficientSequence, Route};
use struve::{EvalResult, NumericConfig, PrecisionTier};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONCONVERGED: i32 = 3;

/// A parameter name with the values it takes.
type NamedList = (String, Vec<f64>);

#[derive(Parser, Debug)]
#[command(name = "struve", version, about = "Struve/Bessel series evaluation and identity verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a function over a parameter grid.
    Eval {
        /// One of J, I, H, L, D, S, S_alt, Omega, T, T_alt, K, zeta, eta, Li, pFq.
        function: String,
        /// Upper parameters of pFq, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        upper: Vec<f64>,
        /// Lower parameters of pFq, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lower: Vec<f64>,
        /// Route for S, S_alt and Omega.
        #[arg(long, value_enum, default_value_t = RouteArg::Series)]
        route: RouteArg,
        #[command(flatten)]
        common: Common,
    },
    /// Check identities over parameter grids.
    Verify {
        /// Identity id, or `all` for every registered identity.
        identity: String,
        #[command(flatten)]
        common: Common,
    },
    /// Re-emit saved reports in another format.
    Report {
        /// File written by `verify --format json` or `--format csv`.
        input: PathBuf,
        /// Format of the input file.
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        from: FormatArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    quad_budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Compensated)]
    precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// `default`, `fine`, or explicit lists such as `nu=0.5,1;x=1,2`.
    #[arg(long)]
    grid: Option<String>,
    /// One parameter list, e.g. `-p nu=0.5,1`; repeatable, combined as a product.
    #[arg(short = 'p', long = "param", allow_hyphen_values = true)]
    params: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PrecisionArg {
    Standard,
    Compensated,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Csv,
    Plain,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RouteArg {
    Series,
    Integral,
    PartialFraction,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Plain => Format::Plain,
        }
    }
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Series => Route::Series,
            RouteArg::Integral => Route::Integral,
            RouteArg::PartialFraction => Route::PartialFraction,
        }
    }
}

impl Common {
    fn config(&self) -> struve::Result<NumericConfig> {
        let mut cfg = NumericConfig::default();
        if let Some(v) = self.rel_tol {
            cfg.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            cfg.abs_tol = v;
        }
        if let Some(v) = self.max_terms {
            cfg.max_terms = v;
        }
        if let Some(v) = self.quad_budget {
            cfg.quad_budget = v;
        }
        cfg.precision_tier = match self.precision {
            PrecisionArg::Standard => PrecisionTier::Standard,
            PrecisionArg::Compensated => PrecisionTier::Compensated,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Explicit lists from `--grid k=..;k=..` and `-p k=..`, or None for a preset.
    fn explicit_lists(&self) -> struve::Result<Option<Vec<NamedList>>> {
        let mut entries: Vec<&str> = self.params.iter().map(String::as_str).collect();
        match self.grid.as_deref() {
            None | Some("default") | Some("fine") => {}
            Some(g) => entries.extend(g.split(';').filter(|s| !s.trim().is_empty())),
        }
        if entries.is_empty() {
            return Ok(None);
        }
        if matches!(self.grid.as_deref(), Some("default") | Some("fine")) {
            return Err(usage("a named grid preset cannot be combined with explicit parameter lists"));
        }
        let mut lists: Vec<(String, Vec<f64>)> = Vec::new();
        for e in entries {
            let (k, vs) = e.split_once('=').ok_or_else(|| usage(format!("expected name=v1,v2,..., got {e}")))?;
            let k = k.trim().to_string();
            let vals = vs
                .split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| usage(format!("bad number {v:?} for {k}"))))
                .collect::<struve::Result<Vec<f64>>>()?;
            if vals.is_empty() || k.is_empty() {
                return Err(usage(format!("empty parameter list {e}")));
            }
            if lists.iter().any(|(n, _)| *n == k) {
                return Err(usage(format!("parameter {k} given twice")));
            }
            lists.push((k, vals));
        }
        lists.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Some(lists))
    }
}

fn usage(msg: impl Into<String>) -> struve::Error {
    struve::Error::Usage(msg.into())
}

/// Cartesian product in name order, the last name varying fastest.
fn product(lists: &[(String, Vec<f64>)]) -> Vec<Params> {
    let mut out = vec![Params::new()];
    for (k, vs) in lists {
        out = out
            .into_iter()
            .flat_map(|p| {
                vs.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.insert(k.clone(), v);
                    q
                })
            })
            .collect();
    }
    out
}

const FUNCTIONS: [&str; 15] = ["J", "I", "H", "L", "D", "S", "S_alt", "Omega", "T", "T_alt", "K", "zeta", "eta", "Li", "pFq"];

fn required(function: &str) -> &'static [&'static str] {
    match function {
        "J" | "I" | "H" | "L" | "D" => &["nu", "x"],
        "S" | "S_alt" => &["x"],
        "Omega" => &["w"],
        "T" | "T_alt" | "K" => &["mu", "nu", "x"],
        "zeta" | "eta" => &["s"],
        "Li" => &["s", "z"],
        "pFq" => &["z"],
        _ => &[],
    }
}

struct EvalSpec {
    function: String,
    upper: Vec<f64>,
    lower: Vec<f64>,
    route: Route,
}

fn eval_point(spec: &EvalSpec, p: &Params, cfg: &NumericConfig) -> struve::Result<EvalResult> {
    let v = |k: &str| p[k];
    match spec.function.as_str() {
        "J" => cylinder_eval(CylinderKind::BesselJ, v("nu"), v("x"), cfg),
        "I" => cylinder_eval(CylinderKind::BesselI, v("nu"), v("x"), cfg),
        "H" => cylinder_eval(CylinderKind::StruveH, v("nu"), v("x"), cfg),
        "L" => cylinder_eval(CylinderKind::StruveL, v("nu"), v("x"), cfg),
        "D" => Ok(d_nu(v("nu"), v("x"), cfg)?.result(cfg)),
        "S" => mathieu_s(v("x"), false, spec.route, cfg),
        "S_alt" => mathieu_s(v("x"), true, spec.route, cfg),
        "Omega" => omega(v("w"), spec.route, cfg),
        "T" => schloemilch_t(&SeriesParams::new(v("nu"), v("mu"), v("x"), false), cfg),
        "T_alt" => schloemilch_t(&SeriesParams::new(v("nu"), v("mu"), v("x"), true), cfg),
        "K" => kapteyn_k(&CoefficientSequence::ones(), v("nu"), v("mu"), v("x"), cfg),
        "zeta" => zeta_eval(v("s"), cfg),
        "eta" => eta_eval(v("s"), cfg),
        "Li" => polylog(v("s"), v("z"), cfg),
        "pFq" => hyp_pfq(&spec.upper, &spec.lower, v("z"), cfg),
        other => Err(usage(format!("unknown function {other}"))),
    }
}

fn is_usage(e: &struve::Error) -> bool {
    matches!(e, struve::Error::Usage(_) | struve::Error::Domain(_))
}

fn write_out(bytes: &[u8]) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes).context("writing output")?;
    out.flush().context("writing output")
}

fn run_eval(spec: EvalSpec, common: &Common) -> anyhow::Result<i32> {
    if !FUNCTIONS.contains(&spec.function.as_str()) {
        return Err(usage(format!("unknown function {}; expected one of {}", spec.function, FUNCTIONS.join(", "))).into());
    }
    if spec.function != "pFq" && (!spec.upper.is_empty() || !spec.lower.is_empty()) {
        return Err(usage("--upper/--lower only apply to pFq").into());
    }
    let cfg = common.config()?;
    let lists = common.explicit_lists()?.ok_or_else(|| usage("eval needs explicit parameter lists, e.g. -p nu=0.5 -p x=1"))?;
    let need = required(&spec.function);
    let names: Vec<&str> = lists.iter().map(|(k, _)| k.as_str()).collect();
    if names != need {
        return Err(usage(format!("{} takes parameters {}, got {}", spec.function, need.join(", "), names.join(", "))).into());
    }
    let grid = product(&lists);
    let results: Vec<struve::Result<EvalResult>> = grid.par_iter().map(|p| eval_point(&spec, p, &cfg)).collect();
    let mut rows = Vec::with_capacity(grid.len());
    let mut code = EXIT_PASS;
    for (p, r) in grid.into_iter().zip(results) {
        let r = match r {
            Ok(r) => r,
            Err(e) if is_usage(&e) => return Err(e.into()),
            Err(e) => {
                eprintln!("{} at {}: {e}", spec.function, struve::report::fmt_params(&p));
                EvalResult { value: f64::NAN, err_est: f64::INFINITY, work: 0, converged: false }
            }
        };
        if !r.converged {
            code = EXIT_NONCONVERGED;
        }
        rows.push(EvalRow::new(&spec.function, p, r));
    }
    write_out(&emit_evals(&rows, common.format.into())?)?;
    Ok(code)
}

fn jobs_for(id: &str, common: &Common) -> struve::Result<Vec<Job>> {
    let lists = common.explicit_lists()?;
    let ids: Vec<&str> = if id == "all" {
        if lists.is_some() {
            return Err(usage("explicit parameter lists need a single identity, not all"));
        }
        registry().iter().map(|s| s.id).collect()
    } else {
        vec![id]
    };
    let mut jobs = Vec::new();
    for id in ids {
        let spec = struve::identity::lookup(id).ok_or_else(|| usage(format!("unknown identity {id}")))?;
        let grid = match (&lists, common.grid.as_deref()) {
            (Some(l), _) => {
                let mut names: Vec<&str> = l.iter().map(|(k, _)| k.as_str()).collect();
                let mut want = spec.params.to_vec();
                names.sort_unstable();
                want.sort_unstable();
                if names != want {
                    return Err(usage(format!("{id} takes parameters {}, got {}", want.join(", "), names.join(", "))));
                }
                product(l)
            }
            (None, Some("fine")) => fine_grid(id).unwrap_or_default(),
            (None, _) => default_grid(id).unwrap_or_default(),
        };
        jobs.extend(grid.into_iter().map(|params| Job { id: id.to_string(), params }));
    }
    Ok(jobs)
}

fn run_verify(id: &str, common: &Common) -> anyhow::Result<i32> {
    let cfg = common.config()?;
    let jobs = jobs_for(id, common)?;
    let reports = verify_batch(&jobs, &cfg)?;
    let rows: Vec<ReportRow> = reports.iter().map(ReportRow::from).collect();
    write_out(&emit_reports(&rows, common.format.into())?)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    let unconverged = reports.iter().filter(|r| !r.converged()).count();
    eprintln!("{} reports: {} passed, {failed} failed, {unconverged} not converged", reports.len(), reports.len() - failed);
    for r in reports.iter().filter(|r| !r.pass) {
        let note = r.note.as_deref().unwrap_or("");
        eprintln!("  FAIL {} {} residual {:e} {note}", r.identity_id, struve::report::fmt_params(&r.params), r.abs_residual);
    }
    Ok(if unconverged > 0 {
        EXIT_NONCONVERGED
    } else if failed > 0 {
        EXIT_FAIL
    } else {
        EXIT_PASS
    })
}

fn run_report(input: &PathBuf, from: Format, format: Format) -> anyhow::Result<i32> {
    let bytes = std::fs::read(input).map_err(|e| usage(format!("cannot read {}: {e}", input.display())))?;
    let rows = parse_reports(&bytes, from)?;
    write_out(&emit_reports(&rows, format)?)?;
    Ok(if rows.iter().all(|r| r.pass) { EXIT_PASS } else { EXIT_FAIL })
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Eval { function, upper, lower, route, common } => {
            run_eval(EvalSpec { function, upper, lower, route: route.into() }, &common)
        }
        Command::Verify { identity, common } => run_verify(&identity, &common),
        Command::Report { input, from, format } => run_report(&input, from.into(), format.into()),
    }
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main_exit() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            // numerical failures count as non-convergence, everything else as usage
            match e.downcast_ref::<struve::Error>() {
                Some(se) if !is_usage(se) => EXIT_NONCONVERGED,
                _ => EXIT_USAGE,
            }
        }
    }
}
