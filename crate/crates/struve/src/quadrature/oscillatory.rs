use rayon::prelude::*;

use super::accel::AccelerationState;
use super::gk::integrate_finite;
use super::{Endpoint, Node};
use crate::bessel_struve::bessel_j;
use crate::config::{EvalResult, NumericConfig};
use crate::error::{domain, Result};

const FIRST_BATCH: usize = 24;
const BATCH: usize = 8;
const WINDOW: usize = 25;
const MAX_DEPTH: usize = 12;

/// McMahon-type approximation to the k-th positive zero of J_nu(a x).
fn cell_edge(k: usize, nu: f64, a: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        (k as f64 + 0.5 * nu - 0.25) * std::f64::consts::PI / a
    }
}

/// Integral of g(x) J_nu(a x) over [0, inf).
///
/// `p` is the algebraic decay exponent of g (|g| = O(x^-p)); the left
/// annotation describes g at the origin.
pub fn integrate_bessel_oscillatory(
    g: &(dyn Fn(f64) -> f64 + Sync),
    nu: f64,
    a: f64,
    p: f64,
    left: Endpoint,
    cfg: &NumericConfig,
) -> Result<EvalResult> {
    if !(a > 0.0) || !a.is_finite() {
        return domain("oscillatory integral needs a positive scale");
    }
    if !(nu > -1.0) {
        return domain("Bessel order must exceed -1");
    }
    if !(p > -0.5) {
        return domain(format!("decay exponent {p} too small for convergence"));
    }
    let cell_cfg = cfg.with_rel_tol(cfg.rel_tol * 0.05).with_abs_tol(cfg.abs_tol * 0.01);
    let h = |n: Node| g(n.x) * bessel_j(nu, a * n.x);
    let cell = |k: usize| -> Result<EvalResult> {
        let lo = cell_edge(k, nu, a);
        let hi = cell_edge(k + 1, nu, a);
        if k == 0 {
            integrate_finite(&|n: Node| h(n), lo, hi, left, Endpoint::Regular, &cell_cfg)
        } else {
            let f = |n: Node| h(Node { x: n.x, from_a: n.x, to_b: f64::INFINITY });
            integrate_finite(&f, lo, hi, Endpoint::Regular, Endpoint::Regular, &cell_cfg)
        }
    };
    let max_cells = cfg.quad_budget.clamp(FIRST_BATCH + BATCH, 800);
    let mut cells: Vec<EvalResult> = Vec::new();
    let mut state = AccelerationState::default();
    let mut running = 0.0;
    let mut prev_est: Option<f64> = None;
    let mut best: Option<(f64, f64)> = None;
    let mut work = 0u64;
    let mut cell_err = 0.0;
    let mut cells_ok = true;
    loop {
        let start = cells.len();
        let count = if start == 0 { FIRST_BATCH } else { BATCH };
        let batch: Vec<Result<EvalResult>> = (start..start + count).into_par_iter().map(cell).collect();
        for r in batch {
            let r = r?;
            work += r.work;
            cell_err += r.err_est;
            cells_ok &= r.converged;
            running += r.value;
            state.push(running);
            cells.push(r);
        }
        let n = cells.len();
        let tail_vals: Vec<f64> = cells[n - 8..].iter().map(|c| c.value).collect();
        let tiny = tail_vals.iter().all(|v| v.abs() <= 1e-3 * cfg.target(running));
        let (est, acc_err) = if tiny {
            (running, tail_vals.iter().map(|v| v.abs()).sum::<f64>())
        } else {
            state.extrapolate(WINDOW, MAX_DEPTH)
        };
        let mut err = acc_err + cell_err;
        if let Some(prev) = prev_est {
            err = err.max((est - prev).abs());
        }
        prev_est = Some(est);
        if best.is_none_or(|(_, e)| err <= e) {
            best = Some((est, err));
        }
        let alternating = tiny || tail_vals.windows(2).all(|w| w[0] * w[1] < 0.0);
        if err <= cfg.target(est) || n + BATCH > max_cells {
            let (value, err) = best.unwrap();
            let converged = alternating && cells_ok && cfg.accepts(value, err);
            return Ok(EvalResult { value, err_est: err, work, converged });
        }
    }
}
