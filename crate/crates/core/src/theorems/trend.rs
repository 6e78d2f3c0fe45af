//! Growth-rate checks for the bounds whose constants are not explicit.

use num_complex::Complex64;

use super::legendre::shifted_legendre_orthonormal;
use super::witness::legendre_kernel_value;
use super::TheoremId;
use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, PdSolver};
use crate::quad::GaussRule;

/// Dimensions of the fitted trend.
pub const TREND_NS: [usize; 3] = [4, 8, 16];
/// Allowed distance of the fitted exponent from the stated power.
pub const SLOPE_TOL: f64 = 0.3;

const PANELS: usize = 128;
const IRLS_ITERATIONS: usize = 300;
const WEIGHT_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct TrendResult {
    pub theorem: TheoremId,
    pub label: String,
    pub ns: Vec<usize>,
    pub values: Vec<f64>,
    pub slope: f64,
    pub expected: f64,
}

impl TrendResult {
    pub fn passes(&self) -> bool {
        (self.slope - self.expected).abs() <= SLOPE_TOL
    }
}

/// Least-squares slope of `log v` against `log n`.
pub fn loglog_slope(ns: &[usize], values: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn nodes() -> Vec<(f64, f64)> {
    let rule = GaussRule::new(8);
    let h = 1.0 / PANELS as f64;
    (0..PANELS)
        .flat_map(|p| {
            let lo = p as f64 * h;
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .map(move |(x, w)| (lo + 0.5 * h * (x + 1.0), 0.5 * h * w))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn lq(values: &[f64], weights: &[f64], q: f64) -> f64 {
    values.iter().zip(weights).map(|(v, w)| w * v.abs().powf(q)).sum::<f64>().powf(1.0 / q)
}

/// `max |P(0)| / ‖P‖_{L_q[0,1]}` over polynomials of degree below `n`, by
/// iteratively reweighted least squares on `min ‖P‖_q` subject to `P(0) = 1`.
pub fn polynomial_point_ratio_lq(n: usize, q: f64) -> Result<f64> {
    if n == 0 || !(q > 0.0 && q.is_finite()) {
        return Err(Error::Argument(format!("need n >= 1 and finite q > 0, got n={n}, q={q}")));
    }
    let pts = nodes();
    let basis: Vec<Vec<f64>> = pts.iter().map(|(x, _)| shifted_legendre_orthonormal(n, *x)).collect();
    let qw: Vec<f64> = pts.iter().map(|(_, w)| *w).collect();
    let v: Vec<Complex64> = shifted_legendre_orthonormal(n, 0.0).into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    let values_of = |c: &[f64]| -> Vec<f64> {
        basis.iter().map(|b| b.iter().zip(c).map(|(x, y)| x * y).sum()).collect()
    };

    let mut w = vec![1.0; pts.len()];
    let mut c: Option<Vec<f64>> = None;
    let mut best = f64::INFINITY;
    for _ in 0..IRLS_ITERATIONS {
        let m = HermitianMatrix::from_fn(n, |r, s| {
            let t: f64 = basis.iter().zip(&qw).zip(&w).map(|((b, qw), w)| qw * w * b[r] * b[s]).sum();
            Complex64::new(t, 0.0)
        });
        let (vmv, mv) = PdSolver::new(&m)?.quad_form_inv(&v);
        let cand: Vec<f64> = mv.iter().map(|z| z.re / vmv).collect();
        let next = match &c {
            None => cand,
            Some(prev) => prev.iter().zip(&cand).map(|(a, b)| 0.5 * (a + b)).collect(),
        };
        let vals = values_of(&next);
        best = best.min(lq(&vals, &qw, q));
        let peak = vals.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        for (wi, p) in w.iter_mut().zip(&vals) {
            *wi = p.abs().max(WEIGHT_FLOOR * peak).powf(q - 2.0);
        }
        c = Some(next);
    }
    Ok(1.0 / best)
}

/// Trend fits for `T2_7` (q in {1, 4}) or `T7_2` (interior and endpoint).
pub fn trend(id: TheoremId) -> Result<Vec<TrendResult>> {
    let ns = TREND_NS.to_vec();
    match id {
        TheoremId::T2_7 => [1.0, 4.0]
            .iter()
            .map(|&q| {
                let values = ns.iter().map(|&n| polynomial_point_ratio_lq(n, q)).collect::<Result<Vec<_>>>()?;
                Ok(TrendResult {
                    theorem: id,
                    label: format!("q={q}"),
                    slope: loglog_slope(&ns, &values),
                    ns: ns.clone(),
                    values,
                    expected: 2.0 / q,
                })
            })
            .collect(),
        TheoremId::T7_2 => [("interior y=0", 0.0, 0.5), ("endpoint y=1", 1.0, 1.0)]
            .iter()
            .map(|&(label, y, expected)| {
                let values: Vec<f64> = ns.iter().map(|&n| legendre_kernel_value(n, y).sqrt()).collect();
                Ok(TrendResult {
                    theorem: id,
                    label: label.to_string(),
                    slope: loglog_slope(&ns, &values),
                    ns: ns.clone(),
                    values,
                    expected,
                })
            })
            .collect(),
        _ => Err(Error::Argument(format!("{id} is not a trend check"))),
    }
}
