//! The constants `σ_k = min ‖P(e^{it})‖_{[0,2π]}` over degree-`k` polynomials
//! with `P(0) = 1` and `P(1) = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, PdSolver};

/// `sec(π / (2(k+1)))^{k+1}`.
pub fn sigma_closed(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Argument("σ_k needs k >= 1".into()));
    }
    let kp = (k + 1) as f64;
    Ok((std::f64::consts::PI / (2.0 * kp)).cos().powf(-kp))
}

pub const DEFAULT_GRID: usize = 4096;
const MAX_ITERATIONS: usize = 20_000;
const STALL_WINDOW: usize = 50;
const STALL_CHANGE: f64 = 1e-14;
/// Relative gap between the best value and the weighted lower bound that ends the iteration.
const GAP_TOL: f64 = 1e-3;
/// A stalled iteration is still accepted when its duality gap is this small.
const STALL_ACCEPT: f64 = 1e-2;

#[derive(Debug, Clone)]
pub struct SigmaResult {
    /// Discrete minimax value `max_i |P(z_i)|`.
    pub value: f64,
    /// Lower bound on the discrete minimax value from the final weights.
    pub lower: f64,
    /// Coefficients of `P`, constant term first.
    pub coeffs: Vec<Complex64>,
    pub iterations: usize,
}

fn poly_eval(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

fn p_coeffs(q: &[Complex64]) -> Vec<Complex64> {
    // P(z) = (1 - z) (1 + q_1 z + ... + q_{k-1} z^{k-1})
    let mut qq = vec![Complex64::new(1.0, 0.0)];
    qq.extend_from_slice(q);
    let mut p = vec![Complex64::new(0.0, 0.0); qq.len() + 1];
    for (i, a) in qq.iter().enumerate() {
        p[i] += a;
        p[i + 1] -= a;
    }
    p
}

/// Discrete minimax of `|P|` over `grid` equispaced points of the unit circle
/// by Lawson's multiplicative weight iteration.
pub fn sigma_minimax(k: usize, grid: usize) -> Result<SigmaResult> {
    if k == 0 {
        return Err(Error::Argument("σ_k needs k >= 1".into()));
    }
    if grid < 64 * (k + 1) {
        return Err(Error::Argument(format!("grid must be at least 64(k+1) = {}", 64 * (k + 1))));
    }
    let z: Vec<Complex64> = (0..grid)
        .map(|i| Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / grid as f64))
        .collect();
    let m = k - 1;
    if m == 0 {
        let coeffs = p_coeffs(&[]);
        let value = z.iter().map(|&x| poly_eval(&coeffs, x).norm()).fold(0.0, f64::max);
        return Ok(SigmaResult {
            value,
            lower: value,
            coeffs,
            iterations: 0,
        });
    }
    // residual r = b + A q with b_i = 1 - z_i, A_ij = (1 - z_i) z_i^j
    let b: Vec<Complex64> = z.iter().map(|x| 1.0 - x).collect();
    let a: Vec<Vec<Complex64>> = z
        .iter()
        .zip(&b)
        .map(|(x, bi)| (1..=m).map(|j| bi * x.powu(j as u32)).collect())
        .collect();

    let mut w = vec![1.0 / grid as f64; grid];
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    let mut lower: f64 = 0.0;
    let mut prev = f64::INFINITY;
    let mut flat = 0;
    for it in 1..=MAX_ITERATIONS {
        // weighted normal equations (A* W A) q = -A* W b
        let normal = HermitianMatrix::from_fn(m, |r, s| {
            (0..grid).map(|i| a[i][r].conj() * a[i][s] * w[i]).sum()
        });
        let rhs: Vec<Complex64> = (0..m)
            .map(|r| -(0..grid).map(|i| a[i][r].conj() * b[i] * w[i]).sum::<Complex64>())
            .collect();
        let (_, q) = PdSolver::new(&normal)?.quad_form_inv(&rhs);
        let res: Vec<f64> = (0..grid)
            .map(|i| (b[i] + a[i].iter().zip(&q).map(|(x, y)| x * y).sum::<Complex64>()).norm())
            .collect();
        let obj = res.iter().cloned().fold(0.0, f64::max);
        let ls: f64 = res.iter().zip(&w).map(|(r, wi)| wi * r * r).sum::<f64>().sqrt();
        lower = lower.max(ls);
        if best.as_ref().map_or(true, |(v, _)| obj < *v) {
            best = Some((obj, q.clone()));
        }
        let (bv, bq) = best.as_ref().expect("set above");
        if bv - lower <= GAP_TOL * bv {
            return Ok(SigmaResult {
                value: *bv,
                lower,
                coeffs: p_coeffs(bq),
                iterations: it,
            });
        }
        if (obj - prev).abs() < STALL_CHANGE * obj {
            flat += 1;
        } else {
            flat = 0;
        }
        prev = obj;
        if flat >= STALL_WINDOW || it == MAX_ITERATIONS {
            if bv - lower <= STALL_ACCEPT * bv {
                return Ok(SigmaResult {
                    value: *bv,
                    lower,
                    coeffs: p_coeffs(bq),
                    iterations: it,
                });
            }
            return Err(Error::MinimaxStall {
                best: *bv,
                iterations: it,
            });
        }
        let mut total = 0.0;
        for (wi, r) in w.iter_mut().zip(&res) {
            *wi *= r;
            total += *wi;
        }
        for wi in w.iter_mut() {
            *wi /= total;
        }
    }
    unreachable!("loop returns on its last iteration")
}
