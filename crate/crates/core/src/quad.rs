//! Exponential moments, composite Gauss–Legendre `L_q` norms and sup-norm search.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::norm::{Domain, NormSpec};
use crate::sum::ExpSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Relative change between successive panel doublings that counts as converged.
    pub rel_tol: f64,
    pub max_panels: usize,
    /// Gauss–Legendre points per panel.
    pub gauss_order: usize,
    /// Sampling grid size of the sup-norm search.
    pub sup_grid: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            max_panels: 1 << 16,
            gauss_order: 16,
            sup_grid: 4096,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::Argument("rel_tol must be positive".into()));
        }
        if self.gauss_order < 2 {
            return Err(Error::Argument("gauss_order must be at least 2".into()));
        }
        if self.sup_grid < 2 || self.max_panels < 1 {
            return Err(Error::Argument("sup_grid >= 2 and max_panels >= 1 required".into()));
        }
        Ok(())
    }
}

/// Below this `|μ|(b-a)` the moment is summed as a power series.
const SERIES_CUTOFF: f64 = 1e-4;

/// `e^z - 1` without cancellation for small `|z|`.
fn expm1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * c - 2.0 * half * half, z.re.exp() * s)
}

/// `(e^z - 1)/z` by its Taylor series, for small `|z|`.
fn phi1_series(z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 2..=12 {
        term *= z / k as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

fn moment_direct(mu: Complex64, a: f64, h: f64) -> Complex64 {
    (mu * a).exp() * expm1(mu * h) / mu
}

fn moment_series(mu: Complex64, a: f64, h: f64) -> Complex64 {
    (mu * a).exp() * h * phi1_series(mu * h)
}

/// `∫_a^b e^{μ t} dt`.
pub fn exp_moment(mu: Complex64, a: f64, b: f64) -> Complex64 {
    let h = b - a;
    if mu == Complex64::new(0.0, 0.0) {
        return Complex64::new(h, 0.0);
    }
    if mu.norm() * h.abs() < SERIES_CUTOFF {
        moment_series(mu, a, h)
    } else {
        moment_direct(mu, a, h)
    }
}

/// `∫_0^∞ e^{μ t} dt = -1/μ`, defined for `Re μ < 0`.
pub fn exp_moment_halfline(mu: Complex64) -> Result<Complex64> {
    if mu.re >= 0.0 {
        return Err(Error::DivergentIntegral(format!(
            "∫_0^∞ e^(μt) dt needs Re μ < 0, got μ = {mu}"
        )));
    }
    Ok(-mu.inv())
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        let m = order;
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_m.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(m, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        Self { nodes, weights }
    }
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite rule on `[a, b]` with `panels` equal panels, summed in panel order.
/// Returns the estimates of `∫ g` and `∫ |g|`.
fn composite(rule: &GaussRule, g: &impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> (f64, f64) {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    let mut total_abs = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let mut s = 0.0;
        let mut sa = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let v = g(mid + 0.5 * h * x);
            s += w * v;
            sa += w * v.abs();
        }
        total += 0.5 * h * s;
        total_abs += 0.5 * h * sa;
    }
    (total, total_abs)
}

/// `∫_a^b g` by panel doubling until two successive estimates agree to
/// `rel_tol` relative to `∫ |g|`.
pub fn integrate(g: impl Fn(f64) -> f64, a: f64, b: f64, cfg: &QuadConfig) -> Result<f64> {
    cfg.validate()?;
    let rule = GaussRule::new(cfg.gauss_order);
    let mut panels = 2usize;
    let mut prev = composite(&rule, &g, a, b, 1).0;
    loop {
        let (cur, scale) = composite(&rule, &g, a, b, panels);
        if !cur.is_finite() {
            return Err(Error::QuadratureFailure { panels, estimate: cur });
        }
        let diff = (cur - prev).abs();
        if diff <= cfg.rel_tol * scale || (cur == 0.0 && prev == 0.0) {
            return Ok(cur);
        }
        if panels >= cfg.max_panels {
            return Err(Error::QuadratureFailure { panels, estimate: cur });
        }
        prev = cur;
        panels *= 2;
    }
}

/// `‖f(t) e^{-ct}‖_{L_q[a,b]}`; `q = ∞` is routed to the sup-norm search.
pub fn lq_norm(f: &ExpSum, spec: &NormSpec, cfg: &QuadConfig) -> Result<f64> {
    let (a, b) = match spec.domain {
        Domain::Interval { a, b } => (a, b),
        Domain::HalfLine => {
            return Err(Error::Argument(
                "lq_norm integrates finite intervals only; half-line norms use the Gram form".into(),
            ))
        }
    };
    let c = spec.weight_rate;
    let q = spec.q;
    if q.is_infinite() {
        let (v, _) = sup_norm_by(|t| f.eval_real(t).norm_sqr() * (-2.0 * c * t).exp(), a, b, cfg);
        return Ok(v);
    }
    let integral = integrate(
        |t| f.eval_real(t).norm().powf(q) * (-q * c * t).exp(),
        a,
        b,
        cfg,
    )?;
    Ok(integral.powf(1.0 / q))
}

/// Unweighted `‖f‖_{L_q[a,b]}` of an arbitrary complex function.
pub fn lq_norm_fn(f: impl Fn(f64) -> Complex64, a: f64, b: f64, q: f64, cfg: &QuadConfig) -> Result<f64> {
    if q.is_infinite() {
        return Ok(sup_norm_by(|t| f(t).norm_sqr(), a, b, cfg).0);
    }
    Ok(integrate(|t| f(t).norm().powf(q), a, b, cfg)?.powf(1.0 / q))
}

/// `(sup_{[a,b]} |f|, argmax)` by grid sampling and golden-section refinement.
/// The value is attained at the returned point, so it never exceeds the true sup.
pub fn sup_norm(f: &ExpSum, a: f64, b: f64, cfg: &QuadConfig) -> (f64, f64) {
    sup_norm_by(|t| f.eval_real(t).norm_sqr(), a, b, cfg)
}

/// Sup-norm search for a general function.
pub fn sup_norm_fn(f: impl Fn(f64) -> Complex64, a: f64, b: f64, cfg: &QuadConfig) -> (f64, f64) {
    sup_norm_by(|t| f(t).norm_sqr(), a, b, cfg)
}

const REFINE_WIDTH: f64 = 1e-12;
const REFINE_CANDIDATES: usize = 3;

/// Maximizes `sq(t) = |f(t)|²` over `[a, b]`; returns `(sqrt(max), argmax)`.
fn sup_norm_by(sq: impl Fn(f64) -> f64, a: f64, b: f64, cfg: &QuadConfig) -> (f64, f64) {
    assert!(a < b, "sup_norm needs a < b");
    let n = cfg.sup_grid.max(2);
    let step = (b - a) / (n - 1) as f64;
    let at = |i: usize| if i == n - 1 { b } else { a + i as f64 * step };
    let vals: Vec<f64> = (0..n).map(|i| sq(at(i))).collect();

    // local maxima of the sampled values, best first
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = i == 0 || vals[i] >= vals[i - 1];
            let right = i == n - 1 || vals[i] >= vals[i + 1];
            left && right
        })
        .collect();
    peaks.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    peaks.truncate(REFINE_CANDIDATES);

    let mut best_t = at(peaks.first().copied().unwrap_or(0));
    let mut best_v = sq(best_t);
    for &i in &peaks {
        let lo = at(i.saturating_sub(1));
        let hi = at((i + 1).min(n - 1));
        let (t, v) = golden_max(&sq, lo, hi);
        if v > best_v {
            best_v = v;
            best_t = t;
        }
    }
    (best_v.sqrt(), best_t)
}

fn golden_max(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    while hi - lo > REFINE_WIDTH {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1);
        }
        if x1 >= x2 {
            break;
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
