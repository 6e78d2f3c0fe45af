//! Extremal ratios on finite-dimensional spans via Gram matrices.
//!
//! With the Gram matrix `H_{jk} = ⟨e_j, e_k⟩` of a system `e_1, ..., e_n`, every
//! `L_2` norm is a quadratic form `‖Σ a_k e_k‖² = a* H a`. Sharp constants of
//! point and derivative evaluations follow from the reproducing kernel
//! `u* H^{-1} u`, Markov ratios from the generalized eigenproblem of
//! `(Λ* H Λ, H)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exponents::{ExponentSet, IMAG_TOLERANCE};
use crate::linalg::{gen_eigen_max, HermitianMatrix, PdSolver};
use crate::norm::{Domain, NormSpec};
use crate::quad::{exp_moment, exp_moment_halfline};
use crate::sum::ExpSum;

/// Largest log-magnitude of a dual-vector entry.
const LOG_OVERFLOW: f64 = 700.0;

/// The spanning system of an extremal problem.
#[derive(Debug, Clone, PartialEq)]
pub enum Basis {
    /// `e^{λ_j t}`.
    Exponential(ExponentSet),
    /// `x^{λ_j}` on `[0, 1]`.
    Monomial(Vec<Complex64>),
}

impl Basis {
    pub fn len(&self) -> usize {
        match self {
            Basis::Exponential(e) => e.len(),
            Basis::Monomial(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn exponents(&self) -> &[Complex64] {
        match self {
            Basis::Exponential(e) => e.as_slice(),
            Basis::Monomial(p) => p,
        }
    }

    /// `Σ a_j e_j(y)`.
    pub fn eval(&self, coeffs: &[Complex64], y: f64) -> Result<Complex64> {
        let v = dual_vector(self, Functional::point(y))?;
        Ok(v.iter().zip(coeffs).map(|(v, a)| v * a).sum())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalKind {
    PointEval,
    DerivEval,
}

/// `f ↦ f(y)` or `f ↦ f'(y)`. The point may lie outside the norm's domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Functional {
    pub kind: FunctionalKind,
    pub y: f64,
}

impl Functional {
    pub fn point(y: f64) -> Self {
        Self {
            kind: FunctionalKind::PointEval,
            y,
        }
    }

    pub fn deriv(y: f64) -> Self {
        Self {
            kind: FunctionalKind::DerivEval,
            y,
        }
    }
}

/// Parses `point:<y>` or `deriv:<y>`.
impl std::str::FromStr for Functional {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("functional must be point:<y> or deriv:<y>, got {s:?}"));
        let (kind, y) = s.split_once(':').ok_or_else(bad)?;
        let y: f64 = y.trim().parse().map_err(|_| bad())?;
        if !y.is_finite() {
            return Err(bad());
        }
        match kind.trim() {
            "point" => Ok(Functional::point(y)),
            "deriv" => Ok(Functional::deriv(y)),
            _ => Err(bad()),
        }
    }
}

/// Sup ratio of an extremal problem with a maximizing coefficient vector.
#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub value: f64,
    /// Coefficients of the maximizer in the basis order, normalized to unit norm.
    pub witness: Vec<Complex64>,
    pub gram_condition: f64,
}

impl ExtremalResult {
    pub fn witness_sum(&self, exps: &ExponentSet) -> Result<ExpSum> {
        ExpSum::new(exps.clone(), self.witness.clone())
    }
}

/// Gram matrix `H_{jk} = ∫ conj(e^{λ_j t}) e^{λ_k t} e^{-2ct} dt` of the
/// exponential system, so that `‖f‖² = a* H a` for `f = Σ a_k e^{λ_k t}`.
pub fn gram(exps: &ExponentSet, spec: &NormSpec) -> Result<HermitianMatrix> {
    if spec.q != 2.0 {
        return Err(Error::Argument(format!("Gram matrices need q = 2, got {}", spec.q)));
    }
    let lam = exps.as_slice();
    let n = lam.len();
    let rate = spec.measure_rate();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for k in j..n {
            let mu = lam[j].conj() + lam[k] - rate;
            let m = match spec.domain {
                Domain::Interval { a, b } => exp_moment(mu, a, b),
                Domain::HalfLine => exp_moment_halfline(mu)?,
            };
            entries[j * n + k] = m;
            entries[k * n + j] = m.conj();
        }
    }
    Ok(HermitianMatrix::from_fn(n, |j, k| entries[j * n + k]).with_tag("exponential"))
}

/// Gram matrix `H_{jk} = 1 / (conj λ_j + λ_k + 1)` of `x^{λ_j}` in `L_2[0,1]`.
pub fn monomial_gram(powers: &[Complex64]) -> Result<HermitianMatrix> {
    if powers.is_empty() {
        return Err(Error::EmptyExponents);
    }
    for (j, p) in powers.iter().enumerate() {
        if p.re <= -0.5 {
            return Err(Error::DivergentIntegral(format!(
                "x^λ with Re λ = {} (index {j}) is not square integrable on [0,1]",
                p.re
            )));
        }
    }
    Ok(HermitianMatrix::from_fn(powers.len(), |j, k| {
        (powers[j].conj() + powers[k] + 1.0).inv()
    })
    .with_tag("monomial"))
}

fn guard(log_magnitude: f64) -> Result<()> {
    if log_magnitude > LOG_OVERFLOW {
        Err(Error::OverflowGuard { log_magnitude })
    } else {
        Ok(())
    }
}

fn exp_dual(lam: Complex64, y: f64, kind: FunctionalKind) -> Result<Complex64> {
    let z = lam * y;
    match kind {
        FunctionalKind::PointEval => {
            guard(z.re)?;
            Ok(z.exp())
        }
        FunctionalKind::DerivEval => {
            if lam.norm() == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            guard(z.re + lam.norm().ln())?;
            Ok(lam * z.exp())
        }
    }
}

fn monomial_dual(lam: Complex64, y: f64, kind: FunctionalKind) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    if y < 0.0 || !y.is_finite() {
        return Err(Error::Argument(format!("monomial evaluation needs y >= 0, got {y}")));
    }
    if y == 0.0 {
        let unbounded = || Err(Error::Argument(format!("x^λ with λ = {lam} is not evaluable at 0")));
        return match kind {
            FunctionalKind::PointEval if lam == zero => Ok(one),
            FunctionalKind::PointEval if lam.re > 0.0 => Ok(zero),
            FunctionalKind::DerivEval if lam == zero => Ok(zero),
            FunctionalKind::DerivEval if lam == one => Ok(one),
            FunctionalKind::DerivEval if lam.re > 1.0 => Ok(zero),
            _ => unbounded(),
        };
    }
    let ly = y.ln();
    match kind {
        FunctionalKind::PointEval => {
            guard((lam * ly).re)?;
            Ok((lam * ly).exp())
        }
        FunctionalKind::DerivEval => {
            if lam == zero {
                return Ok(zero);
            }
            let z = (lam - 1.0) * ly;
            guard(z.re + lam.norm().ln())?;
            Ok(lam * z.exp())
        }
    }
}

/// Values `ℓ(e_j)` of the functional on the basis; `ℓ(Σ a_j e_j) = Σ a_j v_j`.
pub fn dual_vector(basis: &Basis, functional: Functional) -> Result<Vec<Complex64>> {
    let f = match basis {
        Basis::Exponential(_) => exp_dual,
        Basis::Monomial(_) => monomial_dual,
    };
    basis
        .exponents()
        .iter()
        .map(|&lam| f(lam, functional.y, functional.kind))
        .collect()
}

/// Factored Gram matrix reused across several functionals on one span.
#[derive(Debug, Clone)]
pub struct KernelSolver {
    gram: HermitianMatrix,
    solver: PdSolver,
}

impl KernelSolver {
    pub fn new(gram: &HermitianMatrix) -> Result<Self> {
        Ok(Self {
            gram: gram.clone(),
            solver: PdSolver::new(gram)?,
        })
    }

    pub fn condition(&self) -> f64 {
        self.solver.condition
    }

    pub fn sup(&self, basis: &Basis, functional: Functional) -> Result<ExtremalResult> {
        if basis.len() != self.gram.dim() {
            return Err(Error::LengthMismatch {
                exponents: basis.len(),
                coeffs: self.gram.dim(),
            });
        }
        let u: Vec<Complex64> = dual_vector(basis, functional)?.iter().map(|v| v.conj()).collect();
        let (value_sq, x) = self.solver.quad_form_inv(&u);
        let witness = if value_sq > 0.0 {
            let s = 1.0 / value_sq.sqrt();
            x.iter().map(|z| z * s).collect()
        } else {
            let mut w = vec![Complex64::new(0.0, 0.0); basis.len()];
            w[0] = Complex64::new(1.0 / self.gram.get(0, 0).re.sqrt(), 0.0);
            w
        };
        Ok(ExtremalResult {
            value: value_sq.max(0.0).sqrt(),
            witness,
            gram_condition: self.solver.condition,
        })
    }
}

/// `sup |ℓ(f)| / ‖f‖` over the span, with the maximizer `a ∝ H^{-1} conj(v)`.
pub fn christoffel_sup(gram: &HermitianMatrix, basis: &Basis, functional: Functional) -> Result<ExtremalResult> {
    KernelSolver::new(gram)?.sup(basis, functional)
}

fn markov_from_gram(gram: &HermitianMatrix, lam: &[Complex64]) -> Result<ExtremalResult> {
    let d = gram.congruence_diag(lam);
    let g = gen_eigen_max(&d, gram)?;
    Ok(ExtremalResult {
        value: g.value.max(0.0).sqrt(),
        witness: g.vector,
        gram_condition: g.condition,
    })
}

/// `sup ‖f'‖ / ‖f‖` over `span{e^{λ_j t}}`.
pub fn markov_sup(exps: &ExponentSet, spec: &NormSpec) -> Result<ExtremalResult> {
    markov_from_gram(&gram(exps, spec)?, exps.as_slice())
}

/// `sup ‖x P'(x)‖ / ‖P‖` in `L_2[0,1]` over `span{x^{λ_j}}`.
pub fn monomial_markov_sup(powers: &[Complex64]) -> Result<ExtremalResult> {
    markov_from_gram(&monomial_gram(powers)?, powers)
}

/// `sup ∫_0^∞ |f|² e^{-t} / ∫_0^T |f|² e^{-t}` over the span; all real parts
/// must be non-positive.
pub fn truncation_sup(exps: &ExponentSet, t: f64) -> Result<f64> {
    if !exps.iter().all(|z| z.re <= IMAG_TOLERANCE) {
        return Err(Error::WrongClass {
            expected: "non-positive real parts",
        });
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Argument(format!("truncation point must be positive, got {t}")));
    }
    let full = gram(exps, &NormSpec::laguerre())?;
    let part = gram(exps, &NormSpec::interval(0.0, t, 0.5, 2.0)?)?;
    Ok(gen_eigen_max(&full, &part)?.value)
}

/// Orthonormal basis by Gram–Schmidt in basis order: row `k` holds the
/// coefficients of the `k`-th orthonormal element, which uses only the first
/// `k + 1` basis functions and has a positive leading coefficient.
pub fn orthonormal_basis(gram: &HermitianMatrix) -> Result<Vec<Vec<Complex64>>> {
    let solver = PdSolver::new(gram)?;
    Ok(solver
        .factor
        .inverse_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|z| z.conj()).collect())
        .collect())
}

fn check_monomial(powers: &[Complex64]) -> Result<()> {
    match powers.iter().find(|p| p.re <= -0.5) {
        Some(p) => Err(Error::Argument(format!("closed form needs Re λ > -1/2, got {p}"))),
        None => Ok(()),
    }
}

fn check_exponential(exps: &[Complex64]) -> Result<()> {
    match exps.iter().find(|p| p.re >= 0.5) {
        Some(p) => Err(Error::Argument(format!("closed form needs Re λ < 1/2, got {p}"))),
        None => Ok(()),
    }
}

/// `(Σ (1 + 2 Re λ_j))^{1/2}` for monomials, `(Σ (1 - 2 Re λ_j))^{1/2}` for
/// exponentials under the Laguerre norm at `t = 0`.
pub fn point_bound_closed(basis: &Basis) -> Result<f64> {
    let s: f64 = match basis {
        Basis::Monomial(p) => {
            check_monomial(p)?;
            p.iter().map(|l| 1.0 + 2.0 * l.re).sum()
        }
        Basis::Exponential(e) => {
            check_exponential(e.as_slice())?;
            e.iter().map(|l| 1.0 - 2.0 * l.re).sum()
        }
    };
    Ok(s.sqrt())
}

fn deriv_sum(powers: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    let mut total = 0.0;
    for lam in powers {
        let w = 1.0 + 2.0 * lam.re;
        total += w * (lam + acc).norm_sqr();
        acc += w;
    }
    total
}

/// `(Σ_k (1 + 2 Re λ_k) |λ_k + Σ_{j<k} (1 + 2 Re λ_j)|²)^{1/2}`: the sharp
/// bound for `|P'(1)|` on monomials, or for `|f'(0)|` under the Laguerre norm
/// with `λ ↦ -λ` on exponentials.
pub fn deriv_bound_closed(basis: &Basis) -> Result<f64> {
    match basis {
        Basis::Monomial(p) => {
            check_monomial(p)?;
            Ok(deriv_sum(p).sqrt())
        }
        Basis::Exponential(e) => {
            check_exponential(e.as_slice())?;
            let mu: Vec<Complex64> = e.iter().map(|l| -l).collect();
            Ok(deriv_sum(&mu).sqrt())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkovVariant {
    /// Laguerre norm, `Re λ < 1/2`.
    LaguerreComplex,
    /// Laguerre norm, purely imaginary exponents.
    LaguerreImaginary,
    /// Unweighted half-line, `Re λ < 0`.
    HalfLine,
    /// `‖x P'‖ / ‖P‖` on `L_2[0,1]`, quadratic form.
    MuntzQuadratic,
    /// `‖x P'‖ / ‖P‖` on `L_2[0,1]`, max plus square root.
    MuntzMaxRoot,
}

fn pair_sum(w: &[f64]) -> f64 {
    let mut tail: f64 = w.iter().sum();
    let mut s = 0.0;
    for x in w {
        tail -= x;
        s += x * tail;
    }
    s.max(0.0)
}

/// Closed-form Markov constants.
pub fn markov_bound_closed(variant: MarkovVariant, exps: &[Complex64]) -> Result<f64> {
    if exps.is_empty() {
        return Err(Error::EmptyExponents);
    }
    let max_abs = exps.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let violation = |what: &str| Err(Error::Argument(format!("closed form needs {what}")));
    match variant {
        MarkovVariant::LaguerreComplex => {
            if exps.iter().any(|z| z.re >= 0.5) {
                return violation("Re λ < 1/2");
            }
            let w: Vec<f64> = exps.iter().map(|z| 1.0 - 2.0 * z.re).collect();
            Ok(max_abs + pair_sum(&w).sqrt())
        }
        MarkovVariant::LaguerreImaginary => {
            if exps.iter().any(|z| z.re.abs() > IMAG_TOLERANCE) {
                return violation("purely imaginary exponents");
            }
            let n = exps.len() as f64;
            Ok(max_abs + (n * (n - 1.0) / 2.0).sqrt())
        }
        MarkovVariant::HalfLine => {
            if exps.iter().any(|z| z.re >= 0.0) {
                return violation("Re λ < 0");
            }
            let shifted = exps.iter().map(|z| (z + 0.5).norm()).fold(0.0, f64::max);
            let w: Vec<f64> = exps.iter().map(|z| z.re).collect();
            Ok(0.5 + shifted + 2.0 * pair_sum(&w).sqrt())
        }
        MarkovVariant::MuntzQuadratic | MarkovVariant::MuntzMaxRoot => {
            check_monomial(exps)?;
            let w: Vec<f64> = exps.iter().map(|z| 1.0 + 2.0 * z.re).collect();
            let pairs = pair_sum(&w);
            if variant == MarkovVariant::MuntzQuadratic {
                let sq: f64 = exps.iter().map(|z| z.norm_sqr()).sum();
                Ok((sq + pairs).sqrt())
            } else {
                Ok(max_abs + pairs.sqrt())
            }
        }
    }
}
