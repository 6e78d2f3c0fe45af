//! Checks against exact extremal values of finite-dimensional spans.

use num_complex::Complex64;

use super::bounds::rhs_bound;
use super::{or_inconclusive, CheckReport, Extras, Status, TheoremId, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::exponents::{ExponentSet, IMAG_TOLERANCE};
use crate::extremal::{gram, markov_sup, monomial_gram, truncation_sup, Basis, Functional, KernelSolver};
use crate::norm::NormSpec;

/// Number of evaluation points of the sup over `[0, 1]`.
pub const ENVELOPE_GRID: usize = 33;

/// The span an exact check runs on.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactInput {
    Exponents(ExponentSet),
    /// Limit of `{e^{iεkt}}` (or `{e^{εkt}}`) as `ε → 0`: polynomials of
    /// degree below `n`.
    PolynomialLimit(usize),
}

impl ExactInput {
    pub fn n(&self) -> usize {
        match self {
            ExactInput::Exponents(e) => e.len(),
            ExactInput::PolynomialLimit(n) => *n,
        }
    }
}

fn polynomial_powers(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::new(k as f64, 0.0)).collect()
}

/// Sup ratio `|P(0)| / ‖P‖_{L_2[0,1]}` over polynomials of degree below `n`.
pub fn polynomial_point_sup(n: usize) -> Result<f64> {
    let p = polynomial_powers(n);
    let h = monomial_gram(&p)?;
    Ok(KernelSolver::new(&h)?.sup(&Basis::Monomial(p), Functional::point(0.0))?.value)
}

fn exps_of(input: &ExactInput, id: TheoremId) -> Result<&ExponentSet> {
    match input {
        ExactInput::Exponents(e) => Ok(e),
        ExactInput::PolynomialLimit(_) => Err(Error::Argument(format!("{id} needs an explicit exponent set"))),
    }
}

fn require(ok: bool, expected: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::WrongClass { expected })
    }
}

/// Exact check of `id` on the given span.
pub fn check_exact(id: TheoremId, input: &ExactInput, extras: &Extras, seed: u64) -> Result<CheckReport> {
    if !id.is_exact() {
        return Err(Error::Argument(format!("{id} has no exact check")));
    }
    let n = input.n();
    let r = exact_inner(id, input, extras, seed);
    or_inconclusive(id, n, seed, r)
}

fn exact_inner(id: TheoremId, input: &ExactInput, extras: &Extras, seed: u64) -> Result<CheckReport> {
    use TheoremId::*;
    let n = input.n();
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let exps = match input {
        ExactInput::Exponents(e) => Some(e),
        ExactInput::PolynomialLimit(_) => None,
    };
    let rhs = rhs_bound(id, n, exps, extras)?;
    let mut witness = None;
    let report = match id {
        T2_3 => {
            let e = exps_of(input, id)?;
            require(e.classify().trigonometric, "purely imaginary exponents")?;
            let basis = Basis::Exponential(e.clone());
            let solver = KernelSolver::new(&gram(e, &NormSpec::l2(0.0, 1.0)?)?)?;
            let mut best: Option<(f64, Vec<Complex64>)> = None;
            for i in 0..ENVELOPE_GRID {
                let y = i as f64 / (ENVELOPE_GRID - 1) as f64;
                let r = solver.sup(&basis, Functional::point(y))?;
                if best.as_ref().map_or(true, |(v, _)| r.value > *v) {
                    best = Some((r.value, r.witness));
                }
            }
            let (lhs, w) = best.expect("grid is non-empty");
            witness = Some(crate::sum::ExpSum::new(e.clone(), w)?);
            CheckReport::upper(id, n, seed, lhs, rhs, DEFAULT_TOL)
        }
        T2_6 => {
            let lhs = match input {
                ExactInput::PolynomialLimit(n) => polynomial_point_sup(*n)?,
                ExactInput::Exponents(e) => {
                    require(e.classify().trigonometric, "purely imaginary exponents")?;
                    let solver = KernelSolver::new(&gram(e, &NormSpec::l2(0.0, 1.0)?)?)?;
                    solver.sup(&Basis::Exponential(e.clone()), Functional::point(0.0))?.value
                }
            };
            CheckReport::lower(id, n, seed, lhs, rhs, DEFAULT_TOL)
        }
        T3_1 => {
            let e = exps_of(input, id)?;
            require(e.classify().nonpos_real, "non-positive real parts")?;
            let t = extras.t.unwrap_or(9.0 * n as f64);
            CheckReport::upper(id, n, seed, truncation_sup(e, t)?, rhs, DEFAULT_TOL)
        }
        T4_1 => {
            let lhs = match input {
                ExactInput::PolynomialLimit(n) => polynomial_point_sup(*n)?,
                ExactInput::Exponents(e) => {
                    require(
                        e.iter().all(|z| z.im.abs() <= IMAG_TOLERANCE && z.re >= -IMAG_TOLERANCE),
                        "real non-negative exponents",
                    )?;
                    let solver = KernelSolver::new(&gram(e, &NormSpec::l2(0.0, 1.0)?)?)?;
                    solver.sup(&Basis::Exponential(e.clone()), Functional::point(0.0))?.value
                }
            };
            CheckReport::upper(id, n, seed, lhs, rhs, DEFAULT_TOL)
        }
        T10_1 | T10_2 | T11_1 => {
            let e = exps_of(input, id)?;
            let spec = match id {
                T10_1 => {
                    require(e.max_re() < 0.5, "real parts below 1/2")?;
                    NormSpec::laguerre()
                }
                T10_2 => {
                    require(e.classify().trigonometric, "purely imaginary exponents")?;
                    NormSpec::laguerre()
                }
                _ => {
                    require(e.max_re() < 0.0, "negative real parts")?;
                    NormSpec::half_line(0.0)
                }
            };
            let r = markov_sup(e, &spec)?;
            witness = Some(r.witness_sum(e)?);
            CheckReport::upper(id, n, seed, r.value, rhs, DEFAULT_TOL)
        }
        L12_5 => {
            let e = exps_of(input, id)?;
            let y = extras.y.unwrap_or(0.0);
            let d = extras.delta.expect("rhs_bound checked delta");
            let g = gram(e, &NormSpec::l2(y - d, y + d)?)?;
            let r = KernelSolver::new(&g)?.sup(&Basis::Exponential(e.clone()), Functional::point(y))?;
            witness = Some(r.witness_sum(e)?);
            CheckReport::upper(id, n, seed, r.value, rhs, DEFAULT_TOL)
        }
        _ => unreachable!("filtered by is_exact"),
    };
    let keep = report.status == Status::Violated;
    Ok(report.with_witness(if keep { witness } else { None }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_example() {
        let e = ExponentSet::from_reals(&[0.0, -1.0, -2.0]).unwrap();
        let ex = Extras { t: Some(27.0), ..Extras::default() };
        let r = check_exact(TheoremId::T3_1, &ExactInput::Exponents(e), &ex, 0).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert!((r.rhs - (1.0 + 8190.0 * (-0.3f64).exp())).abs() < 1e-12);
        assert!(r.lhs >= 1.0);
    }

    #[test]
    fn polynomial_limit_is_sharp() {
        let r = check_exact(TheoremId::T4_1, &ExactInput::PolynomialLimit(3), &Extras::default(), 0).unwrap();
        assert!((r.lhs - 3.0).abs() < 1e-10 && r.rhs == 3.0);
        assert_eq!(r.status, Status::Holds);
        assert!(r.margin.abs() < 1e-10);
        let r = check_exact(TheoremId::T2_6, &ExactInput::PolynomialLimit(5), &Extras::default(), 0).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert!((r.lhs - 5.0).abs() < 1e-8);
    }

    #[test]
    fn single_frequency_markov_is_tight() {
        let e = ExponentSet::from_frequencies(&[7.0]).unwrap();
        let r = check_exact(TheoremId::T10_2, &ExactInput::Exponents(e), &Extras::default(), 0).unwrap();
        assert!((r.lhs - 7.0).abs() < 1e-12 && r.rhs == 7.0);
        assert_eq!(r.status, Status::Holds);
    }

    #[test]
    fn class_violations() {
        let e = ExponentSet::from_reals(&[0.5]).unwrap();
        let err = check_exact(TheoremId::T3_1, &ExactInput::Exponents(e.clone()), &Extras::default(), 0).unwrap_err();
        assert!(matches!(err, Error::WrongClass { .. }));
        assert!(check_exact(TheoremId::T2_3, &ExactInput::Exponents(e), &Extras::default(), 0).is_err());
        assert!(check_exact(TheoremId::T2_1, &ExactInput::PolynomialLimit(2), &Extras::default(), 0).is_err());
    }

    #[test]
    fn ill_conditioned_spans_are_inconclusive() {
        let e = ExponentSet::from_frequencies(&(0..12).map(|k| 0.001 * k as f64).collect::<Vec<_>>()).unwrap();
        let r = check_exact(TheoremId::T2_3, &ExactInput::Exponents(e), &Extras::default(), 0).unwrap();
        assert_eq!(r.status, Status::Inconclusive);
        let note = r.note.unwrap();
        assert!(note.contains("condition") || note.contains("positive definite"), "{note}");
    }

    #[test]
    fn window_kernel_below_bound() {
        let e = ExponentSet::new(vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0), Complex64::new(0.0, -3.0)]).unwrap();
        let ex = Extras { y: Some(0.3), delta: Some(0.4), ..Extras::default() };
        let r = check_exact(TheoremId::L12_5, &ExactInput::Exponents(e), &ex, 0).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert!((r.rhs - (3.0f64 / 0.4).sqrt()).abs() < 1e-14);
    }
}
