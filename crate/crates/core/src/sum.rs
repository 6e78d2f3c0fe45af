//! Exponential sums `f(t) = Σ a_j e^{λ_j t}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exponents::{ExpClass, ExponentSet};

#[derive(Debug, Clone, PartialEq)]
pub struct ExpSum {
    exps: ExponentSet,
    coeffs: Vec<Complex64>,
}

impl ExpSum {
    /// Pairs `coeffs[j]` with the `j`-th exponent of the canonical set.
    pub fn new(exps: ExponentSet, coeffs: Vec<Complex64>) -> Result<Self> {
        if exps.len() != coeffs.len() {
            return Err(Error::LengthMismatch {
                exponents: exps.len(),
                coeffs: coeffs.len(),
            });
        }
        Ok(Self { exps, coeffs })
    }

    /// Builds from unordered `(exponent, coefficient)` pairs; the pairs are
    /// sorted into canonical exponent order.
    pub fn from_terms(terms: &[(Complex64, Complex64)]) -> Result<Self> {
        let (exps, perm) = ExponentSet::with_permutation(terms.iter().map(|t| t.0).collect())?;
        let coeffs = perm.iter().map(|&i| terms[i].1).collect();
        Ok(Self { exps, coeffs })
    }

    pub fn zero(exps: ExponentSet) -> Self {
        let coeffs = vec![Complex64::new(0.0, 0.0); exps.len()];
        Self { exps, coeffs }
    }

    pub fn exps(&self) -> &ExponentSet {
        &self.exps
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| *a == Complex64::new(0.0, 0.0))
    }

    pub fn class(&self) -> ExpClass {
        self.exps.classify()
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.exps
            .iter()
            .zip(&self.coeffs)
            .map(|(lam, a)| a * (lam * t).exp())
            .sum()
    }

    pub fn eval_real(&self, t: f64) -> Complex64 {
        self.eval(Complex64::new(t, 0.0))
    }

    /// `f'`: same exponents, coefficients `λ_j a_j`.
    pub fn differentiate(&self) -> ExpSum {
        let coeffs = self
            .exps
            .iter()
            .zip(&self.coeffs)
            .map(|(lam, a)| lam * a)
            .collect();
        ExpSum {
            exps: self.exps.clone(),
            coeffs,
        }
    }

    /// `g(t) = f(α t + β)`: exponents `α λ_j`, coefficients `a_j e^{λ_j β}`.
    pub fn substitute_linear(&self, alpha: f64, beta: f64) -> Result<ExpSum> {
        if alpha == 0.0 || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Argument("substitution needs finite α ≠ 0 and finite β".into()));
        }
        let terms: Vec<(Complex64, Complex64)> = self
            .exps
            .iter()
            .zip(&self.coeffs)
            .map(|(lam, a)| (lam * alpha, a * (lam * beta).exp()))
            .collect();
        ExpSum::from_terms(&terms)
    }

    /// `g(t) = f(-t)`.
    pub fn reflect(&self) -> ExpSum {
        let terms: Vec<(Complex64, Complex64)> = self
            .exps
            .iter()
            .zip(&self.coeffs)
            .map(|(lam, a)| (-lam, *a))
            .collect();
        ExpSum::from_terms(&terms).expect("negation preserves distinctness")
    }

    pub fn scale(&self, s: Complex64) -> ExpSum {
        ExpSum {
            exps: self.exps.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel_err(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn eval_examples() {
        let one = ExpSum::new(ExponentSet::from_reals(&[0.0]).unwrap(), vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(one.eval_real(7.0), c(1.0, 0.0));

        let half_i = c(0.0, 2.0).inv();
        let sine = ExpSum::from_terms(&[(c(0.0, 10.0), half_i), (c(0.0, -10.0), -half_i)]).unwrap();
        let v = sine.eval_real(PI / 20.0);
        assert!((v - c(1.0, 0.0)).norm() < 1e-14);

        let f = ExpSum::new(
            ExponentSet::from_reals(&[1.0, 2.0]).unwrap(),
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        assert!((f.eval_real(1.0).re - (E + E * E)).abs() < 1e-13);
        assert!((f.eval_real(1.0).re - 10.107337927389695).abs() < 1e-12);
    }

    #[test]
    fn differentiate_examples() {
        let f = ExpSum::new(ExponentSet::from_frequencies(&[5.0]).unwrap(), vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(f.differentiate().coeffs(), &[c(0.0, 5.0)]);

        let konst = ExpSum::new(ExponentSet::from_reals(&[0.0]).unwrap(), vec![c(3.0, 0.0)]).unwrap();
        assert!(konst.differentiate().is_zero());

        // central difference oracle
        let f = ExpSum::new(
            ExponentSet::from_frequencies(&[1.0, 2.0]).unwrap(),
            vec![c(1.0, 0.0), c(2.0, 0.0)],
        )
        .unwrap();
        let h = 1e-5;
        let fd = (f.eval_real(0.3 + h) - f.eval_real(0.3 - h)) / (2.0 * h);
        assert!(rel_err(fd, f.differentiate().eval_real(0.3)) < 1e-6);
    }

    #[test]
    fn substitute_examples() {
        let lam = c(0.0, 1.5);
        let n = 3.0;
        let f = ExpSum::from_terms(&[(lam, c(1.0, 0.0))]).unwrap();
        let g = f.substitute_linear(9.0 * n, 0.0).unwrap();
        assert_eq!(g.exps().as_slice(), &[lam * 27.0]);
        assert_eq!(g.coeffs(), &[c(1.0, 0.0)]);

        let f = ExpSum::from_terms(&[(c(1.0, 0.0), c(1.0, 0.0))]).unwrap();
        let g = f.substitute_linear(1.0, 1.0).unwrap();
        assert!((g.coeffs()[0] - c(E, 0.0)).norm() < 1e-15);

        let f = ExpSum::new(
            ExponentSet::from_frequencies(&[1.0, 3.0]).unwrap(),
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        let g = f.substitute_linear(2.0, 1.0).unwrap();
        assert!(rel_err(g.eval_real(0.25), f.eval_real(1.5)) < 1e-14);

        assert!(f.substitute_linear(0.0, 1.0).is_err());
    }

    #[test]
    fn reflect_examples() {
        let f = ExpSum::from_terms(&[(c(0.0, 1.0), c(1.0, 0.0))]).unwrap();
        assert_eq!(f.reflect().exps().as_slice(), &[c(0.0, -1.0)]);

        let f = ExpSum::new(
            ExponentSet::from_frequencies(&[1.0, 2.0]).unwrap(),
            vec![c(1.0, 0.0), c(0.0, 1.0)],
        )
        .unwrap();
        let g = f.reflect();
        assert!(g.class().trigonometric);
        assert_eq!(g.coeffs(), &[c(0.0, 1.0), c(1.0, 0.0)]);
        assert!(rel_err(g.eval_real(0.4), f.eval_real(-0.4)) < 1e-14);
        assert_eq!(g.reflect(), f);
    }
}
