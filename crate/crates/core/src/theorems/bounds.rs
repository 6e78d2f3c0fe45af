//! Right-hand constants of the inequalities in ratio form.

use std::f64::consts::{E, LN_2, PI};

use super::sigma::sigma_closed;
use super::{need, Extras, TheoremId};
use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::extremal::{markov_bound_closed, MarkovVariant};

/// `(1 + ε_n)² = 1 + 8190 e^{-n/10}`.
pub fn one_plus_eps_sq(n: usize) -> f64 {
    1.0 + 8190.0 * (-(n as f64) / 10.0).exp()
}

/// `(8 + ε_n)^{1/2} = 8^{1/2} (1 + 2e^{-2n})^{1/2}`.
pub fn eight_plus_eps_sqrt(n: usize) -> f64 {
    8f64.sqrt() * (1.0 + 2.0 * (-2.0 * n as f64).exp()).sqrt()
}

/// `c_q = ((q-2)/(2q))^{(q-2)/(2q)}` for `q > 2`.
pub fn c_q(q: f64) -> f64 {
    let r = (q - 2.0) / (2.0 * q);
    r.powf(r)
}

/// `((n-2) log 2 / (32 d))^{1/2}`, zero for `n <= 2`.
pub fn t7_1_lower(n: usize, d: f64) -> f64 {
    (((n as f64 - 2.0).max(0.0)) * LN_2 / (32.0 * d)).sqrt()
}

/// `(1 + ε_n)(27 n^5 + Σ λ_k²)^{1/2}`, the pointwise companion of the Markov bound.
pub fn t9_1_point(n: usize, exps: &ExponentSet) -> f64 {
    let s: f64 = exps.iter().map(|z| z.im * z.im).sum();
    one_plus_eps_sq(n).sqrt() * (27.0 * (n as f64).powi(5) + s).sqrt()
}

fn freqs(exps: Option<&ExponentSet>) -> Result<Vec<f64>> {
    let e = exps.ok_or_else(|| Error::Argument("bound needs the exponent set".into()))?;
    Ok(e.iter().map(|z| z.im).collect())
}

fn window(extras: &Extras) -> Result<f64> {
    let y = need(extras.y, "y")?;
    let a = need(extras.a, "a")?;
    let b = need(extras.b, "b")?;
    if !(a < y && y < b) {
        return Err(Error::Argument(format!("need a < y < b, got a={a}, y={y}, b={b}")));
    }
    Ok((y - a).min(b - y))
}

fn markov(variant: MarkovVariant, exps: Option<&ExponentSet>) -> Result<f64> {
    let e = exps.ok_or_else(|| Error::Argument("bound needs the exponent set".into()))?;
    markov_bound_closed(variant, e.as_slice())
}

/// The printed right-hand constant of `id` for dimension `n`.
pub fn rhs_bound(id: TheoremId, n: usize, exps: Option<&ExponentSet>, extras: &Extras) -> Result<f64> {
    use TheoremId::*;
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let nf = n as f64;
    let half_pi_n = PI * nf / 2.0;
    match id {
        T2_1 => Ok(eight_plus_eps_sqrt(n) * nf),
        T2_2 => {
            let gamma = need(extras.gamma, "gamma")?;
            let gamma0 = 2.0 + 4f64.ln();
            if !(gamma > gamma0 && gamma <= 4.0) {
                return Err(Error::Argument(format!("gamma must lie in (2 + log 4, 4], got {gamma}")));
            }
            let delta = (gamma - gamma0) / 8.0;
            Ok(gamma.sqrt() * (1.0 + (-delta * gamma * nf).exp() / (delta * delta)).sqrt() * nf)
        }
        T2_3 => Ok(half_pi_n),
        T2_4 => {
            let q = need(extras.q, "q")?;
            if !(q > 0.0 && q <= 2.0) {
                return Err(Error::Argument(format!("q must lie in (0, 2], got {q}")));
            }
            Ok(half_pi_n.powf(2.0 / q))
        }
        T2_5 => {
            let q = need(extras.q, "q")?;
            let p = need(extras.p, "p")?;
            if !(q > 0.0 && q < p && q <= 2.0) {
                return Err(Error::Argument(format!("need 0 < q < p, q <= 2, got q={q}, p={p}")));
            }
            Ok(half_pi_n.powf(2.0 / q - 2.0 / p))
        }
        T2_6 => Ok(nf),
        T2_7 | T7_2 => Err(Error::Argument(format!(
            "{id} has an unspecified absolute constant; it is checked as a growth trend"
        ))),
        T2_9 | T2_10 => {
            let q = need(extras.q, "q")?;
            if !(q > 2.0 && q.is_finite()) {
                return Err(Error::Argument(format!("q must lie in (2, ∞), got {q}")));
            }
            Ok(eight_plus_eps_sqrt(n) * c_q(q) * nf.powf(0.5 + 1.0 / q))
        }
        T3_1 => Ok(one_plus_eps_sq(n)),
        T3_2 => Ok(one_plus_eps_sq(n).sqrt() * 3.0 * nf),
        T4_1 => Ok(nf),
        T5_1 | T5_2 => {
            let lam = freqs(exps)?;
            let (wl, wk) = if id == T5_1 { (1.0, 1.0) } else { (2.0, 8.0) };
            let s: f64 = lam
                .iter()
                .enumerate()
                .map(|(k, l)| {
                    let r = l / (9.0 * nf);
                    wl * r * r + wk * (k as f64) * (k as f64)
                })
                .sum();
            let c = if extras.proof_constant { 729.0 } else { 27.0 };
            Ok(c * one_plus_eps_sq(n).sqrt() * nf.powf(1.5) * s.sqrt())
        }
        T5_3 | T6_1 => Ok(nf.powi(3) / 3f64.sqrt()),
        T7_1 => Ok((2.0 * nf / window(extras)?).sqrt()),
        T8_1 => {
            let lambda = match (extras.lambda, exps) {
                (Some(l), _) => l,
                (None, Some(e)) => e.max_abs(),
                (None, None) => return Err(Error::Argument("missing parameter lambda".into())),
            };
            Ok(lambda + 2.0 * E * (nf + 1.0))
        }
        T9_1 => {
            let s: f64 = freqs(exps)?.iter().map(|l| l * l).sum();
            Ok(one_plus_eps_sq(n).sqrt() * (108.0 * nf.powi(5) + s).sqrt())
        }
        T9_2 => Ok(2.0 * (nf - 1.0) * (nf - 1.0)),
        T10_1 => markov(MarkovVariant::LaguerreComplex, exps),
        T10_2 => markov(MarkovVariant::LaguerreImaginary, exps),
        T11_1 => markov(MarkovVariant::HalfLine, exps),
        L12_1 => {
            let alpha = need(extras.alpha, "alpha")?;
            let beta = need(extras.beta, "beta")?;
            if !(alpha > 0.0 && beta > 0.0) {
                return Err(Error::Argument("alpha and beta must be positive".into()));
            }
            Ok((2.0 * E * (alpha + beta) / beta).powi(n as i32))
        }
        L12_5 => {
            let delta = need(extras.delta, "delta")?;
            if !(delta > 0.0) {
                return Err(Error::Argument("delta must be positive".into()));
            }
            Ok((nf / delta).sqrt())
        }
        SIGMA_K => sigma_closed(extras.k.unwrap_or(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let none = Extras::default();
        let v = rhs_bound(TheoremId::T2_3, 4, None, &none).unwrap();
        assert!((v - 2.0 * PI).abs() < 1e-15 && (v - 6.283185).abs() < 1e-6);
        let v = rhs_bound(TheoremId::T3_1, 50, None, &none).unwrap();
        assert!((v - (1.0 + 8190.0 * (-5f64).exp())).abs() < 1e-12 && (v - 56.18379).abs() < 1e-5);
        let e = ExponentSet::from_frequencies(&[-2.0, 0.0, 2.0]).unwrap();
        let v = rhs_bound(TheoremId::T10_2, 3, Some(&e), &none).unwrap();
        assert!((v - (2.0 + 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn formulas() {
        let none = Extras::default();
        let q1 = Extras { q: Some(1.0), ..Extras::default() };
        assert!((rhs_bound(TheoremId::T2_4, 1, None, &q1).unwrap() - (PI / 2.0).powi(2)).abs() < 1e-15);
        assert!((rhs_bound(TheoremId::T2_1, 1, None, &none).unwrap() - (8.0 * (1.0 + 2.0 * (-2f64).exp())).sqrt()).abs() < 1e-15);
        let q = Extras { q: Some(2.0), p: Some(f64::INFINITY), ..Extras::default() };
        assert!((rhs_bound(TheoremId::T2_5, 3, None, &q).unwrap() - 1.5 * PI).abs() < 1e-14);
        // c_q → 1 as q → 2 and c_4 = (1/4)^{1/4}
        assert!((c_q(4.0) - 0.25f64.powf(0.25)).abs() < 1e-15);
        assert!((c_q(2.0 + 1e-12) - 1.0).abs() < 1e-9);
        let sin = ExponentSet::from_frequencies(&[-10.0, 10.0]).unwrap();
        let v = rhs_bound(TheoremId::T8_1, 2, Some(&sin), &none).unwrap();
        assert!((v - (10.0 + 6.0 * E)).abs() < 1e-12 && (v - 26.31).abs() < 0.01);
        let ab = Extras { alpha: Some(1.0), beta: Some(1.0), ..Extras::default() };
        assert!((rhs_bound(TheoremId::L12_1, 1, None, &ab).unwrap() - 4.0 * E).abs() < 1e-14);
        let w = Extras { y: Some(0.5), a: Some(0.0), b: Some(1.0), ..Extras::default() };
        assert!((rhs_bound(TheoremId::T7_1, 4, None, &w).unwrap() - 4.0).abs() < 1e-15);
        assert!((t7_1_lower(10, 0.5) - (8.0 * LN_2 / 16.0).sqrt()).abs() < 1e-15);
        assert!((rhs_bound(TheoremId::SIGMA_K, 1, None, &none).unwrap() - 2.0).abs() < 1e-14);
        let lam = ExponentSet::from_frequencies(&[1.0, 2.0]).unwrap();
        let v = rhs_bound(TheoremId::T5_1, 2, Some(&lam), &none).unwrap();
        let s = (1.0f64 / 18.0).powi(2) + (2.0f64 / 18.0).powi(2) + 1.0;
        assert!((v - 27.0 * one_plus_eps_sq(2).sqrt() * 2f64.powf(1.5) * s.sqrt()).abs() < 1e-10);
        let proof = Extras { proof_constant: true, ..Extras::default() };
        assert!((rhs_bound(TheoremId::T5_1, 2, Some(&lam), &proof).unwrap() / v - 27.0).abs() < 1e-12);
    }

    #[test]
    fn missing_extras_are_argument_errors() {
        let none = Extras::default();
        for id in [TheoremId::T2_4, TheoremId::T2_5, TheoremId::T2_9, TheoremId::L12_1, TheoremId::L12_5, TheoremId::T7_1, TheoremId::T2_2] {
            assert!(matches!(rhs_bound(id, 3, None, &none), Err(Error::Argument(_))), "{id}");
        }
        assert!(rhs_bound(TheoremId::T5_1, 3, None, &none).is_err());
        assert!(rhs_bound(TheoremId::T2_7, 3, None, &none).is_err());
        let g = Extras { gamma: Some(3.9), ..Extras::default() };
        assert!(rhs_bound(TheoremId::T2_2, 3, None, &g).unwrap() > 3.9f64.sqrt() * 3.0);
    }
}
