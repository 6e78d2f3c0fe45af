//! Randomized checks of inequalities with sampled exponents and coefficients.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::bounds::rhs_bound;
use super::{or_inconclusive, CheckReport, Extras, TheoremId, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::extremal::{christoffel_sup, gram, Basis, Functional};
use crate::norm::NormSpec;
use crate::quad::{lq_norm, sup_norm, QuadConfig};
use crate::sum::ExpSum;

/// Sampling model of exponent sets and coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomModel {
    pub n: usize,
    /// Imaginary parts are drawn from `[-R, R]`; default `5n`.
    pub imag_range: Option<f64>,
    /// Real parts are drawn from ranges of width at most this; default `n`.
    pub real_range: Option<f64>,
    pub min_gap: f64,
    pub seed: u64,
}

impl RandomModel {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            imag_range: None,
            real_range: None,
            min_gap: 1e-2,
            seed,
        }
    }

    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..self.clone() }
    }

    pub fn imag_range(&self) -> f64 {
        self.imag_range.unwrap_or(5.0 * self.n as f64)
    }

    pub fn real_range(&self) -> f64 {
        self.real_range.unwrap_or(self.n as f64)
    }

    /// Seed of sample `index`, stored in the report so the sample can be replayed.
    pub fn sample_seed(&self, index: usize) -> u64 {
        derive_seed(self.seed, self.n, index)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Independent stream seed for `(seed, n, index)`.
pub fn derive_seed(seed: u64, n: usize, index: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ n as u64) ^ index as u64)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rectangle of the complex plane that exponents are drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

/// `n` exponents uniform in `region` with pairwise distances at least `min_gap`.
pub fn sample_exponents(rng: &mut ChaCha8Rng, region: Region, n: usize, min_gap: f64) -> Result<ExponentSet> {
    let mut out: Vec<Complex64> = Vec::with_capacity(n);
    let mut tries = 0usize;
    while out.len() < n {
        tries += 1;
        if tries > 10_000 * n {
            return Err(Error::Argument(format!(
                "cannot place {n} exponents with gap {min_gap} in {region:?}"
            )));
        }
        let z = Complex64::new(uniform(rng, region.re), uniform(rng, region.im));
        if out.iter().all(|w| (w - z).norm() >= min_gap) {
            out.push(z);
        }
    }
    ExponentSet::new(out)
}

/// Complex standard normal coefficients, `E|a|² = 1`.
pub fn complex_normal(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * s, im * s)
        })
        .collect()
}

/// Exponent region of the class a theorem is stated for.
pub fn class_region(id: TheoremId, model: &RandomModel) -> Region {
    use TheoremId::*;
    let r = model.imag_range();
    let rr = model.real_range();
    match id {
        T3_1 => Region { re: (-rr, 0.0), im: (-r, r) },
        T10_1 => Region { re: (-rr, 0.45), im: (-r, r) },
        T11_1 => Region { re: (-rr, -0.05), im: (-r, r) },
        T4_1 | T6_1 => Region { re: (0.0, rr), im: (0.0, 0.0) },
        L12_1 => Region { re: (0.0, rr), im: (-r, r) },
        L12_5 | T7_1 => Region { re: (-rr, rr), im: (-r, r) },
        _ => Region { re: (0.0, 0.0), im: (-r, r) },
    }
}

/// Quadrature tolerance of sampled norms: two orders below the check tolerance,
/// which still converges for `|f|^q` with `q < 1` near a zero of `f`.
pub const SAMPLE_QUAD_TOL: f64 = 1e-8;

/// One random sample of `id`, replayable from `seed`.
pub fn check_sample(id: TheoremId, n: usize, seed: u64, model: &RandomModel, extras: &Extras, index: usize) -> Result<CheckReport> {
    let r = sample_inner(id, n, seed, model, extras, index);
    or_inconclusive(id, n, seed, r)
}

fn sample_inner(id: TheoremId, n: usize, seed: u64, model: &RandomModel, extras: &Extras, index: usize) -> Result<CheckReport> {
    use TheoremId::*;
    let cfg = QuadConfig {
        rel_tol: SAMPLE_QUAD_TOL,
        ..QuadConfig::default()
    };
    let mut rng = rng_for(seed);
    let exps = sample_exponents(&mut rng, class_region(id, model), n, model.min_gap)?;
    let nf = n as f64;

    // parameters drawn after the exponents so the exponent stream does not depend on them
    let mut ex = extras.clone();
    match id {
        T2_4 => {
            ex.q.get_or_insert_with(|| rng.random_range(0.5..=2.0));
        }
        T2_5 => {
            let q = *ex.q.get_or_insert_with(|| rng.random_range(0.5..=2.0));
            ex.p.get_or_insert_with(|| {
                if rng.random_bool(0.25) {
                    f64::INFINITY
                } else {
                    q + rng.random_range(0.1..6.0)
                }
            });
        }
        T2_9 | T2_10 => {
            ex.q.get_or_insert_with(|| rng.random_range(2.1..=8.0));
        }
        L12_1 => {
            ex.alpha.get_or_insert_with(|| rng.random_range(0.1..=2.0));
            ex.beta.get_or_insert_with(|| rng.random_range(0.1..=2.0));
        }
        L12_5 => {
            ex.y.get_or_insert_with(|| rng.random_range(-1.0..=1.0));
            ex.delta.get_or_insert_with(|| rng.random_range(0.1..=1.0));
        }
        _ => {}
    }
    let random_coeffs = complex_normal(&mut rng, n);

    // the L_2 extremal problem closest to each inequality supplies the odd samples' coefficients
    let (kernel_spec, functional) = match id {
        T2_1 | T2_9 => (NormSpec::interval(0.0, 1.0, nf, 2.0)?, Functional::point(0.0)),
        T3_2 => (NormSpec::interval(0.0, 1.0, 4.5 * nf, 2.0)?, Functional::point(0.0)),
        T5_1 => (NormSpec::interval(0.0, 1.0, 4.5 * nf, 2.0)?, Functional::deriv(0.0)),
        T5_2 | T9_1 => (NormSpec::l2(0.0, 1.0)?, Functional::deriv(0.0)),
        T8_1 => (NormSpec::l2(-1.0, 1.0)?, Functional::deriv(0.0)),
        L12_1 => {
            let a = ex.alpha.expect("drawn above");
            (NormSpec::l2(a, a + ex.beta.expect("drawn above"))?, Functional::point(0.0))
        }
        L12_5 => {
            let (y, d) = (ex.y.expect("drawn above"), ex.delta.expect("drawn above"));
            (NormSpec::l2(y - d, y + d)?, Functional::point(y))
        }
        _ => (NormSpec::l2(0.0, 1.0)?, Functional::point(0.0)),
    };
    let coeffs = if index % 2 == 1 {
        gram(&exps, &kernel_spec)
            .and_then(|g| christoffel_sup(&g, &Basis::Exponential(exps.clone()), functional))
            .map(|r| r.witness)
            .unwrap_or(random_coeffs)
    } else {
        random_coeffs
    };
    let f = ExpSum::new(exps.clone(), coeffs)?;
    let df = f.differentiate();
    let lq = |g: &ExpSum, c: f64, q: f64| -> Result<f64> {
        lq_norm(g, &NormSpec::interval(0.0, 1.0, c, q)?, &cfg)
    };
    let sup01 = |g: &ExpSum| sup_norm(g, 0.0, 1.0, &cfg).0;

    let lhs = match id {
        T2_1 => f.eval_real(0.0).norm() / lq(&f, nf, 2.0)?,
        T2_4 => sup01(&f) / lq(&f, 0.0, ex.q.expect("drawn above"))?,
        T2_5 => {
            let p = ex.p.expect("drawn above");
            let top = if p.is_infinite() { sup01(&f) } else { lq(&f, 0.0, p)? };
            top / lq(&f, 0.0, ex.q.expect("drawn above"))?
        }
        T2_9 => f.eval_real(0.0).norm() / lq(&f, nf, ex.q.expect("drawn above"))?,
        T2_10 => sup01(&f) / lq(&f, 0.0, ex.q.expect("drawn above"))?,
        T3_2 => f.eval_real(0.0).norm() / lq(&f, 4.5 * nf, 2.0)?,
        T5_1 => df.eval_real(0.0).norm() / lq(&f, 4.5 * nf, 2.0)?,
        T5_2 => sup01(&df) / lq(&f, 0.0, 2.0)?,
        T8_1 => df.eval_real(0.0).norm() / sup_norm(&f, -1.0, 1.0, &cfg).0,
        T9_1 => sup01(&df) / sup01(&f),
        L12_1 => {
            let a = ex.alpha.expect("drawn above");
            f.eval_real(0.0).norm() / sup_norm(&f, a, a + ex.beta.expect("drawn above"), &cfg).0
        }
        L12_5 => {
            let (y, d) = (ex.y.expect("drawn above"), ex.delta.expect("drawn above"));
            f.eval_real(y).norm() / lq_norm(&f, &NormSpec::l2(y - d, y + d)?, &cfg)?
        }
        _ => {
            return Err(Error::Argument(format!("{id} has no randomized check")));
        }
    };
    let rhs = rhs_bound(id, n, Some(&exps), &ex)?;
    let report = CheckReport::upper(id, n, seed, lhs, rhs, DEFAULT_TOL);
    let witness = (report.status != super::Status::Holds).then_some(f);
    Ok(report.with_witness(witness))
}

/// `samples` random checks of `id` at dimension `model.n`, in sample order.
pub fn check_random(id: TheoremId, model: &RandomModel, samples: usize, extras: &Extras) -> Result<Vec<CheckReport>> {
    if !id.is_random() {
        return Err(Error::Argument(format!("{id} has no randomized check")));
    }
    if samples == 0 {
        return Err(Error::Argument("samples must be at least 1".into()));
    }
    if model.n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    (0..samples)
        .into_par_iter()
        .map(|i| check_sample(id, model.n, model.sample_seed(i), model, extras, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::Status;

    #[test]
    fn seeds_are_stable_and_distinct() {
        let m = RandomModel::new(5, 42);
        assert_eq!(m.sample_seed(3), RandomModel::new(5, 42).sample_seed(3));
        assert_ne!(m.sample_seed(3), m.sample_seed(4));
        assert_ne!(m.sample_seed(3), m.with_n(6).sample_seed(3));
    }

    #[test]
    fn trig_samples_are_sorted_and_spaced() {
        let m = RandomModel::new(10, 1);
        let mut rng = rng_for(9);
        for _ in 0..20 {
            let e = sample_exponents(&mut rng, class_region(TheoremId::T2_3, &m), 10, m.min_gap).unwrap();
            assert!(e.classify().trigonometric);
            for w in e.as_slice().windows(2) {
                assert!(w[1].im - w[0].im >= m.min_gap);
                assert!(w[0].im.abs() <= 50.0);
            }
        }
    }

    #[test]
    fn sine_example() {
        // f = sin(10t): |f'(0)| = 10 and the sup over [-1, 1] is 1
        let half_i = Complex64::new(0.0, 2.0).inv();
        let f = ExpSum::from_terms(&[(Complex64::new(0.0, 10.0), half_i), (Complex64::new(0.0, -10.0), -half_i)]).unwrap();
        let cfg = QuadConfig::default();
        let lhs = f.differentiate().eval_real(0.0).norm() / sup_norm(&f, -1.0, 1.0, &cfg).0;
        assert!((lhs - 10.0).abs() < 1e-9);
        let rhs = rhs_bound(TheoremId::T8_1, 2, Some(f.exps()), &Extras::default()).unwrap();
        assert_eq!(CheckReport::upper(TheoremId::T8_1, 2, 0, lhs, rhs, DEFAULT_TOL).status, Status::Holds);
    }

    #[test]
    fn runs_are_reproducible() {
        let m = RandomModel::new(3, 7);
        let a = check_random(TheoremId::T2_4, &m, 4, &Extras::default()).unwrap();
        let b = check_random(TheoremId::T2_4, &m, 4, &Extras::default()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.lhs.to_bits(), y.lhs.to_bits());
            assert_eq!(x.seed, y.seed);
        }
        // replay from the stored seed alone
        let again = check_sample(TheoremId::T2_4, 3, a[2].seed, &m, &Extras::default(), 2).unwrap();
        assert_eq!(again.lhs.to_bits(), a[2].lhs.to_bits());
    }

    #[test]
    fn unimodular_and_monotone_examples() {
        let cfg = QuadConfig::default();
        let f = ExpSum::new(ExponentSet::from_frequencies(&[3.0]).unwrap(), vec![Complex64::new(1.0, 0.0)]).unwrap();
        let lhs = sup_norm(&f, 0.0, 1.0, &cfg).0 / lq_norm(&f, &NormSpec::interval(0.0, 1.0, 0.0, 1.0).unwrap(), &cfg).unwrap();
        assert!((lhs - 1.0).abs() < 1e-12);
        let q = Extras { q: Some(1.0), ..Extras::default() };
        assert!((rhs_bound(TheoremId::T2_4, 1, None, &q).unwrap() - 2.4674011).abs() < 1e-6);

        let g = ExpSum::new(ExponentSet::from_reals(&[0.7]).unwrap(), vec![Complex64::new(1.0, 0.0)]).unwrap();
        let lhs = g.eval_real(0.0).norm() / sup_norm(&g, 1.0, 2.0, &cfg).0;
        // |g(0)| = 1 and the sup over [1, 2] is e^{2λ}
        assert!((lhs - (-1.4f64).exp()).abs() < 1e-12);
        let ab = Extras { alpha: Some(1.0), beta: Some(1.0), ..Extras::default() };
        assert!(lhs <= rhs_bound(TheoremId::L12_1, 1, None, &ab).unwrap());
    }
}
