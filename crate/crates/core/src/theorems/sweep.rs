//! Grids of checks over several dimensions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::exact::{check_exact, ExactInput};
use super::random::{check_sample, class_region, rng_for, sample_exponents, RandomModel};
use super::{or_inconclusive, CheckReport, Extras, Status, TheoremId};
use crate::error::{Error, Result};
use crate::exponents::ExponentSet;

/// The input of the single default configuration at dimension `n`.
pub fn default_input(id: TheoremId, n: usize) -> Result<ExactInput> {
    use TheoremId::*;
    let k: Vec<f64> = (0..n).map(|k| k as f64).collect();
    Ok(match id {
        T2_6 | T4_1 => ExactInput::PolynomialLimit(n),
        T3_1 => ExactInput::Exponents(ExponentSet::from_reals(&k.iter().map(|x| -x).collect::<Vec<_>>())?),
        T11_1 => ExactInput::Exponents(ExponentSet::from_reals(&k.iter().map(|x| -x - 1.0).collect::<Vec<_>>())?),
        T10_1 => ExactInput::Exponents(ExponentSet::new(
            k.iter().map(|x| Complex64::new(-x, *x)).collect(),
        )?),
        // spacing π keeps the Gram matrix well conditioned up to n of a few dozen
        _ => ExactInput::Exponents(ExponentSet::from_frequencies(&k.iter().map(|x| PI * x).collect::<Vec<_>>())?),
    })
}

fn exact_sample(id: TheoremId, model: &RandomModel, extras: &Extras, index: usize) -> Result<CheckReport> {
    let seed = model.sample_seed(index);
    let input = if id == TheoremId::T2_6 {
        // the lower bound is attained only in the limit, so random sets carry no information
        ExactInput::PolynomialLimit(model.n)
    } else {
        let mut rng = rng_for(seed);
        ExactInput::Exponents(sample_exponents(&mut rng, class_region(id, model), model.n, model.min_gap)?)
    };
    check_exact(id, &input, extras, seed)
}

/// Reports of `id` over `n_list`, ordered by `n` then sample index.
///
/// Randomized theorems draw `samples` instances per `n`. Exact theorems draw
/// `samples` random sets of their class, or run one default configuration
/// when `samples` is zero.
pub fn sweep(id: TheoremId, n_list: &[usize], model: &RandomModel, samples: usize, extras: &Extras) -> Result<Vec<CheckReport>> {
    if !(id.is_exact() || id.is_random()) {
        return Err(Error::Argument(format!("{id} is not checked by sweeps")));
    }
    if n_list.contains(&0) {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    if samples == 0 && !id.is_exact() {
        return Err(Error::Argument(format!("{id} needs samples >= 1")));
    }
    let cells: Vec<(usize, usize)> = n_list
        .iter()
        .flat_map(|&n| (0..samples.max(1)).map(move |i| (n, i)))
        .collect();
    cells
        .into_par_iter()
        .map(|(n, i)| {
            let m = model.with_n(n);
            let seed = m.sample_seed(i);
            let r = if samples == 0 {
                default_input(id, n).and_then(|input| check_exact(id, &input, extras, seed))
            } else if id.is_random() {
                check_sample(id, n, seed, &m, extras, i)
            } else {
                exact_sample(id, &m, extras, i)
            };
            // per-cell failures become inconclusive cells
            match or_inconclusive(id, n, seed, r) {
                Err(e) if !matches!(e, Error::Argument(_) | Error::WrongClass { .. }) => {
                    Ok(CheckReport::inconclusive(id, n, seed, &e))
                }
                other => other,
            }
        })
        .collect()
}

/// Aggregate of the rows of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub n: usize,
    pub rows: usize,
    pub min_margin: f64,
    pub violated: usize,
    pub inconclusive: usize,
}

/// Per-`n` minimum margins and status counts, in order of first appearance.
pub fn summarize(reports: &[CheckReport]) -> Vec<SweepSummary> {
    let mut out: Vec<SweepSummary> = Vec::new();
    for r in reports {
        let s = match out.iter_mut().find(|s| s.n == r.n) {
            Some(s) => s,
            None => {
                out.push(SweepSummary {
                    n: r.n,
                    rows: 0,
                    min_margin: f64::INFINITY,
                    violated: 0,
                    inconclusive: 0,
                });
                out.last_mut().expect("just pushed")
            }
        };
        s.rows += 1;
        match r.status {
            Status::Holds | Status::Violated => s.min_margin = s.min_margin.min(r.margin),
            Status::Inconclusive => s.inconclusive += 1,
        }
        if r.status == Status::Violated {
            s.violated += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_hold(rows: &[CheckReport]) -> bool {
        rows.iter().all(|r| r.status == Status::Holds)
    }

    #[test]
    fn truncation_sweep_holds() {
        let rows = sweep(TheoremId::T3_1, &[1, 2, 3, 4, 5, 6], &RandomModel::new(1, 42), 20, &Extras::default()).unwrap();
        assert_eq!(rows.len(), 120);
        assert!(all_hold(&rows));
        let ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
        assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn markov_sweep_holds_with_positive_margin() {
        let rows = sweep(TheoremId::T10_2, &(2..=8).collect::<Vec<_>>(), &RandomModel::new(1, 42), 50, &Extras::default()).unwrap();
        let checked: Vec<_> = rows.iter().filter(|r| r.status != Status::Inconclusive).collect();
        assert!(checked.len() >= 340);
        assert!(checked.iter().all(|r| r.status == Status::Holds && r.margin > 0.0));
    }

    #[test]
    fn envelope_sweep_default_configuration() {
        let rows = sweep(TheoremId::T2_3, &(2..=8).collect::<Vec<_>>(), &RandomModel::new(1, 42), 0, &Extras::default()).unwrap();
        assert_eq!(rows.len(), 7);
        assert!(all_hold(&rows));
    }

    #[test]
    fn sweeps_are_deterministic_and_summarized() {
        let m = RandomModel::new(1, 9);
        let ex = Extras { q: Some(1.0), ..Extras::default() };
        let a = sweep(TheoremId::T2_4, &[2, 3], &m, 5, &ex).unwrap();
        let b = sweep(TheoremId::T2_4, &[2, 3], &m, 5, &ex).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((x.seed, x.lhs.to_bits(), x.status), (y.seed, y.lhs.to_bits(), y.status));
        }
        let s = summarize(&a);
        assert_eq!(s.iter().map(|s| (s.n, s.rows)).collect::<Vec<_>>(), vec![(2, 5), (3, 5)]);
        let want = a.iter().filter(|r| r.n == 2).map(|r| r.margin).fold(f64::INFINITY, f64::min);
        assert_eq!(s[0].min_margin, want);
    }

    #[test]
    fn rejects_trend_only_ids() {
        assert!(sweep(TheoremId::T2_7, &[2], &RandomModel::new(2, 1), 3, &Extras::default()).is_err());
        assert!(sweep(TheoremId::T2_1, &[2], &RandomModel::new(2, 1), 0, &Extras::default()).is_err());
    }
}
