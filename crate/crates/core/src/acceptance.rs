//! The acceptance suite: ten numbered criteria, each reduced to pass/fail
//! with a one-line detail.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::extremal::{
    christoffel_sup, gram, markov_bound_closed, markov_sup, monomial_gram, truncation_sup, Basis, Functional,
    KernelSolver, MarkovVariant,
};
use crate::norm::NormSpec;
use crate::theorems::bounds::one_plus_eps_sq;
use crate::theorems::random::{class_region, rng_for, sample_exponents, RandomModel, Region};
use crate::theorems::sigma::{sigma_closed, sigma_minimax, DEFAULT_GRID};
use crate::theorems::trend::trend;
use crate::theorems::{check_random, witness, Extras, Status, TheoremId};

/// Seed of every random draw in the suite.
pub const SUITE_SEED: u64 = 20_240_601;

/// Draws per accepted sample before a criterion gives up on resampling.
const MAX_DRAWS_PER_SAMPLE: usize = 20;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<36} {}  ({:.2}s) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.seconds,
            self.detail
        )
    }
}

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> (bool, String)) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = f();
    CriterionResult {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn powers(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::new(k as f64, 0.0)).collect()
}

/// Draws sets from `region` until `count` of them give a value, skipping
/// spans too ill-conditioned to decide.
fn conclusive_draws<T>(
    seed: u64,
    count: usize,
    mut draw: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> Result<Option<T>>,
) -> std::result::Result<(Vec<T>, usize), String> {
    let mut rng = rng_for(seed);
    let mut out = Vec::with_capacity(count);
    let mut skipped = 0;
    while out.len() < count {
        if skipped > MAX_DRAWS_PER_SAMPLE * count {
            return Err(format!("only {} of {count} draws were conclusive", out.len()));
        }
        match draw(&mut rng) {
            Ok(Some(v)) => out.push(v),
            Ok(None) => skipped += 1,
            Err(e) if e.is_numerical() => skipped += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok((out, skipped))
}

pub fn criterion_1() -> CriterionResult {
    timed(1, "kernel at y=1 equals n", || {
        let mut worst: f64 = 0.0;
        for n in 1..=8 {
            let p = powers(n);
            let r = monomial_gram(&p)
                .and_then(|h| christoffel_sup(&h, &Basis::Monomial(p), Functional::point(1.0)));
            match r {
                Ok(r) => worst = worst.max(rel(r.value, n as f64)),
                Err(e) => return (false, format!("n={n}: {e}")),
            }
        }
        (worst <= 1e-7, format!("max rel err {worst:.2e}"))
    })
}

pub fn criterion_2() -> CriterionResult {
    timed(2, "derivative triple agreement", || {
        let mut worst: f64 = 0.0;
        let mut n3 = f64::NAN;
        for n in 1..=6 {
            let w = match witness(TheoremId::T5_3, n, &Extras::default()) {
                Ok(w) => w,
                Err(e) => return (false, format!("n={n}: {e}")),
            };
            let k = w.detail("kernel").unwrap_or(f64::NAN);
            let s = w.detail("closed_sum").unwrap_or(f64::NAN);
            let l = w.detail("legendre_sum").unwrap_or(f64::NAN);
            worst = worst.max(rel(k, s)).max(rel(k, l)).max(rel(s, l));
            if n == 3 {
                n3 = k;
            }
        }
        let ok = worst <= 1e-6 && (n3 - 13.856406).abs() < 1e-6;
        (ok, format!("max pairwise rel err {worst:.2e}, n=3 value {n3:.6}"))
    })
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "truncation worst case", || {
        let scalar = ExponentSet::from_reals(&[0.0]).and_then(|e| truncation_sup(&e, 9.0));
        let want = 1.0 / (1.0 - (-9f64).exp());
        let scalar_err = match scalar {
            Ok(v) => (v - want).abs(),
            Err(e) => return (false, format!("scalar case: {e}")),
        };
        let mut worst = f64::INFINITY;
        let mut skipped_total = 0;
        for n in 1..=6 {
            let model = RandomModel::new(n, SUITE_SEED);
            let region = class_region(TheoremId::T3_1, &model);
            let t = 9.0 * n as f64;
            let bound = one_plus_eps_sq(n);
            let draws = conclusive_draws(SUITE_SEED ^ n as u64, 50, |rng| {
                let e = sample_exponents(rng, region, n, model.min_gap)?;
                Ok(Some(truncation_sup(&e, t)?))
            });
            match draws {
                Ok((vals, skipped)) => {
                    skipped_total += skipped;
                    for v in vals {
                        worst = worst.min(bound - v);
                    }
                }
                Err(e) => return (false, format!("n={n}: {e}")),
            }
        }
        let ok = worst >= 0.0 && scalar_err <= 1e-10;
        (ok, format!("min margin {worst:.3e}, scalar err {scalar_err:.1e}, redrawn {skipped_total}"))
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "envelope πn/2 on 33 points", || {
        let mut worst = f64::INFINITY;
        let mut skipped_total = 0;
        for n in 2..=10 {
            let model = RandomModel::new(n, SUITE_SEED);
            let region = class_region(TheoremId::T2_3, &model);
            let bound = PI * n as f64 / 2.0 * (1.0 + 1e-9);
            let draws = conclusive_draws(SUITE_SEED ^ (n as u64) << 8, 50, |rng| {
                let e = sample_exponents(rng, region, n, model.min_gap)?;
                let basis = Basis::Exponential(e.clone());
                let solver = KernelSolver::new(&gram(&e, &NormSpec::l2(0.0, 1.0)?)?)?;
                let mut best: f64 = 0.0;
                for i in 0..33 {
                    best = best.max(solver.sup(&basis, Functional::point(i as f64 / 32.0))?.value);
                }
                Ok(Some(best))
            });
            match draws {
                Ok((vals, skipped)) => {
                    skipped_total += skipped;
                    for v in vals {
                        worst = worst.min(bound - v);
                    }
                }
                Err(e) => return (false, format!("n={n}: {e}")),
            }
        }
        (worst >= 0.0, format!("min margin {worst:.3e}, redrawn {skipped_total}"))
    })
}

pub fn criterion_5() -> CriterionResult {
    timed(5, "Markov dominance T10_1/T10_2/T11_1", || {
        let cases = [
            (MarkovVariant::LaguerreComplex, TheoremId::T10_1, NormSpec::laguerre()),
            (MarkovVariant::LaguerreImaginary, TheoremId::T10_2, NormSpec::laguerre()),
            (MarkovVariant::HalfLine, TheoremId::T11_1, NormSpec::half_line(0.0)),
        ];
        let mut worst = f64::INFINITY;
        let mut skipped_total = 0;
        for (vi, (variant, id, spec)) in cases.iter().enumerate() {
            let mut index = 0usize;
            let draws = conclusive_draws(SUITE_SEED + vi as u64, 50, |rng| {
                let n = 1 + index % 8;
                index += 1;
                let model = RandomModel::new(n, SUITE_SEED);
                let e = sample_exponents(rng, class_region(*id, &model), n, model.min_gap)?;
                let lhs = markov_sup(&e, spec)?.value;
                let rhs = markov_bound_closed(*variant, e.as_slice())?;
                Ok(Some(rhs * (1.0 + 1e-9) - lhs))
            });
            match draws {
                Ok((vals, skipped)) => {
                    skipped_total += skipped;
                    worst = vals.into_iter().fold(worst, f64::min);
                }
                Err(e) => return (false, format!("{variant:?}: {e}")),
            }
        }
        let single = ExponentSet::from_frequencies(&[-3.7])
            .and_then(|e| markov_sup(&e, &NormSpec::laguerre()))
            .map(|r| (r.value - 3.7).abs());
        match single {
            Ok(err) => (
                worst >= 0.0 && err <= 1e-10,
                format!("min margin {worst:.3e}, n=1 err {err:.1e}, redrawn {skipped_total}"),
            ),
            Err(e) => (false, format!("n=1: {e}")),
        }
    })
}

pub fn criterion_6() -> CriterionResult {
    timed(6, "witness achievements", || {
        let none = Extras::default();
        let mut problems = Vec::new();
        for n in 1..=10 {
            match witness(TheoremId::T9_2, n, &none) {
                Ok(w) => {
                    let want = 2.0 * (n * n) as f64;
                    let sup = w.detail("sup_norm").unwrap_or(f64::NAN);
                    if (w.ratio - want).abs() > 1e-8 * want || (sup - 1.0).abs() > 1e-9 || !w.meets_bound(0.0) {
                        problems.push(format!("T9_2 n={n}: {} sup {sup}", w.ratio));
                    }
                }
                Err(e) => problems.push(format!("T9_2 n={n}: {e}")),
            }
        }
        for n in 1..=8 {
            match witness(TheoremId::T2_6, n, &none) {
                Ok(w) if rel(w.ratio, n as f64) <= 1e-7 => {}
                Ok(w) => problems.push(format!("T2_6 n={n}: {}", w.ratio)),
                Err(e) => problems.push(format!("T2_6 n={n}: {e}")),
            }
        }
        for lambda in [5.0, 10.0, 20.0] {
            let ex = Extras { lambda: Some(lambda), ..Extras::default() };
            match witness(TheoremId::T8_1, 2, &ex) {
                Ok(w) if (w.ratio - lambda).abs() <= 1e-6 * lambda && w.meets_bound(0.0) => {}
                Ok(w) => problems.push(format!("T8_1 λ={lambda}: {}", w.ratio)),
                Err(e) => problems.push(format!("T8_1 λ={lambda}: {e}")),
            }
        }
        if problems.is_empty() {
            (true, "T9_2 n<=10, T2_6 n<=8, T8_1 λ in {5,10,20}".into())
        } else {
            (false, problems.join("; "))
        }
    })
}

pub fn criterion_7() -> CriterionResult {
    timed(7, "sigma_k minimax vs closed form", || {
        let start = Instant::now();
        let mut worst: f64 = 0.0;
        let mut k1 = f64::NAN;
        for k in 1..=6 {
            let got = match sigma_minimax(k, DEFAULT_GRID) {
                Ok(r) => r.value,
                Err(e) => return (false, format!("k={k}: {e}")),
            };
            let want = sigma_closed(k).expect("k >= 1");
            worst = worst.max((got - want).abs() / want);
            if k == 1 {
                k1 = got;
            }
        }
        let secs = start.elapsed().as_secs_f64();
        let ok = worst <= 1e-2 && (k1 - 2.0).abs() <= 1e-3 && secs < 5.0;
        (ok, format!("max rel err {worst:.2e}, k=1 value {k1:.6}, {secs:.2}s"))
    })
}

/// Ids of the fuzz suite.
pub const FUZZ_IDS: [TheoremId; 11] = [
    TheoremId::T2_1,
    TheoremId::T2_4,
    TheoremId::T2_5,
    TheoremId::T2_9,
    TheoremId::T2_10,
    TheoremId::T3_2,
    TheoremId::T5_1,
    TheoremId::T5_2,
    TheoremId::T9_1,
    TheoremId::L12_1,
    TheoremId::L12_5,
];

pub fn criterion_8() -> CriterionResult {
    timed(8, "inequality fuzz suite", || {
        let mut total = 0usize;
        let mut violated = Vec::new();
        let mut worst_rate: f64 = 0.0;
        for id in FUZZ_IDS {
            let mut inconclusive = 0usize;
            let mut rows = 0usize;
            for n in [2, 5, 10] {
                let model = RandomModel::new(n, SUITE_SEED);
                match check_random(id, &model, 100, &Extras::default()) {
                    Ok(reports) => {
                        for r in reports {
                            rows += 1;
                            match r.status {
                                Status::Violated => violated.push(format!("{id} n={n} seed={}", r.seed)),
                                Status::Inconclusive => inconclusive += 1,
                                Status::Holds => {}
                            }
                        }
                    }
                    Err(e) => return (false, format!("{id} n={n}: {e}")),
                }
            }
            total += rows;
            worst_rate = worst_rate.max(inconclusive as f64 / rows as f64);
        }
        let ok = violated.is_empty() && worst_rate <= 0.02;
        let mut detail = format!("{total} rows, {} violated, worst inconclusive rate {:.1}%", violated.len(), 100.0 * worst_rate);
        if !violated.is_empty() {
            detail.push_str(&format!(" [{}]", violated.iter().take(5).cloned().collect::<Vec<_>>().join(", ")));
        }
        (ok, detail)
    })
}

fn sample_pair(rng: &mut rand_chacha::ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let n = rng.random_range(1..=6);
    let mut delta: Vec<f64> = Vec::with_capacity(n);
    while delta.len() < n {
        let x = rng.random_range(-20.0..20.0);
        if delta.iter().all(|d| (d - x).abs() >= 2.0) {
            delta.push(x);
        }
    }
    delta.sort_by(f64::total_cmp);
    let mut gamma = Vec::with_capacity(n);
    let mut floor = f64::NEG_INFINITY;
    for d in &delta {
        let g = (d + rng.random_range(0.0..3.0)).max(floor + 2.0);
        gamma.push(g);
        floor = g;
    }
    (delta, gamma)
}

fn window_sup(v: &[f64], f: Functional) -> Result<f64> {
    let e = ExponentSet::from_reals(v)?;
    let g = gram(&e, &NormSpec::l2(0.0, 0.5)?)?;
    Ok(christoffel_sup(&g, &Basis::Exponential(e), f)?.value)
}

/// One comparison pair; returns the smallest signed slack over the applicable statements.
fn comparison_slack(delta: &[f64], gamma: &[f64]) -> Result<f64> {
    let mut slack = f64::INFINITY;
    let tol = 1e-8;
    // right of [0, 0.5]: the larger exponents dominate
    let mut right = vec![Functional::point(1.0)];
    if delta[delta.len() - 1] >= 0.0 {
        right.push(Functional::deriv(0.5));
    }
    for f in right {
        let (d, g) = (window_sup(delta, f)?, window_sup(gamma, f)?);
        slack = slack.min(g * (1.0 + tol) - d);
    }
    // left of it: the smaller exponents dominate
    let mut left = vec![Functional::point(-0.5)];
    if gamma[0] <= 0.0 {
        left.push(Functional::deriv(0.0));
    }
    for f in left {
        let (d, g) = (window_sup(delta, f)?, window_sup(gamma, f)?);
        slack = slack.min(d * (1.0 + tol) - g);
    }
    Ok(slack)
}

pub fn criterion_9() -> CriterionResult {
    timed(9, "comparison monotonicity", || {
        let draws = conclusive_draws(SUITE_SEED ^ 9, 200, |rng| {
            let (delta, gamma) = sample_pair(rng);
            match comparison_slack(&delta, &gamma) {
                Ok(s) => Ok(Some(s)),
                Err(Error::ConditionExceeded { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        });
        match draws {
            Ok((vals, skipped)) => {
                let worst = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                (worst >= 0.0, format!("{} pairs, min slack {worst:.3e}, redrawn {skipped}", vals.len()))
            }
            Err(e) => (false, e),
        }
    })
}

pub fn criterion_10() -> CriterionResult {
    timed(10, "trend exponents T2_7/T7_2", || {
        let mut parts = Vec::new();
        let mut ok = true;
        for id in [TheoremId::T2_7, TheoremId::T7_2] {
            match trend(id) {
                Ok(ts) => {
                    for t in ts {
                        ok &= t.passes();
                        parts.push(format!("{} {} slope {:.3} (want {:.2})", id, t.label, t.slope, t.expected));
                    }
                }
                Err(e) => {
                    ok = false;
                    parts.push(format!("{id}: {e}"));
                }
            }
        }
        (ok, parts.join(", "))
    })
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}

/// The region a fuzz id samples from, for diagnostics.
pub fn fuzz_region(id: TheoremId, n: usize) -> Region {
    class_region(id, &RandomModel::new(n, SUITE_SEED))
}
