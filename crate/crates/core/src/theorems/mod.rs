//! Registry of the inequalities: right-hand sides, exact and randomized
//! checks, witness constructions, and the `σ_k` solver.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sum::ExpSum;

pub mod bounds;
pub mod exact;
pub mod legendre;
pub mod random;
pub mod report;
pub mod sigma;
pub mod sweep;
pub mod trend;
pub mod witness;

pub use bounds::rhs_bound;
pub use exact::{check_exact, ExactInput};
pub use random::{check_random, RandomModel};
pub use report::Format;
pub use sweep::{summarize, sweep, SweepSummary};
pub use trend::{trend, TrendResult};
pub use witness::{witness, WitnessResult};

/// Relative tolerance of every check.
pub const DEFAULT_TOL: f64 = 1e-6;

macro_rules! theorem_ids {
    ($($id:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        #[allow(non_camel_case_types)]
        pub enum TheoremId { $($id),* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$id),*];

            pub fn name(self) -> &'static str {
                match self { $(TheoremId::$id => $name),* }
            }
        }

        impl FromStr for TheoremId {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_uppercase().as_str() {
                    $($name => Ok(TheoremId::$id),)*
                    _ => Err(Error::Parse(format!("unknown theorem id {s:?}"))),
                }
            }
        }
    };
}

theorem_ids! {
    T2_1 => "T2_1",
    T2_2 => "T2_2",
    T2_3 => "T2_3",
    T2_4 => "T2_4",
    T2_5 => "T2_5",
    T2_6 => "T2_6",
    T2_7 => "T2_7",
    T2_9 => "T2_9",
    T2_10 => "T2_10",
    T3_1 => "T3_1",
    T3_2 => "T3_2",
    T4_1 => "T4_1",
    T5_1 => "T5_1",
    T5_2 => "T5_2",
    T5_3 => "T5_3",
    T6_1 => "T6_1",
    T7_1 => "T7_1",
    T7_2 => "T7_2",
    T8_1 => "T8_1",
    T9_1 => "T9_1",
    T9_2 => "T9_2",
    T10_1 => "T10_1",
    T10_2 => "T10_2",
    T11_1 => "T11_1",
    L12_1 => "L12_1",
    L12_5 => "L12_5",
    SIGMA_K => "SIGMA_K",
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl TheoremId {
    /// Checked against exact extremal values.
    pub fn is_exact(self) -> bool {
        use TheoremId::*;
        matches!(self, T2_3 | T2_6 | T3_1 | T4_1 | T10_1 | T10_2 | T11_1 | L12_5)
    }

    /// Checked on random samples.
    pub fn is_random(self) -> bool {
        use TheoremId::*;
        matches!(
            self,
            T2_1 | T2_4 | T2_5 | T2_9 | T2_10 | T3_2 | T5_1 | T5_2 | T8_1 | T9_1 | L12_1 | L12_5
        )
    }

    pub fn has_witness(self) -> bool {
        use TheoremId::*;
        matches!(self, T2_6 | T5_3 | T6_1 | T7_1 | T8_1 | T9_2)
    }
}

/// Optional parameters of a bound or experiment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Extras {
    pub q: Option<f64>,
    pub p: Option<f64>,
    pub lambda: Option<f64>,
    pub y: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub delta: Option<f64>,
    /// Truncation point of the infinite-finite range check.
    pub t: Option<f64>,
    /// Parameter of the Kós-type bound.
    pub gamma: Option<f64>,
    pub k: Option<usize>,
    pub grid: Option<usize>,
    /// Use the constant 27² produced by the proofs of the mixed Markov bounds
    /// instead of the stated 27.
    pub proof_constant: bool,
}

pub(crate) fn need(v: Option<f64>, name: &str) -> Result<f64> {
    v.ok_or_else(|| Error::Argument(format!("missing parameter {name}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Violated,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "Holds",
            Status::Violated => "Violated",
            Status::Inconclusive => "Inconclusive",
        })
    }
}

/// One checked instance of an inequality, in ratio form `lhs <= rhs`
/// (or `lhs >= rhs` for lower bounds, where `margin = lhs - rhs`).
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub status: Status,
    pub witness: Option<ExpSum>,
    /// Diagnostic for inconclusive rows.
    pub note: Option<String>,
}

impl CheckReport {
    /// Upper-bound report: holds iff `rhs - lhs >= -tol |rhs|`.
    pub fn upper(theorem: TheoremId, n: usize, seed: u64, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::from_margin(theorem, n, seed, lhs, rhs, rhs - lhs, tol)
    }

    /// Lower-bound report: holds iff `lhs - rhs >= -tol |rhs|`.
    pub fn lower(theorem: TheoremId, n: usize, seed: u64, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::from_margin(theorem, n, seed, lhs, rhs, lhs - rhs, tol)
    }

    fn from_margin(theorem: TheoremId, n: usize, seed: u64, lhs: f64, rhs: f64, margin: f64, tol: f64) -> Self {
        let status = if !margin.is_finite() {
            Status::Inconclusive
        } else if margin >= -tol * rhs.abs() {
            Status::Holds
        } else {
            Status::Violated
        };
        Self {
            theorem,
            n,
            seed,
            lhs,
            rhs,
            margin,
            status,
            witness: None,
            note: None,
        }
    }

    pub fn inconclusive(theorem: TheoremId, n: usize, seed: u64, err: &Error) -> Self {
        Self {
            theorem,
            n,
            seed,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            status: Status::Inconclusive,
            witness: None,
            note: Some(err.to_string()),
        }
    }

    pub fn with_witness(mut self, w: Option<ExpSum>) -> Self {
        self.witness = w;
        self
    }
}

/// Converts numerical failures into an inconclusive report and passes other errors on.
pub(crate) fn or_inconclusive(
    theorem: TheoremId,
    n: usize,
    seed: u64,
    r: Result<CheckReport>,
) -> Result<CheckReport> {
    match r {
        Err(e) if e.is_numerical() => Ok(CheckReport::inconclusive(theorem, n, seed, &e)),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), *id);
        }
        assert_eq!("t10_2".parse::<TheoremId>().unwrap(), TheoremId::T10_2);
        assert!("T2_8".parse::<TheoremId>().is_err());
    }

    #[test]
    fn status_from_margin() {
        let r = CheckReport::upper(TheoremId::T2_3, 2, 0, 1.0, 1.0 - 1e-7, 1e-6);
        assert_eq!(r.status, Status::Holds);
        let r = CheckReport::upper(TheoremId::T2_3, 2, 0, 1.0, 0.9, 1e-6);
        assert_eq!(r.status, Status::Violated);
        let r = CheckReport::upper(TheoremId::T2_3, 2, 0, f64::NAN, 0.9, 1e-6);
        assert_eq!(r.status, Status::Inconclusive);
        let r = CheckReport::lower(TheoremId::T2_6, 3, 0, 3.0, 3.0, 1e-6);
        assert_eq!((r.status, r.margin), (Status::Holds, 0.0));
    }
}
