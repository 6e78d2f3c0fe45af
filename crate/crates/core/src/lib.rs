//! Numerical toolkit for exponential sums `f(t) = Σ a_j e^{λ_j t}`.
//!
//! The crate evaluates sharp constants of Nikolskii, Bernstein and Markov type
//! inequalities as extremal problems on finite-dimensional spaces, and checks
//! explicit bounds against those constants and against random sums.

pub mod acceptance;
pub mod error;
pub mod exponents;
pub mod extremal;
pub mod linalg;
pub mod norm;
pub mod quad;
pub mod sum;
pub mod theorems;

pub use error::{Error, Result};
pub use exponents::{classify, ExpClass, ExponentSet};
pub use norm::{Domain, NormSpec};
pub use quad::QuadConfig;
pub use sum::ExpSum;
pub use theorems::{check_exact, check_random, rhs_bound, sweep, witness, CheckReport, Extras, Status, TheoremId};
