//! Exponent sets and the function classes they span.
//!
//! An [`ExponentSet`] is an ordered list of pairwise distinct complex
//! exponents `λ_1, ..., λ_n`. The order is canonical: ascending by real part,
//! ties broken by imaginary part. Real parts within [`IMAG_TOLERANCE`] of zero
//! count as zero for ordering, so a purely imaginary set is always sorted by
//! frequency.

use std::cmp::Ordering;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum pairwise distance between two exponents of one set.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

/// `|Re λ|` at or below this counts as purely imaginary.
pub const IMAG_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSet {
    exps: Vec<Complex64>,
}

/// Class membership flags of an exponent set.
///
/// `all_sums` is the unrestricted class and is always set. `nonneg_real` is
/// `Re λ_j >= 0` for every j, `nonpos_real` is `Re λ_j <= 0`, and
/// `trigonometric` means all exponents are purely imaginary with strictly
/// increasing imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpClass {
    pub all_sums: bool,
    pub nonneg_real: bool,
    pub nonpos_real: bool,
    pub trigonometric: bool,
}

fn snap(re: f64) -> f64 {
    if re.abs() <= IMAG_TOLERANCE {
        0.0
    } else {
        re
    }
}

fn canonical_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    snap(a.re)
        .total_cmp(&snap(b.re))
        .then_with(|| a.im.total_cmp(&b.im))
}

impl ExponentSet {
    /// Builds a canonical set, rejecting empty input, non-finite values and
    /// pairs closer than [`DEGENERACY_THRESHOLD`].
    pub fn new(exps: Vec<Complex64>) -> Result<Self> {
        Ok(Self::with_permutation(exps)?.0)
    }

    /// Like [`ExponentSet::new`], also returning `perm` such that canonical
    /// slot `k` holds input exponent `perm[k]`.
    pub fn with_permutation(exps: Vec<Complex64>) -> Result<(Self, Vec<usize>)> {
        if exps.is_empty() {
            return Err(Error::EmptyExponents);
        }
        if exps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("exponents must be finite".into()));
        }
        let mut perm: Vec<usize> = (0..exps.len()).collect();
        perm.sort_by(|&i, &j| canonical_cmp(&exps[i], &exps[j]));
        let sorted: Vec<Complex64> = perm.iter().map(|&i| exps[i]).collect();
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                let distance = (sorted[i] - sorted[j]).norm();
                if distance <= DEGENERACY_THRESHOLD {
                    return Err(Error::DegenerateExponents {
                        first: i,
                        second: j,
                        distance,
                        threshold: DEGENERACY_THRESHOLD,
                    });
                }
            }
        }
        Ok((Self { exps: sorted }, perm))
    }

    /// Purely imaginary set `{i ω_1, ..., i ω_n}`.
    pub fn from_frequencies(freqs: &[f64]) -> Result<Self> {
        Self::new(freqs.iter().map(|&w| Complex64::new(0.0, w)).collect())
    }

    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.exps
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.exps.iter()
    }

    /// `max_j |λ_j|`.
    pub fn max_abs(&self) -> f64 {
        self.exps.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest real part.
    pub fn max_re(&self) -> f64 {
        self.exps.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_re(&self) -> f64 {
        self.exps.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }

    /// Set `{α λ_j}`; `α` must be non-zero.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::Argument("scale factor must be finite and non-zero".into()));
        }
        Self::new(self.exps.iter().map(|z| z * alpha).collect())
    }

    /// Set `{λ_j + s}`.
    pub fn shifted(&self, s: Complex64) -> Result<Self> {
        Self::new(self.exps.iter().map(|z| z + s).collect())
    }

    pub fn classify(&self) -> ExpClass {
        classify(self)
    }

    pub fn to_json(&self) -> String {
        let recs: Vec<ComplexRecord> = self.exps.iter().map(|&z| z.into()).collect();
        serde_json::to_string_pretty(&recs).expect("plain records always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let recs: Vec<ComplexRecord> = serde_json::from_str(text)?;
        Self::new(recs.into_iter().map(Complex64::from).collect())
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

/// Class membership of an exponent set.
pub fn classify(exps: &ExponentSet) -> ExpClass {
    let nonneg_real = exps.iter().all(|z| z.re >= 0.0 || z.re.abs() <= IMAG_TOLERANCE);
    let nonpos_real = exps.iter().all(|z| z.re <= 0.0 || z.re.abs() <= IMAG_TOLERANCE);
    let imaginary = exps.iter().all(|z| z.re.abs() <= IMAG_TOLERANCE);
    // canonical order already sorts imaginary sets by frequency; distinctness is
    // guaranteed by construction, so "strictly increasing" is automatic.
    let increasing = exps.as_slice().windows(2).all(|w| w[0].im < w[1].im);
    let trigonometric = imaginary && increasing;
    ExpClass {
        all_sums: true,
        nonneg_real: nonneg_real || trigonometric,
        nonpos_real: nonpos_real || trigonometric,
        trigonometric,
    }
}

/// JSON record `{"re": .., "im": ..}` used by exponent and coefficient files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexRecord {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexRecord> for Complex64 {
    fn from(r: ComplexRecord) -> Self {
        Complex64::new(r.re, r.im)
    }
}
