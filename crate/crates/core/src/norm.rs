use crate::error::{Error, Result};

/// Integration domain of a norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Interval { a: f64, b: f64 },
    HalfLine,
}

/// Weighted `L_q` norm `‖f(t) e^{-c t}‖_{L_q(D)}`.
///
/// `weight_rate` is the rate `c` of the weight multiplying `f`, as in
/// `‖f(t) e^{-n t}‖_{L_2[0,1]}`. For `q = 2` the squared norm is
/// `∫ |f|² e^{-2ct} dt`, so the Laguerre norm `∫_0^∞ |f|² e^{-t} dt` is
/// `NormSpec::half_line(0.5)`. `q = f64::INFINITY` is the weighted sup norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSpec {
    pub domain: Domain,
    pub weight_rate: f64,
    pub q: f64,
}

impl NormSpec {
    pub fn interval(a: f64, b: f64, weight_rate: f64, q: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Argument(format!("interval needs finite a < b, got [{a}, {b}]")));
        }
        Self::checked(Domain::Interval { a, b }, weight_rate, q)
    }

    /// Unweighted `L_2[a, b]`.
    pub fn l2(a: f64, b: f64) -> Result<Self> {
        Self::interval(a, b, 0.0, 2.0)
    }

    /// `L_2[0, ∞)` with weight `e^{-c t}` on `f`.
    pub fn half_line(weight_rate: f64) -> Self {
        Self {
            domain: Domain::HalfLine,
            weight_rate,
            q: 2.0,
        }
    }

    /// `‖f‖² = ∫_0^∞ |f(t)|² e^{-t} dt`.
    pub fn laguerre() -> Self {
        Self::half_line(0.5)
    }

    fn checked(domain: Domain, weight_rate: f64, q: f64) -> Result<Self> {
        if !weight_rate.is_finite() || weight_rate < 0.0 {
            return Err(Error::Argument(format!("weight rate must be >= 0, got {weight_rate}")));
        }
        if q.is_nan() || q <= 0.0 {
            return Err(Error::Argument(format!("norm exponent must be positive, got {q}")));
        }
        if domain == Domain::HalfLine && q != 2.0 {
            return Err(Error::Argument("half-line norms support q = 2 only".into()));
        }
        Ok(Self {
            domain,
            weight_rate,
            q,
        })
    }

    pub fn with_q(self, q: f64) -> Result<Self> {
        Self::checked(self.domain, self.weight_rate, q)
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match self.domain {
            Domain::Interval { a, b } => Some((a, b)),
            Domain::HalfLine => None,
        }
    }

    /// Rate of the measure `e^{-2ct} dt` that defines the squared `L_2` norm.
    pub fn measure_rate(&self) -> f64 {
        2.0 * self.weight_rate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(NormSpec::interval(1.0, 0.0, 0.0, 2.0).is_err());
        assert!(NormSpec::interval(0.0, 1.0, -1.0, 2.0).is_err());
        assert!(NormSpec::interval(0.0, 1.0, 0.0, 0.0).is_err());
        assert!(NormSpec::interval(0.0, 1.0, 0.0, f64::INFINITY).is_ok());
        assert!(NormSpec::half_line(0.5).with_q(1.0).is_err());
        assert_eq!(NormSpec::laguerre().measure_rate(), 1.0);
    }
}
