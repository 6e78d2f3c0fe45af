//! Legendre and Chebyshev values by three-term recurrences.

/// `(P_k(x), P_k'(x))` for the standard Legendre polynomials, `k = 0..n`.
pub fn legendre_table(n: usize, x: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push((1.0, 0.0));
    if n == 1 {
        return out;
    }
    out.push((x, 1.0));
    for k in 1..n - 1 {
        let kf = k as f64;
        let (p, _) = out[k];
        let (pm, dpm) = out[k - 1];
        let next = ((2.0 * kf + 1.0) * x * p - kf * pm) / (kf + 1.0);
        let dnext = dpm + (2.0 * kf + 1.0) * p;
        out.push((next, dnext));
    }
    out
}

/// Orthonormal Legendre values `p_k(x) = ((2k+1)/2)^{1/2} P_k(x)` on `[-1, 1]`.
pub fn legendre_orthonormal(n: usize, x: f64) -> Vec<f64> {
    legendre_table(n, x)
        .into_iter()
        .enumerate()
        .map(|(k, (p, _))| ((2 * k + 1) as f64 / 2.0).sqrt() * p)
        .collect()
}

/// Orthonormal shifted Legendre values `(2k+1)^{1/2} P_k(2x-1)` on `[0, 1]`.
pub fn shifted_legendre_orthonormal(n: usize, x: f64) -> Vec<f64> {
    legendre_table(n, 2.0 * x - 1.0)
        .into_iter()
        .enumerate()
        .map(|(k, (p, _))| ((2 * k + 1) as f64).sqrt() * p)
        .collect()
}

/// Values of the `k`-th orthonormal Legendre polynomial used in the proof identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreValues {
    /// Shifted orthonormal `P_k(1) = (2k+1)^{1/2}`.
    pub at_one: f64,
    /// Shifted orthonormal `P_k'(0)`, signed.
    pub deriv_at_zero: f64,
    /// `p_k(0)²` for the orthonormal Legendre polynomial on `[-1, 1]`.
    pub centered_at_zero_sq: f64,
}

pub fn legendre_shifted(k: usize) -> LegendreValues {
    let s = ((2 * k + 1) as f64).sqrt();
    let at_one = s * legendre_table(k + 1, 1.0)[k].0;
    let deriv_at_zero = 2.0 * s * legendre_table(k + 1, -1.0)[k].1;
    let p0 = legendre_table(k + 1, 0.0)[k].0;
    LegendreValues {
        at_one,
        deriv_at_zero,
        centered_at_zero_sq: (2 * k + 1) as f64 / 2.0 * p0 * p0,
    }
}

/// The closed form `(-1)^k k(k+1)(2k+1)^{1/2}` for the shifted derivative at 0.
/// It agrees with [`legendre_shifted`] in magnitude; the sign convention differs.
pub fn deriv_at_zero_closed(k: usize) -> f64 {
    let kf = k as f64;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * kf * (kf + 1.0) * (2.0 * kf + 1.0).sqrt()
}

/// `(T_n(x), T_n'(x))`.
pub fn chebyshev(n: usize, x: f64) -> (f64, f64) {
    let (mut t0, mut d0) = (1.0, 0.0);
    if n == 0 {
        return (t0, d0);
    }
    let (mut t1, mut d1) = (x, 1.0);
    for _ in 1..n {
        let t2 = 2.0 * x * t1 - t0;
        let d2 = 2.0 * t1 + 2.0 * x * d1 - d0;
        t0 = t1;
        d0 = d1;
        t1 = t2;
        d1 = d2;
    }
    (t1, d1)
}

/// Monomial coefficients of `T_n`, lowest degree first.
pub fn chebyshev_coeffs(n: usize) -> Vec<f64> {
    let mut a = vec![1.0];
    if n == 0 {
        return a;
    }
    let mut b = vec![0.0, 1.0];
    for _ in 1..n {
        let mut c = vec![0.0; b.len() + 1];
        for (i, v) in b.iter().enumerate() {
            c[i + 1] += 2.0 * v;
        }
        for (i, v) in a.iter().enumerate() {
            c[i] -= v;
        }
        a = b;
        b = c;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadConfig};

    #[test]
    fn examples() {
        let v = legendre_shifted(0);
        assert_eq!((v.at_one, v.deriv_at_zero), (1.0, 0.0));
        let v = legendre_shifted(1);
        assert!((v.deriv_at_zero.abs() - 2.0 * 3f64.sqrt()).abs() < 1e-14);
        assert!((v.deriv_at_zero.abs() - 3.464102).abs() < 1e-6);
        assert!((legendre_shifted(3).at_one - 7f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_closed_form_in_magnitude() {
        for k in 0..20 {
            let got = legendre_shifted(k).deriv_at_zero;
            let want = deriv_at_zero_closed(k);
            assert!((got.abs() - want.abs()).abs() <= 1e-12 * want.abs().max(1.0), "k = {k}");
            // P_1 = √3 (2x - 1) rises through 0, so the recurrence sign is (-1)^{k+1}
            if k > 0 {
                assert_eq!(got.signum(), -want.signum());
            }
        }
    }

    #[test]
    fn centered_values_follow_double_factorial_formula() {
        for k in 0..30 {
            let got = legendre_shifted(k).centered_at_zero_sq;
            if k % 2 == 1 {
                assert!(got.abs() < 1e-28);
                continue;
            }
            let mut ratio = 1.0;
            let mut j = 1;
            while j < k {
                ratio *= j as f64 / (j + 1) as f64;
                j += 2;
            }
            let want = (2 * k + 1) as f64 / 2.0 * ratio * ratio;
            assert!((got - want).abs() < 1e-13 * want, "k = {k}");
            if k > 0 {
                let bound = (2 * k + 1) as f64 / (4.0 * k as f64);
                assert!(got >= bound * (1.0 - 1e-14) && bound >= 0.5, "k = {k}");
            }
        }
    }

    #[test]
    fn orthonormality_by_quadrature() {
        let cfg = QuadConfig::default();
        for j in 0..6 {
            for k in 0..6 {
                let v = integrate(|x| {
                    let p = shifted_legendre_orthonormal(6, x);
                    p[j] * p[k]
                }, 0.0, 1.0, &cfg)
                .unwrap();
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn chebyshev_values() {
        for n in 0..12 {
            let (t, d) = chebyshev(n, 1.0);
            assert!((t - 1.0).abs() < 1e-12);
            assert!((d - (n * n) as f64).abs() < 1e-9);
            let (t, _) = chebyshev(n, (0.3f64).cos());
            assert!((t - (0.3 * n as f64).cos()).abs() < 1e-12);
            let c = chebyshev_coeffs(n);
            let x: f64 = 0.37;
            let via: f64 = c.iter().enumerate().map(|(i, v)| v * x.powi(i as i32)).sum();
            assert!((via - chebyshev(n, x).0).abs() < 1e-12);
        }
    }
}
