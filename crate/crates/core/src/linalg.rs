//! Dense Hermitian linear algebra for small (n <= 32) Gram and operator matrices.
//!
//! Cholesky factorization, inverse quadratic forms, a cyclic Jacobi
//! eigensolver for complex Hermitian matrices, and the Cholesky reduction of
//! the generalized problem `A v = λ B v`. Every solve against a matrix whose
//! spectral condition number exceeds [`CONDITION_LIMIT`] is refused.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest condition number accepted by any solve.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Relative pivot floor of the Cholesky factorization.
const PIVOT_FLOOR: f64 = 1e-14;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_TOL: f64 = 1e-14;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Square Hermitian matrix stored densely in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
    pub tag: Option<String>,
}

impl HermitianMatrix {
    /// Builds from `entry(j, k)`, symmetrizing as `(M + M*)/2` so the result is
    /// exactly Hermitian with a real diagonal.
    pub fn from_fn(n: usize, entry: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = vec![zero(); n * n];
        for j in 0..n {
            for k in 0..n {
                data[j * n + k] = entry(j, k);
            }
        }
        Self::from_dense(n, data)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self::from_fn(n, |j, k| rows[j][k])
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self::from_fn(n, |j, k| Complex64::new(rows[j][k], 0.0))
    }

    fn from_dense(n: usize, mut data: Vec<Complex64>) -> Self {
        for j in 0..n {
            data[j * n + j] = Complex64::new(data[j * n + j].re, 0.0);
            for k in j + 1..n {
                let avg = (data[j * n + k] + data[k * n + j].conj()) * 0.5;
                data[j * n + k] = avg;
                data[k * n + j] = avg.conj();
            }
        }
        Self { n, data, tag: None }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |j, k| if j == k { Complex64::new(1.0, 0.0) } else { zero() })
    }

    pub fn diagonal(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |j, k| if j == k { Complex64::new(d[j], 0.0) } else { zero() })
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.data[j * self.n + k]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_diagonal(&self) -> f64 {
        (0..self.n).map(|j| self.get(j, j).re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|j| (0..self.n).map(|k| self.get(j, k) * v[k]).sum())
            .collect()
    }

    /// `a* M a`, real for Hermitian `M`.
    pub fn quad_form(&self, a: &[Complex64]) -> f64 {
        let ma = self.mul_vec(a);
        a.iter().zip(&ma).map(|(x, y)| (x.conj() * y).re).sum()
    }

    /// `D* M D` for `D = diag(d)`.
    pub fn congruence_diag(&self, d: &[Complex64]) -> Self {
        assert_eq!(d.len(), self.n);
        Self::from_fn(self.n, |j, k| d[j].conj() * self.get(j, k) * d[k])
    }

    /// `U* M U` for a square `U` given by rows.
    pub fn congruence(&self, u: &[Vec<Complex64>]) -> Self {
        let n = self.n;
        // MU
        let mu: Vec<Vec<Complex64>> = (0..n)
            .map(|j| (0..n).map(|k| (0..n).map(|l| self.get(j, l) * u[l][k]).sum()).collect())
            .collect();
        Self::from_fn(n, |j, k| (0..n).map(|l| u[l][j].conj() * mu[l][k]).sum())
    }
}

/// Lower-triangular factor `L` with `L L* = G`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<Complex64>,
}

impl Cholesky {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.l[j * self.n + k]
    }

    /// Rows of `L`.
    pub fn factor_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.n).map(|j| self.l[j * self.n..(j + 1) * self.n].to_vec()).collect()
    }

    /// Solves `L y = b`.
    pub fn solve_lower(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut y = b.to_vec();
        for j in 0..n {
            let mut s = y[j];
            for k in 0..j {
                s -= self.get(j, k) * y[k];
            }
            y[j] = s / self.get(j, j);
        }
        y
    }

    /// Solves `L* x = y`.
    pub fn solve_upper(&self, y: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x = y.to_vec();
        for j in (0..n).rev() {
            let mut s = x[j];
            for k in j + 1..n {
                s -= self.get(k, j).conj() * x[k];
            }
            x[j] = s / self.get(j, j);
        }
        x
    }

    /// Rows of `L^{-1}`.
    pub fn inverse_rows(&self) -> Vec<Vec<Complex64>> {
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let mut e = vec![zero(); n];
            e[k] = Complex64::new(1.0, 0.0);
            cols.push(self.solve_lower(&e));
        }
        (0..n).map(|j| (0..n).map(|k| cols[k][j]).collect()).collect()
    }

    /// `L L*`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        HermitianMatrix::from_fn(self.n, |j, k| {
            (0..=j.min(k)).map(|m| self.get(j, m) * self.get(k, m).conj()).sum()
        })
    }
}

/// Cholesky factorization. Fails when a pivot is non-positive or smaller than
/// `1e-14` times the largest diagonal entry.
pub fn cholesky(g: &HermitianMatrix) -> Result<Cholesky> {
    let n = g.dim();
    let floor = PIVOT_FLOOR * g.max_diagonal().max(0.0);
    let mut l = vec![zero(); n * n];
    for j in 0..n {
        let mut d = g.get(j, j).re;
        for m in 0..j {
            d -= l[j * n + m].norm_sqr();
        }
        if !(d > 0.0) || d < floor {
            return Err(Error::NotPositiveDefinite { index: j, pivot: d });
        }
        let ljj = d.sqrt();
        l[j * n + j] = Complex64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut s = g.get(i, j);
            for m in 0..j {
                s -= l[i * n + m] * l[j * n + m].conj();
            }
            l[i * n + j] = s / ljj;
        }
    }
    Ok(Cholesky { n, l })
}

/// Eigen-decomposition with ascending eigenvalues; `vectors[k]` is the unit
/// eigenvector of `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

impl Eigen {
    /// `Σ_k λ_k v_k v_k*`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let n = self.values.len();
        HermitianMatrix::from_fn(n, |j, k| {
            (0..n)
                .map(|m| self.vectors[m][j] * self.vectors[m][k].conj() * self.values[m])
                .sum()
        })
    }
}

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
pub fn eigen_hermitian(m: &HermitianMatrix) -> Result<Eigen> {
    let n = m.dim();
    let mut a: Vec<Complex64> = m.data.clone();
    let mut v = vec![zero(); n * n];
    for j in 0..n {
        v[j * n + j] = Complex64::new(1.0, 0.0);
    }
    let scale = m.frobenius_norm();
    let off = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    s += a[j * n + k].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = scale == 0.0 || off(&a) <= JACOBI_TOL * scale;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::EigenFailure { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let g = a[p * n + q];
                let mag = g.norm();
                if mag == 0.0 || mag < 1e-300 {
                    continue;
                }
                let phase = g / mag;
                let alpha = a[p * n + p].re;
                let beta = a[q * n + q].re;
                // real symmetric 2x2 [[α, |g|], [|g|, β]] rotation
                let tau = (beta - alpha) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let upp = Complex64::new(c, 0.0);
                let upq = Complex64::new(s, 0.0);
                let uqp = phase.conj() * (-s);
                let uqq = phase.conj() * c;
                // columns: A <- A U
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = aip * upp + aiq * uqp;
                    a[i * n + q] = aip * upq + aiq * uqq;
                }
                // rows: A <- U* A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = upp.conj() * apk + uqp.conj() * aqk;
                    a[q * n + k] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[p * n + q] = zero();
                a[q * n + p] = zero();
                a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = vip * upp + viq * uqp;
                    v[i * n + q] = vip * upq + viq * uqq;
                }
            }
        }
        converged = off(&a) <= JACOBI_TOL * scale;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Ok(Eigen { values, vectors })
}

/// Spectral condition number `λ_max / λ_min` (infinite if `λ_min <= 0`).
pub fn condition(g: &HermitianMatrix) -> f64 {
    match eigen_hermitian(g) {
        Ok(e) => {
            let lo = e.values[0];
            let hi = *e.values.last().expect("non-empty matrix");
            if lo <= 0.0 {
                f64::INFINITY
            } else {
                hi / lo
            }
        }
        Err(_) => f64::INFINITY,
    }
}

/// Cholesky factor of a positive definite matrix that passed the condition guard.
#[derive(Debug, Clone)]
pub struct PdSolver {
    pub factor: Cholesky,
    pub condition: f64,
}

impl PdSolver {
    pub fn new(g: &HermitianMatrix) -> Result<Self> {
        let condition = condition(g);
        let factor = cholesky(g)?;
        if condition > CONDITION_LIMIT {
            return Err(Error::ConditionExceeded {
                condition,
                limit: CONDITION_LIMIT,
            });
        }
        Ok(Self { factor, condition })
    }

    /// `(v* G^{-1} v, G^{-1} v)`.
    pub fn quad_form_inv(&self, v: &[Complex64]) -> (f64, Vec<Complex64>) {
        let y = self.factor.solve_lower(v);
        let value = y.iter().map(|z| z.norm_sqr()).sum();
        let x = self.factor.solve_upper(&y);
        (value, x)
    }
}

/// `v* G^{-1} v` together with the solving vector `G^{-1} v`.
pub fn quad_form_inv(g: &HermitianMatrix, v: &[Complex64]) -> Result<(f64, Vec<Complex64>)> {
    Ok(PdSolver::new(g)?.quad_form_inv(v))
}

/// Largest generalized eigenpair of `A v = λ B v`.
#[derive(Debug, Clone)]
pub struct GenEigen {
    pub value: f64,
    /// Eigenvector normalized to `v* B v = 1`.
    pub vector: Vec<Complex64>,
    /// Condition number of `B`.
    pub condition: f64,
}

impl GenEigen {
    /// `‖A v - λ B v‖` in the Euclidean norm.
    pub fn residual(&self, a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
        let av = a.mul_vec(&self.vector);
        let bv = b.mul_vec(&self.vector);
        av.iter()
            .zip(&bv)
            .map(|(x, y)| (x - y * self.value).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Largest `λ` with `A v = λ B v` for positive definite `B`, via `B = L L*`
/// and the standard problem for `L^{-1} A L^{-*}`.
pub fn gen_eigen_max(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<GenEigen> {
    let n = a.dim();
    assert_eq!(n, b.dim(), "generalized eigenproblem needs equal dimensions");
    let solver = PdSolver::new(b)?;
    let l = &solver.factor;
    // X = L^{-1} A (column by column)
    let x_cols: Vec<Vec<Complex64>> = (0..n)
        .map(|k| l.solve_lower(&(0..n).map(|j| a.get(j, k)).collect::<Vec<_>>()))
        .collect();
    // C* = L^{-1} X*; column k of X* is the conjugate of row k of X.
    let y_cols: Vec<Vec<Complex64>> = (0..n)
        .map(|k| l.solve_lower(&(0..n).map(|j| x_cols[j][k].conj()).collect::<Vec<_>>()))
        .collect();
    // C = (C*)*, entry C[j][k] = conj(C*[k][j]) = conj(y_cols[j][k])
    let c = HermitianMatrix::from_fn(n, |j, k| y_cols[j][k].conj());
    let eig = eigen_hermitian(&c)?;
    let top = n - 1;
    let vector = l.solve_upper(&eig.vectors[top]);
    Ok(GenEigen {
        value: eig.values[top],
        vector,
        condition: solver.condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hilbert(n: usize) -> HermitianMatrix {
        HermitianMatrix::from_fn(n, |j, k| Complex64::new(1.0 / (j + k + 1) as f64, 0.0))
    }

    fn re(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    fn max_abs_diff(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
        let n = a.dim();
        let mut m: f64 = 0.0;
        for j in 0..n {
            for k in 0..n {
                m = m.max((a.get(j, k) - b.get(j, k)).norm());
            }
        }
        m
    }

    #[test]
    fn symmetrizes_on_construction() {
        let m = HermitianMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.5), Complex64::new(2.0, 1.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(3.0, 0.0)],
        ]);
        assert_eq!(m.get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(m.get(0, 1), m.get(1, 0).conj());
        assert_eq!(m.get(0, 1), Complex64::new(1.0, 0.5));
    }

    #[test]
    fn cholesky_examples() {
        let l = cholesky(&HermitianMatrix::identity(3)).unwrap();
        assert_eq!(max_abs_diff(&l.reconstruct(), &HermitianMatrix::identity(3)), 0.0);

        let l = cholesky(&HermitianMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]])).unwrap();
        assert!((l.get(0, 0).re - 2f64.sqrt()).abs() < 1e-15);
        assert!((l.get(1, 0).re - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((l.get(1, 1).re - 1.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(l.get(0, 1), zero());

        let h = hilbert(3);
        assert!(max_abs_diff(&cholesky(&h).unwrap().reconstruct(), &h) < 1e-14);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let m = HermitianMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(matches!(cholesky(&m), Err(Error::NotPositiveDefinite { index: 1, .. })));
        let tiny = HermitianMatrix::diagonal(&[1.0, 1e-15]);
        assert!(matches!(cholesky(&tiny), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn quad_form_inv_examples() {
        let (v, _) = quad_form_inv(&HermitianMatrix::identity(3), &re(&[1.0, 1.0, 1.0])).unwrap();
        assert!((v - 3.0).abs() < 1e-15);
        let (v, c) = quad_form_inv(&hilbert(3), &re(&[1.0, 1.0, 1.0])).unwrap();
        assert!((v - 9.0).abs() < 1e-11);
        // row sums of the exact inverse: (3, -24, 30)
        for (got, want) in c.iter().zip([3.0, -24.0, 30.0]) {
            assert!((got.re - want).abs() < 1e-10);
        }
        let (v, _) = quad_form_inv(&hilbert(3), &re(&[0.0, 1.0, 0.0])).unwrap();
        assert!((v - 192.0).abs() < 1e-10);
    }

    #[test]
    fn condition_guard() {
        let err = quad_form_inv(&hilbert(12), &re(&[1.0; 12])).unwrap_err();
        assert!(matches!(err, Error::ConditionExceeded { .. }));
    }

    #[test]
    fn eigen_examples() {
        let e = eigen_hermitian(&HermitianMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        let e = eigen_hermitian(&HermitianMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);

        // characteristic polynomial of the 3x3 Hilbert matrix:
        // λ³ - (23/15) λ² + (127/720) λ - 1/2160, largest root by bisection
        let p = |x: f64| x * x * x - 23.0 / 15.0 * x * x + 127.0 / 720.0 * x - 1.0 / 2160.0;
        let (mut lo, mut hi) = (1.0, 2.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if p(lo) * p(mid) <= 0.0 {
                hi = mid
            } else {
                lo = mid
            }
        }
        let e = eigen_hermitian(&hilbert(3)).unwrap();
        assert!((e.values[2] - lo).abs() < 1e-13);
        assert!((lo - 1.408319).abs() < 1e-6);
    }

    #[test]
    fn complex_eigen_reconstructs() {
        let m = HermitianMatrix::from_fn(5, |j, k| {
            Complex64::new((j * 3 + k) as f64 * 0.1, (j as f64 - k as f64) * 0.7)
        });
        let e = eigen_hermitian(&m).unwrap();
        let err = max_abs_diff(&e.reconstruct(), &m);
        assert!(err <= 1e-12 * m.frobenius_norm(), "err {err}");
        for a in 0..5 {
            for b in 0..5 {
                let dot: Complex64 = (0..5).map(|i| e.vectors[a][i].conj() * e.vectors[b][i]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn gen_eigen_examples() {
        let a = HermitianMatrix::diagonal(&[1.0, 4.0]);
        let b = HermitianMatrix::diagonal(&[1.0, 2.0]);
        assert!((gen_eigen_max(&a, &b).unwrap().value - 2.0).abs() < 1e-14);

        let a = HermitianMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let b = HermitianMatrix::diagonal(&[1.0, 2.0]);
        let g = gen_eigen_max(&a, &b).unwrap();
        let want = (6.0 + 12f64.sqrt()) / 4.0;
        assert!((g.value - want).abs() < 1e-14);
        assert!((want - 2.366025).abs() < 1e-6);
        assert!(g.residual(&a, &b) <= 1e-10 * (a.frobenius_norm() + g.value * b.frobenius_norm()));

        let e = eigen_hermitian(&a).unwrap();
        let g = gen_eigen_max(&a, &HermitianMatrix::identity(2)).unwrap();
        assert!((g.value - e.values[1]).abs() < 1e-14);
    }

    #[test]
    fn condition_examples() {
        assert_eq!(condition(&HermitianMatrix::identity(3)), 1.0);
        assert!((condition(&HermitianMatrix::diagonal(&[1.0, 1e-6])) - 1e6).abs() < 1e-4);
        let k = condition(&hilbert(6));
        assert!((k / 1.495e7 - 1.0).abs() < 1e-3, "{k}");
        assert_eq!(condition(&HermitianMatrix::diagonal(&[1.0, -1.0])), f64::INFINITY);
    }

    fn random_pd(n: usize, seed: &[f64]) -> HermitianMatrix {
        // B B* + I with B from the seed values
        let b = |j: usize, k: usize| {
            let i = (j * n + k) % seed.len();
            Complex64::new(seed[i], seed[(i + 7) % seed.len()])
        };
        HermitianMatrix::from_fn(n, |j, k| {
            let mut s: Complex64 = (0..n).map(|m| b(j, m) * b(k, m).conj()).sum();
            if j == k {
                s += 1.0;
            }
            s
        })
    }

    fn complex_vec(vals: &[f64], n: usize, offset: usize) -> Vec<Complex64> {
        (0..n)
            .map(|i| Complex64::new(vals[(offset + 2 * i) % vals.len()], vals[(offset + 2 * i + 1) % vals.len()]))
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn kernel_value_dominates_rayleigh_ratios(
            n in 1usize..7,
            seed in prop::collection::vec(-1.0f64..1.0, 64),
            probes in prop::collection::vec(-1.0f64..1.0, 40),
        ) {
            let g = random_pd(n, &seed);
            let v = complex_vec(&seed, n, 3);
            let (value, sol) = quad_form_inv(&g, &v).unwrap();
            for t in 0..20 {
                let u = complex_vec(&probes, n, t);
                let gu = g.quad_form(&u);
                if gu <= 0.0 { continue; }
                let vu: Complex64 = v.iter().zip(&u).map(|(a, b)| a.conj() * b).sum();
                prop_assert!(vu.norm_sqr() / gu <= value * (1.0 + 1e-12) + 1e-300);
            }
            let vs: Complex64 = v.iter().zip(&sol).map(|(a, b)| a.conj() * b).sum();
            let attained = vs.norm_sqr() / g.quad_form(&sol);
            prop_assert!((attained - value).abs() <= 1e-9 * value.max(1e-300));
        }

        #[test]
        fn gen_eigen_dominates_rayleigh_quotients(
            n in 1usize..7,
            s1 in prop::collection::vec(-1.0f64..1.0, 64),
            s2 in prop::collection::vec(-1.0f64..1.0, 64),
            probes in prop::collection::vec(-1.0f64..1.0, 40),
        ) {
            let b = random_pd(n, &s1);
            let a = HermitianMatrix::from_fn(n, |j, k| Complex64::new(s2[(j * n + k) % 64], s2[(k * n + j + 5) % 64]));
            let g = gen_eigen_max(&a, &b).unwrap();
            for t in 0..20 {
                let u = complex_vec(&probes, n, t);
                let bu = b.quad_form(&u);
                if bu <= 0.0 { continue; }
                prop_assert!(a.quad_form(&u) / bu <= g.value + 1e-10 * (1.0 + g.value.abs()));
            }
            prop_assert!(g.residual(&a, &b) <= 1e-10 * (a.frobenius_norm() + g.value.abs() * b.frobenius_norm()));
        }

        #[test]
        fn eigenvalues_invariant_under_unitary_conjugation(
            n in 2usize..7,
            s in prop::collection::vec(-1.0f64..1.0, 64),
            angles in prop::collection::vec(0.0f64..6.3, 8),
        ) {
            let a = HermitianMatrix::from_fn(n, |j, k| Complex64::new(s[(j * n + k) % 64], s[(k * n + j + 9) % 64]));
            // product of Givens rotations with complex phases
            let mut u: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|k| if j == k { Complex64::new(1.0, 0.0) } else { zero() }).collect()).collect();
            for (r, th) in angles.iter().enumerate() {
                let p = r % n;
                let q = (r + 1) % n;
                let (sn, cs) = th.sin_cos();
                let ph = Complex64::from_polar(1.0, 0.5 * th);
                for row in u.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * cs - y * sn * ph;
                    row[q] = x * sn * ph.conj() + y * cs;
                }
            }
            let b = a.congruence(&u);
            let ea = eigen_hermitian(&a).unwrap();
            let eb = eigen_hermitian(&b).unwrap();
            for (x, y) in ea.values.iter().zip(&eb.values) {
                prop_assert!((x - y).abs() <= 1e-10 * (1.0 + x.abs()));
            }
        }
    }
}
