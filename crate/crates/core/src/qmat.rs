//! Fixed-size complex matrices, Hermitian eigenvalues, partial traces and
//! entropies for qubit and two-qubit operators.
//!
//! Two-qubit operators are ordered as `first ⊗ second`, so basis index
//! `2 * i + j` labels `|i⟩ ⊗ |j⟩`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Asymmetry above which an input is rejected as non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Eigenvalues in `[-EIGEN_FLOOR, 0)` are rounding noise and clamp to zero.
pub const EIGEN_FLOOR: f64 = 1e-10;
/// Eigenvalues at or below this contribute nothing to an entropy.
const ENTROPY_CUTOFF: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-9;
const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 64;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Dense `N x N` complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type Mat2 = CMat<2>;
pub type Mat3 = CMat<3>;
pub type Mat4 = CMat<4>;

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn diag(values: [f64; N]) -> Self {
        Self::from_fn(|i, j| if i == j { C64::new(values[i], 0.0) } else { ZERO })
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[C64; N]) -> Self {
        Self::from_fn(|i, j| v[i] * v[j].conj())
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[i][j]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn apply(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// `U self U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest `|m_ij - conj(m_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<C64> {
        self.0.iter().flatten().copied().collect()
    }

    fn from_entries(entries: &[C64]) -> Self {
        Self::from_fn(|i, j| entries[i * N + j])
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, c| a.0[r / 2][c / 2] * b.0[r % 2][c % 2])
}

/// Which tensor factor of a two-qubit operator survives a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Partial trace of a raw 4x4 operator.
pub fn partial_trace_mat(m: &Mat4, keep: Keep) -> Mat2 {
    Mat2::from_fn(|i, j| match keep {
        Keep::First => m.0[2 * i][2 * j] + m.0[2 * i + 1][2 * j + 1],
        Keep::Second => m.0[i][j] + m.0[2 + i][2 + j],
    })
}

/// Eigenvalues of a Hermitian 2x2 matrix, descending, from the quadratic
/// formula.
pub fn eigvalsh2(m: &Mat2) -> [f64; 2] {
    let a = m.0[0][0].re;
    let d = m.0[1][1].re;
    let b = m.0[0][1];
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b.norm());
    [mean + radius, mean - radius]
}

/// Eigenvalues of a Hermitian matrix of any small size, descending.
///
/// The complex `A + iB` is embedded as the real symmetric `[[A, -B], [B, A]]`,
/// diagonalized with cyclic Jacobi rotations; each eigenvalue then appears
/// twice and every second one is kept.
pub fn eigvalsh<const N: usize>(m: &CMat<N>) -> Result<Vec<f64>> {
    let deviation = m.hermiticity_error();
    if deviation > HERMITIAN_TOL || !m.is_finite() {
        return Err(Error::NonHermitianInput { deviation });
    }
    let n = 2 * N;
    let mut a = vec![0.0_f64; n * n];
    for i in 0..N {
        for j in 0..N {
            // symmetrize so rounding asymmetry does not leak into the result
            let z = 0.5 * (m.0[i][j] + m.0[j][i].conj());
            a[i * n + j] = z.re;
            a[(i + N) * n + (j + N)] = z.re;
            a[i * n + (j + N)] = -z.im;
            a[(i + N) * n + j] = z.im;
        }
    }
    jacobi_symmetric(&mut a, n);
    let mut diag: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    diag.sort_by(|x, y| y.total_cmp(x));
    Ok(diag.into_iter().step_by(2).collect())
}

fn jacobi_symmetric(a: &mut [f64], n: usize) {
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_TOL * 1e-3 * scale {
            return;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
}

/// A qubit or two-qubit density matrix: Hermitian, unit trace, positive
/// semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl DensityMatrix {
    /// Validates and wraps a row-major `dim x dim` matrix, `dim ∈ {2, 4}`.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        Self::with_floor(dim, entries, EIGEN_FLOOR)
    }

    /// Like [`DensityMatrix::new`] with a custom floor for the smallest
    /// eigenvalue; used for states produced by numerical integration.
    pub fn with_floor(dim: usize, entries: Vec<C64>, floor: f64) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::DimensionError {
                expected: 4,
                found: dim,
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidState(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        let rho = DensityMatrix { dim, entries };
        let eig = rho.eigenvalues()?;
        let trace: f64 = rho.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {trace} is not 1")));
        }
        let min = eig.last().copied().unwrap_or(0.0);
        if min < -floor {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(rho)
    }

    pub fn from_mat2(m: Mat2) -> Result<Self> {
        Self::new(2, m.entries())
    }

    pub fn from_mat4(m: Mat4) -> Result<Self> {
        Self::new(4, m.entries())
    }

    /// Wraps a matrix produced by a channel or unitary; validity is asserted
    /// in debug builds only.
    pub(crate) fn trusted2(m: Mat2) -> Self {
        Self::trusted(2, m.entries())
    }

    pub(crate) fn trusted4(m: Mat4) -> Self {
        Self::trusted(4, m.entries())
    }

    fn trusted(dim: usize, entries: Vec<C64>) -> Self {
        if cfg!(debug_assertions) {
            if let Err(e) = Self::new(dim, entries.clone()) {
                panic!("channel produced an invalid density matrix: {e}");
            }
        }
        DensityMatrix { dim, entries }
    }

    pub fn pure<const N: usize>(psi: &[C64; N]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v: [C64; N] = std::array::from_fn(|i| psi[i] / norm);
        Self::new(N, CMat::<N>::outer(&v).entries())
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let d = dim as f64;
        let entries = (0..dim * dim)
            .map(|k| {
                if k / dim == k % dim {
                    C64::new(1.0 / d, 0.0)
                } else {
                    ZERO
                }
            })
            .collect();
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn to_mat2(&self) -> Result<Mat2> {
        match self.dim {
            2 => Ok(Mat2::from_entries(&self.entries)),
            d => Err(Error::DimensionError { expected: 2, found: d }),
        }
    }

    pub fn to_mat4(&self) -> Result<Mat4> {
        match self.dim {
            4 => Ok(Mat4::from_entries(&self.entries)),
            d => Err(Error::DimensionError { expected: 4, found: d }),
        }
    }

    /// Real eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(self)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues of a density matrix (or any Hermitian matrix wrapped as one),
/// descending.
pub fn hermitian_eigenvalues(m: &DensityMatrix) -> Result<Vec<f64>> {
    match m.dim {
        2 => {
            let mat = Mat2::from_entries(&m.entries);
            let deviation = mat.hermiticity_error();
            if deviation > HERMITIAN_TOL || !mat.is_finite() {
                return Err(Error::NonHermitianInput { deviation });
            }
            Ok(eigvalsh2(&mat).to_vec())
        }
        4 => eigvalsh(&Mat4::from_entries(&m.entries)),
        d => Err(Error::DimensionError { expected: 4, found: d }),
    }
}

/// Shannon entropy in bits of an eigenvalue list, with `0 log 0 = 0`.
///
/// Values in `[-1e-10, 0)` are clamped; anything more negative is an error.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in eigenvalues {
        if lambda < -EIGEN_FLOOR {
            return Err(Error::NegativeEigenvalue(lambda));
        }
        if lambda > ENTROPY_CUTOFF {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s.max(0.0))
}

/// `S(ρ) = -Tr ρ log₂ ρ`.
pub fn von_neumann_entropy(m: &DensityMatrix) -> Result<f64> {
    entropy_of_spectrum(&hermitian_eigenvalues(m)?)
}

/// `H₂(x) = -x log₂ x - (1-x) log₂(1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainError {
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(binary_entropy_unchecked(x))
}

/// [`binary_entropy`] for callers that already guarantee `x ∈ [0, 1]`.
pub(crate) fn binary_entropy_unchecked(x: f64) -> f64 {
    let term = |y: f64| if y > 0.0 { -y * y.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// Reduces a two-qubit state to one factor.
pub fn partial_trace(m: &DensityMatrix, keep: Keep) -> Result<DensityMatrix> {
    if m.dim != 4 {
        return Err(Error::DimensionError {
            expected: 4,
            found: m.dim,
        });
    }
    let reduced = partial_trace_mat(&Mat4::from_entries(&m.entries), keep);
    Ok(DensityMatrix::trusted2(reduced))
}

/// `½ ‖a - b‖₁`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionError {
            expected: a.dim,
            found: b.dim,
        });
    }
    let eig = match a.dim {
        2 => {
            let d = Mat2::from_entries(&a.entries) - Mat2::from_entries(&b.entries);
            eigvalsh2(&d).to_vec()
        }
        _ => eigvalsh(&(Mat4::from_entries(&a.entries) - Mat4::from_entries(&b.entries)))?,
    };
    Ok(0.5 * eig.iter().map(|x| x.abs()).sum::<f64>())
}

/// A qubit state parametrized by its excited population `p` and the
/// ground-excited coherence `r = ⟨0|ρ|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitInput {
    pub p: f64,
    pub r: C64,
}

impl QubitInput {
    const POSITIVITY_SLACK: f64 = 1e-12;

    pub fn new(p: f64, r: C64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::DomainError {
                value: p,
                domain: "population in [0, 1]",
            });
        }
        if !(r.re.is_finite() && r.im.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "r",
                reason: "coherence must be finite".into(),
            });
        }
        if r.norm_sqr() > p * (1.0 - p) + Self::POSITIVITY_SLACK {
            return Err(Error::InvalidState(format!(
                "|r|^2 = {} exceeds p(1-p) = {}",
                r.norm_sqr(),
                p * (1.0 - p)
            )));
        }
        Ok(QubitInput { p, r })
    }

    /// Diagonal input `diag(1-p, p)`.
    pub fn diagonal(p: f64) -> Result<Self> {
        Self::new(p, ZERO)
    }

    pub fn ground() -> Self {
        QubitInput { p: 0.0, r: ZERO }
    }

    pub fn excited() -> Self {
        QubitInput { p: 1.0, r: ZERO }
    }

    /// Reads `p` and `r` back from a qubit density matrix.
    pub fn from_density(m: &DensityMatrix) -> Result<Self> {
        let mat = m.to_mat2()?;
        Self::new(mat.0[1][1].re.clamp(0.0, 1.0), mat.0[0][1])
    }

    pub fn to_mat(&self) -> Mat2 {
        CMat([
            [C64::new(1.0 - self.p, 0.0), self.r],
            [self.r.conj(), C64::new(self.p, 0.0)],
        ])
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::trusted2(self.to_mat())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm2(a: f64, b: C64, d: f64) -> DensityMatrix {
        DensityMatrix::from_mat2(CMat([[C64::new(a, 0.0), b], [b.conj(), C64::new(d, 0.0)]])).unwrap()
    }

    #[test]
    fn eigenvalues_of_simple_qubits() {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let e = hermitian_eigenvalues(&mixed).unwrap();
        assert!((e[0] - 0.5).abs() < 1e-15 && (e[1] - 0.5).abs() < 1e-15);

        let e = hermitian_eigenvalues(&dm2(1.0, ZERO, 0.0)).unwrap();
        assert_eq!(e, vec![1.0, 0.0]);

        // 0.5 ± sqrt(0.18² + 0.24²) = 0.8, 0.2
        let e = hermitian_eigenvalues(&dm2(0.68, C64::new(0.24, 0.0), 0.32)).unwrap();
        assert!((e[0] - 0.8).abs() < 1e-15, "{e:?}");
        assert!((e[1] - 0.2).abs() < 1e-15, "{e:?}");
    }

    #[test]
    fn jacobi_matches_closed_form_on_block_diagonal() {
        let a = CMat([
            [C64::new(0.6, 0.0), C64::new(0.1, -0.2)],
            [C64::new(0.1, 0.2), C64::new(0.4, 0.0)],
        ]);
        let b = Mat2::diag([0.7, 0.3]);
        let e4 = eigvalsh(&kron(&a, &b)).unwrap();
        let ea = eigvalsh2(&a);
        let mut expected: Vec<f64> = ea.iter().flat_map(|x| [x * 0.7, x * 0.3]).collect();
        expected.sort_by(|x, y| y.total_cmp(x));
        for (x, y) in e4.iter().zip(&expected) {
            assert!((x - y).abs() < 1e-13, "{e4:?} vs {expected:?}");
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = Mat4::identity().scale(C64::new(0.25, 0.0));
        m.0[0][1] = C64::new(1e-6, 0.0);
        assert!(matches!(eigvalsh(&m), Err(Error::NonHermitianInput { .. })));
        let bad = DensityMatrix::new(
            2,
            vec![C64::new(0.5, 0.0), C64::new(0.1, 0.0), ZERO, C64::new(0.5, 0.0)],
        );
        assert!(matches!(bad, Err(Error::NonHermitianInput { .. })));
    }

    #[test]
    fn entropy_examples() {
        let pure = DensityMatrix::pure(&[C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((von_neumann_entropy(&mixed).unwrap() - 1.0).abs() < 1e-15);
        let s = von_neumann_entropy(&dm2(0.75, ZERO, 0.25)).unwrap();
        assert!((s - 0.811_278_124_459_132_9).abs() < 1e-15);
        let four = DensityMatrix::maximally_mixed(4).unwrap();
        assert!((von_neumann_entropy(&four).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_clamps_tiny_negatives_and_rejects_large_ones() {
        assert_eq!(entropy_of_spectrum(&[1.0, -5e-11]).unwrap(), 0.0);
        assert!(matches!(
            entropy_of_spectrum(&[1.0, -1e-6]),
            Err(Error::NegativeEigenvalue(_))
        ));
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // mpmath, 30 digits
        assert!((binary_entropy(0.11).unwrap() - 0.499_915_958_164_528).abs() < 1e-15);
        assert!(matches!(binary_entropy(1.5), Err(Error::DomainError { .. })));
        assert!(matches!(binary_entropy(-1e-9), Err(Error::DomainError { .. })));
    }

    #[test]
    fn partial_trace_of_products_and_bell_state() {
        let s1 = CMat([
            [C64::new(0.7, 0.0), C64::new(0.1, 0.3)],
            [C64::new(0.1, -0.3), C64::new(0.3, 0.0)],
        ]);
        let s2 = Mat2::diag([0.2, 0.8]);
        let prod = DensityMatrix::from_mat4(kron(&s1, &s2)).unwrap();
        let first = partial_trace(&prod, Keep::First).unwrap().to_mat2().unwrap();
        let second = partial_trace(&prod, Keep::Second).unwrap().to_mat2().unwrap();
        assert!(first.max_abs_diff(&s1) < 1e-15);
        assert!(second.max_abs_diff(&s2) < 1e-15);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = DensityMatrix::pure(&[C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)]).unwrap();
        for keep in [Keep::First, Keep::Second] {
            let r = partial_trace(&bell, keep).unwrap().to_mat2().unwrap();
            assert!(r.max_abs_diff(&Mat2::diag([0.5, 0.5])) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_rejects_qubits() {
        let q = DensityMatrix::maximally_mixed(2).unwrap();
        assert_eq!(
            partial_trace(&q, Keep::First),
            Err(Error::DimensionError { expected: 4, found: 2 })
        );
    }

    #[test]
    fn dimension_and_trace_validation() {
        assert!(matches!(
            DensityMatrix::new(3, vec![ZERO; 9]),
            Err(Error::DimensionError { .. })
        ));
        let half = vec![C64::new(0.5, 0.0), ZERO, ZERO, C64::new(0.6, 0.0)];
        assert!(matches!(DensityMatrix::new(2, half), Err(Error::InvalidState(_))));
        let neg = vec![C64::new(1.1, 0.0), ZERO, ZERO, C64::new(-0.1, 0.0)];
        assert!(matches!(DensityMatrix::new(2, neg), Err(Error::NegativeEigenvalue(_))));
    }

    #[test]
    fn qubit_input_positivity() {
        assert!(QubitInput::new(0.5, C64::new(0.5, 0.0)).is_ok());
        assert!(QubitInput::new(0.5, C64::new(0.51, 0.0)).is_err());
        assert!(QubitInput::new(1.2, ZERO).is_err());
        let q = QubitInput::new(0.3, C64::new(0.1, -0.2)).unwrap();
        assert_eq!(QubitInput::from_density(&q.to_density()).unwrap(), q);
    }

    #[test]
    fn trace_distance_of_orthogonal_states_is_one() {
        let a = QubitInput::ground().to_density();
        let b = QubitInput::excited().to_density();
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(trace_distance(&a, &a).unwrap(), 0.0);
    }
}
