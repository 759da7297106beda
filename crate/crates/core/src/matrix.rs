//! Minimal dense complex linear algebra: products, Kronecker products,
//! adjoints, traces, Hermitian eigenvalues and PSD tests.
//!
//! Everything here operates on small matrices (8x8 at most), so the
//! implementations favour clarity over scalability. Hermitian eigenvalues
//! are delegated to `nalgebra`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum allowed deviation from Hermiticity before eigenvalue routines
/// refuse the input.
pub const HERMITICITY_TOL: f64 = 1e-9;

/// Default tolerance for positive-semidefiniteness tests.
pub const PSD_TOL: f64 = 1e-10;

/// Maximum allowed deviation of a ket norm from 1.
pub const KET_NORM_TOL: f64 = 1e-9;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Real diagonal matrix.
    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Kronecker product; block (i, j) of the result equals `self[i, j] * other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scaled(&self, factor: f64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm distance to another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-norm deviation from Hermiticity, `max |m - m^dag|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square(), "Hermiticity is defined for square matrices");
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// The input is symmetrized as `(m + m^dag)/2` before the solve so the
    /// solver always sees an exactly Hermitian operator; inputs deviating
    /// from Hermiticity by more than [`HERMITICITY_TOL`] are rejected.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let dev = self.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let n = self.rows;
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| 0.5 * (self[(i, j)] + self[(j, i)].conj()));
        let mut eigs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eigs.sort_by(f64::total_cmp);
        Ok(eigs)
    }

    /// True iff the smallest eigenvalue is at least `-tol`.
    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        let eigs = self.hermitian_eigenvalues()?;
        Ok(eigs.first().is_none_or(|&min| min >= -tol))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.cols, rhs.cols);
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.cols, rhs.cols);
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Unit complex vector representing a pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    data: Vec<Complex64>,
}

impl Ket {
    /// Wraps amplitudes, rejecting vectors whose norm deviates from 1 by
    /// more than [`KET_NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        assert!(!amplitudes.is_empty(), "ket dimension must be positive");
        let ket = Self { data: amplitudes };
        let dev = (ket.norm() - 1.0).abs();
        if dev > KET_NORM_TOL {
            return Err(Error::NotNormalized { deviation: dev });
        }
        Ok(ket)
    }

    /// For amplitudes that are unit-norm by construction.
    pub(crate) fn new_unchecked(amplitudes: Vec<Complex64>) -> Self {
        debug_assert!(!amplitudes.is_empty());
        Self { data: amplitudes }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut data = vec![Complex64::ZERO; dim];
        data[index] = Complex64::ONE;
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron(&self, other: &Ket) -> Ket {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Ket { data }
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "incompatible ket dimensions");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rank-1 outer product `|k⟩⟨k|`; rejects non-normalized input.
    pub fn projector(&self) -> Result<ComplexMatrix> {
        let dev = (self.norm() - 1.0).abs();
        if dev > KET_NORM_TOL {
            return Err(Error::NotNormalized { deviation: dev });
        }
        let n = self.dim();
        Ok(ComplexMatrix::from_fn(n, n, |i, j| {
            self.data[i] * self.data[j].conj()
        }))
    }

    /// Quadratic form `⟨k|m|k⟩` of a Hermitian operator (real part).
    pub fn expectation(&self, m: &ComplexMatrix) -> Result<f64> {
        if !m.is_square() || m.rows() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expectation of a {}x{} operator in a dim-{} ket",
                m.rows(),
                m.cols(),
                self.dim()
            )));
        }
        let mut acc = Complex64::ZERO;
        for i in 0..self.dim() {
            let mut row = Complex64::ZERO;
            for j in 0..self.dim() {
                row += m[(i, j)] * self.data[j];
            }
            acc += self.data[i].conj() * row;
        }
        Ok(acc.re)
    }
}

/// Real part of `Tr(a b)`.
pub fn trace_product_re(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.rows() != b.cols() || a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "trace of a {}x{} with a {}x{} product",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut acc = Complex64::ZERO;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    Ok(acc.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_of_basis_projectors() {
        let p0 = Ket::basis(2, 0).projector().unwrap();
        let p1 = Ket::basis(2, 1).projector().unwrap();
        let k = p0.kron(&p1);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == 1 && j == 1 { 1.0 } else { 0.0 };
                assert_eq!(k[(i, j)], c(want, 0.0));
            }
        }
    }

    #[test]
    fn kron_of_single_copy_averages() {
        // theta = pi/3: cos^2 = 3/4, sin^2 = 1/4
        let d = ComplexMatrix::diag(&[0.75, 0.25]);
        let k = d.kron(&d);
        let want = [9.0 / 16.0, 3.0 / 16.0, 3.0 / 16.0, 1.0 / 16.0];
        for (i, w) in want.iter().enumerate() {
            assert_abs_diff_eq!(k[(i, i)].re, w, epsilon = 1e-15);
        }
    }

    #[test]
    fn projector_of_zero_ket() {
        let p = Ket::basis(2, 0).projector().unwrap();
        assert_eq!(p, ComplexMatrix::diag(&[1.0, 0.0]));
    }

    #[test]
    fn projector_of_symmetric_bell_component() {
        let amp = std::f64::consts::FRAC_1_SQRT_2;
        let u = Ket::new(vec![c(0.0, 0.0), c(amp, 0.0), c(amp, 0.0), c(0.0, 0.0)]).unwrap();
        let p = u.projector().unwrap();
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert_abs_diff_eq!(p[(i, j)].re, 0.5, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(p.trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn projector_rejects_unnormalized() {
        let k = Ket {
            data: vec![c(2.0, 0.0), c(0.0, 0.0)],
        };
        assert!(matches!(k.projector(), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn ket_constructor_checks_norm() {
        assert!(Ket::new(vec![c(0.9, 0.0), c(0.0, 0.0)]).is_err());
        assert!(Ket::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).is_ok());
    }

    #[test]
    fn random_projector_trace_is_one() {
        // pseudo-random but fixed amplitudes, normalized by hand
        let raw: Vec<Complex64> = (0..8)
            .map(|i| c((i as f64 * 0.37).sin(), (i as f64 * 0.61).cos()))
            .collect();
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let k = Ket::new(raw.into_iter().map(|z| z / norm).collect()).unwrap();
        let p = k.projector().unwrap();
        assert_abs_diff_eq!(p.trace().re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.trace().im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = ComplexMatrix::diag(&[3.0, 1.0, 2.0]);
        let e = m.hermitian_eigenvalues().unwrap();
        assert_abs_diff_eq!(e[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[2], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenvalues_of_pauli_x() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::ONE;
        m[(1, 0)] = Complex64::ONE;
        let e = m.hermitian_eigenvalues().unwrap();
        assert_abs_diff_eq!(e[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenvalues_reject_non_square() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            m.hermitian_eigenvalues(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(0.5, 0.0);
        assert!(matches!(
            m.hermitian_eigenvalues(),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn psd_accepts_boundary_and_rejects_negative() {
        assert!(ComplexMatrix::diag(&[0.0, 1.0]).is_psd(1e-10).unwrap());
        assert!(!ComplexMatrix::diag(&[-1e-3, 1.0]).is_psd(1e-10).unwrap());
    }

    #[test]
    fn trace_product_matches_explicit_product() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c((i + j) as f64, 0.3 * i as f64));
        let h = &a + &a.adjoint();
        let b = ComplexMatrix::diag(&[0.7, -0.2]);
        let direct = (&h * &b).trace().re;
        assert_abs_diff_eq!(trace_product_re(&h, &b).unwrap(), direct, epsilon = 1e-14);
    }
}
