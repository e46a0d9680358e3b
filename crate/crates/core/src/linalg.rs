//! Dense complex matrices and the Hermitian eigensolver.
//!
//! Everything here is sized for the problem at hand — bipartite states of
//! dimension at most 16 — so the representation is a flat row-major
//! `Vec<Complex64>` and the algorithms are the simple ones: naive
//! multiplication and a cyclic Jacobi eigensolver. Jacobi keeps the solver
//! dependency-free and, because the sweep order is fixed, bit-for-bit
//! deterministic for identical input.

use num_complex::Complex;

use crate::tol;
use crate::{CvurError, Result};

pub type Complex64 = Complex<f64>;

/// Largest matrix dimension the eigensolver accepts.
pub const MAX_EIG_DIM: usize = 16;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    data: Vec<Complex64>,
    rows: usize,
    cols: usize,
}

impl ComplexMatrix {
    /// All-zero `rows × cols` matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
            rows,
            cols,
        }
    }

    /// `n × n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from a row-major slice of entries; `data.len()` must equal `rows * cols`.
    pub fn from_slice(rows: usize, cols: usize, data: &[Complex64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(CvurError::InvalidDimensions(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        Ok(ComplexMatrix {
            data: data.to_vec(),
            rows,
            cols,
        })
    }

    /// Build a square matrix from real row-major entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        let data: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_slice(n, n, &data)
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape(other, "add")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ComplexMatrix {
            data,
            rows: self.rows,
            cols: self.cols,
        })
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape(other, "sub")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ComplexMatrix {
            data,
            rows: self.rows,
            cols: self.cols,
        })
    }

    pub fn scale(&self, c: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            data: self.data.iter().map(|a| a * c).collect(),
            rows: self.rows,
            cols: self.cols,
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(CvurError::InvalidDimensions(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix {
            data: self.data.iter().map(|a| a.conj()).collect(),
            rows: self.rows,
            cols: self.cols,
        }
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(CvurError::InvalidDimensions(format!(
                "trace of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(CvurError::InvalidDimensions(format!(
                "trace of product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                t += self.get(i, k) * other.get(k, i);
            }
        }
        Ok(t)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// `‖self − other‖_F`.
    pub fn distance(&self, other: &ComplexMatrix) -> Result<f64> {
        Ok(self.sub(other)?.frobenius_norm())
    }

    /// True when `‖self − self†‖_F ≤ tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        acc.sqrt() <= tol
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Trace out subsystem B of an operator on `dim_a ⊗ dim_b`.
    pub fn partial_trace_b(&self, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
        self.check_bipartite(dim_a, dim_b)?;
        let mut out = ComplexMatrix::zeros(dim_a, dim_a);
        for i in 0..dim_a {
            for k in 0..dim_a {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..dim_b {
                    acc += self.get(i * dim_b + j, k * dim_b + j);
                }
                out.set(i, k, acc);
            }
        }
        Ok(out)
    }

    /// Trace out subsystem A of an operator on `dim_a ⊗ dim_b`.
    pub fn partial_trace_a(&self, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
        self.check_bipartite(dim_a, dim_b)?;
        let mut out = ComplexMatrix::zeros(dim_b, dim_b);
        for j in 0..dim_b {
            for l in 0..dim_b {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..dim_a {
                    acc += self.get(i * dim_b + j, i * dim_b + l);
                }
                out.set(j, l, acc);
            }
        }
        Ok(out)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in ascending order with matching orthonormal
    /// eigenvector columns. Input must be Hermitian within [`tol::TAU_HERM`]
    /// and no larger than [`MAX_EIG_DIM`]. Within a numerically degenerate
    /// cluster the vectors are re-orthonormalized by Gram–Schmidt in index
    /// order, so the output depends only on the input entries.
    pub fn hermitian_eig(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(CvurError::InvalidDimensions(format!(
                "eigendecomposition of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 || n > MAX_EIG_DIM {
            return Err(CvurError::InvalidDimensions(format!(
                "eigensolver handles 1..={} dimensions, got {}",
                MAX_EIG_DIM, n
            )));
        }
        if !self.is_hermitian(tol::TAU_HERM) {
            return Err(CvurError::NonHermitian(format!(
                "matrix deviates from its adjoint by {:.3e}",
                self.sub(&self.dagger()).map(|d| d.frobenius_norm()).unwrap_or(f64::NAN)
            )));
        }

        // Work on the symmetrized copy so rounding in the input cannot bias
        // the iteration.
        let mut a = self.add(&self.dagger())?.scale(Complex64::new(0.5, 0.0));
        let mut v = ComplexMatrix::identity(n);
        let norm = a.frobenius_norm().max(f64::MIN_POSITIVE);

        let mut converged = false;
        for _ in 0..tol::JACOBI_MAX_SWEEPS {
            if off_diagonal_norm(&a) <= tol::JACOBI_EPS * norm {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > tol::JACOBI_EPS * norm {
            return Err(CvurError::InternalInconsistency(format!(
                "Jacobi failed to converge in {} sweeps (off-diagonal {:.3e})",
                tol::JACOBI_MAX_SWEEPS,
                off_diagonal_norm(&a)
            )));
        }

        // Sort ascending, permuting eigenvector columns along.
        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
        let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let mut vectors = ComplexMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                vectors.set(row, new_col, v.get(row, old_col));
            }
        }

        orthonormalize_clusters(&values, &mut vectors);
        Ok((values, vectors))
    }

    /// Square root of a positive-semidefinite Hermitian matrix.
    ///
    /// Eigenvalues in `(−TAU_PSD, 0)` are clamped to zero; anything below
    /// `−TAU_PSD` rejects the input as not PSD.
    pub fn psd_sqrt(&self) -> Result<ComplexMatrix> {
        let (values, vectors) = self.hermitian_eig()?;
        if let Some(&min) = values.first() {
            if min < -tol::TAU_PSD {
                return Err(CvurError::NotPositiveSemidefinite {
                    min_eigenvalue: min,
                });
            }
        }
        let n = self.rows;
        let mut out = ComplexMatrix::zeros(n, n);
        // Eigenvalues at the solver's noise floor must be zeroed before the
        // square root amplifies them (λ ≈ 1e-17 → √λ ≈ 3e-9).
        let floor = values.iter().fold(0.0f64, |a, &b| a.max(b)) * tol::TAU_EIG_REL;
        for (k, &lam) in values.iter().enumerate() {
            if lam <= floor {
                continue;
            }
            let root = lam.sqrt();
            for i in 0..n {
                for j in 0..n {
                    let v = out.get(i, j)
                        + vectors.get(i, k) * vectors.get(j, k).conj() * root;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &ComplexMatrix, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CvurError::InvalidDimensions(format!(
                "{}: {}x{} vs {}x{}",
                op, self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn check_bipartite(&self, dim_a: usize, dim_b: usize) -> Result<()> {
        if !self.is_square() || self.rows != dim_a * dim_b || dim_a == 0 || dim_b == 0 {
            return Err(CvurError::InvalidDimensions(format!(
                "{}x{} matrix is not an operator on {}⊗{}",
                self.rows, self.cols, dim_a, dim_b
            )));
        }
        Ok(())
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation zeroing the (p, q) entry of the Hermitian matrix `a`,
/// accumulated into `v`.
///
/// With `a_pq = ρ e^{iφ}` the phase is absorbed by `D = diag(1, e^{−iφ})`,
/// leaving a real symmetric 2×2 block handled by the classical rotation; the
/// applied unitary is `U = D·R(θ)` with `tan 2θ = 2ρ / (a_pp − a_qq)`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let rho = apq.norm();
    if rho == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let phase = apq / rho; // e^{iφ}

    // Classical symmetric Schur 2×2: smaller-angle root for stability.
    let tau = (aqq - app) / (2.0 * rho);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    // Column update: A ← A·U, where U_pp = c, U_pq = s, U_qp = −s·e^{−iφ},
    // U_qq = c·e^{−iφ} (block entries; identity elsewhere).
    let e_neg = phase.conj();
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c - aiq * (e_neg * s));
        a.set(i, q, aip * s + aiq * (e_neg * c));
    }
    // Row update: A ← U†·A.
    let e_pos = phase;
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * (e_pos * s));
        a.set(q, j, apj * s + aqj * (e_pos * c));
    }
    // Pin the rotated entries: exactly zero off-diagonal, real diagonal.
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dp = a.get(p, p).re;
    let dq = a.get(q, q).re;
    a.set(p, p, Complex64::new(dp, 0.0));
    a.set(q, q, Complex64::new(dq, 0.0));

    // Eigenvector accumulation: V ← V·U.
    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c - viq * (e_neg * s));
        v.set(i, q, vip * s + viq * (e_neg * c));
    }
}

/// Gram–Schmidt, in index order, inside every numerically degenerate
/// eigenvalue cluster. Jacobi already returns an orthonormal basis; this
/// pass just pins the basis inside each cluster to a deterministic choice.
fn orthonormalize_clusters(values: &[f64], vectors: &mut ComplexMatrix) {
    let n = values.len();
    if n < 2 {
        return;
    }
    let diameter = values[n - 1] - values[0];
    let width = tol::TAU_CLUSTER * diameter.max(f64::MIN_POSITIVE);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] <= width {
            end += 1;
        }
        if end - start > 1 {
            gram_schmidt_columns(vectors, start, end);
        }
        start = end;
    }
}

fn gram_schmidt_columns(vectors: &mut ComplexMatrix, start: usize, end: usize) {
    let n = vectors.rows();
    for col in start..end {
        for prev in start..col {
            // overlap = ⟨prev, col⟩
            let mut overlap = Complex64::new(0.0, 0.0);
            for i in 0..n {
                overlap += vectors.get(i, prev).conj() * vectors.get(i, col);
            }
            for i in 0..n {
                let v = vectors.get(i, col) - overlap * vectors.get(i, prev);
                vectors.set(i, col, v);
            }
        }
        let mut norm_sq = 0.0;
        for i in 0..n {
            norm_sq += vectors.get(i, col).norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm > 0.0 {
            for i in 0..n {
                let v = vectors.get(i, col) / norm;
                vectors.set(i, col, v);
            }
        }
    }
}

/// Largest singular value of a real 3×3 matrix with its singular vector pair.
///
/// Returns `(σ, a, b)` with `σ = max‖m·x‖ over unit x`, `b` the maximizing
/// unit vector and `a = m·b / σ`, so `aᵀ·m·b = σ ≥ 0`. Computed from the
/// eigendecomposition of `mᵀm`; for `σ = 0` the vector pair defaults to the
/// first coordinate axes.
pub fn largest_singular_value(m: &[[f64; 3]; 3]) -> ([f64; 3], [f64; 3], f64) {
    // mᵀm, symmetric PSD.
    let mut mtm = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                mtm[i][j] += m[k][i] * m[k][j];
            }
        }
    }
    let flat: Vec<f64> = mtm.iter().flatten().copied().collect();
    let h = ComplexMatrix::from_real(3, &flat).expect("3x3 shape");
    let (values, vectors) = h
        .hermitian_eig()
        .expect("mᵀm is symmetric by construction");
    let lam = values[2].max(0.0);
    let sigma = lam.sqrt();

    // Right vector: eigenvector of the largest eigenvalue; real up to the
    // solver's rounding because the input is real symmetric.
    let mut b = [0.0; 3];
    for i in 0..3 {
        b[i] = vectors.get(i, 2).re;
    }
    let nb = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    if nb > 0.0 {
        for x in &mut b {
            *x /= nb;
        }
    } else {
        b = [1.0, 0.0, 0.0];
    }

    let mut a = [0.0; 3];
    if sigma > f64::MIN_POSITIVE {
        for i in 0..3 {
            a[i] = (m[i][0] * b[0] + m[i][1] * b[1] + m[i][2] * b[2]) / sigma;
        }
        let na = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        if na > 0.0 {
            for x in &mut a {
                *x /= na;
            }
        }
    } else {
        a = [1.0, 0.0, 0.0];
        b = [1.0, 0.0, 0.0];
    }
    (a, b, sigma)
}
