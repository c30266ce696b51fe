//! Dense complex matrix primitives.
//!
//! Everything in the crate is carried by [`CMatrix`], a heap-allocated
//! `nalgebra` matrix of double-precision complex numbers. Numerical decisions
//! (equality, positivity, rank) all go through a single [`Tolerance`].

use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const DEFAULT_ATOL: f64 = 1e-9;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Absolute tolerance used for equality, positivity and rank decisions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    atol: f64,
}

impl Tolerance {
    pub fn new(atol: f64) -> Result<Self> {
        if atol.is_finite() && atol > 0.0 {
            Ok(Self { atol })
        } else {
            Err(Error::InvalidTolerance(atol))
        }
    }

    #[inline]
    pub fn atol(&self) -> f64 {
        self.atol
    }

    /// Singular values at or below this are treated as zero.
    pub fn rank_cutoff(&self, largest_singular_value: f64) -> f64 {
        self.atol * largest_singular_value.max(1.0)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { atol: DEFAULT_ATOL }
    }
}

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

pub fn from_rows(rows: &[&[C64]]) -> CMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    CMatrix::from_fn(r, c, |i, j| rows[i][j])
}

pub fn diag(entries: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(entries))
}

pub fn diag_real(entries: &[f64]) -> CMatrix {
    CMatrix::from_fn(entries.len(), entries.len(), |i, j| {
        if i == j {
            real(entries[i])
        } else {
            ZERO
        }
    })
}

/// `|p><q|` in dimension `d`.
pub fn matrix_unit(d: usize, p: usize, q: usize) -> CMatrix {
    let mut m = zeros(d, d);
    m[(p, q)] = ONE;
    m
}

/// Computational basis vector `|k>` in dimension `d`.
pub fn basis_vector(d: usize, k: usize) -> CVector {
    let mut v = CVector::zeros(d);
    v[k] = ONE;
    v
}

/// `|v><v|`.
pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.trace()
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Kronecker product; `a ⊗ b` acts on the left factor with `a`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn tensor_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

/// Block-diagonal `a ⊕ b`.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = zeros(ar + br, ac + bc);
    out.view_mut((0, 0), (ar, ac)).copy_from(a);
    out.view_mut((ar, ac), (br, bc)).copy_from(b);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceSide {
    Left,
    Right,
}

/// Trace out one factor of a bipartite operator on `C^dim_left ⊗ C^dim_right`.
pub fn partial_trace(
    x: &CMatrix,
    dim_left: usize,
    dim_right: usize,
    side: TraceSide,
) -> Result<CMatrix> {
    let n = dim_left * dim_right;
    if x.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "partial trace expects {n}x{n}, got {}x{}",
            x.nrows(),
            x.ncols()
        )));
    }
    Ok(match side {
        TraceSide::Left => CMatrix::from_fn(dim_right, dim_right, |i, j| {
            (0..dim_left)
                .map(|k| x[(k * dim_right + i, k * dim_right + j)])
                .sum()
        }),
        TraceSide::Right => CMatrix::from_fn(dim_left, dim_left, |i, j| {
            (0..dim_right)
                .map(|k| x[(i * dim_right + k, j * dim_right + k)])
                .sum()
        }),
    })
}

/// Singular values plus right singular vectors, with the input padded by zero
/// rows so that `V` is always square.
fn full_right_svd<T>(m: &DMatrix<T>) -> (Vec<f64>, DMatrix<T>)
where
    T: ComplexField<RealField = f64>,
{
    let (rows, cols) = m.shape();
    let padded = if rows < cols {
        let mut p = DMatrix::<T>::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    (svd.singular_values.iter().copied().collect(), v_t)
}

/// Orthonormal basis of the numerical nullspace `{v : m v ≈ 0}`.
///
/// Singular values at or below `atol · max(σ_max, 1)` count as zero.
pub fn nullspace_basis<T>(m: &DMatrix<T>, tol: Tolerance) -> Vec<DVector<T>>
where
    T: ComplexField<RealField = f64>,
{
    if m.ncols() == 0 {
        return Vec::new();
    }
    let (sv, v_t) = full_right_svd(m);
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let cutoff = tol.rank_cutoff(smax);
    sv.iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(k, _)| v_t.row(k).adjoint())
        .collect()
}

pub fn singular_values<T>(m: &DMatrix<T>) -> Vec<f64>
where
    T: ComplexField<RealField = f64>,
{
    if m.is_empty() {
        return Vec::new();
    }
    m.clone().singular_values().iter().copied().collect()
}

/// Number of singular values above the relative cutoff.
pub fn numerical_rank<T>(m: &DMatrix<T>, tol: Tolerance) -> usize
where
    T: ComplexField<RealField = f64>,
{
    let sv = singular_values(m);
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let cutoff = tol.rank_cutoff(smax);
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Entrywise max-modulus distance; infinite when the shapes differ.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Matrix equality: entrywise max-modulus difference within `atol`.
pub fn approx_eq(a: &CMatrix, b: &CMatrix, tol: Tolerance) -> bool {
    max_abs_diff(a, b) <= tol.atol()
}

pub fn is_hermitian(m: &CMatrix, tol: Tolerance) -> bool {
    m.is_square() && max_abs_diff(m, &m.adjoint()) <= tol.atol()
}

/// Eigen-decomposition of the Hermitian part `(m + m†)/2`.
/// Eigenvalues are returned in ascending order with matching eigenvector columns.
pub fn hermitian_eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    (values, vectors)
}

pub fn min_eigenvalue_hermitian(m: &CMatrix) -> f64 {
    hermitian_eigh(m).0.first().copied().unwrap_or(0.0)
}

/// Hermitian within `atol` and every eigenvalue `≥ -atol`.
pub fn is_psd(m: &CMatrix, tol: Tolerance) -> bool {
    if !is_hermitian(m, tol) {
        return false;
    }
    min_eigenvalue_hermitian(m) >= -tol.atol()
}

/// Hilbert–Schmidt inner product `trace(a† b)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<C64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "hs_inner of {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
}

/// Max-modulus deviation of `u† u` from the identity.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

pub fn is_unitary(u: &CMatrix, tol: Tolerance) -> bool {
    unitarity_deviation(u) <= tol.atol()
}

/// Cyclic shift `|k> ↦ |k+1 mod d>`.
pub fn shift(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| if i == (j + 1) % d { ONE } else { ZERO })
}

/// Clock matrix `diag(ω^k)` with `ω = e^{2πi/d}`.
pub fn clock(d: usize) -> CMatrix {
    let w = 2.0 * std::f64::consts::PI / d as f64;
    CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            C64::from_polar(1.0, w * i as f64)
        } else {
            ZERO
        }
    })
}

/// Pauli matrices.
pub mod pauli {
    use super::*;

    pub fn x() -> CMatrix {
        from_rows(&[&[ZERO, ONE], &[ONE, ZERO]])
    }

    pub fn y() -> CMatrix {
        from_rows(&[&[ZERO, -I], &[I, ZERO]])
    }

    pub fn z() -> CMatrix {
        from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]])
    }

    /// `[σ_x, σ_y, σ_z]`.
    pub fn vector() -> [CMatrix; 3] {
        [x(), y(), z()]
    }
}
