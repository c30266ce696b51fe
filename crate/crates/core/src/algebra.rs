//! Concrete finite-dimensional C*-algebras and their trace vectors.
//!
//! An algebra is described in block form: in an adapted orthonormal basis it
//! is `⊕_i (1_{m_i} ⊗ M_{n_i}) ⊕ 0_k`, and `basis_change` is the unitary `U`
//! taking computational coordinates to adapted ones, so that the algebra is
//! `U† (⊕_i 1_{m_i} ⊗ M_{n_i} ⊕ 0_k) U`. Inside block `i` the multiplicity
//! factor `C^{m_i}` is the left tensor factor.

use std::f64::consts::PI;

use crate::channel::DensityOperator;
use crate::condexp;
use crate::error::{Error, Result};
use crate::matrix::{self, identity, real, tensor, CMatrix, CVector, Tolerance, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSpec {
    blocks: Vec<(usize, usize)>,
    zero_dim: usize,
    basis_change: CMatrix,
}

impl AlgebraSpec {
    pub fn new(
        blocks: Vec<(usize, usize)>,
        zero_dim: usize,
        basis_change: CMatrix,
        tol: Tolerance,
    ) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::OutOfRange(
                "an algebra needs at least one block".into(),
            ));
        }
        if blocks.iter().any(|&(m, n)| m == 0 || n == 0) {
            return Err(Error::OutOfRange("block sizes must be positive".into()));
        }
        let dim = blocks.iter().map(|(m, n)| m * n).sum::<usize>() + zero_dim;
        if basis_change.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch(format!(
                "basis change is {}x{}, algebra acts on dimension {dim}",
                basis_change.nrows(),
                basis_change.ncols()
            )));
        }
        let deviation = matrix::unitarity_deviation(&basis_change);
        if deviation > tol.atol() {
            return Err(Error::NotUnitary {
                index: 0,
                deviation,
            });
        }
        Ok(Self {
            blocks,
            zero_dim,
            basis_change,
        })
    }

    /// Block algebra in computational coordinates.
    pub fn standard(blocks: Vec<(usize, usize)>, zero_dim: usize) -> Result<Self> {
        let dim = blocks.iter().map(|(m, n)| m * n).sum::<usize>() + zero_dim;
        Self::new(blocks, zero_dim, identity(dim), Tolerance::default())
    }

    /// Diagonal matrices `Δ_d`.
    pub fn diagonal(d: usize) -> Self {
        Self::standard(vec![(1, 1); d], 0).expect("valid blocks")
    }

    /// Scalars `C·1_d`.
    pub fn scalars(d: usize) -> Self {
        Self::standard(vec![(d, 1)], 0).expect("valid blocks")
    }

    /// The full matrix algebra `M_d`.
    pub fn full(d: usize) -> Self {
        Self::standard(vec![(1, d)], 0).expect("valid blocks")
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn zero_dim(&self) -> usize {
        self.zero_dim
    }

    pub fn basis_change(&self) -> &CMatrix {
        &self.basis_change
    }

    /// Dimension of the Hilbert space the algebra acts on.
    pub fn dim(&self) -> usize {
        self.basis_change.nrows()
    }

    /// Linear dimension of the algebra, `Σ n_i²`.
    pub fn algebra_dim(&self) -> usize {
        self.blocks.iter().map(|(_, n)| n * n).sum()
    }

    pub fn is_unital(&self) -> bool {
        self.zero_dim == 0
    }

    /// Starting index of each block in adapted coordinates.
    pub fn block_offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |off, &(m, n)| {
                let start = *off;
                *off += m * n;
                Some(start)
            })
            .collect()
    }

    /// `U x U†`.
    pub fn to_adapted(&self, x: &CMatrix) -> CMatrix {
        &self.basis_change * x * self.basis_change.adjoint()
    }

    /// `U† y U`.
    pub fn from_adapted(&self, y: &CMatrix) -> CMatrix {
        self.basis_change.adjoint() * y * &self.basis_change
    }

    pub fn vector_from_adapted(&self, v: &CVector) -> CVector {
        self.basis_change.adjoint() * v
    }

    /// Embeds `1_{m_i} ⊗ x` for block `i` into the full space, in computational coordinates.
    pub fn embed(&self, block: usize, x: &CMatrix) -> CMatrix {
        let (m, n) = self.blocks[block];
        let off = self.block_offsets()[block];
        let mut y = CMatrix::zeros(self.dim(), self.dim());
        y.view_mut((off, off), (m * n, m * n))
            .copy_from(&tensor(&identity(m), x));
        self.from_adapted(&y)
    }

    /// The `Σ n_i²` elements `U† (1_{m_i} ⊗ E_st) U`, an HS-orthogonal basis of the algebra.
    pub fn canonical_basis(&self) -> Vec<CMatrix> {
        let mut out = Vec::with_capacity(self.algebra_dim());
        for (i, &(_, n)) in self.blocks.iter().enumerate() {
            for s in 0..n {
                for t in 0..n {
                    out.push(self.embed(i, &matrix::matrix_unit(n, s, t)));
                }
            }
        }
        out
    }

    /// Hilbert–Schmidt orthogonal projection onto the algebra, computed by
    /// expanding in the canonical basis.
    pub fn orthogonal_projection(&self, x: &CMatrix) -> CMatrix {
        self.canonical_basis()
            .iter()
            .fold(CMatrix::zeros(self.dim(), self.dim()), |acc, b| {
                let num = matrix::hs_inner(b, x).expect("same shape");
                let den = matrix::hs_inner(b, b).expect("same shape").re;
                acc + b * (num / den)
            })
    }
}

/// Outcome of checking `<v|a|v> = tr(ρ0 a)` over the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceVectorReport {
    pub vector: CVector,
    pub rho0: DensityOperator,
    /// Worst `|<v|a|v> − tr(ρ0 a)|` over the canonical basis.
    pub max_violation: f64,
    pub passed: bool,
}

fn check_vector(v: &CVector, dim: usize, tol: Tolerance) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "vector has length {}, algebra acts on dimension {dim}",
            v.len()
        )));
    }
    let norm = v.norm();
    if (norm - 1.0).abs() > tol.atol() {
        return Err(Error::NotUnitVector(norm));
    }
    Ok(())
}

/// Tests whether `v` is a trace vector of `alg` with respect to `rho0`.
///
/// Linearity makes the canonical basis sufficient. With `rho0 = 1/n` this is
/// the plain trace-vector condition.
pub fn is_trace_vector(
    v: &CVector,
    alg: &AlgebraSpec,
    rho0: &DensityOperator,
    tol: Tolerance,
) -> Result<TraceVectorReport> {
    check_vector(v, alg.dim(), tol)?;
    if rho0.dim() != alg.dim() {
        return Err(Error::DimensionMismatch(format!(
            "rho0 has dimension {}, algebra acts on dimension {}",
            rho0.dim(),
            alg.dim()
        )));
    }
    let max_violation = alg
        .canonical_basis()
        .iter()
        .map(|a| {
            let expectation = v.dotc(&(a * v));
            let target = (rho0.as_matrix() * a).trace();
            (expectation - target).norm()
        })
        .fold(0.0, f64::max);
    Ok(TraceVectorReport {
        vector: v.clone(),
        rho0: rho0.clone(),
        max_violation,
        passed: max_violation <= tol.atol(),
    })
}

/// Whether `a ↦ a|v>` is injective on the algebra: the vectors `a_k|v>` for
/// the canonical basis must have full rank.
pub fn is_separating(v: &CVector, alg: &AlgebraSpec, tol: Tolerance) -> Result<bool> {
    if v.len() != alg.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector has length {}, algebra acts on dimension {}",
            v.len(),
            alg.dim()
        )));
    }
    let basis = alg.canonical_basis();
    let mut stacked = CMatrix::zeros(alg.dim(), basis.len());
    for (k, a) in basis.iter().enumerate() {
        stacked.set_column(k, &(a * v));
    }
    Ok(matrix::numerical_rank(&stacked, tol) == basis.len())
}

/// A unital algebra has trace vectors iff every block has `m_i ≥ n_i`.
pub fn has_trace_vector(alg: &AlgebraSpec) -> Result<bool> {
    if !alg.is_unital() {
        return Err(Error::NotUnitalAlgebra(alg.zero_dim()));
    }
    Ok(alg.blocks().iter().all(|&(m, n)| m >= n))
}

/// `(1/√n) Σ_{i<n} |e_i> ⊗ |f_i>` on `C^m ⊗ C^n`, a trace vector of `1_m ⊗ M_n`.
pub fn max_entangled_trace_vector(m: usize, n: usize) -> Result<CVector> {
    if m < n || n == 0 {
        return Err(Error::NoTraceVectors { m, n });
    }
    let mut v = CVector::zeros(m * n);
    let amp = real(1.0 / (n as f64).sqrt());
    for i in 0..n {
        v[i * n + i] = amp;
    }
    Ok(v)
}

/// Orthonormal basis of trace vectors for the single block `1_m ⊗ M_n`, in
/// adapted coordinates.
///
/// `v_{k,j} = (S^k D_j ⊗ 1_n) Ω / √n` with `S` the cyclic shift on `C^m`,
/// `D_j = diag(ω^{j·i})`, `ω = e^{2πi/n}` and `Ω = Σ_{i<n} e_i ⊗ f_i`.
pub fn block_trace_vector_onb(m: usize, n: usize) -> Result<Vec<CVector>> {
    let omega_vec = max_entangled_trace_vector(m, n)?;
    let shift = matrix::shift(m);
    let mut out = Vec::with_capacity(m * n);
    let mut shift_k = identity(m);
    for _k in 0..m {
        for j in 0..n {
            let phases: Vec<C64> = (0..m)
                .map(|i| C64::from_polar(1.0, 2.0 * PI * (j * i) as f64 / n as f64))
                .collect();
            let op = &shift_k * matrix::diag(&phases);
            out.push(tensor(&op, &identity(n)) * &omega_vec);
        }
        shift_k = &shift * &shift_k;
    }
    Ok(out)
}

/// Orthonormal basis of `C^n` made of trace vectors of a unital algebra with
/// every `m_i ≥ n_i`.
///
/// A single block uses [`block_trace_vector_onb`]. Several blocks use the
/// phase family `v_r(i, a, t) = ω_N^{r κ} ζ_{m_i}^{a t} / √N` with
/// `κ = o_i + t m_i + a`: the `ω_N` phases make the `N` vectors orthonormal
/// and the `ζ_{m_i}` phases make each block component a scaled isometry.
pub fn trace_vector_onb(alg: &AlgebraSpec) -> Result<Vec<CVector>> {
    if !has_trace_vector(alg)? {
        let &(m, n) = alg
            .blocks()
            .iter()
            .find(|(m, n)| m < n)
            .expect("a deficient block exists");
        return Err(Error::NoTraceVectors { m, n });
    }
    let adapted = if let [(m, n)] = alg.blocks() {
        block_trace_vector_onb(*m, *n)?
    } else {
        let dim = alg.dim();
        let offsets = alg.block_offsets();
        let norm = 1.0 / (dim as f64).sqrt();
        (0..dim)
            .map(|r| {
                let mut v = CVector::zeros(dim);
                for (&(m, n), &off) in alg.blocks().iter().zip(&offsets) {
                    for a in 0..m {
                        for t in 0..n {
                            let kappa = off + t * m + a;
                            let outer = 2.0 * PI * ((r * kappa) % dim) as f64 / dim as f64;
                            let inner = 2.0 * PI * ((a * t) % m) as f64 / m as f64;
                            v[off + a * n + t] = C64::from_polar(norm, outer + inner);
                        }
                    }
                }
                v
            })
            .collect()
    };
    Ok(adapted.iter().map(|v| alg.vector_from_adapted(v)).collect())
}

/// Constructs a trace vector of `alg` with respect to `rho0`.
///
/// Block `i` of `U ρ0 U†` must have the form `1_{m_i} ⊗ w_i`. Its component
/// of the vector is the `m_i × n_i` matrix `V_i = √m_i Σ_k √λ_k |e_k><x_k|`
/// built from the eigenpairs of `w_iᵀ`, so `V_i† V_i = m_i w_iᵀ`; this needs
/// `rank w_i ≤ m_i`.
pub fn trace_vector_wrt(
    alg: &AlgebraSpec,
    rho0: &DensityOperator,
    tol: Tolerance,
) -> Result<CVector> {
    if !alg.is_unital() {
        return Err(Error::NotUnitalAlgebra(alg.zero_dim()));
    }
    if rho0.dim() != alg.dim() {
        return Err(Error::DimensionMismatch(format!(
            "rho0 has dimension {}, algebra acts on dimension {}",
            rho0.dim(),
            alg.dim()
        )));
    }
    let distance = matrix::max_abs_diff(rho0.as_matrix(), &condexp::project(alg, rho0.as_matrix()));
    if distance > tol.atol() {
        return Err(Error::Rho0NotInAlgebra(distance));
    }
    let adapted_rho = alg.to_adapted(rho0.as_matrix());
    let mut v = CVector::zeros(alg.dim());
    for (block, (&(m, n), &off)) in alg.blocks().iter().zip(&alg.block_offsets()).enumerate() {
        let sub = adapted_rho.view((off, off), (m * n, m * n)).into_owned();
        let w = matrix::partial_trace(&sub, m, n, matrix::TraceSide::Left)?.unscale(m as f64);
        let (values, vectors) = matrix::hermitian_eigh(&w.transpose());
        let kept: Vec<usize> = (0..n).rev().filter(|&k| values[k] > tol.atol()).collect();
        if kept.len() > m {
            return Err(Error::Infeasible {
                block,
                rank: kept.len(),
                multiplicity: m,
            });
        }
        for (row, &k) in kept.iter().enumerate() {
            let scale = (m as f64 * values[k]).sqrt();
            for t in 0..n {
                v[off + row * n + t] = vectors[(t, k)].conj() * scale;
            }
        }
    }
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::NotUnitVector(0.0));
    }
    Ok(alg.vector_from_adapted(&v.unscale(norm)))
}

/// `1_n / n` for the algebra's dimension.
pub fn normalized_trace_state(alg: &AlgebraSpec) -> DensityOperator {
    DensityOperator::maximally_mixed(alg.dim())
}
