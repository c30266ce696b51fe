//! Conditional expectation channels and private quantum channels.
//!
//! For a unital block algebra the trace-preserving conditional expectation
//! replaces each block `1_{m_i} ⊗ x_i`-slot of `U x U†` by
//! `(1_{m_i}/m_i) ⊗ tr_{m_i}(·)` and discards everything off the block
//! diagonal. It is the Hilbert–Schmidt orthogonal projection onto the
//! algebra. For such a channel, a pure state is private with output `ρ0`
//! exactly when it is a trace vector with respect to `ρ0`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::algebra::{self, AlgebraSpec};
use crate::channel::{self, Channel, DensityOperator};
use crate::error::{Error, Result};
use crate::matrix::{
    self, basis_vector, identity, max_abs_diff, real, tensor, CMatrix, CVector, Tolerance,
};

/// `x ↦ U† (⊕_i (1_{m_i}/m_i) ⊗ tr_{m_i}[(U x U†)_i]) U`, applied directly.
///
/// On non-unital algebras the zero summand is dropped, so the map is then
/// not trace preserving.
pub fn project(alg: &AlgebraSpec, x: &CMatrix) -> CMatrix {
    let y = alg.to_adapted(x);
    let mut out = CMatrix::zeros(alg.dim(), alg.dim());
    for (&(m, n), &off) in alg.blocks().iter().zip(&alg.block_offsets()) {
        let sub = y.view((off, off), (m * n, m * n)).into_owned();
        let reduced =
            matrix::partial_trace(&sub, m, n, matrix::TraceSide::Left).expect("block shape is m·n");
        out.view_mut((off, off), (m * n, m * n))
            .copy_from(&tensor(&identity(m).unscale(m as f64), &reduced));
    }
    alg.from_adapted(&out)
}

/// The trace-preserving conditional expectation onto a unital algebra, as a
/// channel whose Kraus operators come from the Choi eigendecomposition.
pub fn condexp_channel(alg: &AlgebraSpec) -> Result<Channel> {
    if !alg.is_unital() {
        return Err(Error::NotUnitalAlgebra(alg.zero_dim()));
    }
    let d = alg.dim();
    let mut choi = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let image = project(alg, &matrix::matrix_unit(d, i, j));
            choi.view_mut((i * d, j * d), (d, d)).copy_from(&image);
        }
    }
    Channel::from_choi(&choi, d, d, Tolerance::default())
}

/// Largest violation of each conditional-expectation property.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    /// `max ‖E(b) − b‖` over the canonical basis of the algebra.
    pub fixes_subalgebra: f64,
    /// `max ‖E(a) − P(E(a))‖` over matrix units `a`, with `P` the orthogonal
    /// projection onto the algebra: how far the range leaves the algebra.
    pub into_subalgebra: f64,
    /// `max ‖E(b₁ a b₂) − b₁ E(a) b₂‖` over basis pairs and matrix units.
    pub bimodule: f64,
    /// Choi matrix is positive semidefinite.
    pub positive: bool,
    pub min_choi_eigenvalue: f64,
    /// `max |tr E(a) − tr a|` over matrix units.
    pub trace_preserving: f64,
    pub passed: bool,
}

/// Checks that `ch` is a trace-preserving conditional expectation onto `alg`.
pub fn verify_condexp_axioms(
    ch: &Channel,
    alg: &AlgebraSpec,
    tol: Tolerance,
) -> Result<AxiomReport> {
    let d = alg.dim();
    if ch.dim_in() != d || ch.dim_out() != d {
        return Err(Error::DimensionMismatch(format!(
            "channel is {} -> {}, algebra acts on dimension {d}",
            ch.dim_in(),
            ch.dim_out()
        )));
    }
    let basis = alg.canonical_basis();

    let fixes_subalgebra = basis
        .iter()
        .map(|b| max_abs_diff(&ch.act(b), b))
        .fold(0.0, f64::max);

    let images: Vec<CMatrix> = (0..d * d)
        .map(|k| ch.act(&matrix::matrix_unit(d, k / d, k % d)))
        .collect();
    let into_subalgebra = images
        .iter()
        .map(|x| max_abs_diff(x, &alg.orthogonal_projection(x)))
        .fold(0.0, f64::max);

    // b₁ |p><q| b₂ = (b₁ e_p)(b₂† e_q)†
    let mut bimodule: f64 = 0.0;
    for b1 in &basis {
        for (k, image) in images.iter().enumerate() {
            let (p, q) = (k / d, k % d);
            let left = b1 * image;
            let x = b1.column(p).into_owned();
            for b2 in &basis {
                let y = b2.row(q).adjoint();
                let lhs = ch.act_outer(&x, &y);
                let rhs = &left * b2;
                bimodule = bimodule.max(max_abs_diff(&lhs, &rhs));
            }
        }
    }

    let min_choi_eigenvalue = matrix::min_eigenvalue_hermitian(&ch.choi());
    let positive = matrix::is_psd(&ch.choi(), tol);
    let trace_preserving = channel::trace_preservation_violation(ch);
    let passed = positive
        && [
            fixes_subalgebra,
            into_subalgebra,
            bimodule,
            trace_preserving,
        ]
        .iter()
        .all(|&v| v <= tol.atol());
    Ok(AxiomReport {
        fixes_subalgebra,
        into_subalgebra,
        bimodule,
        positive,
        min_choi_eigenvalue,
        trace_preserving,
        passed,
    })
}

/// A candidate private quantum channel `[S, E, ρ0]`.
#[derive(Debug, Clone)]
pub struct PQCInstance {
    states: Vec<CVector>,
    channel: Channel,
    rho0: DensityOperator,
}

impl PQCInstance {
    pub fn new(
        states: Vec<CVector>,
        channel: Channel,
        rho0: DensityOperator,
        tol: Tolerance,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::OutOfRange("a PQC needs at least one state".into()));
        }
        let d = rho0.dim();
        if channel.dim_in() != d || channel.dim_out() != d {
            return Err(Error::DimensionMismatch(format!(
                "channel is {} -> {}, rho0 has dimension {d}",
                channel.dim_in(),
                channel.dim_out()
            )));
        }
        for (i, s) in states.iter().enumerate() {
            if s.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "state {i} has length {}, expected {d}",
                    s.len()
                )));
            }
            let norm = s.norm();
            if (norm - 1.0).abs() > tol.atol() {
                return Err(Error::NotUnitVector(norm));
            }
        }
        Ok(Self {
            states,
            channel,
            rho0,
        })
    }

    pub fn states(&self) -> &[CVector] {
        &self.states
    }

    pub fn channel(&self) -> &Channel {
        &self.channel
    }

    pub fn rho0(&self) -> &DensityOperator {
        &self.rho0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PqcVerdict {
    pub private: bool,
    /// `‖E(|φ><φ|) − ρ0‖_max` for each state, in input order.
    pub residuals: Vec<f64>,
}

/// Every state of the instance is mapped to `ρ0` within `atol`.
pub fn is_pqc(inst: &PQCInstance, tol: Tolerance) -> PqcVerdict {
    let residuals: Vec<f64> = inst
        .states
        .iter()
        .map(|phi| max_abs_diff(&inst.channel.act_outer(phi, phi), inst.rho0.as_matrix()))
        .collect();
    PqcVerdict {
        private: residuals.iter().all(|&r| r <= tol.atol()),
        residuals,
    }
}

/// Decides privacy of `v` under the conditional expectation onto `alg`
/// through the trace-vector condition instead of applying the channel.
pub fn private_states_certificate(
    alg: &AlgebraSpec,
    rho0: &DensityOperator,
    v: &CVector,
    tol: Tolerance,
) -> Result<bool> {
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
    let distance = max_abs_diff(rho0.as_matrix(), &project(alg, rho0.as_matrix()));
    if distance > tol.atol() {
        return Err(Error::Rho0NotInAlgebra(distance));
    }
    Ok(algebra::is_trace_vector(v, alg, rho0, tol)?.passed)
}

/// Two-qubit singlet `(|01> − |10>)/√2`.
pub fn singlet() -> CVector {
    CVector::from_vec(vec![
        real(0.0),
        real(FRAC_1_SQRT_2),
        real(-FRAC_1_SQRT_2),
        real(0.0),
    ])
}

/// Triplet basis `{|00>, (|01> + |10>)/√2, |11>}`.
pub fn triplet_basis() -> [CVector; 3] {
    [
        basis_vector(4, 0),
        CVector::from_vec(vec![
            real(0.0),
            real(FRAC_1_SQRT_2),
            real(FRAC_1_SQRT_2),
            real(0.0),
        ]),
        basis_vector(4, 3),
    ]
}

pub fn singlet_projector() -> CMatrix {
    matrix::projector(&singlet())
}

pub fn triplet_projector() -> CMatrix {
    triplet_basis()
        .iter()
        .fold(CMatrix::zeros(4, 4), |acc, t| acc + matrix::projector(t))
}

/// Two-qubit collective-rotation channel
/// `ρ ↦ tr(Π_s ρ) |s><s| + tr(Π_t ρ) Π_t / 3`
/// and the algebra `(1_3 ⊗ M_1) ⊕ (1_1 ⊗ M_1)` it projects onto, with the
/// basis change taking `{t_0, t_1, t_2, s}` to the computational basis.
pub fn collective_noise_channel_n2() -> (Channel, AlgebraSpec) {
    let s = singlet();
    let t = triplet_basis();
    let mut kraus = vec![matrix::projector(&s)];
    let w = 1.0 / 3f64.sqrt();
    for a in &t {
        for b in &t {
            kraus.push((a * b.adjoint()).scale(w));
        }
    }
    let channel = Channel::from_kraus(kraus, Tolerance::default()).expect("complete Kraus set");

    let mut columns = CMatrix::zeros(4, 4);
    for (k, v) in t.iter().chain(std::iter::once(&s)).enumerate() {
        columns.set_column(k, v);
    }
    let algebra = AlgebraSpec::new(
        vec![(3, 1), (1, 1)],
        0,
        columns.adjoint(),
        Tolerance::default(),
    )
    .expect("orthonormal frame");
    (channel, algebra)
}
