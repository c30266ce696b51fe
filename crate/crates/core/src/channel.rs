//! Quantum channels in Kraus form.

use crate::error::{Error, Result};
use crate::matrix::{
    self, identity, is_psd, max_abs_diff, pauli, real, trace, CMatrix, CVector, Tolerance, ZERO,
};

/// Trace-one positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    mat: CMatrix,
}

impl DensityOperator {
    pub fn new(mat: CMatrix, tol: Tolerance) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotDensityOperator("not square".into()));
        }
        if !matrix::is_finite(&mat) {
            return Err(Error::NonFinite);
        }
        if !matrix::is_hermitian(&mat, tol) {
            return Err(Error::NotDensityOperator("not Hermitian".into()));
        }
        let tr = trace(&mat);
        if (tr - real(1.0)).norm() > tol.atol() {
            return Err(Error::NotDensityOperator(format!("trace {tr}")));
        }
        if !is_psd(&mat, tol) {
            return Err(Error::NotDensityOperator("negative eigenvalue".into()));
        }
        Ok(Self { mat })
    }

    pub(crate) fn new_unchecked(mat: CMatrix) -> Self {
        Self { mat }
    }

    /// `1_d / d`.
    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            mat: identity(d).unscale(d as f64),
        }
    }

    /// `|v><v|` for a unit vector `v`.
    pub fn pure(v: &CVector, tol: Tolerance) -> Result<Self> {
        let norm = v.norm();
        if (norm - 1.0).abs() > tol.atol() {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(Self {
            mat: matrix::projector(v),
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }
}

impl AsRef<CMatrix> for DensityOperator {
    fn as_ref(&self) -> &CMatrix {
        &self.mat
    }
}

/// A completely positive trace-preserving map `ρ ↦ Σ K ρ K†`.
///
/// Kraus lists are not unique, so two channels are compared through their
/// Choi matrices ([`Channel::equivalent`]), never operator by operator.
#[derive(Debug, Clone)]
pub struct Channel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<CMatrix>,
}

impl Channel {
    /// Validates shapes and `Σ K†K = 1` within `atol`.
    pub fn from_kraus(kraus: Vec<CMatrix>, tol: Tolerance) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        let (dim_out, dim_in) = first.shape();
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::DimensionMismatch("empty Kraus operator".into()));
        }
        for (i, k) in kraus.iter().enumerate() {
            if k.shape() != (dim_out, dim_in) {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator {i} is {}x{}, expected {dim_out}x{dim_in}",
                    k.nrows(),
                    k.ncols()
                )));
            }
            if !matrix::is_finite(k) {
                return Err(Error::NonFinite);
            }
        }
        let sum = kraus.iter().fold(CMatrix::zeros(dim_in, dim_in), |acc, k| {
            acc + k.adjoint() * k
        });
        let deviation = max_abs_diff(&sum, &identity(dim_in));
        if deviation > tol.atol() {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self {
            dim_in,
            dim_out,
            kraus,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            dim_in: d,
            dim_out: d,
            kraus: vec![identity(d)],
        }
    }

    /// `ρ ↦ Σ p_i U_i ρ U_i†`, realized with Kraus operators `√p_i U_i`.
    pub fn random_unitary(probs: &[f64], unitaries: Vec<CMatrix>, tol: Tolerance) -> Result<Self> {
        if probs.len() != unitaries.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} probabilities for {} unitaries",
                probs.len(),
                unitaries.len()
            )));
        }
        if probs.is_empty() {
            return Err(Error::EmptyKraus);
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::NotAProbabilityDistribution(format!(
                "negative or non-finite weight {p}"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > tol.atol() {
            return Err(Error::NotAProbabilityDistribution(format!(
                "weights sum to {total}"
            )));
        }
        for (index, u) in unitaries.iter().enumerate() {
            let deviation = matrix::unitarity_deviation(u);
            if deviation > tol.atol() {
                return Err(Error::NotUnitary { index, deviation });
            }
        }
        let kraus = probs
            .iter()
            .zip(unitaries)
            .map(|(&p, u)| u.scale(p.sqrt()))
            .collect();
        Self::from_kraus(kraus, tol)
    }

    /// `ρ ↦ (p/d) tr(ρ) 1_d + (1 − p) ρ` for `0 < p ≤ 1`.
    ///
    /// Qubits use the Pauli twirl; larger dimensions use the `d²` Weyl
    /// operators `X^a Z^b`, with the identity term carrying the `1 − p` weight.
    pub fn depolarizing(p: f64, d: usize) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::OutOfRange(format!(
                "depolarizing p = {p} not in (0, 1]"
            )));
        }
        if d == 0 {
            return Err(Error::OutOfRange("dimension must be positive".into()));
        }
        let d2 = (d * d) as f64;
        let mut kraus = vec![identity(d).scale((1.0 - p + p / d2).sqrt())];
        let w = (p / d2).sqrt();
        if d == 2 {
            kraus.extend(pauli::vector().into_iter().map(|s| s.scale(w)));
        } else {
            let x = matrix::shift(d);
            let z = matrix::clock(d);
            let mut xa = identity(d);
            for a in 0..d {
                let mut op = xa.clone();
                for b in 0..d {
                    if a != 0 || b != 0 {
                        kraus.push(op.scale(w));
                    }
                    op = &op * &z;
                }
                xa = &xa * &x;
            }
        }
        Self::from_kraus(kraus, Tolerance::default())
    }

    /// The completely depolarizing channel `ρ ↦ tr(ρ) 1_d / d`.
    pub fn completely_depolarizing(d: usize) -> Self {
        Self::depolarizing(1.0, d.max(1)).expect("p = 1 is in range")
    }

    /// Qubit dephasing `ρ ↦ (ρ + σ_z ρ σ_z) / 2`.
    pub fn dephasing_z() -> Self {
        Self::random_unitary(
            &[0.5, 0.5],
            vec![identity(2), pauli::z()],
            Tolerance::default(),
        )
        .expect("valid mixture")
    }

    /// Builds a channel from its Choi matrix `Σ |i><j| ⊗ E(|i><j|)`.
    ///
    /// Eigenvalues at or below `atol` are dropped, so the Kraus list has
    /// minimal length.
    pub fn from_choi(
        choi: &CMatrix,
        dim_in: usize,
        dim_out: usize,
        tol: Tolerance,
    ) -> Result<Self> {
        let n = dim_in * dim_out;
        if choi.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix is {}x{}, expected {n}x{n}",
                choi.nrows(),
                choi.ncols()
            )));
        }
        if !matrix::is_hermitian(choi, tol) {
            return Err(Error::NotCompletelyPositive {
                min_eigenvalue: f64::NAN,
            });
        }
        let (values, vectors) = matrix::hermitian_eigh(choi);
        let min_eigenvalue = values.first().copied().unwrap_or(0.0);
        if min_eigenvalue < -tol.atol() {
            return Err(Error::NotCompletelyPositive { min_eigenvalue });
        }
        let mut kraus = Vec::new();
        // largest first, for a stable ordering
        for (k, &lambda) in values.iter().enumerate().rev() {
            if lambda <= tol.atol() {
                continue;
            }
            let s = lambda.sqrt();
            kraus.push(CMatrix::from_fn(dim_out, dim_in, |o, i| {
                vectors[(i * dim_out + o, k)] * s
            }));
        }
        if kraus.is_empty() {
            return Err(Error::NotTracePreserving { deviation: 1.0 });
        }
        Self::from_kraus(kraus, tol)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// Linear extension to an arbitrary input operator, shape unchecked.
    pub(crate) fn act(&self, x: &CMatrix) -> CMatrix {
        self.kraus
            .iter()
            .fold(CMatrix::zeros(self.dim_out, self.dim_out), |acc, k| {
                acc + k * x * k.adjoint()
            })
    }

    /// `E(|x><y|) = Σ (K x)(K y)†`, without forming the outer product.
    pub(crate) fn act_outer(&self, x: &CVector, y: &CVector) -> CMatrix {
        self.kraus
            .iter()
            .fold(CMatrix::zeros(self.dim_out, self.dim_out), |acc, k| {
                acc + (k * x) * (k * y).adjoint()
            })
    }

    /// Applies the (linear extension of the) channel to any `dim_in × dim_in` operator.
    pub fn apply_matrix(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.shape() != (self.dim_in, self.dim_in) {
            return Err(Error::DimensionMismatch(format!(
                "channel input is {0}x{0}, got {1}x{2}",
                self.dim_in,
                x.nrows(),
                x.ncols()
            )));
        }
        Ok(self.act(x))
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        self.apply_matrix(rho.as_matrix())
            .map(DensityOperator::new_unchecked)
    }

    /// Choi matrix `Σ_{ij} |i><j| ⊗ E(|i><j|)`, of size `dim_in·dim_out`.
    pub fn choi(&self) -> CMatrix {
        let n = self.dim_in * self.dim_out;
        let mut out = CMatrix::zeros(n, n);
        for k in &self.kraus {
            // column-stacked vec of K: index i*dim_out + o holds K[o, i]
            let v = CVector::from_fn(n, |idx, _| k[(idx % self.dim_out, idx / self.dim_out)]);
            out += &v * v.adjoint();
        }
        out
    }

    /// `next ∘ self`: applies `self` first. Kraus operators are `K_next K_self`.
    pub fn compose(&self, next: &Channel) -> Result<Channel> {
        if self.dim_out != next.dim_in {
            return Err(Error::DimensionMismatch(format!(
                "cannot feed a {}-dimensional output into a {}-dimensional input",
                self.dim_out, next.dim_in
            )));
        }
        let kraus = next
            .kraus
            .iter()
            .flat_map(|b| self.kraus.iter().map(move |a| b * a))
            .collect();
        Ok(Channel {
            dim_in: self.dim_in,
            dim_out: next.dim_out,
            kraus,
        })
    }

    /// Convex combination `p·self + (1 − p)·other`.
    pub fn mix(&self, other: &Channel, p: f64) -> Result<Channel> {
        if (self.dim_in, self.dim_out) != (other.dim_in, other.dim_out) {
            return Err(Error::DimensionMismatch(
                "mixing channels of different shapes".into(),
            ));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange(format!("mixing weight {p}")));
        }
        let (a, b) = (p.sqrt(), (1.0 - p).sqrt());
        let kraus = self
            .kraus
            .iter()
            .map(|k| k.scale(a))
            .chain(other.kraus.iter().map(|k| k.scale(b)))
            .collect();
        Ok(Channel {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            kraus,
        })
    }

    /// `ρ ↦ U E(U† ρ U) U†`.
    pub fn conjugated_by(&self, u: &CMatrix) -> Result<Channel> {
        if u.shape() != (self.dim_in, self.dim_in) || self.dim_in != self.dim_out {
            return Err(Error::DimensionMismatch(
                "conjugating unitary has wrong size".into(),
            ));
        }
        let kraus = self.kraus.iter().map(|k| u * k * u.adjoint()).collect();
        Ok(Channel {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            kraus,
        })
    }

    /// `E(1/d) = 1/d` within `atol`. Always false for non-square channels.
    pub fn is_unital(&self, tol: Tolerance) -> bool {
        if self.dim_in != self.dim_out {
            return false;
        }
        let mixed = DensityOperator::maximally_mixed(self.dim_in);
        max_abs_diff(&self.act(mixed.as_matrix()), mixed.as_matrix()) <= tol.atol()
    }

    /// Max-modulus distance between Choi matrices.
    pub fn choi_distance(&self, other: &Channel) -> f64 {
        max_abs_diff(&self.choi(), &other.choi())
    }

    /// Channel equality: Choi matrices agree within `atol`.
    pub fn equivalent(&self, other: &Channel, tol: Tolerance) -> bool {
        self.choi_distance(other) <= tol.atol()
    }
}

/// Max deviation of `tr E(|p><q|)` from `δ_pq` over all matrix units.
pub fn trace_preservation_violation(ch: &Channel) -> f64 {
    let d = ch.dim_in();
    let mut worst: f64 = 0.0;
    for p in 0..d {
        for q in 0..d {
            let out = ch.act(&matrix::matrix_unit(d, p, q));
            let expected = if p == q { real(1.0) } else { ZERO };
            worst = worst.max((trace(&out) - expected).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{basis_vector, c, diag_real, from_rows, matrix_unit, projector, ONE};
    use crate::random;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn plus() -> CVector {
        CVector::from_vec(vec![real(FRAC_1_SQRT_2), real(FRAC_1_SQRT_2)])
    }

    fn amplitude_damping(gamma: f64) -> Vec<CMatrix> {
        vec![
            diag_real(&[1.0, (1.0 - gamma).sqrt()]),
            from_rows(&[&[ZERO, real(gamma.sqrt())], &[ZERO, ZERO]]),
        ]
    }

    #[test]
    fn from_kraus_examples() {
        let id = Channel::from_kraus(vec![identity(2)], tol()).unwrap();
        assert!(id.equivalent(&Channel::identity(2), tol()));

        let s = FRAC_1_SQRT_2;
        assert!(Channel::from_kraus(vec![pauli::x().scale(s), pauli::y().scale(s)], tol()).is_ok());

        match Channel::from_kraus(vec![pauli::x().scale(2.0)], tol()) {
            Err(Error::NotTracePreserving { deviation }) => {
                assert!((deviation - 3.0).abs() < 1e-12)
            }
            other => panic!("expected NotTracePreserving, got {other:?}"),
        }
    }

    #[test]
    fn from_kraus_rejects_bad_input() {
        assert_eq!(
            Channel::from_kraus(vec![], tol()).unwrap_err(),
            Error::EmptyKraus
        );
        assert!(matches!(
            Channel::from_kraus(vec![identity(2), identity(3)], tol()),
            Err(Error::DimensionMismatch(_))
        ));
        let mut bad = identity(2);
        bad[(0, 1)] = c(f64::NAN, 0.0);
        assert_eq!(
            Channel::from_kraus(vec![bad], tol()).unwrap_err(),
            Error::NonFinite
        );
    }

    #[test]
    fn random_unitary_examples() {
        let id = Channel::random_unitary(&[1.0], vec![identity(2)], tol()).unwrap();
        assert!(id.equivalent(&Channel::identity(2), tol()));

        let deph = Channel::dephasing_z();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rho = random::density_matrix(&mut rng, 2);
        let out = deph.apply_matrix(&rho).unwrap();
        assert!(out[(0, 1)].norm() < 1e-15 && out[(1, 0)].norm() < 1e-15);
        assert!((out[(0, 0)] - rho[(0, 0)]).norm() < 1e-15);

        let twirl = Channel::random_unitary(
            &[0.25; 4],
            vec![identity(2), pauli::x(), pauli::y(), pauli::z()],
            tol(),
        )
        .unwrap();
        for s in [identity(2), pauli::x(), pauli::y(), pauli::z()] {
            let expected = identity(2).scale(trace(&s).re / 2.0);
            assert!(max_abs_diff(&twirl.apply_matrix(&s).unwrap(), &expected) < 1e-15);
        }
    }

    #[test]
    fn random_unitary_rejects_bad_input() {
        assert!(matches!(
            Channel::random_unitary(&[0.5, 0.4], vec![identity(2), pauli::z()], tol()),
            Err(Error::NotAProbabilityDistribution(_))
        ));
        assert!(matches!(
            Channel::random_unitary(&[1.5, -0.5], vec![identity(2), pauli::z()], tol()),
            Err(Error::NotAProbabilityDistribution(_))
        ));
        assert!(matches!(
            Channel::random_unitary(&[1.0], vec![pauli::z().scale(2.0)], tol()),
            Err(Error::NotUnitary { index: 0, .. })
        ));
        assert!(matches!(
            Channel::random_unitary(&[1.0], vec![], tol()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn depolarizing_examples() {
        let ec = Channel::depolarizing(1.0, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let v = random::unit_vector(&mut rng, 2);
            let out = ec.apply_matrix(&projector(&v)).unwrap();
            assert!(max_abs_diff(&out, &identity(2).scale(0.5)) < 1e-12);
        }
        let out = Channel::depolarizing(0.5, 2)
            .unwrap()
            .apply_matrix(&matrix_unit(2, 0, 0))
            .unwrap();
        assert!(max_abs_diff(&out, &diag_real(&[0.75, 0.25])) < 1e-15);

        for d in 1..=4 {
            for p in [0.1, 0.5, 1.0] {
                let ch = Channel::depolarizing(p, d).unwrap();
                let mixed = DensityOperator::maximally_mixed(d);
                let out = ch.apply(&mixed).unwrap();
                assert!(max_abs_diff(out.as_matrix(), mixed.as_matrix()) < 1e-14);
            }
        }
        assert!(Channel::depolarizing(0.0, 2).is_err());
        assert!(Channel::depolarizing(1.5, 2).is_err());
    }

    /// Oracle: the defining formula evaluated directly on matrix units.
    #[test]
    fn depolarizing_is_convex_combination_on_matrix_units() {
        for d in [2, 3, 4] {
            for p in [0.25, 0.5, 0.9] {
                let ch = Channel::depolarizing(p, d).unwrap();
                for i in 0..d {
                    for j in 0..d {
                        let e = matrix_unit(d, i, j);
                        let expected =
                            identity(d).scale(p / d as f64) * trace(&e) + e.scale(1.0 - p);
                        assert!(max_abs_diff(&ch.apply_matrix(&e).unwrap(), &expected) < 1e-14);
                    }
                }
                let mixture = Channel::completely_depolarizing(d)
                    .mix(&Channel::identity(d), p)
                    .unwrap();
                assert!(ch.equivalent(&mixture, tol()));
            }
        }
    }

    #[test]
    fn apply_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = DensityOperator::new(random::density_matrix(&mut rng, 2), tol()).unwrap();
        let out = Channel::identity(2).apply(&rho).unwrap();
        assert_eq!(out, rho);

        let plus = DensityOperator::pure(&plus(), tol()).unwrap();
        let out = Channel::dephasing_z().apply(&plus).unwrap();
        assert!(max_abs_diff(out.as_matrix(), &identity(2).scale(0.5)) < 1e-15);

        let out = Channel::completely_depolarizing(2).apply(&rho).unwrap();
        assert!(max_abs_diff(out.as_matrix(), &identity(2).scale(0.5)) < 1e-15);

        let wrong = DensityOperator::maximally_mixed(3);
        assert!(matches!(
            Channel::identity(2).apply(&wrong),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn choi_examples() {
        let omega = CVector::from_vec(vec![ONE, ZERO, ZERO, ONE]);
        let j = Channel::identity(2).choi();
        assert!(max_abs_diff(&j, &projector(&omega)) < 1e-15);
        assert_eq!(matrix::numerical_rank(&j, tol()), 1);

        let j = Channel::completely_depolarizing(2).choi();
        assert!(max_abs_diff(&j, &identity(4).scale(0.5)) < 1e-15);
    }

    #[test]
    fn choi_round_trip_preserves_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (d, k) in [(2, 1), (2, 3), (3, 4)] {
            let ch = random::channel(&mut rng, d, k);
            let back = Channel::from_choi(&ch.choi(), d, d, tol()).unwrap();
            assert!(back.equivalent(&ch, Tolerance::new(1e-12).unwrap()));
            assert!(back.kraus().len() <= k);
        }
    }

    #[test]
    fn from_choi_rejects_non_cp() {
        // transpose map: Choi is the swap operator, which has eigenvalue −1
        let mut swap = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                swap[(i * 2 + j, j * 2 + i)] = ONE;
            }
        }
        assert!(matches!(
            Channel::from_choi(&swap, 2, 2, tol()),
            Err(Error::NotCompletelyPositive { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let ch = random::channel(&mut rng, 2, 2);
        let c1 = Channel::identity(2).compose(&ch).unwrap();
        assert!(c1.equivalent(&ch, tol()));

        let ru = random::random_unitary_channel(&mut rng, 2, 3);
        let c2 = Channel::completely_depolarizing(2).compose(&ru).unwrap();
        assert!(c2.equivalent(&Channel::completely_depolarizing(2), tol()));

        let deph = Channel::dephasing_z();
        assert!(deph.compose(&deph).unwrap().equivalent(&deph, tol()));

        assert!(Channel::identity(2).compose(&Channel::identity(3)).is_err());
    }

    #[test]
    fn compose_matches_sequential_application() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = random::channel(&mut rng, 3, 2);
        let b = random::channel(&mut rng, 3, 3);
        let rho = random::density_matrix(&mut rng, 3);
        let lhs = a.compose(&b).unwrap().apply_matrix(&rho).unwrap();
        let rhs = b.apply_matrix(&a.apply_matrix(&rho).unwrap()).unwrap();
        assert!(max_abs_diff(&lhs, &rhs) < 1e-13);
    }

    #[test]
    fn unitality_examples() {
        assert!(Channel::identity(3).is_unital(tol()));
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..5 {
            assert!(random::random_unitary_channel(&mut rng, 2, 4).is_unital(tol()));
        }
        let ad = Channel::from_kraus(amplitude_damping(0.5), tol()).unwrap();
        assert!(!ad.is_unital(tol()));
    }

    #[test]
    fn density_operator_validation() {
        assert!(DensityOperator::new(identity(2), tol()).is_err());
        assert!(DensityOperator::new(diag_real(&[1.5, -0.5]), tol()).is_err());
        assert!(
            DensityOperator::new(from_rows(&[&[real(0.5), ONE], &[ZERO, real(0.5)]]), tol())
                .is_err()
        );
        assert!(DensityOperator::new(diag_real(&[0.25, 0.75]), tol()).is_ok());
        assert!(DensityOperator::pure(&basis_vector(2, 0).scale(2.0), tol()).is_err());
    }

    #[test]
    fn trace_preservation_on_matrix_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let ch = random::channel(&mut rng, 3, 2);
        assert!(trace_preservation_violation(&ch) < 1e-13);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn constructed_channels_output_states(seed in any::<u64>(), d in 1usize..5, k in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ch = random::channel(&mut rng, d, k);
            prop_assert!(is_psd(&ch.choi(), tol()));
            let rho = DensityOperator::new(random::density_matrix(&mut rng, d), tol()).unwrap();
            let out = ch.apply(&rho).unwrap();
            prop_assert!(DensityOperator::new(out.into_matrix(), tol()).is_ok());
        }

        #[test]
        fn corrupted_kraus_lists_are_rejected(seed in any::<u64>(), d in 1usize..4, k in 1usize..4, eps in 1e-6f64..0.5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ch = random::channel(&mut rng, d, k);
            let mut kraus = ch.kraus().to_vec();
            kraus[0] = kraus[0].scale(1.0 + eps);
            let rejected = Channel::from_kraus(kraus, tol());
            let is_tp_error = matches!(rejected, Err(Error::NotTracePreserving { .. }));
            prop_assert!(is_tp_error);
        }

        #[test]
        fn random_unitary_channels_are_unital(seed in any::<u64>(), d in 1usize..5, k in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            prop_assert!(random::random_unitary_channel(&mut rng, d, k).is_unital(tol()));
        }
    }
}
