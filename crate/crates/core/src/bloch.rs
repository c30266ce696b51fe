//! Bloch-sphere picture of qubit maps.
//!
//! A qubit state is `ρ = (1 + r·σ)/2` with `‖r‖ ≤ 1`. A trace-preserving,
//! Hermiticity-preserving qubit map acts affinely on `r` as `r ↦ T r + t`.
//! For unital channels `t = 0`, and a pure state is mapped to `1/2` exactly
//! when its Bloch vector lies in the nullspace of `T`. The dimension of that
//! nullspace decides the shape of the private-state set.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix3, Matrix4, Vector3};

use crate::channel::{Channel, DensityOperator};
use crate::error::{Error, Result};
use crate::matrix::{self, c, identity, pauli, real, CMatrix, CVector, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub Vector3<f64>);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self(Vector3::new(x, y, z))
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_pure(&self, tol: Tolerance) -> bool {
        (self.norm() - 1.0).abs() <= tol.atol()
    }
}

/// `r_k = tr(ρ σ_k)`.
pub fn density_to_bloch(rho: &DensityOperator) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "Bloch vectors need a 2x2 density operator, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    Ok(bloch_of_matrix(rho.as_matrix()))
}

fn bloch_of_matrix(m: &CMatrix) -> BlochVector {
    let [x, y, z] = pauli::vector();
    BlochVector::new((m * x).trace().re, (m * y).trace().re, (m * z).trace().re)
}

fn operator_of_bloch(r: &Vector3<f64>) -> CMatrix {
    let [x, y, z] = pauli::vector();
    (identity(2) + x.scale(r[0]) + y.scale(r[1]) + z.scale(r[2])).scale(0.5)
}

/// `(1 + r·σ)/2`.
pub fn bloch_to_density(r: &BlochVector, tol: Tolerance) -> Result<DensityOperator> {
    let norm = r.norm();
    if !norm.is_finite() || norm > 1.0 + tol.atol() {
        return Err(Error::BlochVectorTooLong(norm));
    }
    Ok(DensityOperator::new_unchecked(operator_of_bloch(&r.0)))
}

/// Pure state `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>` with Bloch vector along `r`.
pub fn pure_state(r: &Vector3<f64>) -> CVector {
    let n = r.norm();
    let (x, y, z) = (r[0] / n, r[1] / n, r[2] / n);
    let theta = z.clamp(-1.0, 1.0).acos();
    let phi = y.atan2(x);
    CVector::from_vec(vec![
        real((theta / 2.0).cos()),
        c(0.0, phi).exp() * (theta / 2.0).sin(),
    ])
}

/// Bloch vector of the pure state `|v>` (normalized internally).
pub fn bloch_of_state(v: &CVector) -> Vector3<f64> {
    let p = matrix::projector(v).unscale(v.norm_squared());
    bloch_of_matrix(&p).0
}

/// Affine Bloch representation `(T, t)` of a qubit map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTransfer {
    /// Deformation of the sphere, `T_jk = tr(σ_j E(σ_k))/2`.
    pub matrix: Matrix3<f64>,
    /// Translation, `t_j = tr(σ_j E(1))/2`. Zero iff the map is unital.
    pub translation: Vector3<f64>,
}

impl PauliTransfer {
    pub fn new(matrix: Matrix3<f64>, translation: Vector3<f64>) -> Self {
        Self {
            matrix,
            translation,
        }
    }

    /// The 4x4 matrix in the basis `{1, σx, σy, σz}`; first row `(1, 0, 0, 0)`.
    pub fn full(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = 1.0;
        for j in 0..3 {
            m[(j + 1, 0)] = self.translation[j];
            for k in 0..3 {
                m[(j + 1, k + 1)] = self.matrix[(j, k)];
            }
        }
        m
    }

    pub fn apply(&self, r: &BlochVector) -> BlochVector {
        BlochVector(self.matrix * r.0 + self.translation)
    }

    /// The qubit map with this transfer matrix, extracted through its Choi
    /// matrix. Fails when the affine map is not completely positive.
    pub fn to_channel(&self, tol: Tolerance) -> Result<Channel> {
        let [x, y, z] = pauli::vector();
        let sigma = [&x, &y, &z];
        let image_of_identity = operator_of_bloch(&self.translation).scale(2.0);
        let image_of = |k: usize| -> CMatrix {
            (0..3).fold(CMatrix::zeros(2, 2), |acc, j| {
                acc + sigma[j].scale(self.matrix[(j, k)])
            })
        };
        let images = [image_of(0), image_of(1), image_of(2)];
        let mut choi = CMatrix::zeros(4, 4);
        for p in 0..2 {
            for q in 0..2 {
                let e = matrix::matrix_unit(2, p, q);
                // E = (tr(E) 1 + Σ tr(σ_k E) σ_k) / 2
                let mut out = image_of_identity.clone() * (e.trace() * 0.5);
                for (k, s) in sigma.iter().enumerate() {
                    out += images[k].clone() * ((*s * &e).trace() * 0.5);
                }
                choi.view_mut((2 * p, 2 * q), (2, 2)).copy_from(&out);
            }
        }
        Channel::from_choi(&choi, 2, 2, tol)
    }
}

/// Bloch transfer matrix of a qubit channel.
pub fn transfer(ch: &Channel) -> Result<PauliTransfer> {
    if ch.dim_in() != 2 || ch.dim_out() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "transfer matrix needs a qubit channel, got {} -> {}",
            ch.dim_in(),
            ch.dim_out()
        )));
    }
    let sigma = pauli::vector();
    let images: Vec<CMatrix> = sigma.iter().map(|s| ch.act(s)).collect();
    let matrix = Matrix3::from_fn(|j, k| 0.5 * (&sigma[j] * &images[k]).trace().re);
    let image_of_identity = ch.act(&identity(2));
    let translation = Vector3::from_fn(|j, _| 0.5 * (&sigma[j] * &image_of_identity).trace().re);
    Ok(PauliTransfer {
        matrix,
        translation,
    })
}

/// Private states of a unital qubit channel with target `1/2`.
#[derive(Debug, Clone, PartialEq)]
pub enum PrivateStateSet {
    /// `T` is invertible: no pure state is private.
    Empty,
    /// One-dimensional nullspace: two antipodal Bloch points, i.e. a pair of
    /// orthogonal states. The first has the sign-normalized axis as its
    /// Bloch vector.
    AntipodalPair([CVector; 2]),
    /// Two-dimensional nullspace: the great circle orthogonal to `normal`.
    GreatCircle { normal: Vector3<f64> },
    /// `T = 0`: the channel is completely depolarizing.
    AllStates,
}

impl PrivateStateSet {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Empty => "Empty",
            Self::AntipodalPair(_) => "AntipodalPair",
            Self::GreatCircle { .. } => "GreatCircle",
            Self::AllStates => "AllStates",
        }
    }

    /// Dimension of the nullspace of `T` that produced this set.
    pub fn nullity(&self) -> usize {
        match self {
            Self::Empty => 0,
            Self::AntipodalPair(_) => 1,
            Self::GreatCircle { .. } => 2,
            Self::AllStates => 3,
        }
    }

    /// Bloch axis of an antipodal pair.
    pub fn axis(&self) -> Option<Vector3<f64>> {
        match self {
            Self::AntipodalPair([a, _]) => Some(bloch_of_state(a)),
            _ => None,
        }
    }

    /// Euclidean distance from a Bloch vector to the set (on or inside the sphere).
    pub fn distance(&self, r: &Vector3<f64>) -> f64 {
        match self {
            Self::Empty => f64::INFINITY,
            Self::AllStates => (r.norm() - 1.0).abs(),
            Self::AntipodalPair([a, _]) => {
                let axis = bloch_of_state(a);
                (r - axis).norm().min((r + axis).norm())
            }
            Self::GreatCircle { normal } => {
                let h = r.dot(normal);
                let in_plane = r - normal * h;
                let radial = in_plane.norm() - 1.0;
                (h * h + radial * radial).sqrt()
            }
        }
    }
}

/// Flip `v` so that its first component with modulus above `eps` is positive.
fn canonical_sign(v: Vector3<f64>, eps: f64) -> Vector3<f64> {
    match v.iter().find(|x| x.abs() > eps) {
        Some(&x) if x < 0.0 => -v,
        _ => v,
    }
}

/// Classifies the private states of a unital qubit channel by the nullity
/// of its transfer matrix.
pub fn classify(ch: &Channel, tol: Tolerance) -> Result<PrivateStateSet> {
    let pt = transfer(ch)?;
    if !ch.is_unital(tol) {
        return Err(Error::NotUnital);
    }
    let t = DMatrix::from_fn(3, 3, |i, j| pt.matrix[(i, j)]);
    let null = matrix::nullspace_basis(&t, tol);
    let to3 = |v: &nalgebra::DVector<f64>| Vector3::new(v[0], v[1], v[2]).normalize();
    Ok(match null.len() {
        0 => PrivateStateSet::Empty,
        1 => {
            let axis = canonical_sign(to3(&null[0]), tol.atol());
            PrivateStateSet::AntipodalPair([pure_state(&axis), pure_state(&-axis)])
        }
        2 => {
            let normal = to3(&null[0]).cross(&to3(&null[1])).normalize();
            PrivateStateSet::GreatCircle {
                normal: canonical_sign(normal, tol.atol()),
            }
        }
        _ => PrivateStateSet::AllStates,
    })
}

/// Orthonormal pair `(e1, e2)` spanning the plane orthogonal to `normal`,
/// with `e1 × e2 = normal`.
pub fn circle_frame(normal: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let n = normal.normalize();
    let k = (0..3)
        .min_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs()))
        .unwrap_or(0);
    let mut a = Vector3::zeros();
    a[k] = 1.0;
    let e1 = (a - n * n.dot(&a)).normalize();
    let e2 = n.cross(&e1);
    (e1, e2)
}

/// `count` points spread over the unit sphere along a golden-angle spiral.
pub fn fibonacci_sphere(count: usize) -> Vec<Vector3<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            Vector3::new(rho * phi.cos(), rho * phi.sin(), z)
        })
        .collect()
}

/// Representative pure states from a private-state set, for export and plotting.
pub fn sample_private_states(set: &PrivateStateSet, count: usize) -> Vec<CVector> {
    match set {
        PrivateStateSet::Empty => Vec::new(),
        PrivateStateSet::AntipodalPair(pair) => pair.to_vec(),
        PrivateStateSet::GreatCircle { normal } => {
            let (e1, e2) = circle_frame(normal);
            (0..count)
                .map(|k| {
                    let angle = 2.0 * PI * k as f64 / count as f64;
                    pure_state(&(e1 * angle.cos() + e2 * angle.sin()))
                })
                .collect()
        }
        PrivateStateSet::AllStates => fibonacci_sphere(count).iter().map(pure_state).collect(),
    }
}

/// Rotation of Bloch vectors induced by `ρ ↦ U ρ U†`.
pub fn rotation_of(u: &CMatrix) -> Matrix3<f64> {
    let sigma = pauli::vector();
    Matrix3::from_fn(|j, k| 0.5 * (&sigma[j] * u * &sigma[k] * u.adjoint()).trace().re)
}
