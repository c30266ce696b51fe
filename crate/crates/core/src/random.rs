//! Seeded random sampling of states, unitaries, channels and algebras.
//!
//! Used by the property suites and the benchmarks; every sampler takes the
//! generator explicitly so runs are reproducible.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::AlgebraSpec;
use crate::channel::Channel;
use crate::matrix::{c, CMatrix, CVector, Tolerance};

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let qr = ginibre(rng, d, d).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            c(1.0, 0.0)
        };
        for z in u.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    u
}

/// Uniformly random pure state in `C^d`.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CVector {
    let g = ginibre(rng, d, 1).column(0).into_owned();
    let n = g.norm();
    g.unscale(n)
}

/// Random full-rank density matrix `G G† / tr(G G†)`.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = ginibre(rng, d, d);
    let m = &g * g.adjoint();
    let t = m.trace().re;
    m.unscale(t)
}

/// Random probability vector of length `k` (normalized exponentials).
pub fn probability_vector<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Random channel with `n_kraus` Kraus operators, cut from a Haar isometry.
pub fn channel<R: Rng + ?Sized>(rng: &mut R, d: usize, n_kraus: usize) -> Channel {
    let u = haar_unitary(rng, d * n_kraus);
    let kraus = (0..n_kraus)
        .map(|k| u.view((k * d, 0), (d, d)).into_owned())
        .collect();
    Channel::from_kraus(kraus, Tolerance::default()).expect("isometry blocks are trace preserving")
}

/// Mixture of `k` Haar unitaries with random weights.
pub fn random_unitary_channel<R: Rng + ?Sized>(rng: &mut R, d: usize, k: usize) -> Channel {
    let probs = probability_vector(rng, k);
    let unitaries = (0..k).map(|_| haar_unitary(rng, d)).collect();
    Channel::random_unitary(&probs, unitaries, Tolerance::default())
        .expect("Haar unitaries and normalized weights")
}

/// Random block structure with every multiplicity at least the block size,
/// total dimension at most `max_dim`, and a Haar basis change.
pub fn algebra_with_trace_vectors<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> AlgebraSpec {
    loop {
        let q = rng.random_range(1..=3);
        let blocks: Vec<(usize, usize)> = (0..q)
            .map(|_| {
                let n = rng.random_range(1..=3);
                let m = n + rng.random_range(0..=2);
                (m, n)
            })
            .collect();
        let dim: usize = blocks.iter().map(|(m, n)| m * n).sum();
        if dim <= max_dim && dim >= 2 {
            let u = haar_unitary(rng, dim);
            return AlgebraSpec::new(blocks, 0, u, Tolerance::default())
                .expect("Haar basis change is unitary");
        }
    }
}

/// Random block structure containing at least one block with multiplicity
/// smaller than its size.
pub fn algebra_without_trace_vectors<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> AlgebraSpec {
    loop {
        let q = rng.random_range(1..=3);
        let mut blocks: Vec<(usize, usize)> = (0..q)
            .map(|_| {
                let n = rng.random_range(1..=3);
                let m = rng.random_range(1..=3);
                (m, n)
            })
            .collect();
        // force a deficient block
        let k = rng.random_range(0..q);
        let n = rng.random_range(2..=3);
        blocks[k] = (rng.random_range(1..n), n);
        let dim: usize = blocks.iter().map(|(m, n)| m * n).sum();
        if dim <= max_dim {
            let u = haar_unitary(rng, dim);
            return AlgebraSpec::new(blocks, 0, u, Tolerance::default())
                .expect("Haar basis change is unitary");
        }
    }
}

/// Random Hermitian matrix (not normalized).
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = ginibre(rng, d, d);
    (&g + g.adjoint()).scale(0.5)
}
