//! Seeded workloads shared by the benchmarks.

use pqclab_core::{random, AlgebraSpec, Channel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random unitary qubit channels with two to four unitaries.
pub fn qubit_channels(count: usize) -> Vec<Channel> {
    let mut g = rng(1);
    (0..count)
        .map(|i| random::random_unitary_channel(&mut g, 2, 2 + i % 3))
        .collect()
}

/// `1_m ⊗ M_n` blocks summed up to the given total dimension, in a Haar basis.
pub fn algebra_of_dim(dim: usize) -> AlgebraSpec {
    let mut g = rng(dim as u64);
    let mut blocks = Vec::new();
    let mut left = dim;
    while left > 0 {
        let n = if left >= 4 { 2 } else { 1 };
        let m = if left >= 4 { 2 } else { left };
        blocks.push((m, n));
        left -= m * n;
    }
    let u = random::haar_unitary(&mut g, dim);
    AlgebraSpec::new(blocks, 0, u, Default::default()).expect("Haar unitary")
}
