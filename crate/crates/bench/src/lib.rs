//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smale_core::sample::{cover_presentation, essential_graph};
use smale_core::{FiberedPresentation, IntMatrix};

/// `n` square matrices of size `dim` with entries in `[−9, 9]`.
pub fn matrices(seed: u64, n: usize, dim: usize) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let v: Vec<i64> = (0..dim * dim).map(|_| rng.gen_range(-9..=9)).collect();
            IntMatrix::from_i64(dim, dim, &v)
        })
        .collect()
}

/// Singleton-partition presentations of random essential graphs.
pub fn sft_corpus(seed: u64, n: usize) -> Vec<FiberedPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| FiberedPresentation::singleton(essential_graph(&mut rng, 6, 12)))
        .collect()
}

/// Fiber-product presentations with fibers of size at most `max_fiber`.
pub fn cover_corpus(seed: u64, n: usize, max_fiber: usize) -> Vec<FiberedPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| cover_presentation(&mut rng, 3, 6, max_fiber).presentation)
        .collect()
}
