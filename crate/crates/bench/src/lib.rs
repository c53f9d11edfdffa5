//! Shared fixtures for the benchmark targets.

use liftmcg::lifting::CoverParams;
use liftmcg::matrix::IntMatrix;
use liftmcg::words::Word;

/// Deterministic stabilizer members for factorization benchmarks.
pub fn stab_corpus(genus: usize, sheets: u64, count: usize, seed: u64) -> Vec<(Word, IntMatrix)> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    liftmcg::verify::random_stab_members(genus, sheets, count, 20, &mut rng)
}

/// The cover used throughout the benchmarks.
pub fn bench_cover(genus: usize, sheets: u64) -> CoverParams {
    CoverParams::new(genus, sheets).expect("valid cover")
}
