//! Deterministic workloads shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use equilog::oracle::random_vcat;
use equilog::{Partition, QValue, Quantale, VCatObj};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn values(q: Quantale) -> Vec<QValue> {
    q.carrier().unwrap_or_else(|| q.default_grid())
}

/// A random valid object with `n` points.
pub fn object(q: Quantale, n: usize, seed: u64) -> VCatObj {
    random_vcat(q, n, &values(q), &mut rng(seed))
}

/// Identifies `i` with `i + n/2` for the first half of the points.
pub fn halving(n: usize) -> Partition {
    let labels: Vec<usize> = (0..n).map(|i| i % n.div_ceil(2).max(1)).collect();
    Partition::from_labels(&labels)
}
