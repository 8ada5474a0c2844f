//! Criterion benchmarks for `hochkit-core`; see `benches/operations.rs`.
//!
//! Run with `cargo bench -p hochkit-bench`.

use hochkit_core::random::Sampler;
use hochkit_core::MultiDiffOp;

/// Deterministic constant-free operators for the benchmarks.
pub fn operators(
    seed: u64,
    vars: usize,
    arity: usize,
    order: u32,
    count: usize,
) -> Vec<MultiDiffOp> {
    let mut s = Sampler::new(seed);
    (0..count)
        .map(|_| s.dpoly(vars, arity, order, 2, 3))
        .collect()
}
