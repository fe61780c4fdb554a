//! Deterministic input generators shared by the benchmark targets.

use mhi_core::{FieldDescriptor, IntMat};
use num_bigint::BigInt;

/// Splitmix-style generator; benches need reproducible inputs, not quality.
pub struct Gen(u64);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1))
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

pub fn random_int_matrix(seed: u64, rows: usize, cols: usize, bound: i64) -> IntMat {
    let mut gen = Gen::new(seed);
    let mut m = IntMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = BigInt::from(gen.range(-bound, bound));
        }
    }
    m
}

pub fn fork_mumford(n: usize) -> mhi_core::GwMatrix {
    mhi_core::danielewski_fork(n, FieldDescriptor::RealClosed)
        .mumford_matrix()
        .expect("fork weights are even")
}
