//! Shared fixtures for integration tests: seeded random independent sets
//! with a bounded condition number.
#![allow(dead_code)]

use linoep_core::VectorSet;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_CONDITION: f64 = 1e6;

/// Ratio of extreme singular values of the matrix with the set as columns.
pub fn condition_number(set: &VectorSet) -> f64 {
    let (n, m) = (set.len(), set.dim());
    let a = DMatrix::from_fn(m, n, |r, c| set[c][r]);
    let sv = a.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

pub fn random_set<R: Rng>(rng: &mut R, n: usize, m: usize) -> VectorSet {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    VectorSet::from_rows(&rows).unwrap()
}

/// Uniform entries in [-1, 1], redrawn until the condition number is below
/// [`MAX_CONDITION`].
pub fn random_li_set<R: Rng>(rng: &mut R, n: usize, m: usize) -> VectorSet {
    loop {
        let s = random_set(rng, n, m);
        if condition_number(&s) < MAX_CONDITION {
            return s;
        }
    }
}

/// `count` trial sets with `n` uniform in 2..=8 and `m` uniform in n..=16.
pub fn trial_sets(seed: u64, count: usize) -> Vec<VectorSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=8);
            let m = rng.gen_range(n..=16);
            random_li_set(&mut rng, n, m)
        })
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
