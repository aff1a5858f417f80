//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's solvers or reductions.
#![allow(dead_code)]

use clustermin::{PointSet, Rational};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Lexicographically first `k`-subset of `0..n` minimizing `cost`.
pub fn brute_min<C: Ord + Clone>(n: usize, k: usize, mut cost: impl FnMut(&[usize]) -> C) -> (C, Vec<usize>) {
    let mut best: Option<(C, Vec<usize>)> = None;
    for subset in (0..n).combinations(k) {
        let c = cost(&subset);
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, subset));
        }
    }
    best.expect("k <= n")
}

/// Sum of `pair(i, j)` over unordered pairs of `subset`.
pub fn pair_sum(subset: &[usize], mut pair: impl FnMut(usize, usize) -> Rational) -> Rational {
    subset
        .iter()
        .tuple_combinations()
        .fold(Rational::ZERO, |acc, (&i, &j)| acc.checked_add(&pair(i, j)).unwrap())
}

/// Squared distance recomputed from the raw coordinates.
pub fn brute_d2(points: &PointSet, i: usize, j: usize) -> u128 {
    let (a, b) = (points.point(i).unwrap(), points.point(j).unwrap());
    let mut s: i128 = 0;
    for k in 0..a.len() {
        let d = a[k] as i128 - b[k] as i128;
        s += d * d;
    }
    s as u128
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, dim: usize, extent: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(0..=extent)).collect())
        .collect()
}

pub fn random_selection(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        all.swap(i, j);
    }
    all.truncate(k);
    all
}
