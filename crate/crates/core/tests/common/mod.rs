//! Independent oracles: plain `i64` subset sums, no library classification.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `2 * sum_J l - sum l`, the sign of `L_J`.
pub fn excess(v: &[i64], mask: u64) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &x)| if mask >> i & 1 == 1 { x } else { -x })
        .sum()
}

pub fn is_generic(v: &[i64]) -> bool {
    (0..1u64 << v.len()).all(|m| excess(v, m) != 0)
}

/// Masks `J ⊆ {1..n-1}` with `J ∪ {n}` short, ascending.
pub fn signature(v: &[i64]) -> Vec<u64> {
    let n = v.len();
    let top = 1u64 << (n - 1);
    (0..top).filter(|&j| excess(v, j | top) < 0).collect()
}

/// `(a, b)`: short and median counts of `J ∋ n` by `|J| - 1`.
pub fn short_median_counts(v: &[i64]) -> (Vec<u64>, Vec<u64>) {
    let n = v.len();
    let top = 1u64 << (n - 1);
    let (mut a, mut b) = (vec![0; n], vec![0; n]);
    for j in 0..top {
        let k = (j.count_ones()) as usize;
        match excess(v, j | top) {
            e if e < 0 => a[k] += 1,
            0 => b[k] += 1,
            _ => {}
        }
    }
    (a, b)
}

/// Distinct signatures of all generic nondecreasing vectors with entries in `1..=max`.
pub fn brute_census(n: usize, max: i64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    let mut v = vec![1i64; n];
    loop {
        if is_generic(&v) {
            out.insert(signature(&v));
        }
        // Next nondecreasing sequence.
        let Some(i) = (0..n).rev().find(|&i| v[i] < max) else {
            break;
        };
        let x = v[i] + 1;
        for slot in &mut v[i..] {
            *slot = x;
        }
    }
    out
}

/// Random generic nondecreasing integer vectors with `n` in `3..=8` and `d` in `{3, 4, 5}`.
pub fn sample(seed: u64, count: usize) -> Vec<(Vec<i64>, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(3..=8);
        let max = if rng.random_bool(0.5) { 12 } else { 100 };
        let mut v: Vec<i64> = (0..n).map(|_| rng.random_range(1..=max)).collect();
        v.sort_unstable();
        if is_generic(&v) {
            let d = rng.random_range(3..=5);
            out.push((v, d));
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
