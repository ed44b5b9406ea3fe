//! Abundant numbers: `n ≥ 1` whose divisor sum `σ(n)` is at least `2n`.
//! Perfect numbers are included.

use std::sync::OnceLock;

use crate::sets::DensitySet;

/// `σ(n)` for `n < limit` (with `σ(0) = 0`), by an additive sieve.
pub fn divisor_sums(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut sigma = vec![0u64; limit];
    for d in 1..limit {
        for m in (d..limit).step_by(d) {
            sigma[m] += d as u64;
        }
    }
    sigma
}

/// `σ(n)` by trial division.
pub fn divisor_sum(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut total = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += d;
            if d * d != n {
                total += n / d;
            }
        }
        d += 1;
    }
    total
}

pub fn is_abundant(n: u64) -> bool {
    n >= 1 && divisor_sum(n) >= 2 * n
}

/// Membership of `0..limit`.
pub fn abundant_bits(limit: u64) -> Vec<bool> {
    divisor_sums(limit)
        .iter()
        .enumerate()
        .map(|(n, &s)| n >= 1 && s >= 2 * n as u64)
        .collect()
}

/// The abundant numbers as an oracle set. Every call returns the same oracle,
/// so expressions mentioning it more than once simplify.
pub fn abundant_set() -> DensitySet {
    static SET: OnceLock<DensitySet> = OnceLock::new();
    SET.get_or_init(|| DensitySet::oracle_with_sieve("abundant", is_abundant, abundant_bits))
        .clone()
}
