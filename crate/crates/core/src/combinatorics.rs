//! Binomial coefficients and ordered compositions.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `n choose k` with arbitrary precision; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// [`binomial`] narrowed to `usize`, for use as a multiplicity.
pub fn binomial_usize(n: u64, k: u64) -> Result<usize> {
    binomial(n, k)
        .to_usize()
        .ok_or_else(|| Error::Parse(format!("binomial({n}, {k}) overflows usize")))
}

/// Number of ones in the binary expansion of `k`.
pub fn dyadic_weight(k: u64) -> u32 {
    k.count_ones()
}

/// Iterator over ordered tuples of `parts` non-negative integers summing to
/// `total`, in lexicographically decreasing order of the first entries.
///
/// With `parts == 0` there is one (empty) composition of 0 and none of any
/// positive total.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
    total: usize,
}

pub fn compositions(total: usize, parts: usize) -> Compositions {
    let current = match parts {
        0 if total == 0 => Some(Vec::new()),
        0 => None,
        _ => {
            let mut v = vec![0; parts];
            v[0] = total;
            Some(v)
        }
    };
    Compositions { current, total }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let parts = out.len();
        if parts >= 2 {
            // Move one unit from the rightmost nonzero entry (excluding the
            // last slot) one step right, and sweep the tail back into it.
            if let Some(i) = (0..parts - 1).rev().find(|&i| out[i] > 0) {
                let mut next = out.clone();
                let tail: usize = next[i + 1..].iter().sum();
                next[i] -= 1;
                for x in &mut next[i + 1..] {
                    *x = 0;
                }
                next[i + 1] = tail + 1;
                debug_assert_eq!(next.iter().sum::<usize>(), self.total);
                self.current = Some(next);
            }
        }
        Some(out)
    }
}
