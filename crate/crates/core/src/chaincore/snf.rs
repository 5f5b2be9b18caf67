//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Invariant factors of an integer matrix.
///
/// `diagonal` has length `min(rows, cols)`; its nonzero entries come first, are
/// positive, and each divides the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors strictly greater than one (the torsion they produce).
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> + '_ {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && **d != BigInt::from(1))
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let size = rows.min(cols);
    let mut diag = Vec::with_capacity(size);

    for t in 0..size {
        let Some((pi, pj)) = a.min_abs_nonzero_in(t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(&pivot);
                a.row_axpy(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(&pivot);
                a.col_axpy(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // A nonzero remainder is smaller than the pivot; bring it to (t, t).
            let (pi, pj) = smallest_in_cross(&a, t);
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
        }
        diag.push(a.get(t, t).abs());
    }

    let rank = diag.len();
    normalize_divisibility(&mut diag);
    diag.resize(size, BigInt::zero());
    SmithForm {
        diagonal: diag,
        rank,
    }
}

fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs = a.get(t, t).abs();
    let candidates = (t + 1..a.rows())
        .map(|i| (i, t))
        .chain((t + 1..a.cols()).map(|j| (t, j)));
    for (i, j) in candidates {
        let v = a.get(i, j).abs();
        if !v.is_zero() && v < best_abs {
            best_abs = v;
            best = (i, j);
        }
    }
    best
}

/// Replaces a list of positive integers by the invariant-factor form of
/// the corresponding diagonal matrix.
pub(crate) fn normalize_divisibility(diag: &mut [BigInt]) {
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            if g == diag[i] {
                continue;
            }
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
}
