//! Test-side oracles that share no code with the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// Rank over `F_p` by plain row reduction.
pub fn rank_mod_p(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    for row in &mut rows {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn inverse_mod(a: i64, p: i64) -> i64 {
    (1..p).find(|x| a * x % p == 1).expect("p is prime and a is nonzero")
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Triangulated wedge of `w` circles: circle `c` is the triangle on
/// `0, 2c+1, 2c+2`.
fn wedge_edges(w: usize) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    for c in 0..w {
        let (a, b) = (2 * c + 1, 2 * c + 2);
        edges.extend([(0, a), (a, b), (0, b)]);
    }
    (2 * w + 1, edges)
}

/// `m`-simplices of the simplicial set of an ordered one-dimensional
/// complex: non-decreasing vertex sequences of length `m + 1` whose support
/// is a vertex or an edge.
fn simplices(vertices: usize, edges: &[(usize, usize)], m: usize) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for v in 0..vertices {
        out.insert(vec![v; m + 1]);
    }
    for &(a, b) in edges {
        for split in 1..=m {
            let mut s = vec![a; split];
            s.extend(std::iter::repeat_n(b, m + 1 - split));
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

fn multisets<T: Clone>(items: &[T], n: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for i in start..items.len() {
        cur.push(items[i].clone());
        multisets(items, n, i, cur, out);
        cur.pop();
    }
}

type Point = Vec<Vec<usize>>;

fn degenerate(x: &Point) -> bool {
    let len = x[0].len();
    (0..len - 1).any(|i| x.iter().all(|s| s[i] == s[i + 1]))
}

fn face(x: &Point, i: usize) -> Point {
    let mut f: Point = x
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.remove(i);
            s
        })
        .collect();
    f.sort();
    f
}

/// Betti numbers `b_0..=b_n` of `SP^n` of a wedge of `w` circles over `F_p`,
/// from the normalized chains of the quotient simplicial set `X^n / S_n`.
pub fn brute_force_sp_betti(w: usize, n: usize, p: i64) -> Vec<usize> {
    let (vertices, edges) = wedge_edges(w);
    let top = n + 1;
    let cells: Vec<Vec<Point>> = (0..=top)
        .map(|m| {
            let mut all = Vec::new();
            multisets(&simplices(vertices, &edges, m), n, 0, &mut Vec::new(), &mut all);
            all.retain(|x| !degenerate(x));
            all
        })
        .collect();
    let index: Vec<BTreeMap<&Point, usize>> = cells
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    // rank of ∂_m : C_m → C_{m−1}
    let mut ranks = vec![0usize; top + 2];
    for m in 1..=top {
        let mut rows = vec![vec![0i64; cells[m].len()]; cells[m - 1].len()];
        for (col, x) in cells[m].iter().enumerate() {
            for i in 0..=m {
                let f = face(x, i);
                if degenerate(&f) {
                    continue;
                }
                let sign = if i % 2 == 0 { 1 } else { -1 };
                rows[index[m - 1][&f]][col] += sign;
            }
        }
        ranks[m] = rank_mod_p(rows, p);
    }
    (0..=n).map(|q| cells[q].len() - ranks[q] - ranks[q + 1]).collect()
}
