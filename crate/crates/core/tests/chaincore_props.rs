//! Independent oracles for Smith normal form and homology.

use std::collections::BTreeSet;

use confighom::chaincore::{table_algebra, TableOp};
use confighom::tsp::{circle_skeleton, tp_circle_complex};
use confighom::{
    homology, relative_homology, smith_normal_form, ChainComplex, Coefficients, GradedGroup,
    IntMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const Z: Coefficients = Coefficients::Integers;
const Q: Coefficients = Coefficients::Rationals;
const F2: Coefficients = Coefficients::F2;

fn det(m: &[Vec<i64>]) -> i128 {
    // Laplace expansion; the matrices here are at most 4×4.
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as ratios of determinantal divisors `D_k / D_{k-1}`,
/// `D_k` the gcd of all `k × k` minors.
fn determinantal_invariants(m: &[Vec<i64>], rows: usize, cols: usize) -> Vec<i128> {
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(0, rows.min(cols) - out.len()));
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<Vec<i64>>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r).prop_map(move |m| (r, c, m))
    })
}

fn diag_i128(m: &IntMatrix) -> Vec<i128> {
    smith_normal_form(m)
        .diagonal
        .iter()
        .map(|d| i128::try_from(d.clone()).unwrap())
        .collect()
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for &(a, b, f) in ops {
        let (a, b) = (a % n, b % n);
        if a == b {
            continue;
        }
        let mut e = IntMatrix::identity(n);
        e.set(a, b, BigInt::from(f));
        u = u.mul(&e);
    }
    u
}

proptest! {
    #[test]
    fn snf_matches_determinantal_divisors((r, c, m) in arb_matrix()) {
        let got = diag_i128(&IntMatrix::from_rows(&m));
        prop_assert_eq!(got, determinantal_invariants(&m, r, c));
    }

    #[test]
    fn snf_divisibility_and_rank((_r, _c, m) in arb_matrix()) {
        let a = IntMatrix::from_rows(&m);
        let s = smith_normal_form(&a);
        for w in s.diagonal.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || (!w[0].is_zero() && (w[1].clone() % &w[0]).is_zero()));
        }
        prop_assert!(s.diagonal.iter().all(|d| !d.is_negative()));
        prop_assert_eq!(s.rank, s.diagonal.iter().filter(|d| !d.is_zero()).count());
        prop_assert_eq!(s.rank, a.rank_rational());
    }

    #[test]
    fn snf_invariant_under_unimodular_change(
        (r, c, m) in arb_matrix(),
        left in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..6),
        right in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..6),
    ) {
        let a = IntMatrix::from_rows(&m);
        let b = unimodular(r, &left).mul(&a).mul(&unimodular(c, &right));
        prop_assert_eq!(smith_normal_form(&a).diagonal, smith_normal_form(&b).diagonal);
    }
}

/// Downward-closed random simplicial complex on up to six vertices.
fn simplicial_complex(facets: &[Vec<u8>]) -> ChainComplex {
    let mut simplices: BTreeSet<Vec<u8>> = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        let n = f.len();
        for mask in 1u32..(1 << n) {
            simplices.insert((0..n).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect());
        }
    }
    let top = simplices.iter().map(Vec::len).max().unwrap_or(0);
    let by_dim: Vec<Vec<Vec<u8>>> = (1..=top)
        .map(|len| simplices.iter().filter(|s| s.len() == len).cloned().collect())
        .collect();
    let mut boundaries = Vec::new();
    for q in 1..by_dim.len() {
        let mut m = IntMatrix::zeros(by_dim[q - 1].len(), by_dim[q].len());
        for (col, s) in by_dim[q].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let row = by_dim[q - 1].iter().position(|f| *f == face).unwrap();
                m.set(row, col, BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        boundaries.push(m);
    }
    let basis = by_dim
        .iter()
        .map(|ss| ss.iter().map(|s| format!("{s:?}")).collect())
        .collect();
    ChainComplex::new(basis, boundaries).unwrap()
}

fn arb_facets() -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0u8..6, 1..=4), 1..7)
}

proptest! {
    #[test]
    fn random_complexes_obey_universal_coefficients(facets in arb_facets()) {
        let c = simplicial_complex(&facets);
        prop_assert!(c.check_boundary_squared().is_ok());
        let z = homology(&c, Z).unwrap();
        let q = homology(&c, Q).unwrap();
        for p in [2u64, 3, 5] {
            let fp = homology(&c, Coefficients::prime_field(p).unwrap()).unwrap();
            for d in 0..=c.len() {
                let tors = |deg: usize| z.torsion(deg).iter().filter(|&&t| t % p == 0).count();
                let expected = z.rank(d) + tors(d) + if d > 0 { tors(d - 1) } else { 0 };
                prop_assert_eq!(fp.rank(d), expected, "p={} d={}", p, d);
            }
            prop_assert_eq!(fp.euler_characteristic(), c.euler_characteristic());
        }
        for d in 0..=c.len() {
            prop_assert_eq!(q.rank(d), z.rank(d));
        }
        prop_assert_eq!(q.euler_characteristic(), c.euler_characteristic());
    }
}

#[test]
fn snf_examples() {
    assert_eq!(diag_i128(&IntMatrix::from_rows(&[[0]])), vec![0]);
    assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[[0]])).rank, 0);
    assert_eq!(diag_i128(&IntMatrix::from_rows(&[[2]])), vec![2]);
    let s = smith_normal_form(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
    assert_eq!((s.diagonal, s.rank), (vec![BigInt::from(2), BigInt::from(4)], 2));
    let empty = smith_normal_form(&IntMatrix::zeros(0, 0));
    assert!(empty.diagonal.is_empty());
    assert_eq!(empty.rank, 0);
}

#[test]
fn homology_examples() {
    let h = homology(&tp_circle_complex(2), Z).unwrap();
    assert_eq!(h.rank(0), 1);
    assert_eq!((h.rank(1), h.torsion(1)), (0, &[2u64][..]));
    assert!(h.entry(2).is_none());
    assert!(homology(&ChainComplex::empty(), Z).unwrap().is_zero());
    let s2 = ChainComplex::new(
        vec![vec!["v".into()], vec![], vec!["D".into()]],
        vec![IntMatrix::zeros(1, 0), IntMatrix::zeros(0, 1)],
    )
    .unwrap();
    assert_eq!(homology(&s2, Z).unwrap(), GradedGroup::from_ranks(Z, &[1, 0, 1]));
}

#[test]
fn malformed_complex_is_reported() {
    let bad = ChainComplex::new(
        vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]],
        vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[1]])],
    )
    .unwrap();
    assert!(homology(&bad, Z).is_err());
}

#[test]
fn relative_homology_examples() {
    let rel = relative_homology(&tp_circle_complex(4), &circle_skeleton(3), F2).unwrap();
    assert_eq!(rel, GradedGroup::from_ranks(F2, &[0, 0, 0, 0, 1]));
    let rel = relative_homology(&tp_circle_complex(3), &circle_skeleton(1), F2).unwrap();
    assert_eq!(rel, GradedGroup::from_ranks(F2, &[0, 0, 1, 1]));
    let all = relative_homology(&tp_circle_complex(5), &circle_skeleton(5), Z).unwrap();
    assert!(all.is_zero());
    // σ^2 without σ^1 is not closed under the boundary.
    let not_closed = vec![vec![], vec![], vec!["sigma^2".to_string()]];
    assert!(relative_homology(&tp_circle_complex(3), &not_closed, Z).is_err());
}

#[test]
fn table_algebra_examples() {
    let s0 = GradedGroup::reduced_sphere(0, Z);
    assert_eq!(table_algebra(&s0, &s0, TableOp::Shift(3)).unwrap(), GradedGroup::reduced_sphere(3, Z));
    let circle = GradedGroup::from_ranks(F2, &[1, 1]);
    assert_eq!(table_algebra(&circle, &circle, TableOp::Tensor).unwrap(), GradedGroup::from_ranks(F2, &[1, 2, 1]));
    let a = GradedGroup::from_ranks(F2, &[1, 1, 0]);
    let b = GradedGroup::from_ranks(F2, &[0, 0, 1]);
    assert_eq!(table_algebra(&a, &b, TableOp::DirectSum).unwrap(), GradedGroup::from_ranks(F2, &[1, 1, 1]));
    let rp2 = homology(&tp_circle_complex(2), Z).unwrap();
    assert!(table_algebra(&rp2, &rp2, TableOp::Tensor).is_err());
    assert!(table_algebra(&a, &GradedGroup::point(Q), TableOp::DirectSum).is_err());
}

#[test]
fn graded_group_json_roundtrip_and_validation() {
    let h = homology(&tp_circle_complex(5), Z).unwrap();
    let text = serde_json::to_string(&h).unwrap();
    assert_eq!(serde_json::from_str::<GradedGroup>(&text).unwrap(), h);
    let dup = r#"{"coefficients":"Z","reduced":false,"entries":[{"degree":1,"rank":1,"torsion":[]},{"degree":1,"rank":1,"torsion":[]}]}"#;
    assert!(serde_json::from_str::<GradedGroup>(dup).is_err());
    let field_torsion = r#"{"coefficients":"Fp:2","reduced":false,"entries":[{"degree":1,"rank":0,"torsion":[2]}]}"#;
    assert!(serde_json::from_str::<GradedGroup>(field_torsion).is_err());
}
