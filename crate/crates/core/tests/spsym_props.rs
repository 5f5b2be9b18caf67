mod common;

use std::collections::BTreeMap;

use common::{binom, brute_force_sp_betti};
use confighom::spsym::{
    cell_boundary, enumerate_cells, mattuck_reduced_sp, sp_chain_complex, sp_homology, star_product,
    steenrod_monotonicity_check, BoundaryData, HigherPowerRule, SymCell, SymChain, TwoComplexPresentation,
};
use confighom::{Coefficients, GradedGroup};
use num_bigint::BigInt;
use proptest::prelude::*;

const Z: Coefficients = Coefficients::Integers;
const F2: Coefficients = Coefficients::F2;

fn f3() -> Coefficients {
    Coefficients::prime_field(3).unwrap()
}

fn cell(rho: usize, e: &[usize], discs: &[(usize, usize)]) -> SymCell {
    SymCell::new(rho, e.to_vec(), discs.to_vec()).unwrap()
}

fn chain(terms: &[(i64, SymCell)]) -> SymChain {
    let mut c = SymChain::zero();
    for (k, cell) in terms {
        c.add_term(cell.clone(), BigInt::from(*k));
    }
    c
}

#[test]
fn enumeration_examples() {
    let cells = enumerate_cells(&TwoComplexPresentation::sphere(), 2, false);
    let got: Vec<(String, usize)> = cells.iter().map(|c| (c.label(), c.degree())).collect();
    assert_eq!(
        got,
        vec![("v0^2".into(), 0), ("v0^1·SP1D1".into(), 2), ("SP2D1".into(), 4)]
    );
    let cells = enumerate_cells(&TwoComplexPresentation::wedge_of_circles(2), 2, false);
    let degrees: Vec<usize> = cells.iter().map(SymCell::degree).collect();
    assert_eq!(degrees, vec![0, 1, 1, 2]);
    assert_eq!(cells[3], cell(0, &[1, 2], &[]));
    let reduced = enumerate_cells(&TwoComplexPresentation::wedge_of_circles(3), 2, true);
    assert_eq!(reduced.iter().map(SymCell::degree).min(), Some(2));
}

#[test]
fn star_examples() {
    let e1 = SymCell::circle(1);
    let e2 = SymCell::circle(2);
    assert_eq!(star_product(&e2, &e1), chain(&[(-1, cell(0, &[1, 2], &[]))]));
    assert!(star_product(&e1, &e1).is_zero());
    assert_eq!(
        star_product(&SymCell::disc(1, 1), &SymCell::disc(1, 2)),
        chain(&[(3, SymCell::disc(1, 3))])
    );
    assert_eq!(
        star_product(&SymCell::basepoint(2), &SymCell::basepoint(3)),
        chain(&[(1, SymCell::basepoint(5))])
    );
}

#[test]
fn sp_examples() {
    let s2 = TwoComplexPresentation::sphere();
    assert_eq!(sp_homology(&s2, 3, false, Z).unwrap(), GradedGroup::from_ranks(Z, &[1, 0, 1, 0, 1, 0, 1]));
    let reduced = sp_homology(&s2, 4, true, Z).unwrap();
    assert_eq!(reduced, GradedGroup::reduced_sphere(8, Z));
    let wedge = sp_homology(&TwoComplexPresentation::wedge_of_circles(2), 2, false, Z).unwrap();
    assert_eq!(wedge, GradedGroup::from_ranks(Z, &[1, 2, 1]));
    for n in 0..=4 {
        assert_eq!(sp_homology(&TwoComplexPresentation::point(), n, false, Z).unwrap(), GradedGroup::point(Z));
    }
}

#[test]
fn mattuck_examples() {
    let t = mattuck_reduced_sp(1, 2, F2).unwrap();
    assert_eq!((t.rank(2), t.rank(3), t.rank(4), t.total_rank()), (1, 2, 1, 4));
    assert_eq!(mattuck_reduced_sp(1, 3, F2).unwrap().min_degree(), Some(4));
    assert_eq!(mattuck_reduced_sp(2, 4, F2).unwrap().total_rank(), 16);
    assert!(mattuck_reduced_sp(2, 3, F2).unwrap_err().is_rejected_hypothesis());
}

#[test]
fn wedge_matches_simplicial_oracle() {
    for (w, n) in [(1, 1), (1, 2), (2, 2), (3, 2)] {
        for (p, field) in [(2, F2), (3, f3())] {
            let oracle = brute_force_sp_betti(w, n, p);
            let got = sp_homology(&TwoComplexPresentation::wedge_of_circles(w), n, false, field).unwrap();
            let got: Vec<usize> = (0..=n).map(|q| got.rank(q)).collect();
            assert_eq!(got, oracle, "w={w} n={n} p={p}");
            let formula: Vec<usize> = (0..=n).map(|q| binom(w as u64, q as u64) as usize).collect();
            assert_eq!(oracle, formula, "w={w} n={n}");
        }
    }
}

#[test]
fn wedge_betti_are_truncated_binomials() {
    for w in 0..=5 {
        for n in 0..=6 {
            let h = sp_homology(&TwoComplexPresentation::wedge_of_circles(w), n, false, F2).unwrap();
            for q in 0..=2 * n {
                let expected = if q <= w.min(n) { binom(w as u64, q as u64) as usize } else { 0 };
                assert_eq!(h.rank(q), expected, "w={w} n={n} q={q}");
            }
        }
    }
}

#[test]
fn wedge_cell_counts() {
    for w in 0..=5 {
        for n in 0..=6 {
            let p = TwoComplexPresentation::wedge_of_circles(w);
            let full = sp_chain_complex(&p, n, false).unwrap();
            for q in 0..=2 * n {
                let expected = if q <= w.min(n) { binom(w as u64, q as u64) as usize } else { 0 };
                assert_eq!(full.cell_count(q), expected, "w={w} n={n} q={q}");
            }
            // Only the top products e_{i_1}⋯e_{i_n} survive the quotient.
            let reduced = enumerate_cells(&p, n, true);
            assert_eq!(reduced.len(), binom(w as u64, n as u64) as usize);
            assert!(reduced.iter().all(|c| c.degree() == n));
        }
    }
}

#[test]
fn monotonicity_on_presets() {
    for p in [
        TwoComplexPresentation::point(),
        TwoComplexPresentation::sphere(),
        TwoComplexPresentation::wedge_of_circles(1),
        TwoComplexPresentation::wedge_of_circles(3),
    ] {
        assert!(steenrod_monotonicity_check(&p, 6, F2).unwrap().passed());
    }
}

#[test]
fn inconsistent_table_is_rejected() {
    // ∂SP²D = e₁·SP¹D but ∂(e₁·SP¹D) = −e₁⋆e₂ ≠ 0 when D attaches along e₂.
    let mut table = BTreeMap::new();
    table.insert((1, 2), chain(&[(1, cell(0, &[1], &[(1, 1)]))]));
    let p = TwoComplexPresentation::new(
        2,
        BoundaryData {
            disc_attach: vec![vec![0, 1]],
            higher_power_rule: HigherPowerRule::UserTable(table),
        },
    )
    .unwrap();
    assert!(sp_chain_complex(&p, 2, false).is_err());
}

fn arb_cell() -> impl Strategy<Value = SymCell> {
    (
        0usize..3,
        prop::collection::btree_set(1usize..=5, 0..4),
        prop::collection::btree_map(1usize..=3, 1usize..=3, 0..3),
    )
        .prop_map(|(rho, es, discs)| SymCell::new(rho, es.into_iter().collect(), discs.into_iter().collect()).unwrap())
}

fn koszul(a: &SymCell, b: &SymCell) -> BigInt {
    BigInt::from(if (a.degree() * b.degree()).is_multiple_of(2) { 1 } else { -1 })
}

/// `∂SP^s D_j = c_j ⋆ SP^{s−1} D_j` with `c_j` the attaching chain.
fn leibniz_table(attach: &[Vec<i64>], max_power: usize) -> BTreeMap<(usize, usize), SymChain> {
    let mut table = BTreeMap::new();
    for (j, coeffs) in attach.iter().enumerate() {
        for s in 2..=max_power {
            let terms: Vec<(i64, SymCell)> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| (a, cell(0, &[i + 1], &[(j + 1, s - 1)])))
                .collect();
            table.insert((j + 1, s), chain(&terms));
        }
    }
    table
}

fn arb_presentation() -> impl Strategy<Value = TwoComplexPresentation> {
    (0usize..=3, 0usize..=2).prop_flat_map(|(w, r)| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, w), r).prop_map(move |attach| {
            let rule = if attach.iter().flatten().all(|&a| a == 0) {
                HigherPowerRule::Zero
            } else {
                HigherPowerRule::UserTable(leibniz_table(&attach, 6))
            };
            TwoComplexPresentation::new(w, BoundaryData { disc_attach: attach, higher_power_rule: rule }).unwrap()
        })
    })
}

fn boundary_of_chain(p: &TwoComplexPresentation, c: &SymChain) -> SymChain {
    let mut out = SymChain::zero();
    for (cell, k) in c.iter() {
        out.add(&cell_boundary(p, cell).scaled(k));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn star_is_associative(a in arb_cell(), b in arb_cell(), c in arb_cell()) {
        let (a, b, c) = (SymChain::from_cell(a), SymChain::from_cell(b), SymChain::from_cell(c));
        prop_assert_eq!(a.star(&b).star(&c), a.star(&b.star(&c)));
    }

    #[test]
    fn star_is_graded_commutative(a in arb_cell(), b in arb_cell()) {
        prop_assert_eq!(star_product(&a, &b), star_product(&b, &a).scaled(&koszul(&a, &b)));
    }

    #[test]
    fn star_weight_and_degree_add(a in arb_cell(), b in arb_cell()) {
        for (c, _) in star_product(&a, &b).iter() {
            prop_assert_eq!(c.weight(), a.weight() + b.weight());
            prop_assert_eq!(c.degree(), a.degree() + b.degree());
        }
    }

    #[test]
    fn boundary_squares_to_zero(p in arb_presentation(), n in 0usize..=6) {
        for c in enumerate_cells(&p, n, false) {
            let dd = boundary_of_chain(&p, &cell_boundary(&p, &c));
            prop_assert!(dd.is_zero(), "∂∂[{}] = {}", c, dd);
        }
        for reduced in [false, true] {
            let complex = sp_chain_complex(&p, n, reduced).unwrap();
            prop_assert!(complex.check_boundary_squared().is_ok());
            let h = sp_homology(&p, n, reduced, F2).unwrap();
            prop_assert_eq!(h.euler_characteristic(), complex.euler_characteristic());
        }
    }

    #[test]
    fn lowest_reduced_degree(p in arb_presentation(), n in 1usize..=6) {
        let w = p.circles();
        let lowest = enumerate_cells(&p, n, true).iter().map(SymCell::degree).min();
        if p.disc_count() > 0 || n <= w {
            prop_assert_eq!(lowest, Some(2 * n - w.min(n)));
        } else {
            prop_assert_eq!(lowest, None);
        }
    }

    #[test]
    fn even_cells_give_cell_table(r in 1usize..=3, n in 0usize..=5) {
        let p = TwoComplexPresentation::new(
            0,
            BoundaryData { disc_attach: vec![vec![]; r], higher_power_rule: HigherPowerRule::Zero },
        ).unwrap();
        let h = sp_homology(&p, n, false, Z).unwrap();
        let mut counts = GradedGroup::zero(Z);
        for c in enumerate_cells(&p, n, false) {
            counts.add_rank(c.degree(), 1);
        }
        prop_assert_eq!(h, counts);
    }
}
