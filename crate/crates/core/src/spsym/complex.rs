use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::cell::{SymCell, SymChain};
use super::presentation::TwoComplexPresentation;
use crate::chaincore::{homology, ChainComplex, Coefficients, GradedGroup, IntMatrix};
use crate::error::{Error, Result};

/// All cells of weight `n`, sorted by degree and then by cell order. With
/// `reduced_only`, only cells without a basepoint factor (`ρ = 0`), which form
/// the basis of `SP^n / SP^{n-1}`.
pub fn enumerate_cells(p: &TwoComplexPresentation, n: usize, reduced_only: bool) -> Vec<SymCell> {
    let w = p.circles();
    let r = p.disc_count();
    let mut out = Vec::new();
    let mut e_subset = Vec::new();
    enumerate_circle_subsets(1, w, n, &mut e_subset, &mut |es| {
        let budget = n - es.len();
        let mut powers = vec![0usize; r];
        enumerate_disc_powers(0, budget, &mut powers, &mut |powers, used| {
            let rho = budget - used;
            if reduced_only && rho > 0 {
                return;
            }
            let discs = powers
                .iter()
                .enumerate()
                .filter(|(_, &s)| s > 0)
                .map(|(j, &s)| (j + 1, s))
                .collect();
            out.push(SymCell::new(rho, es.to_vec(), discs).expect("enumerated cells are canonical"));
        });
    });
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

fn enumerate_circle_subsets(
    start: usize,
    w: usize,
    budget: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    visit(current);
    if current.len() == budget {
        return;
    }
    for i in start..=w {
        current.push(i);
        enumerate_circle_subsets(i + 1, w, budget, current, visit);
        current.pop();
    }
}

fn enumerate_disc_powers(
    j: usize,
    budget: usize,
    powers: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize], usize),
) {
    if j == powers.len() {
        let used = powers.iter().sum();
        visit(powers, used);
        return;
    }
    let used: usize = powers[..j].iter().sum();
    for s in 0..=budget - used {
        powers[j] = s;
        enumerate_disc_powers(j + 1, budget, powers, visit);
    }
    powers[j] = 0;
}

/// Boundary of a cell by the graded Leibniz rule. `v0` and the `e_i` are
/// cycles; disc powers take their boundary from the presentation.
pub fn cell_boundary(p: &TwoComplexPresentation, cell: &SymCell) -> SymChain {
    let prefix = SymChain::from_cell(cell.odd_part());
    // Only the even-degree disc factors have boundaries; they all sit behind
    // the t circle classes.
    let sign = if cell.e_indices().len().is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let discs = cell.disc_powers();
    let mut out = SymChain::zero();
    for (m, &(j, s)) in discs.iter().enumerate() {
        let db = p.disc_boundary(j, s);
        if db.is_zero() {
            continue;
        }
        let mut term = prefix.clone();
        for (a, &(ja, sa)) in discs.iter().enumerate() {
            let factor = if a == m {
                db.clone()
            } else {
                SymChain::from_cell(SymCell::disc(ja, sa))
            };
            term = term.star(&factor);
        }
        out.add(&term.scaled(&sign));
    }
    out
}

/// Cellular chain complex of `SP^n(X)` (or of `SP^n(X)/SP^{n-1}(X)` when
/// `reduced`), checked for `∂∘∂ = 0`.
pub fn sp_chain_complex(p: &TwoComplexPresentation, n: usize, reduced: bool) -> Result<ChainComplex> {
    p.validate()?;
    let cells = enumerate_cells(p, n, reduced);
    let top = 2 * n;
    let mut by_degree: Vec<Vec<SymCell>> = vec![Vec::new(); top + 1];
    for c in cells {
        let q = c.degree();
        by_degree[q].push(c);
    }
    let index: Vec<HashMap<&SymCell, usize>> = by_degree
        .iter()
        .map(|cells| cells.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();

    let mut boundaries = Vec::with_capacity(top);
    for q in 1..=top {
        let mut m = IntMatrix::zeros(by_degree[q - 1].len(), by_degree[q].len());
        for (col, cell) in by_degree[q].iter().enumerate() {
            for (face, coeff) in cell_boundary(p, cell).iter() {
                if reduced && face.rho() > 0 {
                    continue;
                }
                let row = *index[q - 1].get(face).ok_or_else(|| {
                    Error::InvalidPresentation(format!(
                        "boundary of `{cell}` leaves the level-{n} complex through `{face}`"
                    ))
                })?;
                m.add_to(row, col, coeff);
            }
        }
        boundaries.push(m);
    }
    for q in 2..=top {
        if !boundaries[q - 2].mul(&boundaries[q - 1]).is_zero() {
            return Err(Error::InconsistentBoundary { degree: q });
        }
    }
    let basis = by_degree
        .into_iter()
        .map(|cells| cells.iter().map(SymCell::label).collect())
        .collect();
    ChainComplex::new(basis, boundaries)
}

/// Homology of `SP^n(X)`, or reduced homology of `S̄P^n(X)` when `reduced`.
pub fn sp_homology(
    p: &TwoComplexPresentation,
    n: usize,
    reduced: bool,
    coeffs: Coefficients,
) -> Result<GradedGroup> {
    let h = homology(&sp_chain_complex(p, n, reduced)?, coeffs)?;
    Ok(h.with_reduced(reduced))
}
