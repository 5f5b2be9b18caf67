//! Symmetric products of two-dimensional complexes.
//!
//! For `X = ⋁^w S^1 ∪ (D_1 ∪ ⋯ ∪ D_r)` the symmetric products have a
//! multiplicative cell structure generated under `⋆` by a zero-cell `v0`,
//! one-cells `e_1..e_w` and `2s`-cells `SP^s D_j`. The level-`n` complex is
//! spanned by the products of weight `n`; the reduced complex drops every
//! cell containing `v0`.
//!
//! Boundaries: `∂v0 = ∂e_i = 0` (there is one zero-cell), `∂SP^1 D_j` is the
//! attaching chain of `D_j`, higher powers come from a [`HigherPowerRule`],
//! and composite cells follow the graded Leibniz rule.

mod cell;
mod complex;
mod presentation;

use serde::Serialize;

pub use cell::{star_product, SymCell, SymChain};
pub use complex::{cell_boundary, enumerate_cells, sp_chain_complex, sp_homology};
pub use presentation::{BoundaryData, HigherPowerRule, Preset, TwoComplexPresentation};

use crate::chaincore::{Coefficients, GradedGroup};
use crate::combinatorics::binomial_usize;
use crate::error::{Error, Result};

/// Reduced homology of `S̄P^n` of a closed genus-`g` surface: the homology of
/// the Jacobian torus `T^{2g}` raised by `2n − 2g`. Valid for `n ≥ 2g`.
pub fn mattuck_reduced_sp(g: usize, n: usize, field: Coefficients) -> Result<GradedGroup> {
    if g < 1 {
        return Err(Error::hypothesis("Mattuck example", "genus g ≥ 1"));
    }
    if n < 2 * g {
        return Err(Error::hypothesis(
            "Mattuck example",
            format!("the shifted Jacobian formula holds for n ≥ 2g; got n = {n}, g = {g}"),
        ));
    }
    if !field.is_field() {
        return Err(Error::InvalidCoefficients(
            "the Jacobian table is given over a field".into(),
        ));
    }
    let shift = 2 * n - 2 * g;
    let mut out = GradedGroup::zero(field).with_reduced(true);
    for k in 0..=2 * g {
        out.add_rank(shift + k, binomial_usize(2 * g as u64, k as u64)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityCheck {
    pub level: usize,
    pub degree: usize,
    pub lower: usize,
    pub upper: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub checks: Vec<MonotonicityCheck>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks `dim H_q(SP^{n-1}) ≤ dim H_q(SP^n)` for `1 ≤ n ≤ n_max` and all `q`,
/// the numerical shadow of the split injection `SP^{n-1} → SP^n`.
pub fn steenrod_monotonicity_check(
    p: &TwoComplexPresentation,
    n_max: usize,
    field: Coefficients,
) -> Result<MonotonicityReport> {
    if !field.is_field() {
        return Err(Error::InvalidCoefficients(
            "monotonicity is checked on dimensions over a field".into(),
        ));
    }
    let tables: Vec<GradedGroup> = (0..=n_max)
        .map(|n| sp_homology(p, n, false, field))
        .collect::<Result<_>>()?;
    let mut checks = Vec::new();
    for n in 1..=n_max {
        let top = tables[n].max_degree().max(tables[n - 1].max_degree()).unwrap_or(0);
        for q in 0..=top {
            let lower = tables[n - 1].rank(q);
            let upper = tables[n].rank(q);
            checks.push(MonotonicityCheck {
                level: n,
                degree: q,
                lower,
                upper,
                pass: lower <= upper,
            });
        }
    }
    Ok(MonotonicityReport { checks })
}


#[cfg(test)]
mod presentation_fixtures {
    /// `ℝP²`: one circle, disc attached by degree 2, `∂SP^s D = 2 e1 ⋆ SP^{s-1} D`.
    pub(crate) fn rp2_json(max_power: usize) -> String {
        let entries: Vec<String> = (2..=max_power)
            .map(|s| {
                format!(
                    r#"{{"disc":1,"power":{s},"chain":[{{"coeff":2,"cell":"e1·SP{}D1"}}]}}"#,
                    s - 1
                )
            })
            .collect();
        format!(
            r#"{{"w":1,"discs":[{{"attach":[2]}}],"higher_power_rule":{{"table":[{}]}}}}"#,
            entries.join(",")
        )
    }
}
