//! Truncated symmetric products.
//!
//! The only built-in cell model is the circle: `TP^n(S^1)` has one cell
//! `σ^k` in each degree `0 ≤ k ≤ n` with `∂σ^k = (1 + (-1)^k) σ^{k-1}`, and its
//! `k`-skeleton is `TP^k(S^1)`. Everything else enters as reduced tables
//! `H̃_*(TP̄^r)` supplied per level and combined with the wedge decomposition
//! `TP̄^n(X ∨ Y) = ⋁_{r+s=n} TP̄^r(X) ∧ TP̄^s(Y)`.

use serde::{Deserialize, Serialize};

use crate::chaincore::{
    homology, relative_homology, ChainComplex, Coefficients, GradedGroup, IntMatrix,
};
use crate::error::{Error, Result};

/// Label of the circle-model cell in degree `k`.
pub fn circle_cell_label(k: usize) -> String {
    format!("sigma^{k}")
}

/// Cellular chain complex of `TP^n(S^1)`.
pub fn tp_circle_complex(n: usize) -> ChainComplex {
    let basis = (0..=n).map(|k| vec![circle_cell_label(k)]).collect();
    let boundaries = (1..=n)
        .map(|k| IntMatrix::from_rows(&[[if k % 2 == 0 { 2 } else { 0 }]]))
        .collect();
    ChainComplex::new(basis, boundaries).expect("circle model is well formed")
}

/// Cells of the `k`-skeleton `TP^k(S^1)` inside any larger circle model.
/// A negative `k` gives the empty subcomplex.
pub fn circle_skeleton(k: i64) -> Vec<Vec<String>> {
    if k < 0 {
        return Vec::new();
    }
    (0..=k as usize).map(|j| vec![circle_cell_label(j)]).collect()
}

/// Reduced homology of `TP̄^n(X) = TP^n(X)/TP^{n-1}(X)` over a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawReducedTPTable")]
pub struct ReducedTPTable {
    pub level: usize,
    #[serde(flatten)]
    table: GradedGroup,
}

#[derive(Deserialize)]
struct RawReducedTPTable {
    level: usize,
    #[serde(flatten)]
    table: GradedGroup,
}

impl TryFrom<RawReducedTPTable> for ReducedTPTable {
    type Error = Error;

    fn try_from(raw: RawReducedTPTable) -> Result<Self> {
        ReducedTPTable::new(raw.level, raw.table)
    }
}

impl ReducedTPTable {
    pub fn new(level: usize, table: GradedGroup) -> Result<Self> {
        if !table.coefficients().is_field() {
            return Err(Error::InvalidCoefficients(format!(
                "reduced truncated-product tables need field coefficients, got {}",
                table.coefficients()
            )));
        }
        let table = table.with_reduced(true);
        if level >= 1 && table.rank(0) != 0 {
            return Err(Error::Parse(format!(
                "reduced table at level {level} has a degree-0 class"
            )));
        }
        Ok(ReducedTPTable { level, table })
    }

    pub fn table(&self) -> &GradedGroup {
        &self.table
    }

    pub fn into_table(self) -> GradedGroup {
        self.table
    }

    pub fn coefficients(&self) -> Coefficients {
        self.table.coefficients()
    }
}

/// Reduced truncated-product tables for levels `0..=n` of one space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ReducedTPFamily {
    levels: Vec<ReducedTPTable>,
}

impl ReducedTPFamily {
    /// Levels must be listed in order starting at 0, over one field, with the
    /// `TP̄^0 = S^0` convention at level 0.
    pub fn new(levels: Vec<ReducedTPTable>) -> Result<Self> {
        let family = ReducedTPFamily { levels };
        family.validate()?;
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        let Some(first) = self.levels.first() else {
            return Ok(());
        };
        let field = first.coefficients();
        for (i, t) in self.levels.iter().enumerate() {
            if t.level != i {
                return Err(Error::MissingLevel {
                    level: i,
                    context: format!("family lists level {} in position {i}", t.level),
                });
            }
            if t.coefficients() != field {
                return Err(Error::CoefficientMismatch {
                    left: field,
                    right: t.coefficients(),
                });
            }
        }
        if *first.table() != GradedGroup::reduced_sphere(0, field) {
            return Err(Error::Parse(
                "level 0 of a reduced truncated-product family must be S^0".into(),
            ));
        }
        Ok(())
    }

    pub fn top_level(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn level(&self, k: usize) -> Option<&ReducedTPTable> {
        self.levels.get(k)
    }

    pub fn levels(&self) -> &[ReducedTPTable] {
        &self.levels
    }

    pub fn coefficients(&self) -> Option<Coefficients> {
        self.levels.first().map(ReducedTPTable::coefficients)
    }

    fn require(&self, k: usize) -> Result<&ReducedTPTable> {
        self.levels.get(k).ok_or_else(|| Error::MissingLevel {
            level: k,
            context: "reduced truncated-product family".into(),
        })
    }
}

impl<'de> Deserialize<'de> for ReducedTPFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let levels = Vec::<ReducedTPTable>::deserialize(d)?;
        ReducedTPFamily::new(levels).map_err(serde::de::Error::custom)
    }
}

/// `H̃_*(TP̄^n(S^1)) = H̃_*(S^n)`, computed as the homology of the pair
/// `(TP^n(S^1), TP^{n-1}(S^1))` in the circle model.
pub fn reduced_tp_circle(n: usize, field: Coefficients) -> Result<ReducedTPTable> {
    if !field.is_field() {
        return Err(Error::InvalidCoefficients(
            "reduced truncated-product tables need field coefficients".into(),
        ));
    }
    let complex = tp_circle_complex(n);
    let rel = relative_homology(&complex, &circle_skeleton(n as i64 - 1), field)?;
    ReducedTPTable::new(n, rel)
}

/// [`reduced_tp_circle`] for every level `0..=n`.
pub fn circle_family(n: usize, field: Coefficients) -> Result<ReducedTPFamily> {
    ReducedTPFamily::new(
        (0..=n)
            .map(|k| reduced_tp_circle(k, field))
            .collect::<Result<_>>()?,
    )
}

/// Reduced truncated products of a wedge, from the factors' families:
/// level `k` of `X ∨ Y` is `⊕_{r+s=k} H̃(TP̄^r X) ⊗ H̃(TP̄^s Y)`, applied
/// iteratively over the factor list. Returns the whole family up to `n`.
pub fn wedge_reduced_tp_family(
    factors: &[ReducedTPFamily],
    n: usize,
    field: Coefficients,
) -> Result<ReducedTPFamily> {
    if !field.is_field() {
        return Err(Error::InvalidCoefficients(
            "wedge decomposition is computed over a field".into(),
        ));
    }
    for f in factors {
        f.validate()?;
        if let Some(c) = f.coefficients() {
            if c != field {
                return Err(Error::CoefficientMismatch { left: field, right: c });
            }
        }
        for k in 0..=n {
            f.require(k)?;
        }
    }
    // The empty wedge is a point: TP̄^0 = S^0 and TP̄^k(pt) = pt for k ≥ 1.
    let mut acc: Vec<GradedGroup> = (0..=n)
        .map(|k| {
            if k == 0 {
                GradedGroup::reduced_sphere(0, field)
            } else {
                GradedGroup::zero(field).with_reduced(true)
            }
        })
        .collect();
    for factor in factors {
        let mut next = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut level = GradedGroup::zero(field).with_reduced(true);
            for (r, lower) in acc.iter().enumerate().take(k + 1) {
                let term = lower.tensor(factor.levels[k - r].table())?;
                level = level.direct_sum(&term)?;
            }
            next.push(level);
        }
        acc = next;
    }
    ReducedTPFamily::new(
        acc.into_iter()
            .enumerate()
            .map(|(k, t)| ReducedTPTable::new(k, t))
            .collect::<Result<_>>()?,
    )
}

/// Level `n` of [`wedge_reduced_tp_family`].
pub fn wedge_reduced_tp(
    factors: &[ReducedTPFamily],
    n: usize,
    field: Coefficients,
) -> Result<ReducedTPTable> {
    let family = wedge_reduced_tp_family(factors, n, field)?;
    Ok(family.levels[n].clone())
}

/// Reduced family of `∨^w S^1` up to level `n`.
pub fn wedge_of_circles_family(w: usize, n: usize, field: Coefficients) -> Result<ReducedTPFamily> {
    let circle = circle_family(n, field)?;
    wedge_reduced_tp_family(&vec![circle; w], n, field)
}

/// One `(degree, level)` comparison in a [`SplittingReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingCheck {
    pub degree: usize,
    pub level: usize,
    /// `dim H_q(TP^k)`
    pub full: usize,
    /// `dim H_q(TP^{k-1}) + dim H̃_q(TP̄^k)`
    pub split: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub checks: Vec<SplittingCheck>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SplittingCheck> + '_ {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Checks the mod-2 splitting
/// `dim H_q(TP^k) = dim H_q(TP^{k-1}) + dim H̃_q(TP̄^k)` for `1 ≤ k ≤ n`.
///
/// `full[k]` is `H_*(TP^k; F_2)` and `reduced[k]` is `H̃_*(TP̄^k; F_2)`.
pub fn mod2_tp_splitting_check(
    full: &[GradedGroup],
    reduced: &[ReducedTPTable],
) -> Result<SplittingReport> {
    let all_f2 = full.iter().all(|t| t.coefficients().is_f2())
        && reduced.iter().all(|t| t.coefficients().is_f2());
    if !all_f2 {
        return Err(Error::hypothesis(
            "property(2)",
            "the truncated-product splitting holds with F_2 coefficients",
        ));
    }
    let n = full.len().min(reduced.len()).saturating_sub(1);
    let mut checks = Vec::new();
    for k in 1..=n {
        let top = [&full[k], &full[k - 1], reduced[k].table()]
            .iter()
            .filter_map(|t| t.max_degree())
            .max()
            .unwrap_or(0);
        for q in 0..=top {
            let lhs = full[k].rank(q);
            let rhs = full[k - 1].rank(q) + reduced[k].table().rank(q);
            checks.push(SplittingCheck {
                degree: q,
                level: k,
                full: lhs,
                split: rhs,
                pass: lhs == rhs,
            });
        }
    }
    Ok(SplittingReport { checks })
}

/// `H_*(TP^k(S^1); F_2)` for `k = 0..=n`.
pub fn circle_full_tables(n: usize, field: Coefficients) -> Result<Vec<GradedGroup>> {
    (0..=n).map(|k| homology(&tp_circle_complex(k), field)).collect()
}
