use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::coefficients::Coefficients;
use super::snf::normalize_divisibility;
use crate::error::{Error, Result};

/// One degree of a graded group: `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_m`, or a vector
/// space of dimension `rank` when the coefficients are a field.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupEntry {
    pub rank: usize,
    /// Invariant factors, each ≥ 2 and dividing the next.
    pub torsion: Vec<u64>,
}

impl GroupEntry {
    pub fn free(rank: usize) -> Self {
        GroupEntry {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Degree-indexed finitely generated abelian groups (or vector spaces).
/// Degrees not stored are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedGroup {
    coefficients: Coefficients,
    reduced: bool,
    entries: BTreeMap<usize, GroupEntry>,
}

impl GradedGroup {
    pub fn zero(coefficients: Coefficients) -> Self {
        GradedGroup {
            coefficients,
            reduced: false,
            entries: BTreeMap::new(),
        }
    }

    /// Homology of a point.
    pub fn point(coefficients: Coefficients) -> Self {
        let mut g = Self::zero(coefficients);
        g.entries.insert(0, GroupEntry::free(1));
        g
    }

    /// Reduced homology of `S^n`: one free generator in degree `n`.
    /// For `n = 0` this is the `S^0` convention.
    pub fn reduced_sphere(n: usize, coefficients: Coefficients) -> Self {
        let mut g = Self::zero(coefficients).with_reduced(true);
        g.entries.insert(n, GroupEntry::free(1));
        g
    }

    /// Table with `dims[q]` free generators in degree `q`.
    pub fn from_ranks(coefficients: Coefficients, ranks: &[usize]) -> Self {
        let mut g = Self::zero(coefficients);
        for (q, &r) in ranks.iter().enumerate() {
            g.add_rank(q, r);
        }
        g
    }

    pub fn with_reduced(mut self, reduced: bool) -> Self {
        self.reduced = reduced;
        self
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Sets degree `q`, normalizing torsion to invariant-factor form.
    pub fn set(&mut self, q: usize, rank: usize, torsion: &[u64]) -> Result<()> {
        if self.coefficients.is_field() && !torsion.is_empty() {
            return Err(Error::InvalidCoefficients(format!(
                "torsion {torsion:?} in degree {q} over the field {}",
                self.coefficients
            )));
        }
        if let Some(bad) = torsion.iter().find(|&&t| t < 2) {
            return Err(Error::Parse(format!("torsion coefficient {bad} must be ≥ 2")));
        }
        let entry = GroupEntry {
            rank,
            torsion: normalize_torsion(torsion),
        };
        if entry.is_zero() {
            self.entries.remove(&q);
        } else {
            self.entries.insert(q, entry);
        }
        Ok(())
    }

    pub fn add_rank(&mut self, q: usize, rank: usize) {
        if rank == 0 {
            return;
        }
        self.entries.entry(q).or_default().rank += rank;
    }

    pub fn entry(&self, q: usize) -> Option<&GroupEntry> {
        self.entries.get(&q)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &GroupEntry)> + '_ {
        self.entries.iter().map(|(&q, e)| (q, e))
    }

    /// Free rank in degree `q` (the dimension, over a field).
    pub fn rank(&self, q: usize) -> usize {
        self.entries.get(&q).map_or(0, |e| e.rank)
    }

    pub fn torsion(&self, q: usize) -> &[u64] {
        self.entries.get(&q).map_or(&[], |e| e.torsion.as_slice())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn total_rank(&self) -> usize {
        self.entries.values().map(|e| e.rank).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|(&q, e)| if q % 2 == 0 { e.rank as i64 } else { -(e.rank as i64) })
            .sum()
    }

    /// Ranks for degrees `0..=max_degree`.
    pub fn ranks(&self) -> Vec<usize> {
        match self.max_degree() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|q| self.rank(q)).collect(),
        }
    }

    /// Reduced version: one fewer generator in degree 0. No-op if already reduced.
    pub fn into_reduced(mut self) -> Self {
        if !self.reduced {
            if let Some(e) = self.entries.get_mut(&0) {
                e.rank = e.rank.saturating_sub(1);
                if e.is_zero() {
                    self.entries.remove(&0);
                }
            }
            self.reduced = true;
        }
        self
    }

    pub fn direct_sum(&self, other: &GradedGroup) -> Result<GradedGroup> {
        self.check_same(other)?;
        let mut out = GradedGroup {
            coefficients: self.coefficients,
            reduced: self.reduced && other.reduced,
            entries: self.entries.clone(),
        };
        for (&q, e) in &other.entries {
            let slot = out.entries.entry(q).or_default();
            slot.rank += e.rank;
            let mut torsion = slot.torsion.clone();
            torsion.extend_from_slice(&e.torsion);
            slot.torsion = normalize_torsion(&torsion);
        }
        Ok(out)
    }

    /// Graded tensor product, `dim_q = Σ_i dim_i · dim_{q-i}`. Over Z only
    /// torsion-free inputs are accepted.
    pub fn tensor(&self, other: &GradedGroup) -> Result<GradedGroup> {
        self.check_same(other)?;
        if !self.coefficients.is_field() && (self.has_torsion() || other.has_torsion()) {
            return Err(Error::TorsionTensor);
        }
        let mut out = GradedGroup {
            coefficients: self.coefficients,
            reduced: self.reduced && other.reduced,
            entries: BTreeMap::new(),
        };
        for (&p, a) in &self.entries {
            for (&q, b) in &other.entries {
                out.add_rank(p + q, a.rank * b.rank);
            }
        }
        Ok(out)
    }

    /// Multiplies every rank by `k`.
    pub fn scale(&self, k: usize) -> GradedGroup {
        let mut out = GradedGroup::zero(self.coefficients).with_reduced(self.reduced);
        if k == 0 {
            return out;
        }
        for (&q, e) in &self.entries {
            let torsion: Vec<u64> = std::iter::repeat_n(e.torsion.iter().copied(), k)
                .flatten()
                .collect();
            out.entries.insert(
                q,
                GroupEntry {
                    rank: e.rank * k,
                    torsion: normalize_torsion(&torsion),
                },
            );
        }
        out
    }

    /// Raises every degree by `k` (lowers, for negative `k`). Fails if a
    /// nonzero entry would land in negative degree.
    pub fn shift(&self, k: i64) -> Result<GradedGroup> {
        let mut out = GradedGroup::zero(self.coefficients).with_reduced(self.reduced);
        for (&q, e) in &self.entries {
            let target = q as i64 + k;
            if target < 0 {
                return Err(Error::NegativeDegree { degree: q, shift: k });
            }
            out.entries.insert(target as usize, e.clone());
        }
        Ok(out)
    }

    /// Degree reflection `q ↦ top − q`. Entries above `top` are an error.
    pub fn reflect(&self, top: usize) -> Result<GradedGroup> {
        let mut out = GradedGroup::zero(self.coefficients);
        for (&q, e) in &self.entries {
            if q > top {
                return Err(Error::NegativeDegree {
                    degree: q,
                    shift: -(top as i64),
                });
            }
            out.entries.insert(top - q, e.clone());
        }
        Ok(out)
    }

    pub fn has_torsion(&self) -> bool {
        self.entries.values().any(|e| !e.torsion.is_empty())
    }

    fn check_same(&self, other: &GradedGroup) -> Result<()> {
        if self.coefficients != other.coefficients {
            return Err(Error::CoefficientMismatch {
                left: self.coefficients,
                right: other.coefficients,
            });
        }
        Ok(())
    }
}

fn normalize_torsion(torsion: &[u64]) -> Vec<u64> {
    let mut factors: Vec<BigInt> = torsion.iter().map(|&t| BigInt::from(t)).collect();
    normalize_divisibility(&mut factors);
    factors
        .into_iter()
        .filter(|f| *f > BigInt::from(1))
        .map(|f| u64::try_from(f).expect("torsion coefficient overflows u64"))
        .collect()
}

/// Operations accepted by [`table_algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableOp {
    DirectSum,
    Tensor,
    Shift(i64),
}

/// Degreewise sum, graded tensor, or shift of `a` (for `Shift`, `b` is ignored).
pub fn table_algebra(a: &GradedGroup, b: &GradedGroup, op: TableOp) -> Result<GradedGroup> {
    match op {
        TableOp::DirectSum => a.direct_sum(b),
        TableOp::Tensor => a.tensor(b),
        TableOp::Shift(k) => a.shift(k),
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let ring = match self.coefficients {
            Coefficients::Integers => "Z".to_string(),
            Coefficients::Rationals => "Q".to_string(),
            Coefficients::PrimeField(p) => format!("F{p}"),
        };
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(q, e)| {
                let mut summands = Vec::new();
                match e.rank {
                    0 => {}
                    1 => summands.push(ring.clone()),
                    r => summands.push(format!("{ring}^{r}")),
                }
                summands.extend(e.torsion.iter().map(|t| format!("Z/{t}")));
                format!("{q}: {}", summands.join(" + "))
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

// JSON form: {"coefficients": "Z", "reduced": false, "entries": [{"degree", "rank", "torsion"}]}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    degree: usize,
    rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GradedGroupRepr {
    coefficients: String,
    #[serde(default)]
    reduced: bool,
    entries: Vec<EntryRepr>,
}

impl Serialize for GradedGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GradedGroupRepr {
            coefficients: self.coefficients.to_string(),
            reduced: self.reduced,
            entries: self
                .entries
                .iter()
                .map(|(&degree, e)| EntryRepr {
                    degree,
                    rank: e.rank,
                    torsion: e.torsion.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GradedGroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GradedGroupRepr::deserialize(deserializer)?;
        GradedGroup::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<GradedGroupRepr> for GradedGroup {
    type Error = Error;

    fn try_from(repr: GradedGroupRepr) -> Result<Self> {
        let coefficients: Coefficients = repr.coefficients.parse()?;
        let mut g = GradedGroup::zero(coefficients).with_reduced(repr.reduced);
        let mut last: Option<usize> = None;
        for e in repr.entries {
            if last.is_some_and(|l| e.degree <= l) {
                return Err(Error::Parse(format!(
                    "entries must have strictly ascending degrees (saw {} after {})",
                    e.degree,
                    last.unwrap()
                )));
            }
            last = Some(e.degree);
            g.set(e.degree, e.rank, &e.torsion)?;
        }
        Ok(g)
    }
}
