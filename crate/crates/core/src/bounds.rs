//! Closed-form connectivity, cohomological-dimension and stability bounds,
//! and the `E^1` term of the truncated-product spectral sequence.
//!
//! Every bound carries the anchor of the statement it evaluates. Inputs outside
//! a statement's hypotheses are rejected, never clamped.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::chaincore::{Coefficients, GradedGroup};
use crate::combinatorics::dyadic_weight;
use crate::error::{Error, Result};

/// An integer bound, or the marker for infinite connectivity. Connectivity
/// `-1` means no claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundValue {
    Finite(i64),
    Infinite,
}

impl BoundValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            BoundValue::Finite(v) => Some(v),
            BoundValue::Infinite => None,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Finite(v) => write!(f, "{v}"),
            BoundValue::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundValue::Finite(v) => s.serialize_i64(*v),
            BoundValue::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for BoundValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(BoundValue::Finite(v)),
            Raw::Text(t) if t == "infinite" => Ok(BoundValue::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad bound value `{t}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    UpperBoundCohdim,
    LowerBoundConnectivity,
    StabilityRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: BoundValue,
    pub kind: BoundKind,
    pub source: String,
    pub hypotheses: Vec<String>,
}

impl BoundResult {
    fn new(value: i64, kind: BoundKind, source: &str, hypotheses: Vec<String>) -> Self {
        BoundResult {
            value: BoundValue::Finite(value),
            kind,
            source: source.to_string(),
            hypotheses,
        }
    }

    /// The finite value; panics on the infinite marker.
    pub fn int(&self) -> i64 {
        self.value.finite().expect("finite bound")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("bound serializes")
    }
}

fn require(cond: bool, anchor: &'static str, hypothesis: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::hypothesis(anchor, hypothesis))
    }
}

fn signed(v: usize) -> i64 {
    i64::try_from(v).expect("parameter fits in i64")
}

/// Cohomological dimension of `B(M − U, k)` for a `d`-manifold whose quotient
/// `M̄` is `r`-connected: `(d−1)k − r` when `U ∪ ∂M ≠ ∅`, one more when `M` is
/// closed and unpunctured.
pub fn cohdim_bound(d: usize, k: usize, r: usize, punctured_or_boundary: bool) -> Result<BoundResult> {
    require(d >= 1, "main3", "d ≥ 1")?;
    require(k >= 2, "main3", format!("k ≥ 2, got k = {k}"))?;
    require(
        r < d,
        "main3",
        format!("the quotient of a {d}-manifold is at most {}-connected, got r = {r}", d - 1),
    )?;
    let base = signed((d - 1) * k) - signed(r);
    let (value, case) = if punctured_or_boundary {
        (base, "U ∪ ∂M nonempty")
    } else {
        (base + 1, "M closed, no punctures")
    };
    Ok(BoundResult::new(
        value,
        BoundKind::UpperBoundCohdim,
        "main3",
        vec![format!("d = {d}"), format!("k = {k} ≥ 2"), format!("M̄ is {r}-connected"), case.into()],
    ))
}

/// Named connectivity statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivityFormula {
    /// `TP̄^k(X)` of an `r`-connected `X` is `(r+k−1)`-connected, `r ≥ 0`.
    Nakaoka { r: usize, k: usize },
    /// `S̄P^n(X)` of an `r`-connected `X`, `r ≥ 1`, is `(2n+r−2)`-connected.
    ReducedSp { n: usize, r: usize },
    /// `S̄P^n` of a two-complex with `w` one-cells is `(2n−min(w,n)−1)`-connected.
    ReducedSp2Complex { n: usize, w: usize },
    /// `R_k`, the connectivity of the duality pair: `k+r−1`, or `k+r−2` for
    /// closed unpunctured `M`.
    RLower { k: usize, r: usize, closed: bool },
}

impl ConnectivityFormula {
    pub fn anchor(&self) -> &'static str {
        match self {
            ConnectivityFormula::Nakaoka { .. } => "nakak",
            ConnectivityFormula::ReducedSp { .. } => "connectivity2",
            ConnectivityFormula::ReducedSp2Complex { .. } => "conntwo",
            ConnectivityFormula::RLower { .. } => "R",
        }
    }

    pub fn names() -> &'static [&'static str] {
        &["nakaoka", "reduced_sp", "reduced_sp_2complex", "R_lower"]
    }
}

pub fn connectivity_formulas(f: ConnectivityFormula) -> Result<BoundResult> {
    let anchor = f.anchor();
    let (value, hyps) = match f {
        ConnectivityFormula::Nakaoka { r, k } => {
            require(k >= 1, anchor, "k ≥ 1")?;
            (signed(r + k) - 1, vec![format!("X is {r}-connected"), format!("k = {k}")])
        }
        ConnectivityFormula::ReducedSp { n, r } => {
            require(r >= 1, anchor, format!("X is r-connected with r ≥ 1, got r = {r}"))?;
            require(n >= 1, anchor, "n ≥ 1")?;
            (signed(2 * n + r) - 2, vec![format!("X is {r}-connected, r ≥ 1"), format!("n = {n}")])
        }
        ConnectivityFormula::ReducedSp2Complex { n, w } => {
            require(n >= 1, anchor, "n ≥ 1")?;
            (
                signed(2 * n) - signed(w.min(n)) - 1,
                vec![format!("X a two-complex with {w} one-cells"), format!("n = {n}")],
            )
        }
        ConnectivityFormula::RLower { k, r, closed } => {
            require(k >= 1, anchor, "k ≥ 1")?;
            let v = signed(k + r) - if closed { 2 } else { 1 };
            let case = if closed { "M closed, no punctures" } else { "U ∪ ∂M nonempty" };
            (v, vec![format!("M̄ is {r}-connected"), format!("k = {k}"), case.into()])
        }
    };
    Ok(BoundResult::new(value, BoundKind::LowerBoundConnectivity, anchor, hyps))
}

/// Cohomological dimension from the connectivity `R_k` of the duality pair:
/// `dk − R_k − 1`.
pub fn cohdim_from_r_k(d: usize, k: usize, r_k: i64) -> Result<BoundResult> {
    require(d >= 1 && k >= 1, "conR", "d ≥ 1 and k ≥ 1")?;
    require(r_k >= -1, "conR", "R_k ≥ −1")?;
    Ok(BoundResult::new(
        signed(d * k) - r_k - 1,
        BoundKind::UpperBoundCohdim,
        "conR",
        vec![format!("d = {d}"), format!("k = {k}"), format!("R_k = {r_k}")],
    ))
}

/// Mod-2 cohomological dimension of `B(D^d, k)`: `(k − α(k))(d − 1)`, with
/// `α(k)` the number of ones in the binary expansion of `k`.
pub fn mod2_cohdim_disc(d: usize, k: usize) -> Result<BoundResult> {
    require(d >= 2, "numbered(3)", format!("d ≥ 2, got d = {d}"))?;
    require(k >= 1, "numbered(3)", "k ≥ 1")?;
    let alpha = dyadic_weight(k as u64) as usize;
    Ok(BoundResult::new(
        signed((k - alpha) * (d - 1)),
        BoundKind::UpperBoundCohdim,
        "numbered(3)",
        vec![format!("d = {d} ≥ 2"), format!("k = {k}, α(k) = {alpha}"), "F2 coefficients".into()],
    ))
}

/// Which function `s` feeds the scanning range `s(k − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityKind {
    Arnold,
    RiemannSurface,
    Scanning(ScanningBase),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanningBase {
    Arnold,
    RiemannSurface,
}

impl FromStr for StabilityKind {
    type Err = Error;

    /// `arnold`, `riemann_surface`, `scanning:arnold`, `scanning:riemann_surface`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arnold" => Ok(StabilityKind::Arnold),
            "riemann_surface" => Ok(StabilityKind::RiemannSurface),
            "scanning:arnold" => Ok(StabilityKind::Scanning(ScanningBase::Arnold)),
            "scanning:riemann_surface" => Ok(StabilityKind::Scanning(ScanningBase::RiemannSurface)),
            other => Err(Error::Parse(format!(
                "unknown stability kind `{other}` (expected arnold, riemann_surface, \
                 scanning:arnold or scanning:riemann_surface)"
            ))),
        }
    }
}

fn s_function(base: ScanningBase, k: i64) -> i64 {
    match base {
        ScanningBase::Arnold => k.div_euclid(2),
        ScanningBase::RiemannSurface => k - 1,
    }
}

pub fn stability_ranges(kind: StabilityKind, k: usize) -> Result<BoundResult> {
    let (anchor, value, hyp) = match kind {
        StabilityKind::Arnold => ("arnold", s_function(ScanningBase::Arnold, signed(k)), "B(ℝ^2, k) → B(ℝ^2, k+1)"),
        StabilityKind::RiemannSurface => (
            "ks",
            s_function(ScanningBase::RiemannSurface, signed(k)),
            "B(S, k) → B(S, k+1), S a Riemann surface",
        ),
        StabilityKind::Scanning(base) => (
            "main4",
            s_function(base, signed(k) - 1),
            "scanning map out of B(M, k)",
        ),
    };
    require(k >= 1, anchor, "k ≥ 1")?;
    Ok(BoundResult::new(
        value,
        BoundKind::StabilityRange,
        anchor,
        vec![format!("k = {k}"), hyp.into()],
    ))
}

/// Dimensions indexed by `(i, q)`: the level `i` of `X` in
/// `H_*(SP^i X, SP^{i−1} X) ⊗ H_*(SP^j ΣX, SP^{j−1} ΣX)` and total degree `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigradedTable {
    pub field: Coefficients,
    #[serde(serialize_with = "serialize_bigraded")]
    entries: BTreeMap<(usize, usize), usize>,
}

fn serialize_bigraded<S: Serializer>(
    entries: &BTreeMap<(usize, usize), usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Row {
        i: usize,
        q: usize,
        dim: usize,
    }
    s.collect_seq(entries.iter().map(|(&(i, q), &dim)| Row { i, q, dim }))
}

impl BigradedTable {
    pub fn zero(field: Coefficients) -> Self {
        BigradedTable { field, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, q: usize, dim: usize) {
        if dim > 0 {
            *self.entries.entry((i, q)).or_default() += dim;
        }
    }

    pub fn get(&self, i: usize, q: usize) -> usize {
        self.entries.get(&(i, q)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries.iter().map(|(&(i, q), &dim)| (i, q, dim))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dimensions summed over `i`, by total degree.
    pub fn total(&self) -> GradedGroup {
        let mut g = GradedGroup::zero(self.field).with_reduced(true);
        for (&(_, q), &dim) in &self.entries {
            g.add_rank(q, dim);
        }
        g
    }

    pub fn min_total_degree(&self) -> Option<usize> {
        self.entries.keys().map(|&(_, q)| q).min()
    }
}

/// `E^1 = ⊕_{i+2j=n} H_*(SP^i X, SP^{i−1} X) ⊗ H_*(SP^j ΣX, SP^{j−1} ΣX)`
/// before any differential.
///
/// `sp_rel_x[i]` and `sp_rel_sx[j]` are the relative tables by level. Level 0
/// is the pair (basepoint, ∅); a supplied level-0 table must be the point.
pub fn bcm_e1_assemble(
    sp_rel_x: &[GradedGroup],
    sp_rel_sx: &[GradedGroup],
    n: usize,
    field: Coefficients,
) -> Result<BigradedTable> {
    if !field.is_field() {
        return Err(Error::InvalidCoefficients("the E1 term is assembled over a field".into()));
    }
    let point = GradedGroup::point(field);
    let level = |tables: &[GradedGroup], m: usize, what: &str| -> Result<GradedGroup> {
        let t = tables.get(m).ok_or_else(|| Error::MissingLevel {
            level: m,
            context: format!("relative symmetric-product tables of {what}"),
        })?;
        if t.coefficients() != field {
            return Err(Error::CoefficientMismatch { left: field, right: t.coefficients() });
        }
        if m == 0 && t.clone().with_reduced(false) != point {
            return Err(Error::Parse(format!(
                "level 0 of the {what} tables must be the point (basepoint relative to ∅)"
            )));
        }
        Ok(t.clone().with_reduced(false))
    };
    for (tables, what) in [(sp_rel_x, "X"), (sp_rel_sx, "ΣX")] {
        if !tables.is_empty() {
            level(tables, 0, what)?;
        }
    }
    let mut out = BigradedTable::zero(field);
    for j in 0..=n / 2 {
        let i = n - 2 * j;
        let term = level(sp_rel_x, i, "X")?.tensor(&level(sp_rel_sx, j, "ΣX")?)?;
        for (q, e) in term.entries() {
            out.add(i, q, e.rank);
        }
    }
    Ok(out)
}

/// Connectivity read off an `E^1` table and the resulting bound on the
/// cohomological dimension of `B(S − Q, k)` for a surface `S` (`d = 2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E1Bounds {
    pub connectivity: BoundResult,
    pub cohdim: BoundResult,
}

/// Connectivity is the least total degree of `e1` minus one (infinite for a
/// zero table); the cohomological-dimension bound is `2k − conn − 1`, plus one
/// for a closed unpunctured surface.
pub fn e1_connectivity_bound(e1: &BigradedTable, k: usize, closed_surface: bool) -> Result<E1Bounds> {
    require(k >= 1, "twocomplexes", "k ≥ 1")?;
    let case = if closed_surface { "S closed, Q empty" } else { "Q ∪ ∂S nonempty" };
    let hyps = vec![format!("k = {k}"), "d = 2".into(), case.into()];
    let conn = e1.min_total_degree().map(|q| signed(q) - 1);
    let connectivity = BoundResult {
        value: conn.map_or(BoundValue::Infinite, BoundValue::Finite),
        kind: BoundKind::LowerBoundConnectivity,
        source: "specseq".into(),
        hypotheses: hyps.clone(),
    };
    let top = match conn {
        Some(c) => signed(2 * k) - c - 1 + i64::from(closed_surface),
        // No classes at all: the duality pair is acyclic.
        None => -1,
    };
    let cohdim = BoundResult::new(top, BoundKind::UpperBoundCohdim, "twocomplexes", hyps);
    Ok(E1Bounds { connectivity, cohdim })
}

/// Relative tables of lowest possible degree for a two-complex `X` with `w`
/// one-cells and for `ΣX`: one class per level, placed at the first degree
/// allowed by the connectivity statements (`2i − min(w, i)` for `X`, `2j` for
/// the simply connected `ΣX`). Not the actual homology; a profile for bounding
/// the least degree of `E^1`.
pub fn surface_e1_profile(w: usize, n: usize, field: Coefficients) -> (Vec<GradedGroup>, Vec<GradedGroup>) {
    let x = (0..=n)
        .map(|i| match i {
            0 => GradedGroup::point(field),
            _ => {
                let mut t = GradedGroup::zero(field);
                t.add_rank(2 * i - w.min(i), 1);
                t
            }
        })
        .collect();
    let sx = (0..=n / 2)
        .map(|j| match j {
            0 => GradedGroup::point(field),
            _ => {
                let mut t = GradedGroup::zero(field);
                t.add_rank(2 * j, 1);
                t
            }
        })
        .collect();
    (x, sx)
}

/// `X = S^1`: `SP^i(S^1) ≃ S^1`, so the level-`i` relative table is `S^1` at
/// `i = 1` and zero above; `ΣX = S^2` has `SP^j(S^2) = ℂP^j`, giving `S^{2j}`.
pub fn circle_e1_inputs(n: usize, field: Coefficients) -> (Vec<GradedGroup>, Vec<GradedGroup>) {
    let x = (0..=n)
        .map(|i| match i {
            0 => GradedGroup::point(field),
            1 => GradedGroup::reduced_sphere(1, field).with_reduced(false),
            _ => GradedGroup::zero(field),
        })
        .collect();
    let sx = (0..=n / 2)
        .map(|j| match j {
            0 => GradedGroup::point(field),
            _ => GradedGroup::reduced_sphere(2 * j, field).with_reduced(false),
        })
        .collect();
    (x, sx)
}
