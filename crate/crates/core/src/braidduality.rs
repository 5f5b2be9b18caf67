//! Cohomology of braid spaces `B(M − U, k)` through duality with truncated
//! products of `M̄ = M/(U ∪ ∂M)`:
//!
//! - `U ∪ ∂M ≠ ∅`: `H^i(B(M−U,k)) ≅ H_{kd−i}(TP^k M̄, TP^{k−1} M̄)`;
//! - `M` closed, `U = ∅`: `H^i(B(M,k)) ≅ H_{kd−i}(TP^k M, TP^{k−2} M)`;
//!
//! with `F_2` coefficients in general, and any coefficients when `M` is even
//! dimensional and orientable. The module also carries the puncture
//! splittings and the Euler-characteristic consequence of the puncture long
//! exact sequence.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chaincore::{relative_homology, Coefficients, GradedGroup};
use crate::combinatorics::{binomial, binomial_usize};
use crate::error::{Error, Result};
use crate::tsp::{circle_skeleton, tp_circle_complex, wedge_of_circles_family, ReducedTPFamily};

const DUALITY: &str = "duality";
const SPLIT_ONE: &str = "main11";
const SPLIT_MANY: &str = "main22";

/// Where the truncated-product tables of `M̄` come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientModel {
    /// `M̄ = S^1`, built from the circle cell model.
    Circle,
    /// `M̄ = ⋁^w S^1`, from the wedge decomposition of circle tables.
    Wedge(usize),
    /// A JSON file holding a reduced family `H̃_*(TP̄^j M̄)`, `j = 0, 1, …`.
    User(PathBuf),
}

impl fmt::Display for QuotientModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientModel::Circle => write!(f, "circle"),
            QuotientModel::Wedge(w) => write!(f, "wedge:{w}"),
            QuotientModel::User(p) => write!(f, "user:{}", p.display()),
        }
    }
}

impl FromStr for QuotientModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "circle" {
            return Ok(QuotientModel::Circle);
        }
        if let Some(w) = s.strip_prefix("wedge:") {
            return w
                .parse()
                .map(QuotientModel::Wedge)
                .map_err(|_| Error::Parse(format!("bad wedge size in `{s}`")));
        }
        if let Some(path) = s.strip_prefix("user:") {
            if !path.is_empty() {
                return Ok(QuotientModel::User(PathBuf::from(path)));
            }
        }
        Err(Error::Parse(format!(
            "unknown quotient model `{s}` (expected circle, wedge:<w> or user:<path>)"
        )))
    }
}

impl Serialize for QuotientModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuotientModel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A manifold `M` of dimension `d` with `punctures` points removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub d: usize,
    pub closed: bool,
    pub punctures: usize,
    pub has_boundary: bool,
    pub orientable: bool,
    /// Connectivity `r` of `M̄`.
    pub quotient_connectivity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_model: Option<QuotientModel>,
}

impl SpaceDescriptor {
    /// `S^1` with nothing removed.
    pub fn closed_circle() -> Self {
        SpaceDescriptor {
            d: 1,
            closed: true,
            punctures: 0,
            has_boundary: false,
            orientable: true,
            quotient_connectivity: 0,
            quotient_model: Some(QuotientModel::Circle),
        }
    }

    /// `S^1` minus a point, so `B(ℝ, k)`.
    pub fn punctured_circle() -> Self {
        SpaceDescriptor {
            punctures: 1,
            ..SpaceDescriptor::closed_circle()
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let desc: SpaceDescriptor = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        desc.validate()?;
        Ok(desc)
    }

    /// `U ∪ ∂M ≠ ∅`, which selects the `TP^{k−1}` case of the duality.
    pub fn has_removed_set(&self) -> bool {
        self.punctures > 0 || self.has_boundary
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidDescriptor("dimension d must be at least 1".into()));
        }
        if self.closed && self.has_boundary {
            return Err(Error::InvalidDescriptor("a closed manifold has no boundary".into()));
        }
        if !self.closed && !self.has_removed_set() {
            return Err(Error::hypothesis(
                DUALITY,
                "M must be compact: describe an open manifold as a closed one with punctures \
                 or as one with boundary",
            ));
        }
        if self.quotient_connectivity >= self.d {
            return Err(Error::InvalidDescriptor(format!(
                "the quotient of a {}-manifold is at most {}-connected, got r = {}",
                self.d,
                self.d - 1,
                self.quotient_connectivity
            )));
        }
        match &self.quotient_model {
            Some(QuotientModel::Circle) if self.d != 1 => Err(Error::InvalidDescriptor(
                "the circle quotient model needs d = 1".into(),
            )),
            Some(QuotientModel::Wedge(w)) if self.d != 1 || *w == 0 => Err(Error::InvalidDescriptor(
                "a wedge of w ≥ 1 circles is a quotient only for d = 1".into(),
            )),
            Some(QuotientModel::Wedge(w)) if *w != 1 && !self.has_removed_set() => {
                Err(Error::InvalidDescriptor(
                    "a closed unpunctured 1-manifold is its own quotient, a single circle".into(),
                ))
            }
            _ => Ok(()),
        }
    }
}

/// Outcome of [`CoefficientGate::evaluate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GateVerdict {
    Allowed,
    /// Only `F_2` is supported for this manifold.
    F2Only,
    /// Integral or rational coefficients would need the orientation module `±ℤ`.
    TwistedRequired,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoefficientGate {
    pub requested: Coefficients,
    pub verdict: GateVerdict,
}

impl CoefficientGate {
    /// `F_2` always; any coefficients for even `d` and orientable `M`.
    pub fn evaluate(requested: Coefficients, d: usize, orientable: bool) -> Self {
        let verdict = if requested.is_f2() || (d.is_multiple_of(2) && orientable) {
            GateVerdict::Allowed
        } else if requested.is_field() && requested != Coefficients::Rationals {
            GateVerdict::F2Only
        } else {
            GateVerdict::TwistedRequired
        };
        CoefficientGate { requested, verdict }
    }

    pub fn allowed(&self) -> bool {
        self.verdict == GateVerdict::Allowed
    }

    fn enforce(&self, d: usize, orientable: bool, anchor: &'static str) -> Result<()> {
        match self.verdict {
            GateVerdict::Allowed => Ok(()),
            GateVerdict::F2Only => Err(Error::hypothesis(
                anchor,
                format!(
                    "{} coefficients are not covered for d = {d} (orientable: {orientable}); use F2",
                    self.requested
                ),
            )),
            GateVerdict::TwistedRequired => Err(Error::TwistedCoefficients {
                requested: self.requested,
                d,
                orientable,
                anchor,
            }),
        }
    }
}

/// Duality index flip `q ↦ kd − q`, an involution on tables supported in
/// `0..=kd`.
pub fn duality_flip(table: &GradedGroup, k: usize, d: usize) -> Result<GradedGroup> {
    Ok(table.reflect(k * d)?.with_reduced(false))
}

/// `H^*(B(M − U, k))` from the truncated-product tables of `M̄`.
pub fn braid_cohomology(desc: &SpaceDescriptor, k: usize, coeffs: Coefficients) -> Result<GradedGroup> {
    desc.validate()?;
    CoefficientGate::evaluate(coeffs, desc.d, desc.orientable).enforce(desc.d, desc.orientable, DUALITY)?;
    if k == 0 {
        return Ok(GradedGroup::point(coeffs));
    }
    match &desc.quotient_model {
        None => Err(Error::UnsupportedSpace {
            reason: "no truncated-product tables for the quotient M̄".into(),
            needed: "quotient_model circle, wedge:<w>, or user:<path> with reduced tables \
                     H̃(TP̄^j M̄) for j ≤ k"
                .into(),
        }),
        Some(QuotientModel::Circle) => {
            let lower = if desc.has_removed_set() { 1 } else { 2 };
            let pair = relative_homology(
                &tp_circle_complex(k),
                &circle_skeleton(k as i64 - lower),
                coeffs,
            )?;
            duality_flip(&pair, k, desc.d)
        }
        Some(QuotientModel::Wedge(w)) => {
            let family = wedge_of_circles_family(*w, k, coeffs)?;
            braid_cohomology_from_family(desc, &family, k, coeffs)
        }
        Some(QuotientModel::User(path)) => {
            let family = load_family(path)?;
            braid_cohomology_from_family(desc, &family, k, coeffs)
        }
    }
}

/// [`braid_cohomology`] from an in-memory reduced family of `M̄`.
///
/// The closed unpunctured case needs `H_*(TP^k, TP^{k−2})`; over `F_2` the
/// truncated-product splitting makes its dimensions those of
/// `TP̄^k ⊕ TP̄^{k−1}`, so it is only available there.
pub fn braid_cohomology_from_family(
    desc: &SpaceDescriptor,
    family: &ReducedTPFamily,
    k: usize,
    coeffs: Coefficients,
) -> Result<GradedGroup> {
    desc.validate()?;
    CoefficientGate::evaluate(coeffs, desc.d, desc.orientable).enforce(desc.d, desc.orientable, DUALITY)?;
    if k == 0 {
        return Ok(GradedGroup::point(coeffs));
    }
    if let Some(c) = family.coefficients() {
        if c != coeffs {
            return Err(Error::CoefficientMismatch { left: coeffs, right: c });
        }
    }
    let level = |j: usize| {
        family.level(j).map(|t| t.table().clone()).ok_or_else(|| Error::UnsupportedSpace {
            reason: format!("the quotient tables stop before level {j}"),
            needed: format!("reduced tables H̃(TP̄^j M̄) for every j ≤ {k}"),
        })
    };
    let pair = if desc.has_removed_set() {
        level(k)?
    } else {
        if !coeffs.is_f2() {
            return Err(Error::hypothesis(
                "property(2)",
                "the closed case from reduced tables uses the truncated-product splitting, \
                 which holds over F2",
            ));
        }
        level(k)?.direct_sum(&level(k - 1)?)?
    };
    duality_flip(&pair, k, desc.d)
}

/// Reads a reduced family (JSON list of reduced tables) from disk.
pub fn load_family(path: &Path) -> Result<ReducedTPFamily> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Number of ordered `r`-tuples of non-negative integers with sum `s`,
/// `binomial(s + r − 1, r − 1)`.
pub fn ordered_partition_count(r: usize, s: usize) -> Result<BigUint> {
    if r == 0 {
        return if s == 0 {
            Ok(BigUint::one())
        } else {
            Err(Error::hypothesis(
                SPLIT_MANY,
                format!("p(0, {s}) is undefined: an empty tuple cannot sum to {s}"),
            ))
        };
    }
    Ok(binomial((s + r - 1) as u64, (r - 1) as u64))
}

fn multiplicity(r: usize, s: usize) -> Result<usize> {
    match r {
        0 => Ok(usize::from(s == 0)),
        _ => binomial_usize((s + r - 1) as u64, (r - 1) as u64),
    }
}

fn base_level<'a>(base: &'a [GradedGroup], m: usize, context: &str) -> Result<&'a GradedGroup> {
    base.get(m).ok_or_else(|| Error::MissingLevel {
        level: m,
        context: context.to_string(),
    })
}

/// `H^j(B(M,n); F_2) = H^j(B(M−p,n)) ⊕ H^{j−d}(B(M−p,n−1))`.
///
/// `base[m]` is `H^*(B(M − p, m); F_2)`; levels `n` and `n − 1` are read.
pub fn puncture_split_mod2(base: &[GradedGroup], d: usize, n: usize) -> Result<GradedGroup> {
    let top = base_level(base, n, "punctured base family")?;
    if !top.coefficients().is_f2() {
        return Err(Error::hypothesis(SPLIT_ONE, "the single-puncture splitting is stated over F2"));
    }
    let mut out = top.clone().with_reduced(false);
    if n >= 1 {
        let below = base_level(base, n - 1, "punctured base family")?;
        out = out.direct_sum(&below.shift(d as i64)?)?;
    }
    Ok(out)
}

/// `H^j(B(M − {p_1..p_k}, n)) = ⊕_{r ≤ n} p(k−1, n−r) · H^{j−(n−r)(d−1)}(B(M−p, r))`.
///
/// `base[r]` is `H^*(B(M − p, r); F)` for `r = 0..=n`.
pub fn multi_puncture_split(
    base: &[GradedGroup],
    d: usize,
    orientable: bool,
    k: usize,
    n: usize,
    field: Coefficients,
) -> Result<GradedGroup> {
    if k == 0 {
        return Err(Error::hypothesis(SPLIT_MANY, "at least one puncture, k ≥ 1"));
    }
    if d == 0 {
        return Err(Error::InvalidDescriptor("dimension d must be at least 1".into()));
    }
    if !field.is_field() {
        return Err(Error::InvalidCoefficients("the splitting is a statement over a field".into()));
    }
    CoefficientGate::evaluate(field, d, orientable).enforce(d, orientable, SPLIT_MANY)?;
    let mut out = GradedGroup::zero(field);
    for r in 0..=n {
        let mult = multiplicity(k - 1, n - r)?;
        if mult == 0 {
            continue;
        }
        let b = base_level(base, r, "punctured base family")?;
        if b.coefficients() != field {
            return Err(Error::CoefficientMismatch { left: field, right: b.coefficients() });
        }
        let term = b.shift(((n - r) * (d - 1)) as i64)?.scale(mult).with_reduced(false);
        out = out.direct_sum(&term)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LesEulerReport {
    pub chi_closed: i64,
    pub chi_punctured_n: i64,
    pub chi_punctured_n_minus_1: i64,
    /// `χ(B(M−p,n)) + (−1)^d χ(B(M−p,n−1))`
    pub rhs: i64,
    pub pass: bool,
}

/// `χ(B(M,n)) = χ(B(M−p,n)) + (−1)^d χ(B(M−p,n−1))`, the alternating-sum
/// shadow of the puncture long exact sequence.
pub fn les_euler_check(
    closed: &GradedGroup,
    punctured_n: &GradedGroup,
    punctured_n_minus_1: &GradedGroup,
    d: usize,
    field: Coefficients,
) -> Result<LesEulerReport> {
    for t in [closed, punctured_n, punctured_n_minus_1] {
        if t.coefficients() != field {
            return Err(Error::CoefficientMismatch { left: field, right: t.coefficients() });
        }
    }
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    let chi_closed = closed.euler_characteristic();
    let chi_punctured_n = punctured_n.euler_characteristic();
    let chi_punctured_n_minus_1 = punctured_n_minus_1.euler_characteristic();
    let rhs = chi_punctured_n + sign * chi_punctured_n_minus_1;
    Ok(LesEulerReport {
        chi_closed,
        chi_punctured_n,
        chi_punctured_n_minus_1,
        rhs,
        pass: chi_closed == rhs,
    })
}

/// `H^*(ℝP^n; F)` for a field of characteristic 2, or the rational/odd
/// table otherwise. Used for registry tables and tests.
pub fn real_projective_cohomology(n: usize, field: Coefficients) -> GradedGroup {
    let mut t = GradedGroup::zero(field);
    for q in 0..=n {
        let nonzero = field.is_f2() || q == 0 || (q == n && n % 2 == 1);
        if nonzero {
            t.add_rank(q, 1);
        }
    }
    t
}
