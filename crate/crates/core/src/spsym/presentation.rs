use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cell::{SymCell, SymChain};
use crate::error::{Error, Result};

/// How `∂ SP^s D_j` is obtained for `s ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum HigherPowerRule {
    /// Every higher disc power is a cycle.
    #[default]
    Zero,
    /// Explicit boundaries keyed by `(disc, power)`; missing keys are zero.
    UserTable(BTreeMap<(usize, usize), SymChain>),
}

/// Attaching data of the two-cells.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundaryData {
    /// `disc_attach[j-1][i-1]` is the coefficient of `e_i` in `∂ D_j`.
    pub disc_attach: Vec<Vec<i64>>,
    pub higher_power_rule: HigherPowerRule,
}

/// `X = ⋁^w S^1 ∪ (D^2_1 ∪ ⋯ ∪ D^2_r)` with a single zero-cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoComplexPresentation {
    w: usize,
    boundary: BoundaryData,
}

impl TwoComplexPresentation {
    pub fn new(w: usize, boundary: BoundaryData) -> Result<Self> {
        let p = TwoComplexPresentation { w, boundary };
        p.validate()?;
        Ok(p)
    }

    pub fn point() -> Self {
        TwoComplexPresentation {
            w: 0,
            boundary: BoundaryData::default(),
        }
    }

    /// `S^2`: one disc with zero attaching map.
    pub fn sphere() -> Self {
        TwoComplexPresentation {
            w: 0,
            boundary: BoundaryData {
                disc_attach: vec![vec![]],
                higher_power_rule: HigherPowerRule::Zero,
            },
        }
    }

    pub fn wedge_of_circles(w: usize) -> Self {
        TwoComplexPresentation {
            w,
            boundary: BoundaryData::default(),
        }
    }

    pub fn circles(&self) -> usize {
        self.w
    }

    pub fn disc_count(&self) -> usize {
        self.boundary.disc_attach.len()
    }

    pub fn boundary_data(&self) -> &BoundaryData {
        &self.boundary
    }

    /// `∂ SP^s D_j` as a chain of weight `s` and degree `2s − 1`.
    pub fn disc_boundary(&self, disc: usize, power: usize) -> SymChain {
        if power == 1 {
            let mut chain = SymChain::zero();
            for (i, &a) in self.boundary.disc_attach[disc - 1].iter().enumerate() {
                chain.add_term(SymCell::circle(i + 1), BigInt::from(a));
            }
            return chain;
        }
        match &self.boundary.higher_power_rule {
            HigherPowerRule::Zero => SymChain::zero(),
            HigherPowerRule::UserTable(table) => {
                table.get(&(disc, power)).cloned().unwrap_or_default()
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPresentation(msg));
        let r = self.disc_count();
        for (j, attach) in self.boundary.disc_attach.iter().enumerate() {
            // An empty attaching list is shorthand for the zero chain.
            if !attach.is_empty() && attach.len() != self.w {
                return bad(format!(
                    "disc {} attaches along {} coefficients but there are {} circles",
                    j + 1,
                    attach.len(),
                    self.w
                ));
            }
        }
        match &self.boundary.higher_power_rule {
            HigherPowerRule::Zero if !self.boundary.attachments_vanish() => {
                let j = self
                    .boundary
                    .disc_attach
                    .iter()
                    .position(|a| a.iter().any(|&c| c != 0))
                    .unwrap_or(0);
                {
                    return bad(format!(
                        "disc {} has a nonzero attaching map, which the zero rule for \
                         higher powers cannot accommodate; supply a table",
                        j + 1
                    ));
                }
            }
            HigherPowerRule::Zero => {}
            HigherPowerRule::UserTable(table) => {
                for (&(disc, power), chain) in table {
                    if disc == 0 || disc > r {
                        return bad(format!("table entry for unknown disc {disc}"));
                    }
                    if power < 2 {
                        return bad(format!(
                            "table entry for SP{power}D{disc}: power-1 boundaries come from the attaching map"
                        ));
                    }
                    for (cell, _) in chain.iter() {
                        if cell.degree() != 2 * power - 1 || cell.weight() != power {
                            return bad(format!(
                                "boundary of SP{power}D{disc} contains `{cell}` of degree {} and weight {}, \
                                 expected degree {} and weight {power}",
                                cell.degree(),
                                cell.weight(),
                                2 * power - 1
                            ));
                        }
                        if cell.e_indices().iter().any(|&i| i > self.w)
                            || cell.disc_powers().iter().any(|&(j, _)| j > r)
                        {
                            return bad(format!("boundary of SP{power}D{disc} uses unknown generator in `{cell}`"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawPresentation =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RawPresentation::from(self)).expect("presentation serializes")
    }
}

/// Built-in presentations, addressed as `point`, `s2`, `circle` or `wedge:<w>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Point,
    Sphere,
    Wedge(usize),
}

impl Preset {
    pub fn presentation(self) -> TwoComplexPresentation {
        match self {
            Preset::Point => TwoComplexPresentation::point(),
            Preset::Sphere => TwoComplexPresentation::sphere(),
            Preset::Wedge(w) => TwoComplexPresentation::wedge_of_circles(w),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "point" => Ok(Preset::Point),
            "s2" => Ok(Preset::Sphere),
            "circle" => Ok(Preset::Wedge(1)),
            other => other
                .strip_prefix("wedge:")
                .and_then(|w| w.parse().ok())
                .map(Preset::Wedge)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown preset `{other}` (expected point, s2, circle or wedge:<w>)"
                    ))
                }),
        }
    }
}

// {"w":int, "discs":[{"attach":[...]}], "higher_power_rule":"zero"|{"table":[...]}}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    w: usize,
    #[serde(default)]
    discs: Vec<RawDisc>,
    #[serde(default)]
    higher_power_rule: RawRule,
}

#[derive(Serialize, Deserialize)]
struct RawDisc {
    #[serde(default)]
    attach: Vec<i64>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(untagged)]
enum RawRule {
    #[default]
    #[serde(with = "zero_tag")]
    Zero,
    Table {
        table: Vec<RawTableEntry>,
    },
}

mod zero_tag {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("zero")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "zero" {
            Ok(())
        } else {
            Err(serde::de::Error::custom(format!("unknown rule `{s}`")))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawTableEntry {
    disc: usize,
    power: usize,
    chain: Vec<RawTerm>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    coeff: i64,
    cell: String,
}

impl TryFrom<RawPresentation> for TwoComplexPresentation {
    type Error = Error;

    fn try_from(raw: RawPresentation) -> Result<Self> {
        let higher_power_rule = match raw.higher_power_rule {
            RawRule::Zero => HigherPowerRule::Zero,
            RawRule::Table { table } => {
                let mut map = BTreeMap::new();
                for entry in table {
                    let mut chain = SymChain::zero();
                    for term in entry.chain {
                        chain.add_term(term.cell.parse()?, BigInt::from(term.coeff));
                    }
                    if map.insert((entry.disc, entry.power), chain).is_some() {
                        return Err(Error::InvalidPresentation(format!(
                            "duplicate table entry for SP{}D{}",
                            entry.power, entry.disc
                        )));
                    }
                }
                HigherPowerRule::UserTable(map)
            }
        };
        TwoComplexPresentation::new(
            raw.w,
            BoundaryData {
                disc_attach: raw.discs.into_iter().map(|d| d.attach).collect(),
                higher_power_rule,
            },
        )
    }
}

impl From<&TwoComplexPresentation> for RawPresentation {
    fn from(p: &TwoComplexPresentation) -> Self {
        let higher_power_rule = match &p.boundary.higher_power_rule {
            HigherPowerRule::Zero => RawRule::Zero,
            HigherPowerRule::UserTable(map) => RawRule::Table {
                table: map
                    .iter()
                    .map(|(&(disc, power), chain)| RawTableEntry {
                        disc,
                        power,
                        chain: chain
                            .iter()
                            .map(|(cell, k)| RawTerm {
                                coeff: i64::try_from(k).expect("coefficient fits in i64"),
                                cell: cell.label(),
                            })
                            .collect(),
                    })
                    .collect(),
            },
        };
        RawPresentation {
            w: p.w,
            discs: p
                .boundary
                .disc_attach
                .iter()
                .map(|a| RawDisc { attach: a.clone() })
                .collect(),
            higher_power_rule,
        }
    }
}

impl BoundaryData {
    /// True if every attaching coefficient is zero.
    pub fn attachments_vanish(&self) -> bool {
        self.disc_attach.iter().flatten().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_zero_rule() {
        let p = TwoComplexPresentation::from_json(
            r#"{"w":2,"discs":[{"attach":[0,0]}],"higher_power_rule":"zero"}"#,
        )
        .unwrap();
        assert_eq!(p.circles(), 2);
        assert_eq!(p.disc_count(), 1);
        let back = TwoComplexPresentation::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn parses_user_table() {
        let p = TwoComplexPresentation::from_json(&crate::spsym::presentation_fixtures::rp2_json(3)).unwrap();
        assert_eq!(
            p.disc_boundary(1, 1),
            SymChain::term(SymCell::circle(1), BigInt::from(2))
        );
        assert_eq!(
            p.disc_boundary(1, 3),
            SymChain::term("e1·SP2D1".parse().unwrap(), BigInt::from(2))
        );
        assert!(p.disc_boundary(1, 4).is_zero());
        assert_eq!(TwoComplexPresentation::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn zero_rule_needs_zero_attachments() {
        let err = TwoComplexPresentation::from_json(r#"{"w":1,"discs":[{"attach":[2]}]}"#);
        assert!(matches!(err, Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn rejects_wrong_degree_entries() {
        let wrong_degree = r#"{"w":1,"discs":[{"attach":[0]}],"higher_power_rule":{"table":[
            {"disc":1,"power":2,"chain":[{"coeff":1,"cell":"SP1D1·v0^1"}]}]}}"#;
        assert!(TwoComplexPresentation::from_json(wrong_degree).is_err());
        let power_one = r#"{"w":1,"discs":[{"attach":[0]}],"higher_power_rule":{"table":[
            {"disc":1,"power":1,"chain":[]}]}}"#;
        assert!(TwoComplexPresentation::from_json(power_one).is_err());
        let unknown_disc = r#"{"w":1,"discs":[{"attach":[0]}],"higher_power_rule":{"table":[
            {"disc":2,"power":2,"chain":[]}]}}"#;
        assert!(TwoComplexPresentation::from_json(unknown_disc).is_err());
        let short = r#"{"w":2,"discs":[{"attach":[1]}],"higher_power_rule":{"table":[]}}"#;
        assert!(TwoComplexPresentation::from_json(short).is_err());
        let bad_rule = r#"{"w":0,"higher_power_rule":"something"}"#;
        assert!(TwoComplexPresentation::from_json(bad_rule).is_err());
    }

    #[test]
    fn presets() {
        assert_eq!("s2".parse::<Preset>().unwrap(), Preset::Sphere);
        assert_eq!("wedge:3".parse::<Preset>().unwrap(), Preset::Wedge(3));
        assert_eq!("circle".parse::<Preset>().unwrap(), Preset::Wedge(1));
        assert!("wedge:x".parse::<Preset>().is_err());
        assert_eq!(Preset::Sphere.presentation().disc_count(), 1);
    }
}
