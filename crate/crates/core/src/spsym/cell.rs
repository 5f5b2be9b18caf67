use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// A cell `v0^ρ ⋆ e_{i_1} ⋆ ⋯ ⋆ e_{i_t} ⋆ SP^{s_1}D_{j_1} ⋆ ⋯` of the
/// symmetric-product complex of a two-dimensional complex.
///
/// Circle and disc indices are 1-based. `e_indices` is strictly increasing and
/// `disc_powers` is sorted by disc index with each disc appearing once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymCell {
    rho: usize,
    e_indices: Vec<usize>,
    disc_powers: Vec<(usize, usize)>,
}

impl SymCell {
    pub fn new(rho: usize, mut e_indices: Vec<usize>, mut disc_powers: Vec<(usize, usize)>) -> Result<Self> {
        e_indices.sort_unstable();
        if e_indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPresentation(format!(
                "repeated circle index in {e_indices:?}"
            )));
        }
        if e_indices.first() == Some(&0) {
            return Err(Error::InvalidPresentation("circle indices start at 1".into()));
        }
        disc_powers.sort_unstable();
        if disc_powers.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidPresentation(format!(
                "disc listed twice in {disc_powers:?}"
            )));
        }
        if disc_powers.iter().any(|&(j, s)| j == 0 || s == 0) {
            return Err(Error::InvalidPresentation(
                "disc indices and powers start at 1".into(),
            ));
        }
        Ok(SymCell {
            rho,
            e_indices,
            disc_powers,
        })
    }

    /// The basepoint class `v0^ρ`.
    pub fn basepoint(rho: usize) -> Self {
        SymCell {
            rho,
            e_indices: Vec::new(),
            disc_powers: Vec::new(),
        }
    }

    pub fn circle(i: usize) -> Self {
        SymCell {
            rho: 0,
            e_indices: vec![i],
            disc_powers: Vec::new(),
        }
    }

    pub fn disc(j: usize, power: usize) -> Self {
        SymCell {
            rho: 0,
            e_indices: Vec::new(),
            disc_powers: vec![(j, power)],
        }
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn e_indices(&self) -> &[usize] {
        &self.e_indices
    }

    pub fn disc_powers(&self) -> &[(usize, usize)] {
        &self.disc_powers
    }

    /// `ρ + t + Σ s`: the symmetric-product level the cell lives in.
    pub fn weight(&self) -> usize {
        self.rho + self.e_indices.len() + self.disc_powers.iter().map(|&(_, s)| s).sum::<usize>()
    }

    /// `t + 2 Σ s`.
    pub fn degree(&self) -> usize {
        self.e_indices.len() + 2 * self.disc_powers.iter().map(|&(_, s)| s).sum::<usize>()
    }

    /// Label of the form `v0^ρ·e{i}…·SP{s}D{j}…`; the empty product is `v0^0`.
    pub fn label(&self) -> String {
        self.to_string()
    }

    /// The part without discs, `v0^ρ ⋆ e_{i_1} ⋆ ⋯`.
    pub(crate) fn odd_part(&self) -> SymCell {
        SymCell {
            rho: self.rho,
            e_indices: self.e_indices.clone(),
            disc_powers: Vec::new(),
        }
    }
}

impl fmt::Display for SymCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rho > 0 {
            parts.push(format!("v0^{}", self.rho));
        }
        parts.extend(self.e_indices.iter().map(|i| format!("e{i}")));
        parts.extend(self.disc_powers.iter().map(|(j, s)| format!("SP{s}D{j}")));
        if parts.is_empty() {
            write!(f, "v0^0")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

impl FromStr for SymCell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |part: &str| Error::Parse(format!("bad cell factor `{part}` in `{s}`"));
        let mut rho = 0;
        let mut es = Vec::new();
        let mut discs = Vec::new();
        for part in s.split(['·', '*']).map(str::trim) {
            if let Some(exp) = part.strip_prefix("v0^") {
                rho += exp.parse::<usize>().map_err(|_| bad(part))?;
            } else if part == "v0" {
                rho += 1;
            } else if let Some(i) = part.strip_prefix('e') {
                es.push(i.parse::<usize>().map_err(|_| bad(part))?);
            } else if let Some(rest) = part.strip_prefix("SP") {
                let (power, disc) = rest.split_once('D').ok_or_else(|| bad(part))?;
                discs.push((
                    disc.parse::<usize>().map_err(|_| bad(part))?,
                    power.parse::<usize>().map_err(|_| bad(part))?,
                ));
            } else {
                return Err(bad(part));
            }
        }
        SymCell::new(rho, es, discs)
    }
}

/// Finite integer combination of cells.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymChain {
    terms: BTreeMap<SymCell, BigInt>,
}

impl SymChain {
    pub fn zero() -> Self {
        SymChain::default()
    }

    pub fn from_cell(cell: SymCell) -> Self {
        Self::term(cell, BigInt::one())
    }

    pub fn term(cell: SymCell, coeff: BigInt) -> Self {
        let mut c = SymChain::zero();
        c.add_term(cell, coeff);
        c
    }

    pub fn add_term(&mut self, cell: SymCell, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(cell).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&mut self, other: &SymChain) {
        for (cell, coeff) in &other.terms {
            self.add_term(cell.clone(), coeff.clone());
        }
    }

    pub fn scaled(&self, k: &BigInt) -> SymChain {
        let mut out = SymChain::zero();
        for (cell, coeff) in &self.terms {
            out.add_term(cell.clone(), coeff * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, cell: &SymCell) -> BigInt {
        self.terms.get(cell).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SymCell, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product with another chain, extended bilinearly from [`star_product`].
    pub fn star(&self, other: &SymChain) -> SymChain {
        let mut out = SymChain::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let prod = star_product(a, b);
                if !prod.is_zero() {
                    out.add(&prod.scaled(&(ca * cb)));
                }
            }
        }
        out
    }
}

impl fmt::Display for SymChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, k)| format!("{k}·[{c}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product of two cells: `v0` multiplicities add, circle classes anticommute
/// (`e_i ⋆ e_j = -e_j ⋆ e_i`, `e_i ⋆ e_i = 0`), and powers of one disc merge
/// as `SP^s D ⋆ SP^t D = binom(s+t, t) SP^{s+t} D`.
pub fn star_product(a: &SymCell, b: &SymCell) -> SymChain {
    let mut inversions = 0usize;
    let mut merged = Vec::with_capacity(a.e_indices.len() + b.e_indices.len());
    let (mut i, mut j) = (0, 0);
    while i < a.e_indices.len() || j < b.e_indices.len() {
        match (a.e_indices.get(i), b.e_indices.get(j)) {
            (Some(x), Some(y)) if x == y => return SymChain::zero(),
            (Some(x), Some(y)) if y < x => {
                // y jumps over the remaining entries of a.
                inversions += a.e_indices.len() - i;
                merged.push(*y);
                j += 1;
            }
            (Some(x), _) => {
                merged.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                merged.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }

    let mut coeff = BigInt::one();
    let mut discs: BTreeMap<usize, usize> = a.disc_powers.iter().copied().collect();
    for &(d, t) in &b.disc_powers {
        match discs.get_mut(&d) {
            Some(s) => {
                coeff *= BigInt::from_biguint(Sign::Plus, binomial((*s + t) as u64, t as u64));
                *s += t;
            }
            None => {
                discs.insert(d, t);
            }
        }
    }
    if inversions % 2 == 1 {
        coeff = -coeff;
    }
    let cell = SymCell {
        rho: a.rho + b.rho,
        e_indices: merged,
        disc_powers: discs.into_iter().collect(),
    };
    SymChain::term(cell, coeff)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(s: &str) -> SymCell {
        s.parse().unwrap()
    }

    #[test]
    fn anticommuting_circles() {
        let p = star_product(&SymCell::circle(2), &SymCell::circle(1));
        assert_eq!(p, SymChain::term(cell("e1·e2"), BigInt::from(-1)));
        let q = star_product(&SymCell::circle(1), &SymCell::circle(2));
        assert_eq!(q, SymChain::term(cell("e1·e2"), BigInt::from(1)));
    }

    #[test]
    fn circle_squares_to_zero() {
        assert!(star_product(&SymCell::circle(1), &SymCell::circle(1)).is_zero());
        assert!(star_product(&cell("e1·e3"), &cell("e2·e3")).is_zero());
    }

    #[test]
    fn disc_powers_merge_binomially() {
        let p = star_product(&SymCell::disc(1, 1), &SymCell::disc(1, 2));
        assert_eq!(p, SymChain::term(SymCell::disc(1, 3), BigInt::from(3)));
        let p = star_product(&SymCell::disc(1, 2), &SymCell::disc(2, 2));
        assert_eq!(p, SymChain::from_cell(cell("SP2D1·SP2D2")));
    }

    #[test]
    fn basepoint_multiplicities_add() {
        let p = star_product(&cell("v0^2·e1"), &cell("v0·e2·SP1D1"));
        assert_eq!(p, SymChain::from_cell(cell("v0^3·e1·e2·SP1D1")));
    }

    #[test]
    fn sign_of_longer_shuffle() {
        // (e2 e4) ⋆ (e1 e3): e1 passes two, e3 passes one → sign -1.
        let p = star_product(&cell("e2·e4"), &cell("e1·e3"));
        assert_eq!(p, SymChain::term(cell("e1·e2·e3·e4"), BigInt::from(-1)));
    }

    #[test]
    fn labels_round_trip() {
        for s in ["v0^0", "v0^2", "v0^1·e1·e3·SP2D1", "e1·e2", "SP3D2", "e4·SP1D1·SP2D3"] {
            assert_eq!(cell(s).to_string(), s);
        }
        assert_eq!(cell("v0·e1").to_string(), "v0^1·e1");
        assert!("e1·e1".parse::<SymCell>().is_err());
        assert!("x1".parse::<SymCell>().is_err());
        assert!("SP0D1".parse::<SymCell>().is_err());
    }

    #[test]
    fn weight_and_degree() {
        let c = cell("v0^2·e1·e3·SP2D1");
        assert_eq!(c.weight(), 6);
        assert_eq!(c.degree(), 6);
        assert_eq!(SymCell::basepoint(0).degree(), 0);
    }
}
