use std::collections::{HashMap, HashSet};

use num_traits::Zero;

use super::coefficients::Coefficients;
use super::graded::GradedGroup;
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SmithForm};
use crate::error::{Error, Result};

/// Finite chain complex with labelled cells and integer boundary matrices.
///
/// `boundary(q)` is the matrix of `∂_q : C_q → C_{q-1}` with rows indexed by
/// the degree-`(q-1)` basis and columns by the degree-`q` basis. `∂_0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    basis: Vec<Vec<String>>,
    // boundaries[q] = ∂_q; boundaries[0] is 0 × |C_0|.
    boundaries: Vec<IntMatrix>,
    index: Vec<HashMap<String, usize>>,
}

impl ChainComplex {
    /// `boundaries[i]` is `∂_{i+1}`, so `boundaries.len() + 1 == basis.len()`
    /// (or both empty).
    pub fn new(basis: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != basis.len().max(1) {
            return Err(Error::MalformedComplex(format!(
                "{} basis degrees need {} boundary matrices, got {}",
                basis.len(),
                basis.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        let mut index = Vec::with_capacity(basis.len());
        for (q, labels) in basis.iter().enumerate() {
            let mut map = HashMap::with_capacity(labels.len());
            for (i, l) in labels.iter().enumerate() {
                if map.insert(l.clone(), i).is_some() {
                    return Err(Error::MalformedComplex(format!(
                        "duplicate label `{l}` in degree {q}"
                    )));
                }
            }
            index.push(map);
        }
        let mut all = Vec::with_capacity(basis.len());
        if let Some(c0) = basis.first() {
            all.push(IntMatrix::zeros(0, c0.len()));
        }
        for (i, m) in boundaries.into_iter().enumerate() {
            let q = i + 1;
            let expected = (basis[q - 1].len(), basis[q].len());
            if m.shape() != expected {
                return Err(Error::MalformedComplex(format!(
                    "∂_{q} has shape {:?}, expected {:?}",
                    m.shape(),
                    expected
                )));
            }
            all.push(m);
        }
        Ok(ChainComplex {
            basis,
            boundaries: all,
            index,
        })
    }

    pub fn empty() -> Self {
        ChainComplex {
            basis: Vec::new(),
            boundaries: Vec::new(),
            index: Vec::new(),
        }
    }

    /// Number of stored degrees (one past the top degree).
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.iter().all(Vec::is_empty)
    }

    pub fn basis(&self, q: usize) -> &[String] {
        self.basis.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn cell_count(&self, q: usize) -> usize {
        self.basis(q).len()
    }

    pub fn boundary(&self, q: usize) -> Option<&IntMatrix> {
        self.boundaries.get(q)
    }

    pub fn position(&self, q: usize, label: &str) -> Option<usize> {
        self.index.get(q).and_then(|m| m.get(label)).copied()
    }

    /// Euler characteristic from cell counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .enumerate()
            .map(|(q, b)| if q % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }

    /// Checks `∂_{q-1} ∘ ∂_q = 0` in every degree.
    pub fn check_boundary_squared(&self) -> Result<()> {
        for q in 2..self.boundaries.len() {
            if !self.boundaries[q - 1].mul(&self.boundaries[q]).is_zero() {
                return Err(Error::MalformedComplex(format!(
                    "∂_{} ∘ ∂_{q} is nonzero",
                    q - 1
                )));
            }
        }
        Ok(())
    }

    /// The quotient complex obtained by discarding the given cells, after
    /// checking that they span a subcomplex.
    pub fn quotient(&self, sub: &[Vec<String>]) -> Result<ChainComplex> {
        let mut keep: Vec<Vec<usize>> = Vec::with_capacity(self.len());
        let mut drop: Vec<HashSet<usize>> = Vec::with_capacity(self.len());
        for q in 0..self.len() {
            let mut set = HashSet::new();
            for label in sub.get(q).map_or(&[][..], Vec::as_slice) {
                let i = self.position(q, label).ok_or_else(|| Error::UnknownCell {
                    degree: q,
                    label: label.clone(),
                })?;
                set.insert(i);
            }
            keep.push((0..self.cell_count(q)).filter(|i| !set.contains(i)).collect());
            drop.push(set);
        }
        if let Some(q) = (self.len()..sub.len()).find(|&q| !sub[q].is_empty()) {
            return Err(Error::UnknownCell {
                degree: q,
                label: sub[q][0].clone(),
            });
        }
        for q in 1..self.len() {
            let d = &self.boundaries[q];
            for &j in &drop[q] {
                let leaks = d
                    .column(j)
                    .enumerate()
                    .any(|(i, v)| !v.is_zero() && !drop[q - 1].contains(&i));
                if leaks {
                    return Err(Error::NotASubcomplex {
                        degree: q,
                        cell: self.basis[q][j].clone(),
                    });
                }
            }
        }
        let basis = (0..self.len())
            .map(|q| keep[q].iter().map(|&i| self.basis[q][i].clone()).collect())
            .collect();
        let boundaries = (1..self.len())
            .map(|q| self.boundaries[q].submatrix(&keep[q - 1], &keep[q]))
            .collect();
        ChainComplex::new(basis, boundaries)
    }
}

/// Homology `H_q = ker ∂_q / im ∂_{q+1}`.
///
/// Over Z the torsion comes from the invariant factors of `∂_{q+1}`; over a
/// field only ranks are computed.
pub fn homology(c: &ChainComplex, coeffs: Coefficients) -> Result<GradedGroup> {
    c.check_boundary_squared()?;
    let top = c.len();
    let mut out = GradedGroup::zero(coeffs);
    match coeffs {
        Coefficients::Integers => {
            let forms: Vec<SmithForm> = (0..=top)
                .map(|q| c.boundary(q).map_or_else(empty_form, smith_normal_form))
                .collect();
            for q in 0..top {
                let rank = c.cell_count(q) - forms[q].rank - forms[q + 1].rank;
                let torsion: Vec<u64> = forms[q + 1]
                    .torsion()
                    .map(|t| u64::try_from(t).expect("torsion coefficient overflows u64"))
                    .collect();
                out.set(q, rank, &torsion)?;
            }
        }
        field => {
            let ranks: Vec<usize> = (0..=top)
                .map(|q| c.boundary(q).map_or(0, |m| field_rank(m, field)))
                .collect();
            for q in 0..top {
                out.add_rank(q, c.cell_count(q) - ranks[q] - ranks[q + 1]);
            }
        }
    }
    Ok(out)
}

/// Homology of the pair `(c, sub)`, i.e. of the quotient complex. `sub` lists
/// the subcomplex labels per degree and must be closed under the boundary.
pub fn relative_homology(
    c: &ChainComplex,
    sub: &[Vec<String>],
    coeffs: Coefficients,
) -> Result<GradedGroup> {
    homology(&c.quotient(sub)?, coeffs)
}

/// Labels of `c`, per degree, that satisfy `pred(degree, label)`. Handy for
/// building the `sub` argument of [`relative_homology`].
pub fn labels_where(c: &ChainComplex, pred: impl Fn(usize, &str) -> bool) -> Vec<Vec<String>> {
    (0..c.len())
        .map(|q| c.basis(q).iter().filter(|l| pred(q, l)).cloned().collect())
        .collect()
}

fn field_rank(m: &IntMatrix, field: Coefficients) -> usize {
    match field {
        Coefficients::PrimeField(p) => m.rank_mod_p(p),
        _ => m.rank_rational(),
    }
}

fn empty_form() -> SmithForm {
    SmithForm {
        diagonal: Vec::new(),
        rank: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// ℝP² with one cell per degree.
    fn rp2() -> ChainComplex {
        ChainComplex::new(
            vec![labels(&["a"]), labels(&["b"]), labels(&["c"])],
            vec![IntMatrix::from_rows(&[[0]]), IntMatrix::from_rows(&[[2]])],
        )
        .unwrap()
    }

    #[test]
    fn rp2_integral() {
        let h = homology(&rp2(), Coefficients::Integers).unwrap();
        assert_eq!(h.rank(0), 1);
        assert_eq!((h.rank(1), h.torsion(1)), (0, &[2][..]));
        assert!(h.entry(2).is_none());
        let h2 = homology(&rp2(), Coefficients::F2).unwrap();
        assert_eq!(h2.ranks(), vec![1, 1, 1]);
        let hq = homology(&rp2(), Coefficients::Rationals).unwrap();
        assert_eq!(hq.ranks(), vec![1]);
    }

    #[test]
    fn empty_complex() {
        let h = homology(&ChainComplex::empty(), Coefficients::Integers).unwrap();
        assert!(h.is_zero());
        let c = ChainComplex::new(vec![], vec![]).unwrap();
        assert!(homology(&c, Coefficients::F2).unwrap().is_zero());
    }

    #[test]
    fn two_sphere() {
        let c = ChainComplex::new(
            vec![labels(&["v"]), vec![], labels(&["D"])],
            vec![IntMatrix::zeros(1, 0), IntMatrix::zeros(0, 1)],
        )
        .unwrap();
        let h = homology(&c, Coefficients::Integers).unwrap();
        assert_eq!(h.ranks(), vec![1, 0, 1]);
        assert!(!h.has_torsion());
    }

    #[test]
    fn malformed_is_reported() {
        let bad = ChainComplex::new(
            vec![labels(&["a"]), labels(&["b"]), labels(&["c"])],
            vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[1]])],
        )
        .unwrap();
        assert!(matches!(
            homology(&bad, Coefficients::Integers),
            Err(Error::MalformedComplex(_))
        ));
        let wrong_shape = ChainComplex::new(
            vec![labels(&["a"]), labels(&["b"])],
            vec![IntMatrix::zeros(2, 1)],
        );
        assert!(wrong_shape.is_err());
        let duplicate = ChainComplex::new(vec![labels(&["a", "a"])], vec![]);
        assert!(duplicate.is_err());
    }

    #[test]
    fn relative_checks_closure() {
        let c = rp2();
        // {c} alone is not a subcomplex: ∂c = 2b.
        let sub = vec![vec![], vec![], labels(&["c"])];
        assert!(matches!(
            relative_homology(&c, &sub, Coefficients::F2),
            Err(Error::NotASubcomplex { degree: 2, .. })
        ));
        let unknown = vec![labels(&["zz"])];
        assert!(matches!(
            relative_homology(&c, &unknown, Coefficients::F2),
            Err(Error::UnknownCell { .. })
        ));
        let full = vec![labels(&["a"]), labels(&["b"]), labels(&["c"])];
        assert!(relative_homology(&c, &full, Coefficients::Integers)
            .unwrap()
            .is_zero());
        // (ℝP², ℝP¹) over Z: quotient is S² with ∂ = 0 after killing b.
        let sub = vec![labels(&["a"]), labels(&["b"])];
        let rel = relative_homology(&c, &sub, Coefficients::Integers).unwrap();
        assert_eq!(rel.ranks(), vec![0, 0, 1]);
    }

    #[test]
    fn euler_from_cells() {
        assert_eq!(rp2().euler_characteristic(), 1);
    }
}
