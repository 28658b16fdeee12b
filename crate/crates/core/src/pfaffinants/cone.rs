use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::diagrams::{enumerate_sym_tl, i_maximal_diagrams, subsets_of_size, SymTLDiagram, DEFAULT_DIAGRAM_BOUND};
use crate::error::{Error, Result};

/// A combination `Σ c_D Pfaf_D` of TL-pfaffinants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeElement {
    pub n: usize,
    pub tl_coeffs: BTreeMap<SymTLDiagram, BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeVerdict {
    NetworkPositive,
    /// A diagram whose coefficient in the diagram-pfaffinant expansion is negative.
    NotCertified(SymTLDiagram),
}

impl ConeElement {
    pub fn new(n: usize, tl_coeffs: BTreeMap<SymTLDiagram, BigRational>) -> Result<ConeElement> {
        if let Some(d) = tl_coeffs.keys().find(|d| !d.is_even() || d.n() != n) {
            return Err(Error::Precondition(format!("{} is not an even diagram of size {n}", d.key())));
        }
        Ok(ConeElement { n, tl_coeffs })
    }

    /// `pf_{I,Ī} = Σ_{D ∈ 𝒟_max(I)} Pfaf_D`.
    pub fn complementary(n: usize, set: &[usize]) -> Result<ConeElement> {
        let tl_coeffs = i_maximal_diagrams(set, n)?.into_iter().map(|d| (d, BigRational::from_integer(1.into()))).collect();
        Ok(ConeElement { n, tl_coeffs })
    }

    pub fn sub(&self, other: &ConeElement) -> ConeElement {
        let mut tl_coeffs = self.tl_coeffs.clone();
        for (d, c) in &other.tl_coeffs {
            *tl_coeffs.entry(d.clone()).or_insert_with(BigRational::zero) -= c;
        }
        tl_coeffs.retain(|_, c| !c.is_zero());
        ConeElement { n: self.n, tl_coeffs }
    }

    /// `c'_{D'} = Σ_{D : D' ∈ S(D)} c_D`, over all of `𝒯_n` in increasing `≺` order.
    pub fn diagram_coeffs(&self) -> Vec<(SymTLDiagram, BigRational)> {
        let mut out: BTreeMap<SymTLDiagram, BigRational> = enumerate_sym_tl(self.n, DEFAULT_DIAGRAM_BOUND.max(self.n))
            .expect("size checked on construction")
            .into_iter()
            .map(|d| (d, BigRational::zero()))
            .collect();
        for (d, c) in &self.tl_coeffs {
            for sub in d.removal_closure() {
                *out.get_mut(&sub).expect("closure stays in 𝒯_n") += c;
            }
        }
        out.into_iter().collect()
    }
}

/// Network positivity holds exactly when every diagram coefficient is nonnegative.
pub fn cone_membership(c: &ConeElement) -> ConeVerdict {
    match c.diagram_coeffs().into_iter().find(|(_, v)| v.is_negative()) {
        Some((d, _)) => ConeVerdict::NotCertified(d),
        None => ConeVerdict::NetworkPositive,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Subsets of `[s]` of the given parity, largest first, lex within a size.
pub fn parity_levels(s: usize, parity: Parity) -> Vec<Vec<usize>> {
    let want = if parity == Parity::Odd { 1 } else { 0 };
    (0..=s).rev().filter(|k| k % 2 == want).flat_map(|k| subsets_of_size(s, k)).collect()
}

/// `t` is indexed by [`parity_levels`]; true when for every `S' ⊆ [s]` the
/// sum of `t_S` over `S ⊇ S'` is nonnegative.
pub fn boolean_cone_check(s: usize, parity: Parity, t: &[i64]) -> Result<bool> {
    if s > 4 {
        return Err(Error::BoundExceeded { what: "boolean lattice rank", got: s, bound: 4 });
    }
    let levels = parity_levels(s, parity);
    if levels.len() != t.len() {
        return Err(Error::SizeMismatch(format!("expected {} entries, got {}", levels.len(), t.len())));
    }
    let masks: Vec<u32> = levels.iter().map(|set| set.iter().map(|&i| 1u32 << (i - 1)).sum()).collect();
    Ok((0..1u32 << s).all(|lower| {
        masks.iter().zip(t).filter(|(m, _)| *m & lower == lower).map(|(_, &v)| v).sum::<i64>() >= 0
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, e: &[(usize, usize)]) -> SymTLDiagram {
        SymTLDiagram::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn unit_vectors_are_positive() {
        for n in 1..=3 {
            for dg in enumerate_sym_tl(n, 8).unwrap().into_iter().filter(|x| x.is_even()) {
                let c = ConeElement::new(n, BTreeMap::from([(dg, BigRational::from_integer(1.into()))])).unwrap();
                assert_eq!(cone_membership(&c), ConeVerdict::NetworkPositive);
            }
        }
        let c = ConeElement::new(2, BTreeMap::from([(d(2, &[]), BigRational::from_integer((-1).into()))])).unwrap();
        assert_eq!(cone_membership(&c), ConeVerdict::NotCertified(d(2, &[])));
    }

    #[test]
    fn min_difference_n2() {
        let c = ConeElement::complementary(2, &[1, 3]).unwrap().sub(&ConeElement::complementary(2, &[2, 3]).unwrap());
        assert_eq!(c.tl_coeffs.keys().cloned().collect::<Vec<_>>(), vec![d(2, &[(1, 4), (2, 3)])]);
        assert_eq!(cone_membership(&c), ConeVerdict::NetworkPositive);
    }

    #[test]
    fn boolean_lattice_rank_three() {
        assert_eq!(parity_levels(3, Parity::Odd), vec![vec![1, 2, 3], vec![1], vec![2], vec![3]]);
        let v3 = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, -1, -1, 1], [1, -1, 1, -1], [1, 1, -1, -1]];
        for v in v3 {
            assert!(boolean_cone_check(3, Parity::Odd, &v).unwrap(), "{v:?}");
        }
        assert!(boolean_cone_check(3, Parity::Odd, &[1, -1, 0, 0]).unwrap());
        assert!(!boolean_cone_check(3, Parity::Odd, &[0, -1, 0, 0]).unwrap());
        assert!(boolean_cone_check(3, Parity::Odd, &[1, 1]).is_err());
    }
}
