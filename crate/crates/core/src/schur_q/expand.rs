use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::shapes::{max_strict_length, render_partition, SkewShiftedShape};
use super::tableaux::schur_q;
use crate::error::{Error, Result};
use crate::exact_poly::{ExactPolynomial, Monomial, Variable};

/// Exponent vector of `m` over `x_1..x_k`, or `None` if another variable occurs.
fn exponents(m: &Monomial, k: usize) -> Option<Vec<usize>> {
    let mut e = vec![0; k];
    for &(v, p) in m.factors() {
        match v {
            Variable::Indet(i) if i >= 1 && i as usize <= k => e[i as usize - 1] = p as usize,
            _ => return None,
        }
    }
    Some(e)
}

fn monomial_of(e: &[usize]) -> Monomial {
    Monomial::from_factors(e.iter().enumerate().filter(|(_, &p)| p > 0).map(|(i, &p)| (Variable::indet(i + 1), p as u32)))
}

/// A polynomial written in the `Q_λ`, with whatever could not be absorbed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub k: usize,
    pub coefficients: BTreeMap<Vec<usize>, BigRational>,
    pub remainder: Option<ExactPolynomial>,
}

impl QExpansion {
    pub fn has_remainder(&self) -> bool {
        self.remainder.is_some()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.values().all(|c| !c.is_negative())
    }

    /// `Σ c_λ Q_λ` plus the remainder.
    pub fn recombine(&self) -> Result<ExactPolynomial> {
        let mut out = self.remainder.clone().unwrap_or_else(ExactPolynomial::zero);
        for (lambda, c) in &self.coefficients {
            out.add_scaled(&schur_q(&SkewShiftedShape::straight(lambda)?, self.k)?, c);
        }
        Ok(out)
    }

    /// Coefficients keyed by rendered partition, as strings.
    pub fn rendered(&self) -> BTreeMap<String, String> {
        self.coefficients.iter().map(|(l, c)| (render_partition(l), c.to_string())).collect()
    }
}

/// Peels off `c Q_λ` for the lex-largest exponent `λ` of the top degree, with
/// `c` its coefficient over `2^{l(λ)}`; stops with a remainder at the first
/// non-strict leading exponent.
pub fn expand_in_q_basis(f: &ExactPolynomial, k: usize, dmax: usize) -> Result<QExpansion> {
    let degree = f.total_degree().unwrap_or(0) as usize;
    if degree > dmax {
        return Err(Error::Precondition(format!("degree {degree} exceeds the bound {dmax}")));
    }
    if k < max_strict_length(dmax) || k == 0 {
        return Err(Error::InsufficientVariables { k, degree: dmax });
    }
    let mut rest = f.clone();
    let mut coefficients = BTreeMap::new();
    loop {
        let Some(top) = rest.total_degree() else {
            return Ok(QExpansion { k, coefficients, remainder: None });
        };
        let mut lead: Option<(Vec<usize>, BigRational)> = None;
        for (m, c) in rest.terms() {
            if m.degree() != top {
                continue;
            }
            let e = exponents(m, k).ok_or_else(|| Error::Precondition(format!("{m} is not a monomial in x[1..{k}]")))?;
            if lead.as_ref().is_none_or(|(best, _)| e > *best) {
                lead = Some((e, c.clone()));
            }
        }
        let (e, c) = lead.expect("nonzero polynomial has a top term");
        let lambda: Vec<usize> = e.iter().copied().filter(|&p| p > 0).collect();
        let strict = lambda.windows(2).all(|w| w[0] > w[1]) && e.iter().skip(lambda.len()).all(|&p| p == 0);
        if !strict {
            return Ok(QExpansion { k, coefficients, remainder: Some(rest) });
        }
        let coeff = c / BigRational::from_integer(BigInt::from(1u64 << lambda.len()));
        let q = schur_q(&SkewShiftedShape::straight(&lambda)?, k)?;
        rest.add_scaled(&q, &-coeff.clone());
        *coefficients.entry(lambda).or_insert_with(BigRational::zero) += coeff;
    }
}

/// Coefficients in the monomial symmetric functions `m_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialExpansion {
    Coefficients(BTreeMap<Vec<usize>, BigRational>),
    NotSymmetric,
}

impl MonomialExpansion {
    pub fn is_nonnegative(&self) -> bool {
        matches!(self, MonomialExpansion::Coefficients(c) if c.values().all(|v| !v.is_negative()))
    }
}

/// `f = Σ c_λ m_λ(x_1..x_k)` if `f` is symmetric in `x_1..x_k`.
pub fn monomial_expand(f: &ExactPolynomial, k: usize) -> MonomialExpansion {
    let mut out = BTreeMap::new();
    for (m, c) in f.terms() {
        let Some(e) = exponents(m, k) else { return MonomialExpansion::NotSymmetric };
        for i in 0..k.saturating_sub(1) {
            let mut s = e.clone();
            s.swap(i, i + 1);
            if f.coeff(&monomial_of(&s)) != *c {
                return MonomialExpansion::NotSymmetric;
            }
        }
        if e.windows(2).all(|w| w[0] >= w[1]) {
            out.insert(e.into_iter().filter(|&p| p > 0).collect(), c.clone());
        }
    }
    MonomialExpansion::Coefficients(out)
}
