//! Diagram and Temperley-Lieb pfaffinants, their decomposition identities,
//! and the transition to standard complementary pfaffians.

mod cone;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use cone::{boolean_cone_check, cone_membership, parity_levels, ConeElement, ConeVerdict, Parity};

use crate::diagrams::{
    binomial, compatible_diagrams, enumerate_sym_tl, enumerate_sym_tl_even, even_subsets,
    i_maximal_diagrams, Matching, SymTLDiagram, DEFAULT_DIAGRAM_BOUND,
};
use crate::error::{Error, Result};
use crate::exact_poly::{express_in_span, matrix_rank, ExactPolynomial, SpanResult};
use crate::pfaffian_core::{complementary_pfaffian, SkewArray};
use crate::uncross::FTable;

/// Seed of the embeddings behind the cached `f_D` tables.
pub const DEFAULT_SEED: u64 = 0;

/// `Pfaf_f(A) = Σ_π f(π) a_π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffinantFunctional {
    pub n: usize,
    pub coefficients: BTreeMap<Matching, i64>,
}

impl PfaffinantFunctional {
    pub fn evaluate(&self, a: &SkewArray) -> Result<ExactPolynomial> {
        check_dim(self.n, a)?;
        let mut out = ExactPolynomial::zero();
        for (pi, &c) in &self.coefficients {
            out.add_scaled(&a.matching_product(pi), &crate::exact_poly::rat(c));
        }
        Ok(out)
    }

    /// The functional `π ↦ f_D(π)`.
    pub fn of_diagram(d: &SymTLDiagram) -> Result<PfaffinantFunctional> {
        PfaffinantFunctional::of_diagram_with(d, DEFAULT_SEED, None)
    }

    /// As [`PfaffinantFunctional::of_diagram`], from the embeddings chosen by
    /// `seed`, reading and writing the per-matching tables in `cache`.
    pub fn of_diagram_with(d: &SymTLDiagram, seed: u64, cache: Option<&Path>) -> Result<PfaffinantFunctional> {
        let table = FTable::cached(d.n(), seed, cache)?;
        let coefficients = table
            .rows
            .iter()
            .filter_map(|(pi, f)| f.get(d).map(|&c| (pi.clone(), c)))
            .collect();
        Ok(PfaffinantFunctional { n: d.n(), coefficients })
    }

    /// Sum of the diagram functionals over `S(D)`.
    pub fn of_tl_diagram(d: &SymTLDiagram) -> Result<PfaffinantFunctional> {
        PfaffinantFunctional::of_tl_diagram_with(d, DEFAULT_SEED, None)
    }

    pub fn of_tl_diagram_with(d: &SymTLDiagram, seed: u64, cache: Option<&Path>) -> Result<PfaffinantFunctional> {
        if !d.is_even() {
            return Err(Error::OddDiagram(d.key()));
        }
        let mut coefficients: BTreeMap<Matching, i64> = BTreeMap::new();
        for sub in d.removal_closure() {
            for (pi, c) in PfaffinantFunctional::of_diagram_with(&sub, seed, cache)?.coefficients {
                *coefficients.entry(pi).or_insert(0) += c;
            }
        }
        coefficients.retain(|_, c| *c != 0);
        Ok(PfaffinantFunctional { n: d.n(), coefficients })
    }
}

fn check_dim(n: usize, a: &SkewArray) -> Result<()> {
    if a.dim() != 2 * n {
        return Err(Error::SizeMismatch(format!("diagram on [{}] but matrix of size {}", 2 * n, a.dim())));
    }
    Ok(())
}

/// `Pfaf'_D(A) = Σ_π f_D(π) a_π`.
pub fn diagram_pfaffinant(d: &SymTLDiagram, a: &SkewArray) -> Result<ExactPolynomial> {
    check_dim(d.n(), a)?;
    PfaffinantFunctional::of_diagram(d)?.evaluate(a)
}

/// `Pfaf_D(A) = Σ_{D' ∈ S(D)} Pfaf'_{D'}(A)` for even `D`.
pub fn tl_pfaffinant(d: &SymTLDiagram, a: &SkewArray) -> Result<ExactPolynomial> {
    check_dim(d.n(), a)?;
    PfaffinantFunctional::of_tl_diagram(d)?.evaluate(a)
}

/// Both sides of a verified identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: ExactPolynomial,
    pub rhs: ExactPolynomial,
    /// Diagrams summed on the right-hand side.
    pub terms: Vec<SymTLDiagram>,
}

fn compare(what: String, lhs: ExactPolynomial, rhs: ExactPolynomial, terms: Vec<SymTLDiagram>) -> Result<IdentityCheck> {
    let diff = &lhs - &rhs;
    if let Some((m, c)) = diff.leading() {
        return Err(Error::IdentityFailure(format!("{what}: sides differ at {m} by {c}")));
    }
    Ok(IdentityCheck { lhs, rhs, terms })
}

fn half_n(a: &SkewArray) -> Result<usize> {
    if a.dim() % 2 == 1 {
        return Err(Error::SizeMismatch(format!("matrix size {} is odd", a.dim())));
    }
    Ok(a.dim() / 2)
}

/// `pf_{I,Ī}(A) = Σ_{D ∈ 𝒟(I)} Pfaf'_D(A)`.
pub fn verify_diagram_decomposition(a: &SkewArray, set: &[usize]) -> Result<IdentityCheck> {
    let n = half_n(a)?;
    let lhs = complementary_pfaffian(a, set)?;
    let terms = compatible_diagrams(set, n)?;
    let mut rhs = ExactPolynomial::zero();
    for d in &terms {
        rhs += &diagram_pfaffinant(d, a)?;
    }
    compare(format!("diagram decomposition for I = {set:?}"), lhs, rhs, terms)
}

/// `pf_{I,Ī}(A) = Σ_{D ∈ 𝒟_max(I)} Pfaf_D(A)`.
pub fn verify_tl_decomposition(a: &SkewArray, set: &[usize]) -> Result<IdentityCheck> {
    let n = half_n(a)?;
    let lhs = complementary_pfaffian(a, set)?;
    let terms = i_maximal_diagrams(set, n)?;
    let mut rhs = ExactPolynomial::zero();
    for d in &terms {
        rhs += &tl_pfaffinant(d, a)?;
    }
    compare(format!("TL decomposition for I = {set:?}"), lhs, rhs, terms)
}

/// Machine-readable outcome of an exhaustive check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub n: usize,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: &str, n: usize) -> VerificationReport {
        VerificationReport { theorem: theorem.to_string(), n, cases: 0, failures: Vec::new() }
    }

    /// Records one case; errors other than identity failures are propagated.
    pub fn record<T>(&mut self, case: impl FnOnce() -> String, outcome: Result<T>) -> Result<()> {
        self.cases += 1;
        match outcome {
            Ok(_) => Ok(()),
            Err(Error::IdentityFailure(msg)) => {
                self.failures.push(format!("{}: {msg}", case()));
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs one of the decomposition checks on the symbolic matrix for every even `I`.
pub fn verify_all_decompositions(n: usize, tl: bool) -> Result<VerificationReport> {
    let a = SkewArray::symbolic(n);
    let mut report = VerificationReport::new(if tl { "tl-decomposition" } else { "diagram-decomposition" }, n);
    for set in even_subsets(2 * n) {
        let outcome = if tl { verify_tl_decomposition(&a, &set) } else { verify_diagram_decomposition(&a, &set) };
        report.record(|| format!("I = {set:?}"), outcome)?;
    }
    Ok(report)
}

/// Rows are the standard complementary pfaffians, columns the even diagrams
/// in decreasing `≺` order; row `k` is the standard partition of column `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub rows: Vec<(Vec<usize>, Vec<usize>)>,
    pub cols: Vec<SymTLDiagram>,
    pub entries: Vec<Vec<i64>>,
}

impl TransitionMatrix {
    pub fn is_unit_upper_triangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, &v)| match c.cmp(&r) {
                std::cmp::Ordering::Less => v == 0,
                std::cmp::Ordering::Equal => v == 1,
                std::cmp::Ordering::Greater => true,
            })
        })
    }
}

/// Entry `(I, D)` is 1 when `D ∈ 𝒟_max(I)`.
pub fn transition_matrix(n: usize) -> Result<TransitionMatrix> {
    let mut cols = enumerate_sym_tl_even(n, DEFAULT_DIAGRAM_BOUND)?;
    cols.reverse();
    let rows: Vec<(Vec<usize>, Vec<usize>)> = cols.iter().map(|d| d.standard_partition()).collect();
    let mut entries = Vec::with_capacity(rows.len());
    for (i, _) in &rows {
        let maximal = i_maximal_diagrams(i, n)?;
        entries.push(cols.iter().map(|d| i64::from(maximal.contains(d))).collect());
    }
    let m = TransitionMatrix { rows, cols, entries };
    if !m.is_unit_upper_triangular() {
        return Err(Error::IdentityFailure(format!("transition matrix for n = {n} is not unit upper triangular")));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCertificate {
    pub n: usize,
    /// `C(2n-1, n)`.
    pub expected: usize,
    pub tl_rank: usize,
    pub tl_count: usize,
    pub complementary_rank: usize,
}

impl BasisCertificate {
    pub fn certified(&self) -> bool {
        self.tl_rank == self.expected && self.tl_count == self.expected && self.complementary_rank == self.expected
    }
}

/// Ranks of the TL-pfaffinants and of all complementary pfaffians on the symbolic matrix.
pub fn certify_basis(n: usize) -> Result<BasisCertificate> {
    if n > 4 {
        return Err(Error::BoundExceeded { what: "basis certification n", got: n, bound: 4 });
    }
    let a = SkewArray::symbolic(n);
    let tl: Vec<ExactPolynomial> = enumerate_sym_tl_even(n, DEFAULT_DIAGRAM_BOUND)?
        .iter()
        .map(|d| tl_pfaffinant(d, &a))
        .collect::<Result<_>>()?;
    let comp: Vec<ExactPolynomial> =
        even_subsets(2 * n).iter().map(|s| complementary_pfaffian(&a, s)).collect::<Result<_>>()?;
    Ok(BasisCertificate {
        n,
        expected: binomial(2 * n as u64 - 1, n as u64) as usize,
        tl_rank: matrix_rank(&tl),
        tl_count: tl.len(),
        complementary_rank: matrix_rank(&comp),
    })
}

/// Standard complementary pfaffians of the symbolic matrix, in the row order
/// of [`transition_matrix`].
pub fn standard_complementary_pfaffians(n: usize) -> Result<Vec<(Vec<usize>, ExactPolynomial)>> {
    let a = SkewArray::symbolic(n);
    let mut cols = enumerate_sym_tl_even(n, DEFAULT_DIAGRAM_BOUND)?;
    cols.reverse();
    cols.iter()
        .map(|d| {
            let (i, _) = d.standard_partition();
            let p = complementary_pfaffian(&a, &i)?;
            Ok((i, p))
        })
        .collect()
}

/// For every `D ∈ 𝒯_n`, whether `Pfaf'_D` lies in the span of the standard
/// complementary pfaffians, with the coefficients when it does.
pub fn check_pfafprime_in_span(n: usize) -> Result<Vec<(SymTLDiagram, SpanResult)>> {
    if n > 4 {
        return Err(Error::BoundExceeded { what: "span probe n", got: n, bound: 4 });
    }
    let a = SkewArray::symbolic(n);
    let gens: Vec<ExactPolynomial> = standard_complementary_pfaffians(n)?.into_iter().map(|(_, p)| p).collect();
    enumerate_sym_tl(n, DEFAULT_DIAGRAM_BOUND)?
        .into_iter()
        .map(|d| {
            let p = diagram_pfaffinant(&d, &a)?;
            Ok((d, express_in_span(&p, &gens)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::rat;

    fn d(n: usize, e: &[(usize, usize)]) -> SymTLDiagram {
        SymTLDiagram::new(n, e.to_vec()).unwrap()
    }

    fn p(s: &str) -> ExactPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn diagram_pfaffinants_n2() {
        let a = SkewArray::symbolic(2);
        let table = [
            (vec![], "a[1,2]*a[3,4] + a[1,4]*a[2,3] - a[1,3]*a[2,4]"),
            (vec![(1, 2)], "-a[1,4]*a[2,3] + a[1,3]*a[2,4] - a[1,2]*a[3,4]"),
            (vec![(3, 4)], "-a[1,4]*a[2,3] + a[1,3]*a[2,4] - a[1,2]*a[3,4]"),
            (vec![(1, 2), (3, 4)], "a[1,2]*a[3,4] + 2*a[1,4]*a[2,3] - a[1,3]*a[2,4]"),
            (vec![(2, 3)], "0"),
            (vec![(2, 3), (1, 4)], "a[1,3]*a[2,4] - a[1,4]*a[2,3]"),
        ];
        for (edges, expect) in table {
            assert_eq!(diagram_pfaffinant(&d(2, &edges), &a).unwrap(), p(expect), "{edges:?}");
        }
    }

    #[test]
    fn tl_pfaffinants_n2() {
        let a = SkewArray::symbolic(2);
        assert_eq!(tl_pfaffinant(&d(2, &[]), &a).unwrap(), p("a[1,2]*a[3,4] + a[1,4]*a[2,3] - a[1,3]*a[2,4]"));
        assert_eq!(tl_pfaffinant(&d(2, &[(1, 4), (2, 3)]), &a).unwrap(), p("a[1,3]*a[2,4] - a[1,4]*a[2,3]"));
        assert_eq!(tl_pfaffinant(&d(2, &[(1, 2), (3, 4)]), &a).unwrap(), p("a[1,4]*a[2,3]"));
        assert!(matches!(tl_pfaffinant(&d(2, &[(1, 2)]), &a), Err(Error::OddDiagram(_))));
        assert!(matches!(diagram_pfaffinant(&d(2, &[]), &SkewArray::symbolic(3)), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn decompositions_small() {
        let a = SkewArray::symbolic(2);
        let c = verify_diagram_decomposition(&a, &[1, 3]).unwrap();
        assert_eq!(c.lhs, p("a[1,3]*a[2,4]"));
        assert_eq!(c.terms.len(), 6);
        let c = verify_diagram_decomposition(&a, &[1, 2, 3, 4]).unwrap();
        assert_eq!(c.lhs, p("a[1,2]*a[3,4] - a[1,3]*a[2,4] + a[1,4]*a[2,3]"));
        let c = verify_tl_decomposition(&a, &[1, 2]).unwrap();
        assert_eq!(c.terms, vec![d(2, &[]), d(2, &[(1, 4), (2, 3)])]);
        for n in 1..=3 {
            let a = SkewArray::symbolic(n);
            let all: Vec<usize> = (1..=2 * n).collect();
            assert_eq!(verify_tl_decomposition(&a, &all).unwrap().terms, vec![SymTLDiagram::horizontal(n)]);
            assert!(verify_all_decompositions(n, false).unwrap().passed());
            assert!(verify_all_decompositions(n, true).unwrap().passed());
        }
    }

    #[test]
    fn transition_matrices() {
        assert_eq!(transition_matrix(1).unwrap().entries, vec![vec![1]]);
        let m = transition_matrix(2).unwrap();
        assert_eq!(m.entries, vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(m.rows[0].0, vec![1, 3]);
        assert_eq!(m.rows[1].0, vec![1, 2]);
        assert_eq!(m.cols[0], d(2, &[(1, 2), (3, 4)]));
        for n in 3..=4 {
            let m = transition_matrix(n).unwrap();
            assert_eq!(m.entries.len() as u64, binomial(2 * n as u64 - 1, n as u64));
        }
    }

    #[test]
    fn bases() {
        for (n, r) in [(1, 1), (2, 3), (3, 10)] {
            let c = certify_basis(n).unwrap();
            assert!(c.certified(), "{c:?}");
            assert_eq!(c.expected, r);
        }
    }

    #[test]
    fn span_probe_n2() {
        let report = check_pfafprime_in_span(2).unwrap();
        assert_eq!(report.len(), 6);
        for (dg, r) in &report {
            let coeffs = r.coefficients().unwrap_or_else(|| panic!("{} not in span", dg.key()));
            if dg.edges() == [(2, 3)] {
                assert!(coeffs.iter().all(|c| *c == rat(0)));
            }
        }
    }
}
