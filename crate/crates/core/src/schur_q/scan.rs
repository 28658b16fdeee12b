use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::expand::{expand_in_q_basis, monomial_expand, MonomialExpansion, QExpansion};
use super::jt::q_jt_matrix;
use super::shapes::{
    is_strict, join_meet, max_strict_length, render_partition, skew_shapes_up_to, sort_split, strict_partitions_up_to,
    SkewShiftedShape,
};
use super::tableaux::{q_pair, schur_q};
use crate::diagrams::{complement, enumerate_sym_tl, SymTLDiagram};
use crate::error::{Error, Result};
use crate::exact_poly::ExactPolynomial;
use crate::pfaffian_core::{complementary_pfaffian, min_partition, SkewArray};
use crate::pfaffinants::diagram_pfaffinant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Positive,
    Counterexample,
    NotInQSpan,
}

/// One scanned instance, written as a JSON line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub conjecture: String,
    pub instance: String,
    pub verdict: Verdict,
    pub k: usize,
    pub expansion: BTreeMap<String, String>,
}

/// Counts of each verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub instances: usize,
    pub positive: usize,
    pub counterexamples: usize,
    pub not_in_q_span: usize,
}

pub fn summarize(records: &[ScanRecord]) -> ScanSummary {
    let mut s = ScanSummary { instances: records.len(), ..ScanSummary::default() };
    for r in records {
        match r.verdict {
            Verdict::Positive => s.positive += 1,
            Verdict::Counterexample => s.counterexamples += 1,
            Verdict::NotInQSpan => s.not_in_q_span += 1,
        }
    }
    s
}

pub fn write_jsonl<W: Write>(records: &[ScanRecord], mut out: W) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

fn classify(expansion: &QExpansion) -> Verdict {
    if expansion.has_remainder() {
        Verdict::NotInQSpan
    } else if expansion.is_nonnegative() {
        Verdict::Positive
    } else {
        Verdict::Counterexample
    }
}

/// Expands `build(k)` in the fewest faithful variables; a negative
/// coefficient is rechecked with one more variable before it is reported.
fn judge<F>(conjecture: &str, instance: String, degree: usize, build: F) -> Result<ScanRecord>
where
    F: Fn(usize) -> Result<ExactPolynomial>,
{
    let k = max_strict_length(degree).max(1);
    let mut expansion = expand_in_q_basis(&build(k)?, k, degree)?;
    let mut verdict = classify(&expansion);
    if verdict == Verdict::Counterexample {
        expansion = expand_in_q_basis(&build(k + 1)?, k + 1, degree)?;
        verdict = classify(&expansion);
    }
    Ok(ScanRecord { conjecture: conjecture.to_string(), instance, verdict, k: expansion.k, expansion: expansion.rendered() })
}

/// `Q_{a∨b} Q_{a∧b} - Q_a Q_b`.
pub fn cell_transfer_difference(a: &SkewShiftedShape, b: &SkewShiftedShape, k: usize) -> Result<ExactPolynomial> {
    let (join, meet) = join_meet(a, b)?;
    Ok(&(&schur_q(&join, k)? * &schur_q(&meet, k)?) - &(&schur_q(a, k)? * &schur_q(b, k)?))
}

/// `Q_{sort₁(λ,μ)} Q_{sort₂(λ,μ)} - Q_λ Q_μ`.
pub fn sort_difference(lambda: &[usize], mu: &[usize], k: usize) -> Result<ExactPolynomial> {
    let (s1, s2) = sort_split(lambda, mu)?;
    let q = |p: &[usize]| schur_q(&SkewShiftedShape::straight(p)?, k);
    Ok(&(&q(&s1)? * &q(&s2)?) - &(&q(lambda)? * &q(mu)?))
}

/// Cell transfer over unordered pairs of skew shifted shapes with `|λ| + |ν| ≤ bound`.
pub fn scan_cell_transfer(bound: usize) -> Result<Vec<ScanRecord>> {
    let shapes = skew_shapes_up_to(bound);
    let mut pairs = Vec::new();
    for (i, a) in shapes.iter().enumerate() {
        for b in &shapes[i..] {
            if a.outer().iter().sum::<usize>() + b.outer().iter().sum::<usize>() <= bound {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    pairs
        .into_par_iter()
        .map(|(a, b)| {
            judge("con2", format!("{a} | {b}"), a.size() + b.size(), |k| cell_transfer_difference(&a, &b, k))
        })
        .collect()
}

/// Sorting over unordered pairs of strict partitions with `|λ| + |μ| ≤ bound`.
pub fn scan_sort(bound: usize) -> Result<Vec<ScanRecord>> {
    let parts = strict_partitions_up_to(bound);
    let mut pairs = Vec::new();
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i..] {
            if a.iter().sum::<usize>() + b.iter().sum::<usize>() <= bound {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    pairs
        .into_par_iter()
        .map(|(a, b)| {
            let degree = a.iter().sum::<usize>() + b.iter().sum::<usize>();
            judge("con3", format!("{} | {}", render_partition(&a), render_partition(&b)), degree, |k| sort_difference(&a, &b, k))
        })
        .collect()
}

/// Weakly decreasing lists of `len` parts in `lo..=hi` with sum at most `budget`.
fn weak_lists(len: usize, hi: usize, lo: usize, budget: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, max: usize, lo: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for p in lo..=max.min(budget) {
            cur.push(p);
            rec(len, p, lo, budget - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, hi, lo, budget, &mut Vec::new(), &mut out);
    out
}

/// Pairs `(λ, μ)` of weakly decreasing lists with `l + r = 2n`, `r ≤ l`,
/// positive parts of `λ`, `0 ≤ μ_i ≤ λ_i` and `|λ| ≤ bound`.
pub fn generalized_shapes(n: usize, bound: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for l in n..=2 * n {
        let r = 2 * n - l;
        for lambda in weak_lists(l, bound, 1, bound) {
            for mu in weak_lists(r, bound, 0, bound) {
                if mu.iter().zip(&lambda).all(|(m, l)| m <= l) {
                    out.push((lambda.clone(), mu));
                }
            }
        }
    }
    out
}

/// `Pfaf'_D(A_{λ/μ})` for every `D ∈ 𝒯_n` over the generalized Jacobi-Trudi
/// matrices of [`generalized_shapes`].
pub fn scan_con1(n: usize, bound: usize) -> Result<Vec<ScanRecord>> {
    let diagrams: Vec<SymTLDiagram> = enumerate_sym_tl(n, 8)?;
    let mut cases = Vec::new();
    for (lambda, mu) in generalized_shapes(n, bound) {
        for d in &diagrams {
            cases.push((lambda.clone(), mu.clone(), d.clone()));
        }
    }
    cases
        .into_par_iter()
        .map(|(lambda, mu, d)| {
            let degree = lambda.iter().sum::<usize>() - mu.iter().sum::<usize>();
            let tag = if is_strict(&lambda) && is_strict(&mu) { "" } else { " (generalized)" };
            let instance = format!("{} on {}/{}{tag}", d.key(), render_partition(&lambda), render_partition(&mu));
            judge("con1", instance, degree, |k| diagram_pfaffinant(&d, &q_jt_matrix(&lambda, &mu, true, k)?))
        })
        .collect()
}

/// Both sides of the min-partition identity for `μ = ρ = ∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDifference {
    pub merged: Vec<usize>,
    pub set: Vec<usize>,
    pub min_set: Vec<usize>,
    pub pfaffian_side: ExactPolynomial,
    pub cell_transfer_side: ExactPolynomial,
}

/// `pf_{min(I,Ī)}(A_π) - pf_{I,Ī}(A_π) = Q_{λ∨ν} Q_{λ∧ν} - Q_λ Q_ν`, where `π`
/// merges the (zero-padded to even length) parts of `λ` and `ν` and `I` holds
/// the positions of `λ`'s parts.
pub fn verify_min_difference_q(lambda: &[usize], nu: &[usize], k: usize) -> Result<MinDifference> {
    let pad = |p: &[usize]| -> Result<Vec<usize>> {
        if !is_strict(p) {
            return Err(Error::InvalidShape(format!("{p:?} is not strict")));
        }
        let mut v: Vec<usize> = p.iter().copied().filter(|&x| x > 0).collect();
        if v.len() % 2 == 1 {
            v.push(0);
        }
        Ok(v)
    };
    let (pl, pn) = (pad(lambda)?, pad(nu)?);
    let mut tagged: Vec<(usize, bool)> = pl.iter().map(|&p| (p, true)).chain(pn.iter().map(|&p| (p, false))).collect();
    tagged.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    let merged: Vec<usize> = tagged.iter().map(|t| t.0).collect();
    let set: Vec<usize> = tagged.iter().enumerate().filter(|(_, t)| t.1).map(|(i, _)| i + 1).collect();
    let a = SkewArray::from_fn(merged.len(), |i, j| q_pair(merged[i - 1], merged[j - 1], k));
    let half = merged.len() / 2;
    // pf_{I,Ī} is symmetric in I and Ī; min(I, Ī) wants the larger side
    let larger = if set.len() >= half { set.clone() } else { complement(&set, merged.len()) };
    let min_set = min_partition(&larger, half)?;
    let pfaffian_side = &complementary_pfaffian(&a, &min_set)? - &complementary_pfaffian(&a, &set)?;
    let (ls, ns) = (SkewShiftedShape::straight(lambda)?, SkewShiftedShape::straight(nu)?);
    let cell_transfer_side = cell_transfer_difference(&ls, &ns, k)?;
    if pfaffian_side != cell_transfer_side {
        return Err(Error::IdentityFailure(format!(
            "min-partition difference for {} and {}: {} vs {}",
            render_partition(lambda),
            render_partition(nu),
            pfaffian_side,
            cell_transfer_side
        )));
    }
    Ok(MinDifference { merged, set, min_set, pfaffian_side, cell_transfer_side })
}

/// `Pfaf'_D(A_{λ/μ})` in the `m_λ` basis for one diagram and one strict shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorRecord {
    pub diagram: String,
    pub shape: String,
    pub nonnegative: bool,
    pub coefficients: BTreeMap<String, String>,
}

/// Monomial expansions of every `Pfaf'_D(A_{λ/μ})`, `D ∈ 𝒯_n`, over strict
/// `λ ⊇ μ` with `l + r = 2n` (`μ` may end in one zero part) and `|λ| ≤ bound`,
/// in as many variables as the degree.
pub fn generator_monomial_check(n: usize, bound: usize) -> Result<Vec<GeneratorRecord>> {
    let diagrams: Vec<SymTLDiagram> = enumerate_sym_tl(n, 8)?;
    let mut cases = Vec::new();
    for (lambda, mu) in generalized_shapes(n, bound) {
        let zeros = mu.iter().filter(|&&m| m == 0).count();
        if !is_strict(&lambda) || !is_strict(&mu) || zeros > 1 {
            continue;
        }
        for d in &diagrams {
            cases.push((lambda.clone(), mu.clone(), d.clone()));
        }
    }
    cases
        .into_par_iter()
        .map(|(lambda, mu, d)| {
            let k = (lambda.iter().sum::<usize>() - mu.iter().sum::<usize>()).max(1);
            let f = diagram_pfaffinant(&d, &q_jt_matrix(&lambda, &mu, false, k)?)?;
            let expansion = monomial_expand(&f, k);
            let coefficients = match &expansion {
                MonomialExpansion::Coefficients(c) => c.iter().map(|(l, v)| (render_partition(l), v.to_string())).collect(),
                MonomialExpansion::NotSymmetric => BTreeMap::new(),
            };
            Ok(GeneratorRecord {
                diagram: d.key(),
                shape: format!("{}/{}", render_partition(&lambda), render_partition(&mu)),
                nonnegative: expansion.is_nonnegative(),
                coefficients,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_differences() {
        for shape in skew_shapes_up_to(4) {
            assert!(cell_transfer_difference(&shape, &shape, 3).unwrap().is_zero());
        }
        assert!(sort_difference(&[3, 1], &[2], 3).unwrap().is_zero());
        let recs = scan_sort(4).unwrap();
        let zero = recs.iter().find(|r| r.instance == "(3,1) | (2)");
        assert!(zero.is_none() || zero.unwrap().expansion.is_empty());
    }

    #[test]
    fn small_scans_are_positive() {
        for recs in [scan_cell_transfer(6).unwrap(), scan_sort(6).unwrap()] {
            let s = summarize(&recs);
            assert_eq!(s.positive, s.instances);
        }
        let mut buf = Vec::new();
        write_jsonl(&scan_sort(2).unwrap(), &mut buf).unwrap();
        let line: ScanRecord = serde_json::from_str(String::from_utf8(buf).unwrap().lines().next().unwrap()).unwrap();
        assert_eq!(line.conjecture, "con3");
    }

    #[test]
    fn min_difference_examples() {
        assert!(verify_min_difference_q(&[2], &[1], 3).unwrap().pfaffian_side.is_zero());
        let r = verify_min_difference_q(&[3], &[2, 1], 3).unwrap();
        assert!(!r.pfaffian_side.is_zero());
        assert_eq!(r.merged, vec![3, 2, 1, 0]);
        assert!(verify_min_difference_q(&[3, 1], &[3, 1], 4).unwrap().pfaffian_side.is_zero());
        verify_min_difference_q(&[], &[2, 1], 3).unwrap();
    }

    #[test]
    fn min_difference_sweep() {
        let parts = strict_partitions_up_to(8);
        for a in &parts {
            for b in &parts {
                let d = a.iter().sum::<usize>() + b.iter().sum::<usize>();
                if d <= 8 {
                    verify_min_difference_q(a, b, max_strict_length(d).max(1)).unwrap();
                }
            }
        }
    }
}
