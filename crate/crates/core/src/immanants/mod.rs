//! Temperley-Lieb immanants from wiring diagrams, and their relations to
//! minors and to TL-pfaffinants.

mod wiring;

pub use wiring::{inversions, permutations, WiringDiagram};

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagrams::{
    complement, compatible_diagrams, enumerate_sym_tl_even, enumerate_tl, even_subsets, subsets_of_size,
    OrdinaryTLDiagram, SymTLDiagram,
};
use crate::error::{Error, Result};
use crate::exact_poly::{express_in_span, ExactPolynomial, SpanResult};
use crate::pfaffian_core::{complementary_pfaffian, determinant, minor, pfaffian_full, GeneralMatrix, SkewArray};
use crate::pfaffinants::{diagram_pfaffinant, tl_pfaffinant, VerificationReport, DEFAULT_SEED};
use crate::uncross::g_tilde;

/// Largest `n` for which all of `S_n` is uncrossed.
pub const IMMANANT_BOUND: usize = 6;

fn check_n(n: usize) -> Result<()> {
    if n > IMMANANT_BOUND {
        return Err(Error::BoundExceeded { what: "n", got: n, bound: IMMANANT_BOUND });
    }
    Ok(())
}

/// `f_d(w)` for every `w ∈ S_n`, zeros dropped.
#[derive(Debug)]
pub struct ImmanantTable {
    pub n: usize,
    pub rows: Vec<(Vec<usize>, BTreeMap<OrdinaryTLDiagram, i64>)>,
}

impl ImmanantTable {
    pub fn compute(n: usize) -> Result<ImmanantTable> {
        check_n(n)?;
        let rows = permutations(n)
            .into_par_iter()
            .map(|w| {
                let f = WiringDiagram::new(w.clone()).expect("permutation").coefficients();
                (w, f)
            })
            .collect();
        Ok(ImmanantTable { n, rows })
    }

    /// Shared per-process table.
    pub fn cached(n: usize) -> Result<Arc<ImmanantTable>> {
        static MEMO: OnceLock<Mutex<HashMap<usize, Arc<ImmanantTable>>>> = OnceLock::new();
        let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = memo.lock().expect("memo lock").get(&n) {
            return Ok(t.clone());
        }
        let t = Arc::new(ImmanantTable::compute(n)?);
        memo.lock().expect("memo lock").insert(n, t.clone());
        Ok(t)
    }
}

/// `f_d(w)` for every `d ∈ TL_n`, including zeros.
pub fn tl_immanant_coefficient(w: &[usize]) -> Result<BTreeMap<OrdinaryTLDiagram, i64>> {
    check_n(w.len())?;
    let found = WiringDiagram::new(w.to_vec())?.coefficients();
    Ok(enumerate_tl(w.len()).into_iter().map(|d| {
        let v = found.get(&d).copied().unwrap_or(0);
        (d, v)
    }).collect())
}

/// Compares `f_d(w)` computed from two different reduced words for every
/// `w ∈ S_n`; returns the permutations where they disagree.
pub fn check_word_independence(n: usize) -> Result<Vec<Vec<usize>>> {
    check_n(n)?;
    Ok(permutations(n)
        .into_par_iter()
        .filter(|w| {
            let a = WiringDiagram::new(w.clone()).expect("permutation").coefficients();
            let b = WiringDiagram::alternative(w.clone()).expect("permutation").coefficients();
            a != b
        })
        .collect())
}

fn check_square(b: &GeneralMatrix) -> Result<usize> {
    if b.rows() != b.cols() {
        return Err(Error::SizeMismatch(format!("{}x{} matrix is not square", b.rows(), b.cols())));
    }
    Ok(b.rows())
}

fn diagonal_product(b: &GeneralMatrix, w: &[usize]) -> ExactPolynomial {
    w.iter().enumerate().fold(ExactPolynomial::one(), |acc, (i, &j)| &acc * b.get(i + 1, j))
}

/// `Imm_d(B) = Σ_w f_d(w) b_{1,w(1)} ⋯ b_{n,w(n)}`.
pub fn tl_immanant(d: &OrdinaryTLDiagram, b: &GeneralMatrix) -> Result<ExactPolynomial> {
    let n = check_square(b)?;
    if d.n() != n {
        return Err(Error::SizeMismatch(format!("diagram in TL_{} for a {n}x{n} matrix", d.n())));
    }
    let table = ImmanantTable::cached(n)?;
    let mut out = ExactPolynomial::zero();
    for (w, f) in &table.rows {
        if let Some(&c) = f.get(d) {
            out.add_scaled(&diagonal_product(b, w), &BigRational::from_integer(c.into()));
        }
    }
    Ok(out)
}

/// `Imm_d(B)` for every `d ∈ TL_n`.
pub fn tl_immanants(b: &GeneralMatrix) -> Result<BTreeMap<OrdinaryTLDiagram, ExactPolynomial>> {
    let n = check_square(b)?;
    let table = ImmanantTable::cached(n)?;
    let mut out: BTreeMap<OrdinaryTLDiagram, ExactPolynomial> =
        enumerate_tl(n).into_iter().map(|d| (d, ExactPolynomial::zero())).collect();
    for (w, f) in &table.rows {
        let p = diagonal_product(b, w);
        for (d, &c) in f {
            out.get_mut(d).expect("diagram of TL_n").add_scaled(&p, &BigRational::from_integer(c.into()));
        }
    }
    Ok(out)
}

/// Both sides of an identity whose right-hand side sums immanants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImmanantCheck {
    pub lhs: ExactPolynomial,
    pub rhs: ExactPolynomial,
    pub terms: Vec<OrdinaryTLDiagram>,
}

fn compare<T>(what: String, lhs: ExactPolynomial, rhs: ExactPolynomial, terms: Vec<T>) -> Result<(ExactPolynomial, ExactPolynomial, Vec<T>)> {
    let diff = &lhs - &rhs;
    if let Some((m, c)) = diff.leading() {
        return Err(Error::IdentityFailure(format!("{what}: sides differ at {m} by {c}")));
    }
    Ok((lhs, rhs, terms))
}

/// `S = I ∪ {2n+1-j : j ∉ J}`: rows sit on the left side, columns on the right.
pub fn coloring_set(rows: &[usize], cols: &[usize], n: usize) -> Vec<usize> {
    let mut s: Vec<usize> = rows.to_vec();
    s.extend(complement(cols, n).into_iter().map(|j| 2 * n + 1 - j));
    s.sort();
    s
}

/// `Δ_{I,J}(B) Δ_{Ī,J̄}(B) = Σ_{d ∈ 𝒟(S)} Imm_d(B)`.
pub fn verify_imm_decomposition(b: &GeneralMatrix, rows: &[usize], cols: &[usize]) -> Result<ImmanantCheck> {
    let n = check_square(b)?;
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(format!("|I| = {} but |J| = {}", rows.len(), cols.len())));
    }
    let lhs = &minor(b, rows, cols)? * &minor(b, &complement(rows, n), &complement(cols, n))?;
    let s = coloring_set(rows, cols, n);
    let imms = tl_immanants(b)?;
    let mut rhs = ExactPolynomial::zero();
    let mut terms = Vec::new();
    for (d, p) in imms {
        if d.is_compatible(&s) {
            rhs += &p;
            terms.push(d);
        }
    }
    let (lhs, rhs, terms) = compare(format!("immanant decomposition for I = {rows:?}, J = {cols:?}"), lhs, rhs, terms)?;
    Ok(ImmanantCheck { lhs, rhs, terms })
}

/// Every pair `(I, J)` of equal size on a generic `n × n` matrix.
pub fn verify_all_imm_decompositions(n: usize) -> Result<VerificationReport> {
    check_n(n)?;
    let b = GeneralMatrix::symbolic_block(n);
    let mut report = VerificationReport::new("immanant-decomposition", n);
    for k in 0..=n {
        for rows in subsets_of_size(n, k) {
            for cols in subsets_of_size(n, k) {
                report.record(|| format!("I = {rows:?}, J = {cols:?}"), verify_imm_decomposition(&b, &rows, &cols))?;
            }
        }
    }
    Ok(report)
}

fn sign_of_choose2(k: usize) -> i64 {
    if (k * k.saturating_sub(1) / 2).is_multiple_of(2) { 1 } else { -1 }
}

/// For the block array of `B`: `pf_{I,Ī}(A)` vanishes unless `I` is balanced,
/// and otherwise equals `± Δ_{I₁,I₂}(B) Δ_{Ī₁,Ī₂}(B)`.
pub fn verify_block_pfaffian_minor(n: usize) -> Result<VerificationReport> {
    check_n(n)?;
    let b = GeneralMatrix::symbolic_block(n);
    let a = SkewArray::from_block(&b)?;
    let mut report = VerificationReport::new("block-pfaffian-minor", n);
    for set in even_subsets(2 * n) {
        let i1: Vec<usize> = set.iter().copied().filter(|&i| i <= n).collect();
        let i2: Vec<usize> = set.iter().copied().filter(|&i| i > n).map(|i| i - n).collect();
        let lhs = complementary_pfaffian(&a, &set)?;
        let rhs = if i1.len() != i2.len() {
            ExactPolynomial::zero()
        } else {
            let c1 = complement(&i1, n);
            let c2 = complement(&i2, n);
            let sign = sign_of_choose2(i1.len()) * sign_of_choose2(c1.len());
            (&minor(&b, &i1, &i2)? * &minor(&b, &c1, &c2)?).scale_int(sign)
        };
        report.record(|| format!("I = {set:?}"), compare(format!("block pfaffian for I = {set:?}"), lhs, rhs, Vec::<()>::new()))?;
    }
    Ok(report)
}

/// `Pfaf_D(A) = Σ_{D' ∈ S(D)} Σ_d g̃_{D'}(d) Imm_d(B)` for the block array of
/// a generic `B`, checked for one even `D`.
pub fn verify_bridge_for(d: &SymTLDiagram, seed: u64) -> Result<ImmanantCheck> {
    let n = d.n();
    let b = GeneralMatrix::symbolic_block(n);
    let a = SkewArray::from_block(&b)?;
    let lhs = tl_pfaffinant(d, &a)?;
    let closure = d.removal_closure();
    let imms = tl_immanants(&b)?;
    let mut rhs = ExactPolynomial::zero();
    let mut terms = Vec::new();
    for (t, imm) in &imms {
        let g = g_tilde(t, seed)?;
        let c: i64 = closure.iter().filter_map(|sub| g.get(sub)).sum();
        if c != 0 {
            rhs.add_scaled(imm, &BigRational::from_integer(c.into()));
            terms.push(t.clone());
        }
    }
    let (lhs, rhs, terms) = compare(format!("pfaffinant-immanant bridge for {}", d.key()), lhs, rhs, terms)?;
    Ok(ImmanantCheck { lhs, rhs, terms })
}

/// The bridge for every even diagram of size `n ≤ 3`.
pub fn verify_pfaffinant_immanant_bridge(n: usize) -> Result<VerificationReport> {
    if n > 3 {
        return Err(Error::BoundExceeded { what: "n", got: n, bound: 3 });
    }
    let mut report = VerificationReport::new("pfaffinant-immanant-bridge", n);
    for d in enumerate_sym_tl_even(n, 8)? {
        report.record(|| d.key(), verify_bridge_for(&d, DEFAULT_SEED))?;
    }
    Ok(report)
}

/// `pf(A)² = det(A)` and `pf_{I,Ī}(A)² = Δ_{I,I}(A) Δ_{Ī,Ī}(A)` for the generic
/// `2n × 2n` skew array.
pub fn verify_pfaffian_square(n: usize) -> Result<VerificationReport> {
    let a = SkewArray::symbolic(n);
    let m = GeneralMatrix::from_skew(&a);
    let mut report = VerificationReport::new("pfaffian-square", n);
    let full = pfaffian_full(&a)?;
    report.record(|| "pf^2 = det".into(), compare("pf^2 = det".into(), full.pow(2), determinant(&m)?, Vec::<()>::new()))?;
    for set in even_subsets(2 * n) {
        let comp = complement(&set, 2 * n);
        let lhs = complementary_pfaffian(&a, &set)?.pow(2);
        let rhs = &minor(&m, &set, &set)? * &minor(&m, &comp, &comp)?;
        report.record(|| format!("I = {set:?}"), compare(format!("squared pfaffian for I = {set:?}"), lhs, rhs, Vec::<()>::new()))?;
    }
    Ok(report)
}

/// `(Σ_{D ∈ 𝒟(I)} Pfaf'_D(A))² = Σ_{d ∈ 𝒟(S)} Imm_d(A)` with `S = I ∪ (Î)^∧`,
/// the immanants taken of `A` itself as a `2n × 2n` matrix.
pub fn verify_squared_decomposition(n: usize, set: &[usize]) -> Result<ImmanantCheck> {
    let a = SkewArray::symbolic(n);
    let mut sum = ExactPolynomial::zero();
    for d in compatible_diagrams(set, n)? {
        sum += &diagram_pfaffinant(&d, &a)?;
    }
    let m = GeneralMatrix::from_skew(&a);
    let s = coloring_set(set, set, 2 * n);
    let mut rhs = ExactPolynomial::zero();
    let mut terms = Vec::new();
    for (d, p) in tl_immanants(&m)? {
        if d.is_compatible(&s) {
            rhs += &p;
            terms.push(d);
        }
    }
    let (lhs, rhs, terms) = compare(format!("squared decomposition for I = {set:?}"), sum.pow(2), rhs, terms)?;
    Ok(ImmanantCheck { lhs, rhs, terms })
}

/// Degree-two products of `Pfaf_L, Pfaf_M, Pfaf_N`, in the order
/// `L², LM, LN, M², MN, N²`.
pub const QUADRATIC_LABELS: [&str; 6] = ["L^2", "L*M", "L*N", "M^2", "M*N", "N^2"];

/// The published coefficients of `L², LM, LN, M², MN, N²` for eight of the
/// immanants, by the diagram's edges.
pub const PRINTED_QUADRATIC_TABLE: [(&[(usize, usize)], [i64; 6]); 8] = [
    (&[(4, 5), (3, 6), (2, 7), (1, 8)], [1, 0, 0, 0, 0, 0]),
    (&[(1, 2), (4, 5), (3, 6), (7, 8)], [-1, 0, 0, 0, 0, 0]),
    (&[(1, 2), (4, 5), (6, 7), (3, 8)], [0, -1, 0, 0, 0, 0]),
    (&[(1, 2), (5, 6), (4, 7), (3, 8)], [-1, 0, -1, 0, 0, 0]),
    (&[(2, 3), (4, 5), (6, 7), (1, 8)], [0, 2, 0, 0, 0, 0]),
    (&[(2, 3), (1, 4), (6, 7), (5, 8)], [0, 0, 0, 1, 0, 0]),
    (&[(1, 2), (3, 4), (6, 7), (5, 8)], [1, 1, 1, 0, 1, 0]),
    (&[(1, 2), (3, 4), (5, 6), (7, 8)], [2, 0, 2, 0, 0, 1]),
];

/// One immanant of the generic skew `4 × 4` matrix written in products of
/// TL-pfaffinants, under the computed and the printed values of `L, M, N`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadraticRow {
    pub diagram: String,
    pub computed: Option<Vec<String>>,
    pub printed: Option<Vec<String>>,
}

fn products(l: &ExactPolynomial, m: &ExactPolynomial, n: &ExactPolynomial) -> Vec<ExactPolynomial> {
    vec![l * l, l * m, l * n, m * m, m * n, n * n]
}

fn span_strings(r: SpanResult) -> Option<Vec<String>> {
    r.coefficients().map(|c| c.iter().map(|x| x.to_string()).collect())
}

/// `L, M, N` as printed for the empty diagram, `{(1,4),(2,3)}` and `{(1,2),(3,4)}`.
pub fn printed_lmn() -> [ExactPolynomial; 3] {
    let p = |s: &str| s.parse::<ExactPolynomial>().expect("literal polynomial");
    [
        p("a[1,2]*a[3,4] + a[1,4]*a[2,3] - a[1,3]*a[2,4]"),
        p("a[1,3]*a[2,4] - a[1,4]*a[2,3]"),
        p("a[1,3]*a[2,4] - a[1,2]*a[3,4]"),
    ]
}

/// `L, M, N` from [`tl_pfaffinant`].
pub fn computed_lmn() -> Result<[ExactPolynomial; 3]> {
    let a = SkewArray::symbolic(2);
    let d = |e: &[(usize, usize)]| SymTLDiagram::new(2, e.to_vec());
    Ok([
        tl_pfaffinant(&d(&[])?, &a)?,
        tl_pfaffinant(&d(&[(1, 4), (2, 3)])?, &a)?,
        tl_pfaffinant(&d(&[(1, 2), (3, 4)])?, &a)?,
    ])
}

/// Every `Imm_d(A)`, `d ∈ TL_4`, `A` generic skew `4 × 4`, expressed in the
/// six products.
pub fn quadratic_relation_table() -> Result<Vec<QuadraticRow>> {
    let a = SkewArray::symbolic(2);
    let [l, m, n] = computed_lmn()?;
    let ours = products(&l, &m, &n);
    let [l, m, n] = printed_lmn();
    let theirs = products(&l, &m, &n);
    Ok(tl_immanants(&GeneralMatrix::from_skew(&a))?
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(d, p)| QuadraticRow {
            diagram: d.key(),
            computed: span_strings(express_in_span(&p, &ours)),
            printed: span_strings(express_in_span(&p, &theirs)),
        })
        .collect())
}

/// The immanant of the generic skew `6 × 6` matrix for
/// `{(1,12),(2,3),(4,5),(6,7),(8,9),(10,11)}` against all products of two
/// TL-pfaffinants of size 3.
pub fn non_span_witness() -> Result<SpanResult> {
    let a = SkewArray::symbolic(3);
    let d = OrdinaryTLDiagram::new(6, vec![(1, 12), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11)])?;
    let target = tl_immanant(&d, &GeneralMatrix::from_skew(&a))?;
    let pf: Vec<ExactPolynomial> = enumerate_sym_tl_even(3, 8)?
        .iter()
        .map(|e| tl_pfaffinant(e, &a))
        .collect::<Result<_>>()?;
    let mut gens = Vec::new();
    for i in 0..pf.len() {
        for j in i..pf.len() {
            gens.push(&pf[i] * &pf[j]);
        }
    }
    Ok(express_in_span(&target, &gens))
}
