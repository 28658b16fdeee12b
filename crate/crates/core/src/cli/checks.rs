use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagrams::{
    binomial, enumerate_matchings, enumerate_sym_tl, enumerate_tl, even_subsets, Matching, OrdinaryTLDiagram, SymTLDiagram,
    DEFAULT_DIAGRAM_BOUND, DEFAULT_MATCHING_BOUND,
};
use crate::error::Result;
use crate::exact_poly::ExactPolynomial;
use crate::immanants::{
    check_word_independence, non_span_witness, quadratic_relation_table, PRINTED_QUADRATIC_TABLE, verify_all_imm_decompositions,
    verify_block_pfaffian_minor, verify_pfaffian_square, verify_pfaffinant_immanant_bridge,
};
use crate::networks::{
    construct_network_of_diagram, hat_pfaf_prime_all, marked_subnetworks, path_weight_matrix, q_i_weight,
    random_grid, Network, DEFAULT_FAMILY_BOUND,
};
use crate::pfaffian_core::{complementary_pfaffian, pfaffian_full, SkewArray};
use crate::pfaffinants::{
    boolean_cone_check, certify_basis, transition_matrix, verify_diagram_decomposition, verify_tl_decomposition,
    Parity, PfaffinantFunctional, VerificationReport,
};
use crate::schur_q::{
    generator_monomial_check, max_strict_length, padded_parts, q_jt_matrix_with, schur_q, skew_shapes_up_to,
    strict_partitions_up_to, verify_min_difference_q, HBlock,
};
use crate::uncross::{enumerate_uncrossings, f_coefficient, g_coefficient, ChordMap, DEFAULT_CLASS_BOUND};

/// Resolved parameters of one check.
#[derive(Clone, Debug)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub bound: usize,
    pub seed: u64,
    pub cache: Option<PathBuf>,
}

fn tick(r: &mut VerificationReport, case: impl FnOnce() -> String, ok: bool) {
    r.cases += 1;
    if !ok {
        r.failures.push(case());
    }
}

fn absorb(r: &mut VerificationReport, sub: VerificationReport) {
    r.cases += sub.cases;
    r.failures.extend(sub.failures.into_iter().map(|f| format!("n = {}: {f}", sub.n)));
}

pub(crate) fn sym_tl_counts(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("sym-tl-counts", p.n);
    for n in 1..=p.n {
        let all = enumerate_sym_tl(n, DEFAULT_DIAGRAM_BOUND)?;
        let even = all.iter().filter(|d| d.is_even()).count();
        let (want, want_even) = (binomial(2 * n as u64, n as u64), binomial(2 * n as u64 - 1, n as u64));
        tick(
            &mut r,
            || format!("n = {n}: {} diagrams ({even} even), expected {want} ({want_even})", all.len()),
            all.len() as u64 == want && even as u64 == want_even,
        );
    }
    Ok(r)
}

/// `f_D({(1,4),(2,3)})` for `n = 2`.
pub fn nested_pair_expected() -> BTreeMap<String, i64> {
    [("V[]", 1), ("V[(1,2)]", -1), ("V[(3,4)]", -1), ("V[(1,2)(3,4)]", 2), ("V[(1,4)(2,3)]", -1)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

pub(crate) fn nested_pair_table(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("nested-pair-table", 2);
    let pi = Matching::new(2, vec![(1, 4), (2, 3)])?;
    for seed in [p.seed, p.seed + 1] {
        let count = enumerate_uncrossings(&ChordMap::embed_nu_pi(&pi, seed), DEFAULT_CLASS_BOUND)?.len();
        tick(&mut r, || format!("seed {seed}: {count} uncrossings, expected 16"), count == 16);
        let got: BTreeMap<String, i64> = f_coefficient(&pi, seed)?.into_iter().map(|(d, w)| (d.key(), w)).collect();
        tick(&mut r, || format!("seed {seed}: table {got:?}"), got == nested_pair_expected());
    }
    Ok(r)
}

pub(crate) fn embedding_independence(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("embedding-independence", p.n);
    let seeds = [p.seed, p.seed + 1];
    for n in 1..=p.n {
        for pi in enumerate_matchings(n, DEFAULT_MATCHING_BOUND)? {
            let a = f_coefficient(&pi, seeds[0])?;
            let b = f_coefficient(&pi, seeds[1])?;
            tick(&mut r, || format!("f for {}", pi.key()), a == b);
        }
        for d in enumerate_tl(n) {
            let a = g_coefficient(&d, seeds[0])?;
            let b = g_coefficient(&d, seeds[1])?;
            tick(&mut r, || format!("g for {}", d.key()), a == b);
        }
    }
    Ok(r)
}

/// All even `I` up to `n = 3`, a seeded sample of `bound` of them beyond.
fn decomposition_sets(n: usize, seed: u64, bound: usize) -> Vec<Vec<usize>> {
    let all = even_subsets(2 * n);
    if n <= 3 || bound >= all.len() {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = sample(&mut rng, all.len(), bound).into_vec();
    picked.sort();
    picked.into_iter().map(|i| all[i].clone()).collect()
}

fn decomposition(p: &Params, tl: bool) -> Result<VerificationReport> {
    let name = if tl { "tl-decomposition" } else { "diagram-decomposition" };
    let mut r = VerificationReport::new(name, p.n);
    for n in 1..=p.n {
        let a = SkewArray::symbolic(n);
        // warm the coefficient tables once, honouring the cache directory
        PfaffinantFunctional::of_diagram_with(&SymTLDiagram::horizontal(n), crate::pfaffinants::DEFAULT_SEED, p.cache.as_deref())?;
        let outcomes: Vec<(Vec<usize>, Result<()>)> = decomposition_sets(n, p.seed, p.bound)
            .into_par_iter()
            .map(|set| {
                let out = if tl { verify_tl_decomposition(&a, &set) } else { verify_diagram_decomposition(&a, &set) };
                (set, out.map(|_| ()))
            })
            .collect();
        for (set, out) in outcomes {
            r.record(|| format!("n = {n}, I = {set:?}"), out)?;
        }
    }
    Ok(r)
}

pub(crate) fn diagram_decomposition(p: &Params) -> Result<VerificationReport> {
    decomposition(p, false)
}

pub(crate) fn tl_decomposition(p: &Params) -> Result<VerificationReport> {
    decomposition(p, true)
}

pub(crate) fn transition_triangular(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("transition-triangular", p.n);
    for n in 1..=p.n {
        r.record(|| format!("n = {n}"), transition_matrix(n))?;
    }
    Ok(r)
}

pub(crate) fn tl_basis(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("tl-basis", p.n);
    for n in 1..=p.n {
        let c = certify_basis(n)?;
        tick(
            &mut r,
            || format!("n = {n}: rank {} of {} TL-pfaffinants, expected {}", c.tl_rank, c.tl_count, c.expected),
            c.certified(),
        );
    }
    Ok(r)
}

fn networks_for(p: &Params) -> Vec<(String, Network)> {
    let mut out = Vec::new();
    for n in 1..=p.n {
        for d in enumerate_sym_tl(n, DEFAULT_DIAGRAM_BOUND).expect("n within the diagram bound") {
            out.push((format!("N({})", d.key()), construct_network_of_diagram(&d)));
        }
    }
    for i in 0..p.bound as u64 {
        let seed = p.seed + i;
        out.push((format!("grid seed {seed}"), random_grid(2, 3, seed, 0.8, true)));
    }
    out
}

pub(crate) fn network_type(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("network-type", p.n);
    for n in 1..=p.n {
        for d in enumerate_sym_tl(n, DEFAULT_DIAGRAM_BOUND)? {
            let subs = marked_subnetworks(&construct_network_of_diagram(&d), DEFAULT_FAMILY_BOUND)?;
            tick(&mut r, || format!("N({})", d.key()), subs.len() == 1 && subs[0].diagram == d);
        }
    }
    Ok(r)
}

pub(crate) fn stembridge_paths(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("stembridge-paths", p.n);
    for (name, net) in networks_for(p) {
        let a = path_weight_matrix(&net);
        for set in even_subsets(2 * net.n()) {
            let ok = q_i_weight(&net, &set)? == complementary_pfaffian(&a, &set)?;
            tick(&mut r, || format!("{name}, I = {set:?}"), ok);
        }
    }
    Ok(r)
}

/// `Pfaf_D(A(N)) = hatPfaf_D(N)` for every even `D`, together with the
/// decomposition of every `pf_{I,Ī}(A(N))` over `𝒟(I)`.
pub fn network_identities(net: &Network, name: &str, r: &mut VerificationReport) -> Result<()> {
    let a = path_weight_matrix(net);
    let hat = hat_pfaf_prime_all(net)?;
    let n = net.n();
    let sum_over = |ds: &[SymTLDiagram]| {
        let mut s = ExactPolynomial::zero();
        for d in ds {
            if let Some(v) = hat.get(d) {
                s += v;
            }
        }
        s
    };
    for d in enumerate_sym_tl(n, DEFAULT_DIAGRAM_BOUND)?.into_iter().filter(|d| d.is_even()) {
        let lhs = PfaffinantFunctional::of_tl_diagram(&d)?.evaluate(&a)?;
        tick(r, || format!("{name}: Pfaf for {}", d.key()), lhs == sum_over(&d.removal_closure()));
    }
    for set in even_subsets(2 * n) {
        let lhs = complementary_pfaffian(&a, &set)?;
        tick(r, || format!("{name}: decomposition for I = {set:?}"), lhs == sum_over(&crate::diagrams::compatible_diagrams(&set, n)?));
    }
    Ok(())
}

pub(crate) fn network_equality(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("network-equality", p.n);
    for (name, net) in networks_for(p) {
        network_identities(&net, &name, &mut r)?;
    }
    Ok(r)
}

/// The generators of the rank-three boolean cone, then the integer extras.
pub const BOOLEAN_CONE_GENERATORS: [[i64; 4]; 9] = [
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, -1, -1, 1],
    [1, -1, 1, -1],
    [1, 1, -1, -1],
    [1, -1, 0, 0],
    [1, 0, -1, 0],
    [1, 0, 0, -1],
];

pub(crate) fn boolean_cone(_: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("boolean-cone", 3);
    for v in BOOLEAN_CONE_GENERATORS {
        tick(&mut r, || format!("{v:?} should lie in the cone"), boolean_cone_check(3, Parity::Odd, &v)?);
    }
    tick(&mut r, || "(0,-1,0,0) should not lie in the cone".into(), !boolean_cone_check(3, Parity::Odd, &[0, -1, 0, 0])?);
    Ok(r)
}

fn per_n(p: &Params, name: &str, f: fn(usize) -> Result<VerificationReport>) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(name, p.n);
    for n in 1..=p.n {
        absorb(&mut r, f(n)?);
    }
    Ok(r)
}

pub(crate) fn immanant_decomposition(p: &Params) -> Result<VerificationReport> {
    per_n(p, "immanant-decomposition", verify_all_imm_decompositions)
}

pub(crate) fn block_pfaffian_minor(p: &Params) -> Result<VerificationReport> {
    per_n(p, "block-pfaffian-minor", verify_block_pfaffian_minor)
}

pub(crate) fn pfaffinant_immanant_bridge(p: &Params) -> Result<VerificationReport> {
    per_n(p, "pfaffinant-immanant-bridge", verify_pfaffinant_immanant_bridge)
}

pub(crate) fn pfaffian_square(p: &Params) -> Result<VerificationReport> {
    per_n(p, "pfaffian-square", verify_pfaffian_square)
}

pub(crate) fn reduced_word_independence(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("reduced-word-independence", p.n);
    for n in 1..=p.n {
        let bad = check_word_independence(n)?;
        tick(&mut r, || format!("n = {n}: words disagree for {bad:?}"), bad.is_empty());
    }
    Ok(r)
}

pub(crate) fn quadratic_relations(_: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("quadratic-relations", 2);
    let rows = quadratic_relation_table()?;
    for (edges, published) in PRINTED_QUADRATIC_TABLE {
        let key = OrdinaryTLDiagram::new(4, edges.to_vec())?.key();
        let want: Vec<String> = published.iter().map(|c| c.to_string()).collect();
        let got = rows.iter().find(|row| row.diagram == key).and_then(|row| row.printed.clone());
        tick(&mut r, || format!("{key}: published {want:?}, computed {got:?}"), got.as_ref() == Some(&want));
    }
    Ok(r)
}

pub(crate) fn immanant_non_span(_: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("immanant-non-span", 3);
    tick(&mut r, || "witness lies in the span".into(), non_span_witness()?.coefficients().is_none());
    Ok(r)
}

fn sign_of_choose2(r: usize) -> i64 {
    if (r * r.saturating_sub(1) / 2).is_multiple_of(2) { 1 } else { -1 }
}

pub(crate) fn q_jacobi_trudi(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("q-jacobi-trudi", p.bound);
    let k = p.k;
    let outcomes: Vec<(String, bool, bool)> = skew_shapes_up_to(p.bound)
        .into_par_iter()
        .map(|shape| {
            let q = schur_q(&shape, k)?;
            let a = q_jt_matrix_with(shape.outer(), shape.inner(), false, k, HBlock::Reversed)?;
            let b = q_jt_matrix_with(shape.outer(), shape.inner(), false, k, HBlock::Direct)?;
            let rr = padded_parts(shape.outer(), shape.inner()).1.len();
            let direct = pfaffian_full(&b)?.scale_int(sign_of_choose2(rr));
            Ok((shape.to_string(), pfaffian_full(&a)? == q, direct == q))
        })
        .collect::<Result<_>>()?;
    for (shape, plain, signed) in outcomes {
        tick(&mut r, || format!("{shape}: pfaffian formula"), plain);
        tick(&mut r, || format!("{shape}: sign variant"), signed);
    }
    Ok(r)
}

pub(crate) fn generator_monomial_positivity(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("generator-monomial-positivity", p.n);
    for rec in generator_monomial_check(p.n, p.bound)? {
        tick(&mut r, || format!("{} on {}: {:?}", rec.diagram, rec.shape, rec.coefficients), rec.nonnegative);
    }
    Ok(r)
}

pub(crate) fn min_difference_q(p: &Params) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("min-difference-q", p.bound);
    let parts = strict_partitions_up_to(p.bound);
    let mut pairs = Vec::new();
    for a in &parts {
        for b in &parts {
            let d = a.iter().sum::<usize>() + b.iter().sum::<usize>();
            if d <= p.bound {
                pairs.push((a.clone(), b.clone(), max_strict_length(d).max(1)));
            }
        }
    }
    let outcomes: Vec<(String, Result<()>)> = pairs
        .into_par_iter()
        .map(|(a, b, k)| (format!("{a:?} and {b:?}"), verify_min_difference_q(&a, &b, k).map(|_| ())))
        .collect();
    for (case, out) in outcomes {
        r.record(|| case, out)?;
    }
    Ok(r)
}
