use super::checks::{self, Params};
use crate::pfaffinants::VerificationReport;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Check,
    Scan,
    Table,
}

pub type CheckFn = fn(&Params) -> Result<VerificationReport>;

/// One verification check, scan or table. `aliases` holds the short
/// identifiers also accepted on the command line.
#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub kind: Kind,
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
    /// Default and largest `--n`.
    pub n: (usize, usize),
    /// Default and largest `--bound`.
    pub bound: (usize, usize),
    pub k: usize,
    pub run: Option<CheckFn>,
}

const fn check(
    name: &'static str,
    aliases: &'static [&'static str],
    summary: &'static str,
    n: (usize, usize),
    bound: (usize, usize),
    run: CheckFn,
) -> Entry {
    Entry { kind: Kind::Check, name, aliases, summary, n, bound, k: 4, run: Some(run) }
}

const fn other(
    kind: Kind,
    name: &'static str,
    aliases: &'static [&'static str],
    summary: &'static str,
    n: (usize, usize),
    bound: (usize, usize),
) -> Entry {
    Entry { kind, name, aliases, summary, n, bound, k: 4, run: None }
}

pub const REGISTRY: &[Entry] = &[
    check("sym-tl-counts", &["prop-2.3"], "|T_n| = C(2n,n) and |T^e_n| = C(2n-1,n) for n = 1..N", (8, 8), (0, 0), checks::sym_tl_counts),
    check("nested-pair-table", &["ex-2.5"], "f_D({(1,4),(2,3)}) and the 16 uncrossings, for two seeds", (2, 2), (0, 0), checks::nested_pair_table),
    check("embedding-independence", &["thm-2.4"], "f_D and g_D agree across two embeddings", (3, 3), (0, 0), checks::embedding_independence),
    check("diagram-decomposition", &["thm-2.6"], "pf_{I,Ī} = sum of Pfaf'_D over I-compatible D (sampled I beyond n = 3)", (3, 4), (24, 35), checks::diagram_decomposition),
    check("tl-decomposition", &["thm-2.12"], "pf_{I,Ī} = sum of Pfaf_D over I-maximal D (sampled I beyond n = 3)", (3, 4), (24, 35), checks::tl_decomposition),
    check("transition-triangular", &["prop-2.16"], "transition matrix is unit upper triangular", (4, 4), (0, 0), checks::transition_triangular),
    check("tl-basis", &["thm-2.17"], "TL-pfaffinants have rank C(2n-1,n)", (4, 4), (0, 0), checks::tl_basis),
    check("stembridge-paths", &["cor-3.2"], "Q_I(N) = pf_{I,Ī}(A(N)) on every N(D) and on BOUND random grids", (3, 3), (10, 100), checks::stembridge_paths),
    check("network-equality", &["thm-3.6"], "Pfaf_D(A(N)) = hatPfaf_D(N) and the network decomposition", (3, 3), (10, 100), checks::network_equality),
    check("network-type", &["lem-3.7"], "the only marked subnetwork of N(D) has type D", (3, 4), (0, 0), checks::network_type),
    check("boolean-cone", &["ex-3.13"], "generators of the rank-three boolean cone", (3, 3), (0, 0), checks::boolean_cone),
    check("immanant-decomposition", &["thm-4.1"], "minor products as sums of TL-immanants", (3, 5), (0, 0), checks::immanant_decomposition),
    check("block-pfaffian-minor", &["lem-4.2"], "complementary pfaffians of a block array as minor products", (3, 4), (0, 0), checks::block_pfaffian_minor),
    check("pfaffinant-immanant-bridge", &["thm-4.3"], "TL-pfaffinants of a block array through TL-immanants", (2, 3), (0, 0), checks::pfaffinant_immanant_bridge),
    check("pfaffian-square", &["thm-4.4"], "pf^2 = det and pf_{I,Ī}^2 = principal minor products", (3, 3), (0, 0), checks::pfaffian_square),
    check("reduced-word-independence", &[], "f_d(w) does not depend on the reduced word", (5, 6), (0, 0), checks::reduced_word_independence),
    check("quadratic-relations", &[], "n = 2 immanants in products of the printed L, M, N", (2, 2), (0, 0), checks::quadratic_relations),
    check("immanant-non-span", &[], "a 6-point immanant outside the products of two TL-pfaffinants", (3, 3), (0, 0), checks::immanant_non_span),
    check("q-jacobi-trudi", &["thm-5.2"], "pf(A_{λ/μ}) = Q_{λ/μ} and its sign variant, |λ| <= BOUND, in K variables", (2, 2), (8, 12), checks::q_jacobi_trudi),
    check("generator-monomial-positivity", &["thm-5.4"], "Pfaf'_D(A_{λ/μ}) is monomial positive for every D", (2, 2), (6, 8), checks::generator_monomial_positivity),
    check("min-difference-q", &["prop-5.6"], "min-partition difference equals the cell-transfer difference", (2, 2), (8, 10), checks::min_difference_q),
    other(Kind::Scan, "generator-positivity", &["con1"], "Q-expansion of Pfaf'_D on generalized Q-Jacobi-Trudi matrices", (2, 2), (6, 12)),
    other(Kind::Scan, "cell-transfer", &["con2"], "Q-expansion of Q_{a∨b} Q_{a∧b} - Q_a Q_b over skew shapes", (0, 0), (10, 12)),
    other(Kind::Scan, "sort-transfer", &["con3"], "Q-expansion of Q_{sort1} Q_{sort2} - Q_λ Q_μ", (0, 0), (10, 14)),
    other(Kind::Scan, "pfafprime-span", &[], "whether each Pfaf'_D lies in the span of complementary pfaffians", (3, 4), (0, 0)),
    other(Kind::Table, "diagram-pfaffinants", &["ex-2.7"], "Pfaf'_D of the generic array for every D", (2, 3), (0, 0)),
    other(Kind::Table, "tl-pfaffinants", &["ex-2.11"], "Pfaf_D of the generic array for every even D", (2, 3), (0, 0)),
    other(Kind::Table, "nested-pair-coefficients", &["ex-2.5"], "f_D({(1,4),(2,3)}) for the chosen seed", (2, 2), (0, 0)),
    other(Kind::Table, "transition-matrix", &[], "standard partitions against even diagrams", (2, 4), (0, 0)),
    other(Kind::Table, "quadratic-relations", &[], "n = 2 immanants in products of L, M, N", (2, 2), (0, 0)),
];

/// The entry of `kind` called `id`, by name or alias.
pub fn lookup(kind: Kind, id: &str) -> Option<&'static Entry> {
    REGISTRY.iter().find(|e| e.kind == kind && (e.name == id || e.aliases.contains(&id)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_are_unambiguous() {
        for kind in [Kind::Check, Kind::Scan, Kind::Table] {
            let mut ids: Vec<&str> =
                REGISTRY.iter().filter(|e| e.kind == kind).flat_map(|e| std::iter::once(e.name).chain(e.aliases.iter().copied())).collect();
            let total = ids.len();
            ids.sort();
            ids.dedup();
            assert_eq!(ids.len(), total);
        }
        assert!(REGISTRY.iter().all(|e| (e.kind == Kind::Check) == e.run.is_some()));
        assert_eq!(lookup(Kind::Check, "thm-2.6").unwrap().name, "diagram-decomposition");
        assert_eq!(lookup(Kind::Table, "ex-2.7").unwrap().name, "diagram-pfaffinants");
        assert!(lookup(Kind::Check, "ex-2.7").is_none());
    }
}
