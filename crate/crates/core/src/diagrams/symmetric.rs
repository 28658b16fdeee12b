use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use super::{complement, parse_pairs, render_pairs};
use crate::error::{Error, Result};

pub const DEFAULT_DIAGRAM_BOUND: usize = 8;

/// A mirror-symmetric non-crossing matching of `[2n] ∪ [2n]'`, stored as its
/// left vertical edges `(i, j)`, `i < j`. Uncovered vertices `i` are joined
/// horizontally to `i'`; the right vertical edges are the mirror images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymTLDiagram {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SymTLDiagram {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<SymTLDiagram> {
        let mut norm: Vec<(usize, usize)> =
            edges.into_iter().map(|(i, j)| if i < j { (i, j) } else { (j, i) }).collect();
        norm.sort();
        let d = SymTLDiagram { n, edges: norm };
        d.validate()?;
        Ok(d)
    }

    /// The diagram with only horizontal edges.
    pub fn horizontal(n: usize) -> SymTLDiagram {
        SymTLDiagram { n, edges: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidDiagram(format!("{}: {why}", self.key())));
        let m = 2 * self.n;
        let mut used = vec![false; m + 1];
        for &(i, j) in &self.edges {
            if i == 0 || j > m || i == j {
                return bad("vertex out of range");
            }
            if used[i] || used[j] {
                return bad("vertex used twice");
            }
            used[i] = true;
            used[j] = true;
        }
        for (a, &(i, j)) in self.edges.iter().enumerate() {
            for &(k, l) in &self.edges[a + 1..] {
                if (i < k && k < j && j < l) || (k < i && i < l && l < j) {
                    return bad("crossing edges");
                }
            }
            // a horizontal edge below an arc would cross it
            if (i + 1..j).any(|v| !used[v]) {
                return bad("horizontal edge nested inside a vertical edge");
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Left vertical edges, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `|D|`, the number of left vertical edges.
    pub fn order(&self) -> usize {
        self.edges.len()
    }

    pub fn is_even(&self) -> bool {
        self.edges.len().is_multiple_of(2)
    }

    /// Vertices joined horizontally to their mirror image.
    pub fn horizontal_vertices(&self) -> Vec<usize> {
        let covered: BTreeSet<usize> = self.edges.iter().flat_map(|&(i, j)| [i, j]).collect();
        (1..=2 * self.n).filter(|v| !covered.contains(v)).collect()
    }

    /// Partner of left vertex `v` among the left vertices, if any.
    pub fn left_partner(&self, v: usize) -> Option<usize> {
        self.edges.iter().find_map(|&(i, j)| {
            if i == v {
                Some(j)
            } else if j == v {
                Some(i)
            } else {
                None
            }
        })
    }

    /// `I(D)`: left endpoints of vertical edges together with horizontal vertices.
    pub fn i_set(&self) -> Vec<usize> {
        let rights: BTreeSet<usize> = self.edges.iter().map(|&(_, j)| j).collect();
        (1..=2 * self.n).filter(|v| !rights.contains(v)).collect()
    }

    /// The standard partition `(I(D), complement)`.
    pub fn standard_partition(&self) -> (Vec<usize>, Vec<usize>) {
        let i = self.i_set();
        let c = complement(&i, 2 * self.n);
        (i, c)
    }

    /// Rebuilds a diagram from a standard partition by pairing each element
    /// of the second row with the largest unused smaller element of the first.
    pub fn from_standard_partition(n: usize, i: &[usize], ibar: &[usize]) -> Result<SymTLDiagram> {
        if !is_standard(n, i, ibar) {
            return Err(Error::NotStandard(i.to_vec(), ibar.to_vec()));
        }
        let mut available: Vec<usize> = i.to_vec();
        available.sort();
        let mut bar = ibar.to_vec();
        bar.sort();
        let mut edges = Vec::new();
        for j in bar {
            let pos = available
                .iter()
                .rposition(|&x| x < j)
                .ok_or_else(|| Error::NotStandard(i.to_vec(), ibar.to_vec()))?;
            edges.push((available.remove(pos), j));
        }
        SymTLDiagram::new(n, edges)
    }

    /// True if every vertical edge joins a vertex of `set` to one outside it.
    /// Horizontal edges `(i, i')` are always bicolored.
    pub fn is_compatible(&self, set: &[usize]) -> bool {
        self.edges.iter().all(|&(i, j)| set.contains(&i) != set.contains(&j))
    }

    /// Odd edges `(i, j)` (with `i` odd) that are not nested inside another edge.
    pub fn removable_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(i, j)| i % 2 == 1 && !self.edges.iter().any(|&(k, l)| k < i && j < l))
            .collect()
    }

    pub fn without_edge(&self, e: (usize, usize)) -> Result<SymTLDiagram> {
        SymTLDiagram::new(self.n, self.edges.iter().copied().filter(|&x| x != e).collect())
    }

    /// `S(D)`: closure of `{D}` under legal removal of a single odd edge,
    /// sorted by the diagram order.
    pub fn removal_closure(&self) -> Vec<SymTLDiagram> {
        let mut seen: BTreeSet<SymTLDiagram> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(d) = stack.pop() {
            if !seen.insert(d.clone()) {
                continue;
            }
            for (i, j) in d.edges.iter().copied().filter(|&(i, _)| i % 2 == 1) {
                if let Ok(smaller) = d.without_edge((i, j)) {
                    stack.push(smaller);
                }
            }
        }
        let out: Vec<SymTLDiagram> = seen.into_iter().collect();
        assert!(out.len().is_power_of_two(), "|S({})| = {} is not a power of two", self.key(), out.len());
        out
    }

    /// True if `self ∈ S(other)`: `self` is obtained from `other` by legal odd removals.
    pub fn in_closure_of(&self, other: &SymTLDiagram) -> bool {
        other.removal_closure().contains(self)
    }

    /// The involution exchanging even and odd diagrams.
    pub fn omega(&self) -> SymTLDiagram {
        let mut edges = self.edges.clone();
        match self.left_partner(1) {
            Some(k) => edges.retain(|&e| e != (1, k)),
            None => {
                let i = self
                    .horizontal_vertices()
                    .into_iter()
                    .find(|&v| v != 1)
                    .expect("horizontal vertices come in pairs");
                edges.push((1, i));
            }
        }
        SymTLDiagram::new(self.n, edges).expect("omega preserves validity")
    }

    pub fn key(&self) -> String {
        render_pairs('V', &self.edges)
    }

    pub fn parse_key(n: usize, key: &str) -> Result<SymTLDiagram> {
        let body = key
            .trim()
            .strip_prefix("V[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad diagram key {key:?}")))?;
        let pairs = parse_pairs(body).ok_or_else(|| Error::Parse(format!("bad diagram key {key:?}")))?;
        SymTLDiagram::new(n, pairs)
    }
}

impl fmt::Display for SymTLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// `I ≺ J` if `|I| > |J|`, or the sizes agree and `I` is lexicographically smaller.
pub fn subset_order(a: &[usize], b: &[usize]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

impl Ord for SymTLDiagram {
    /// `D ≺ D'` iff `I(D) ≺ I(D')`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| subset_order(&self.i_set(), &other.i_set()))
    }
}

impl PartialOrd for SymTLDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded { what: "symmetric TL diagrams", got: n, bound });
    }
    Ok(())
}

/// All diagrams of `𝒯_n`, in increasing `≺` order.
pub fn enumerate_sym_tl(n: usize, bound: usize) -> Result<Vec<SymTLDiagram>> {
    check_bound(n, bound)?;
    fn rec(
        v: usize,
        m: usize,
        open: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        n: usize,
        out: &mut Vec<SymTLDiagram>,
    ) {
        if v > m {
            if open.is_empty() {
                let mut e = edges.clone();
                e.sort();
                out.push(SymTLDiagram { n, edges: e });
            }
            return;
        }
        if open.len() > m - v + 1 {
            return;
        }
        if open.is_empty() {
            rec(v + 1, m, open, edges, n, out);
        }
        open.push(v);
        rec(v + 1, m, open, edges, n, out);
        open.pop();
        if let Some(top) = open.pop() {
            edges.push((top, v));
            rec(v + 1, m, open, edges, n, out);
            edges.pop();
            open.push(top);
        }
    }
    let mut out = Vec::new();
    rec(1, 2 * n, &mut Vec::new(), &mut Vec::new(), n, &mut out);
    out.sort();
    Ok(out)
}

/// The even diagrams `𝒯ᵉ_n`, in increasing `≺` order.
pub fn enumerate_sym_tl_even(n: usize, bound: usize) -> Result<Vec<SymTLDiagram>> {
    Ok(enumerate_sym_tl(n, bound)?.into_iter().filter(|d| d.is_even()).collect())
}

/// Black vertices of the bijection with `n`-subsets of `[2n]`: left ends of
/// vertical edges, topped up with the largest remaining vertices.
pub fn subset_bijection(d: &SymTLDiagram) -> Vec<usize> {
    let mut black: BTreeSet<usize> = d.edges.iter().map(|&(i, _)| i).collect();
    let rights: BTreeSet<usize> = d.edges.iter().map(|&(_, j)| j).collect();
    let mut candidates: Vec<usize> =
        (1..=2 * d.n).filter(|v| !black.contains(v) && !rights.contains(v)).collect();
    while black.len() < d.n {
        black.insert(candidates.pop().expect("enough vertices"));
    }
    black.into_iter().collect()
}

/// Inverse of [`subset_bijection`].
pub fn subset_bijection_inv(n: usize, black: &[usize]) -> Result<SymTLDiagram> {
    if black.len() != n || black.iter().any(|&b| b == 0 || b > 2 * n) {
        return Err(Error::Precondition(format!("{black:?} is not an {n}-subset of [{}]", 2 * n)));
    }
    let is_black = |v: usize| black.contains(&v);
    let mut used = vec![false; 2 * n + 1];
    let mut edges = Vec::new();
    for i in (1..=2 * n).rev() {
        if !is_black(i) {
            continue;
        }
        if let Some(j) = (i + 1..=2 * n).find(|&j| !is_black(j) && !used[j]) {
            used[j] = true;
            edges.push((i, j));
        }
    }
    SymTLDiagram::new(n, edges)
}

/// `(I, Ī)` is standard: `|I| >= |Ī|` and `i_k < j_k` for every `k <= |Ī|`.
pub fn is_standard(n: usize, i: &[usize], ibar: &[usize]) -> bool {
    let mut a = i.to_vec();
    let mut b = ibar.to_vec();
    a.sort();
    b.sort();
    let mut all = a.clone();
    all.extend(&b);
    all.sort();
    if all != (1..=2 * n).collect::<Vec<_>>() || a.len() < b.len() {
        return false;
    }
    a.iter().zip(&b).all(|(x, y)| x < y)
}

fn check_even(set: &[usize]) -> Result<()> {
    if set.len() % 2 == 1 {
        return Err(Error::OddSubset(set.to_vec()));
    }
    Ok(())
}

/// `𝒟(I)`: diagrams whose edges are all bicolored in the `I`-coloring.
pub fn compatible_diagrams(set: &[usize], n: usize) -> Result<Vec<SymTLDiagram>> {
    check_even(set)?;
    Ok(enumerate_sym_tl(n, usize::MAX)?.into_iter().filter(|d| d.is_compatible(set)).collect())
}

/// Even diagrams of `𝒟(I)` that are not in `S(D'')` for another `D'' ∈ 𝒟(I)`.
pub fn i_maximal_diagrams(set: &[usize], n: usize) -> Result<Vec<SymTLDiagram>> {
    let all = compatible_diagrams(set, n)?;
    let closures: Vec<Vec<SymTLDiagram>> = all.iter().map(|d| d.removal_closure()).collect();
    Ok(all
        .iter()
        .filter(|d| d.is_even())
        .filter(|d| {
            !all.iter().zip(&closures).any(|(other, cl)| other != *d && cl.contains(d))
        })
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{binomial, even_subsets};

    fn d(n: usize, e: &[(usize, usize)]) -> SymTLDiagram {
        SymTLDiagram::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn counts_match_binomials() {
        for n in 1..=8 {
            let all = enumerate_sym_tl(n, 8).unwrap();
            assert_eq!(all.len() as u64, binomial(2 * n as u64, n as u64));
            let even = all.iter().filter(|x| x.is_even()).count();
            assert_eq!(even as u64, binomial(2 * n as u64 - 1, n as u64));
        }
    }

    #[test]
    fn rejects_invalid() {
        assert!(SymTLDiagram::new(2, vec![(1, 3)]).is_err());
        assert!(SymTLDiagram::new(2, vec![(1, 3), (2, 4)]).is_err());
        assert!(SymTLDiagram::new(2, vec![(1, 5)]).is_err());
    }

    #[test]
    fn key_round_trip() {
        for x in enumerate_sym_tl(3, 8).unwrap() {
            assert_eq!(SymTLDiagram::parse_key(3, &x.key()).unwrap(), x);
        }
        assert_eq!(d(2, &[(3, 4), (1, 2)]).key(), "V[(1,2)(3,4)]");
        assert_eq!(SymTLDiagram::horizontal(2).key(), "V[]");
    }

    #[test]
    fn subset_bijection_examples() {
        assert_eq!(subset_bijection(&SymTLDiagram::horizontal(2)), vec![3, 4]);
        for n in 1..=5 {
            let all = enumerate_sym_tl(n, 8).unwrap();
            let mut images = BTreeSet::new();
            for x in &all {
                let s = subset_bijection(x);
                assert_eq!(s.len(), n);
                assert_eq!(&subset_bijection_inv(n, &s).unwrap(), x);
                images.insert(s);
            }
            assert_eq!(images.len(), all.len());
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(SymTLDiagram::horizontal(2).omega(), d(2, &[(1, 2)]));
        let all = enumerate_sym_tl(3, 8).unwrap();
        for x in &all {
            assert_eq!(x.omega().omega(), *x);
            assert_eq!(x.omega().is_even(), !x.is_even());
        }
    }

    #[test]
    fn removal_closure_examples() {
        let x = d(2, &[(1, 4), (2, 3)]);
        assert_eq!(x.removal_closure(), {
            let mut v = vec![x.clone(), d(2, &[(2, 3)])];
            v.sort();
            v
        });
        assert_eq!(d(2, &[(2, 3)]).removal_closure(), vec![d(2, &[(2, 3)])]);
        assert_eq!(d(2, &[(1, 2), (3, 4)]).removal_closure().len(), 4);
    }

    #[test]
    fn closure_is_hereditary_and_power_of_two() {
        for n in 1..=4 {
            for x in enumerate_sym_tl(n, 8).unwrap() {
                let cl = x.removal_closure();
                assert_eq!(cl.len(), 1 << x.removable_edges().len());
                for y in &cl {
                    assert!(y.removal_closure().iter().all(|z| cl.contains(z)));
                }
            }
        }
        for x in enumerate_sym_tl(5, 8).unwrap() {
            assert!(x.removal_closure().len().is_power_of_two());
        }
    }

    #[test]
    fn compatible_examples() {
        assert_eq!(compatible_diagrams(&[1, 2, 3, 4], 2).unwrap(), vec![SymTLDiagram::horizontal(2)]);
        assert_eq!(compatible_diagrams(&[1, 3], 2).unwrap().len(), 6);
        let mut want = vec![SymTLDiagram::horizontal(2), d(2, &[(2, 3)]), d(2, &[(1, 4), (2, 3)])];
        want.sort();
        assert_eq!(compatible_diagrams(&[1, 2], 2).unwrap(), want);
        assert!(compatible_diagrams(&[1], 2).is_err());
        for n in 1..=4 {
            let alt: Vec<usize> = (1..=2 * n).step_by(2).collect();
            if alt.len().is_multiple_of(2) {
                // every diagram is compatible with the alternating subset
                let comp = compatible_diagrams(&alt, n).unwrap();
                assert_eq!(comp, enumerate_sym_tl(n, 8).unwrap());
                let even: Vec<_> = comp.into_iter().filter(|x| x.is_even()).collect();
                assert_eq!(even, enumerate_sym_tl_even(n, 8).unwrap());
            }
        }
    }

    #[test]
    fn maximal_examples() {
        assert_eq!(i_maximal_diagrams(&[1, 2, 3, 4], 2).unwrap(), vec![SymTLDiagram::horizontal(2)]);
        let mut want = vec![SymTLDiagram::horizontal(2), d(2, &[(1, 4), (2, 3)])];
        want.sort();
        assert_eq!(i_maximal_diagrams(&[1, 2], 2).unwrap(), want);
        let mut want = vec![d(2, &[(1, 2), (3, 4)]), d(2, &[(1, 4), (2, 3)])];
        want.sort();
        assert_eq!(i_maximal_diagrams(&[1, 3], 2).unwrap(), want);
    }

    #[test]
    fn compatible_set_is_disjoint_union_of_closures() {
        for n in 1..=4 {
            for set in even_subsets(2 * n) {
                let comp = compatible_diagrams(&set, n).unwrap();
                let mut union: Vec<SymTLDiagram> = Vec::new();
                for m in i_maximal_diagrams(&set, n).unwrap() {
                    union.extend(m.removal_closure());
                }
                let total = union.len();
                union.sort();
                union.dedup();
                assert_eq!(union.len(), total, "closures overlap for {set:?}");
                assert_eq!(union, comp, "partition fails for {set:?}");
            }
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(SymTLDiagram::horizontal(2).i_set(), vec![1, 2, 3, 4]);
        let chain = enumerate_sym_tl(2, 8).unwrap();
        let keys: Vec<String> = chain.iter().map(|x| x.key()).collect();
        assert_eq!(
            keys,
            ["V[]", "V[(3,4)]", "V[(2,3)]", "V[(1,2)]", "V[(1,4)(2,3)]", "V[(1,2)(3,4)]"]
        );
        for x in &chain {
            assert_eq!(x.i_set().len(), 4 - x.order());
        }
    }

    #[test]
    fn compatibility_implies_order() {
        for n in 1..=4 {
            let all = enumerate_sym_tl(n, 8).unwrap();
            for dp in &all {
                let set = dp.i_set();
                for x in &all {
                    if x.is_compatible(&set) {
                        assert!(x <= dp, "{x} vs {dp}");
                    }
                }
                if set.len() % 2 == 0 {
                    assert!(i_maximal_diagrams(&set, n).unwrap().contains(dp));
                }
                assert!(dp.is_compatible(&set));
            }
        }
    }

    #[test]
    fn standard_partition_examples() {
        let x = d(2, &[(1, 2), (3, 4)]);
        assert_eq!(x.standard_partition(), (vec![1, 3], vec![2, 4]));
        assert_eq!(
            SymTLDiagram::from_standard_partition(2, &[1, 2], &[3, 4]).unwrap(),
            d(2, &[(1, 4), (2, 3)])
        );
        assert!(matches!(
            SymTLDiagram::from_standard_partition(2, &[2, 4], &[1, 3]),
            Err(Error::NotStandard(..))
        ));
        for n in 1..=4 {
            for x in enumerate_sym_tl(n, 8).unwrap() {
                let (i, ib) = x.standard_partition();
                assert!(is_standard(n, &i, &ib));
                assert_eq!(SymTLDiagram::from_standard_partition(n, &i, &ib).unwrap(), x);
            }
        }
    }
}
