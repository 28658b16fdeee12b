use std::collections::{BTreeMap, HashMap};

use super::network::{NetPath, Network};
use crate::diagrams::SymTLDiagram;
use crate::error::{Error, Result};
use crate::exact_poly::ExactPolynomial;

pub const DEFAULT_FAMILY_BOUND: usize = 2_000_000;

/// The support of a triple-free path family, with doubly used edges marked.
#[derive(Clone, Debug)]
pub struct MarkedSubnetwork {
    /// Use count (1 or 2) of every kept edge.
    pub edge_uses: BTreeMap<usize, u8>,
    pub weight: ExactPolynomial,
    pub diagram: SymTLDiagram,
    /// Number of `Θ` components that carry edges but no source.
    pub free_components: usize,
    /// Covering families, each recorded by the source pairs whose paths meet.
    pub families: Vec<u64>,
}

impl MarkedSubnetwork {
    pub fn kept_edges(&self) -> Vec<usize> {
        self.edge_uses.keys().copied().collect()
    }

    pub fn marked_edges(&self) -> Vec<usize> {
        self.edge_uses.iter().filter(|(_, &c)| c == 2).map(|(&e, _)| e).collect()
    }

    pub fn mult(&self) -> u64 {
        1 << self.free_components
    }

    /// Covering families whose paths within `I` and within its complement are disjoint.
    pub fn compatible_cover_count(&self, set: &[usize], n: usize) -> usize {
        let forbidden = same_side_pairs(set, n);
        self.families.iter().filter(|&&m| m & forbidden == 0).count()
    }
}

fn pair_bit(i: usize, j: usize, m: usize) -> u64 {
    1 << (i * m + j)
}

/// Bits of the pairs `i < j` (0-based) lying on the same side of `set`.
pub(crate) fn same_side_pairs(set: &[usize], n: usize) -> u64 {
    let m = 2 * n;
    let mut bits = 0;
    for i in 0..m {
        for j in i + 1..m {
            if set.contains(&(i + 1)) == set.contains(&(j + 1)) {
                bits |= pair_bit(i, j, m);
            }
        }
    }
    bits
}

/// Every marked subnetwork of `N`, from all families in which no vertex is
/// used by three or more paths.
pub fn marked_subnetworks(net: &Network, bound: usize) -> Result<Vec<MarkedSubnetwork>> {
    let m = net.sources().len();
    if m > 8 {
        return Err(Error::BoundExceeded { what: "sources", got: m, bound: 8 });
    }
    let paths: Vec<Vec<NetPath>> = (1..=m).map(|i| net.paths_from(i)).collect();
    let total: usize = paths.iter().map(|p| p.len().max(1)).try_fold(1usize, |a, b| a.checked_mul(b)).unwrap_or(usize::MAX);
    if total > bound {
        return Err(Error::BoundExceeded { what: "path families", got: total, bound });
    }
    let mut groups: HashMap<Vec<(usize, u8)>, Vec<u64>> = HashMap::new();
    let mut uses = vec![0u8; net.vertices().len()];
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    fn rec(
        paths: &[Vec<NetPath>],
        uses: &mut Vec<u8>,
        chosen: &mut Vec<usize>,
        groups: &mut HashMap<Vec<(usize, u8)>, Vec<u64>>,
    ) {
        let k = chosen.len();
        let m = paths.len();
        if k == m {
            let mut edge_uses: BTreeMap<usize, u8> = BTreeMap::new();
            let mut meets = 0u64;
            for (i, &pi) in chosen.iter().enumerate() {
                for &e in &paths[i][pi].edges {
                    *edge_uses.entry(e).or_insert(0) += 1;
                }
                for (j, &pj) in chosen.iter().enumerate().skip(i + 1) {
                    if paths[i][pi].meets(&paths[j][pj]) {
                        meets |= pair_bit(i, j, m);
                    }
                }
            }
            groups.entry(edge_uses.into_iter().collect()).or_default().push(meets);
            return;
        }
        for (idx, p) in paths[k].iter().enumerate() {
            if p.vertices.iter().any(|&v| uses[v] >= 2) {
                continue;
            }
            for &v in &p.vertices {
                uses[v] += 1;
            }
            chosen.push(idx);
            rec(paths, uses, chosen, groups);
            chosen.pop();
            for &v in &p.vertices {
                uses[v] -= 1;
            }
        }
    }
    rec(&paths, &mut uses, &mut chosen, &mut groups);
    let mut out: Vec<MarkedSubnetwork> = groups
        .into_iter()
        .map(|(edge_uses, families)| {
            let edge_uses: BTreeMap<usize, u8> = edge_uses.into_iter().collect();
            let (diagram, free_components) = theta(net, &edge_uses);
            let weight = edge_uses.iter().fold(ExactPolynomial::one(), |acc, (&e, &c)| {
                &acc * &net.edges()[e].weight.pow(u32::from(c))
            });
            MarkedSubnetwork { edge_uses, weight, diagram, free_components, families }
        })
        .collect();
    out.sort_by(|a, b| a.edge_uses.cmp(&b.edge_uses));
    Ok(out)
}

/// Builds `Θ(Ñ)` and returns its type and the number of source-free
/// components with at least one edge.
fn theta(net: &Network, edge_uses: &BTreeMap<usize, u8>) -> (SymTLDiagram, usize) {
    let nv = net.vertices().len();
    // paths through a vertex = sum of uses of its in-edges (or out-edges at sources)
    let mut through = vec![0u8; nv];
    for (&e, &c) in edge_uses {
        through[net.edges()[e].to] += c;
    }
    for &s in net.sources() {
        through[s] = 1;
    }
    // node ids: 2v for the in-side, 2v+1 for the out-side; single-use vertices use 2v only
    let node_in = |v: usize| 2 * v;
    let node_out = |v: usize| if through[v] >= 2 { 2 * v + 1 } else { 2 * v };
    let mut parent: Vec<usize> = (0..2 * nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut has_edge = vec![false; 2 * nv];
    let mut present = vec![false; 2 * nv];
    for (&e, &c) in edge_uses {
        let edge = &net.edges()[e];
        let (a, b) = (node_out(edge.from), node_in(edge.to));
        present[a] = true;
        present[b] = true;
        if c == 2 {
            continue;
        }
        has_edge[a] = true;
        has_edge[b] = true;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut source_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &s) in net.sources().iter().enumerate() {
        let r = find(&mut parent, node_in(s));
        source_root.entry(r).or_default().push(i + 1);
    }
    let mut counted = vec![false; 2 * nv];
    let mut free = 0;
    for x in 0..2 * nv {
        if !present[x] || !has_edge[x] {
            continue;
        }
        let r = find(&mut parent, x);
        if !counted[r] && !source_root.contains_key(&r) {
            counted[r] = true;
            free += 1;
        }
    }
    let mut edges = Vec::new();
    for group in source_root.values() {
        match group.as_slice() {
            [_] => {}
            [i, j] => edges.push((*i, *j)),
            _ => panic!("a component of Θ holds {} sources", group.len()),
        }
    }
    let diagram = SymTLDiagram::new(net.n(), edges).expect("type of a marked subnetwork is non-crossing");
    (diagram, free)
}
