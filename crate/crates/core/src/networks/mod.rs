//! Planar networks, Stembridge's path-family pfaffians, and the network
//! evaluation of pfaffinants.

mod construct;
mod marked;
mod network;

pub use construct::{construct_network_of_diagram, random_grid};
pub use marked::{marked_subnetworks, MarkedSubnetwork, DEFAULT_FAMILY_BOUND};
pub use network::{Edge, EdgeRecord, NetPath, Network, NetworkFile, Vertex, VertexRecord};

use std::collections::BTreeMap;

use crate::diagrams::{compatible_diagrams, SymTLDiagram};
use crate::error::{Error, Result};
use crate::exact_poly::ExactPolynomial;
use crate::pfaffian_core::{complementary_pfaffian, SkewArray};
use crate::pfaffinants::{tl_pfaffinant, IdentityCheck};

/// `A(N)`: `a_ij` sums the weights of vertex-disjoint pairs of paths from `u_i` and `u_j`.
pub fn path_weight_matrix(net: &Network) -> SkewArray {
    let m = net.sources().len();
    let paths: Vec<Vec<(network::NetPath, ExactPolynomial)>> = (1..=m)
        .map(|i| net.paths_from(i).into_iter().map(|p| {
            let w = net.path_weight(&p);
            (p, w)
        }).collect())
        .collect();
    SkewArray::from_fn(m, |i, j| {
        let mut sum = ExactPolynomial::zero();
        for (p, wp) in &paths[i - 1] {
            for (q, wq) in &paths[j - 1] {
                if !p.meets(q) {
                    sum += &(wp * wq);
                }
            }
        }
        sum
    })
}

/// `Q_I(N)`: total weight of the families whose paths within `I` and within
/// `Ī` are pairwise disjoint.
pub fn q_i_weight(net: &Network, set: &[usize]) -> Result<ExactPolynomial> {
    if set.len() % 2 == 1 {
        return Err(Error::OddSubset(set.to_vec()));
    }
    let m = net.sources().len();
    let paths: Vec<Vec<(network::NetPath, ExactPolynomial)>> = (1..=m)
        .map(|i| net.paths_from(i).into_iter().map(|p| {
            let w = net.path_weight(&p);
            (p, w)
        }).collect())
        .collect();
    let side: Vec<bool> = (1..=m).map(|i| set.contains(&i)).collect();
    let mut total = ExactPolynomial::zero();
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    fn rec(
        paths: &[Vec<(network::NetPath, ExactPolynomial)>],
        side: &[bool],
        chosen: &mut Vec<usize>,
        weight: ExactPolynomial,
        total: &mut ExactPolynomial,
    ) {
        let k = chosen.len();
        if k == paths.len() {
            *total += &weight;
            return;
        }
        for (idx, (p, w)) in paths[k].iter().enumerate() {
            let clash = chosen.iter().enumerate().any(|(i, &c)| side[i] == side[k] && paths[i][c].0.meets(p));
            if clash {
                continue;
            }
            chosen.push(idx);
            rec(paths, side, chosen, &weight * w, total);
            chosen.pop();
        }
    }
    rec(&paths, &side, &mut chosen, ExactPolynomial::one(), &mut total);
    Ok(total)
}

/// `Σ mult(Ñ) w(Ñ)` over the marked subnetworks of type `D`.
pub fn hat_pfaf_prime(net: &Network, d: &SymTLDiagram) -> Result<ExactPolynomial> {
    Ok(hat_pfaf_prime_all(net)?.remove(d).unwrap_or_else(ExactPolynomial::zero))
}

/// `hatPfaf'_D(N)` for every type `D` that occurs.
pub fn hat_pfaf_prime_all(net: &Network) -> Result<BTreeMap<SymTLDiagram, ExactPolynomial>> {
    let mut out: BTreeMap<SymTLDiagram, ExactPolynomial> = BTreeMap::new();
    for sub in marked_subnetworks(net, DEFAULT_FAMILY_BOUND)? {
        let term = sub.weight.scale_int(sub.mult() as i64);
        *out.entry(sub.diagram.clone()).or_insert_with(ExactPolynomial::zero) += &term;
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// `hatPfaf_D(N) = Σ_{D' ∈ S(D)} hatPfaf'_{D'}(N)`.
pub fn hat_pfaf(net: &Network, d: &SymTLDiagram) -> Result<ExactPolynomial> {
    if !d.is_even() {
        return Err(Error::OddDiagram(d.key()));
    }
    let all = hat_pfaf_prime_all(net)?;
    let mut out = ExactPolynomial::zero();
    for sub in d.removal_closure() {
        if let Some(p) = all.get(&sub) {
            out += p;
        }
    }
    Ok(out)
}

/// `Pfaf_D(A(N)) = hatPfaf_D(N)` as polynomials in the edge weights.
pub fn verify_network_equality(net: &Network, d: &SymTLDiagram) -> Result<IdentityCheck> {
    if d.n() != net.n() {
        return Err(Error::SizeMismatch(format!("diagram of size {} on a network with {} sources", d.n(), 2 * net.n())));
    }
    let lhs = tl_pfaffinant(d, &path_weight_matrix(net))?;
    let rhs = hat_pfaf(net, d)?;
    let diff = &lhs - &rhs;
    if let Some((m, c)) = diff.leading() {
        return Err(Error::IdentityFailure(format!("network equality for {}: sides differ at {m} by {c}", d.key())));
    }
    Ok(IdentityCheck { lhs, rhs, terms: d.removal_closure() })
}

/// `pf_{I,Ī}(A(N)) = Σ_{D ∈ 𝒟(I)} hatPfaf'_D(N)`.
pub fn verify_network_decomposition(net: &Network, set: &[usize]) -> Result<IdentityCheck> {
    let lhs = complementary_pfaffian(&path_weight_matrix(net), set)?;
    let all = hat_pfaf_prime_all(net)?;
    let terms = compatible_diagrams(set, net.n())?;
    let mut rhs = ExactPolynomial::zero();
    for d in &terms {
        if let Some(p) = all.get(d) {
            rhs += p;
        }
    }
    let diff = &lhs - &rhs;
    if let Some((m, c)) = diff.leading() {
        return Err(Error::IdentityFailure(format!("network decomposition for I = {set:?}: sides differ at {m} by {c}")));
    }
    Ok(IdentityCheck { lhs, rhs, terms })
}
