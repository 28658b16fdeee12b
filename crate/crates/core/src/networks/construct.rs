use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::network::{segment_crossing, Coord, Edge, Network, Vertex};
use crate::diagrams::SymTLDiagram;
use crate::exact_poly::ExactPolynomial;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Builds a network from straight segments: every crossing becomes a vertex
/// and every piece an edge weighted `x[k]`, numbered left to right.
fn from_segments(
    named: Vec<(String, Coord)>,
    segments: Vec<(usize, usize)>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
) -> Network {
    let mut points: Vec<Coord> = named.iter().map(|(_, c)| c.clone()).collect();
    let mut ids: Vec<String> = named.into_iter().map(|(id, _)| id).collect();
    // points on each segment, as (parameter key, point index)
    let mut on_seg: Vec<Vec<usize>> = segments.iter().map(|&(a, b)| vec![a, b]).collect();
    for s in 0..segments.len() {
        for t in s + 1..segments.len() {
            let (a, b) = segments[s];
            let (c, d) = segments[t];
            if let Some(p) = segment_crossing(&points[a], &points[b], &points[c], &points[d]) {
                let k = match points.iter().position(|q| *q == p) {
                    Some(k) => k,
                    None => {
                        points.push(p);
                        ids.push(format!("v{}", points.len()));
                        points.len() - 1
                    }
                };
                on_seg[s].push(k);
                on_seg[t].push(k);
            }
        }
    }
    let mut pieces = Vec::new();
    for list in &mut on_seg {
        list.sort_by(|&p, &q| points[p].0.cmp(&points[q].0));
        list.dedup();
        for w in list.windows(2) {
            pieces.push((w[0], w[1]));
        }
    }
    pieces.sort_by(|&(a, b), &(c, d)| {
        (&points[a].0, std::cmp::Reverse(&points[a].1), &points[b].0, std::cmp::Reverse(&points[b].1))
            .cmp(&(&points[c].0, std::cmp::Reverse(&points[c].1), &points[d].0, std::cmp::Reverse(&points[d].1)))
    });
    pieces.dedup();
    let vertices = points.into_iter().zip(ids).map(|((x, y), id)| Vertex { id, x, y }).collect();
    let edges = pieces
        .into_iter()
        .enumerate()
        .map(|(k, (from, to))| Edge { from, to, weight: ExactPolynomial::indet(k + 1) })
        .collect();
    Network::new(vertices, edges, sources, sinks).expect("constructed network is valid")
}

/// `N(D)`: `u_i` at `(0, 2n-i)`, `w_i` at `(1, 2n-i)` for every `i` that is
/// not the right end of a vertical edge, rails `u_i → w_i`, and the `k`-th
/// right end joined to the `k`-th left end's sink.
pub fn construct_network_of_diagram(d: &SymTLDiagram) -> Network {
    let m = 2 * d.n();
    let ingoing: Vec<usize> = {
        let mut v: Vec<usize> = d.edges().iter().map(|&(_, j)| j).collect();
        v.sort();
        v
    };
    let outgoing: Vec<usize> = {
        let mut v: Vec<usize> = d.edges().iter().map(|&(i, _)| i).collect();
        v.sort();
        v
    };
    let mut named = Vec::new();
    let mut source_idx = vec![0; m + 1];
    for i in 1..=m {
        source_idx[i] = named.len();
        named.push((format!("u{i}"), (int(0), int((m - i) as i64))));
    }
    let mut sink_idx = BTreeMap::new();
    for i in (1..=m).filter(|i| !ingoing.contains(i)) {
        sink_idx.insert(i, named.len());
        named.push((format!("w{i}"), (int(1), int((m - i) as i64))));
    }
    let mut segments = Vec::new();
    for (&i, &w) in &sink_idx {
        segments.push((source_idx[i], w));
    }
    for (&j, &i) in ingoing.iter().zip(&outgoing) {
        segments.push((source_idx[j], sink_idx[&i]));
    }
    let sources = (1..=m).map(|i| source_idx[i]).collect();
    let sinks = sink_idx.values().copied().collect();
    from_segments(named, segments, sources, sinks)
}

/// A grid on `2n` rows and `width + 1` columns with edges to the right and
/// diagonally down-right, each kept with probability `keep`; column 0 holds the
/// sources, the last column the sinks. Weights are `x[k]` when `symbolic`,
/// otherwise random integers in `1..=5`.
pub fn random_grid(n: usize, width: usize, seed: u64, keep: f64, symbolic: bool) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = 2 * n;
    let id = |x: usize, y: usize| x * rows + y;
    let mut vertices = Vec::new();
    for x in 0..=width {
        for y in 0..rows {
            vertices.push(Vertex { id: format!("g{x}_{y}"), x: int(x as i64), y: int(y as i64) });
        }
    }
    let mut edges = Vec::new();
    for x in 0..width {
        for y in (0..rows).rev() {
            let mut targets = vec![id(x + 1, y)];
            if y > 0 {
                targets.push(id(x + 1, y - 1));
            }
            for to in targets {
                if rng.gen_bool(keep) {
                    let weight = if symbolic {
                        ExactPolynomial::indet(edges.len() + 1)
                    } else {
                        ExactPolynomial::from_int(rng.gen_range(1..=5))
                    };
                    edges.push(Edge { from: id(x, y), to, weight });
                }
            }
        }
    }
    let sources = (0..rows).rev().map(|y| id(0, y)).collect();
    let sinks = (0..rows).rev().map(|y| id(width, y)).collect();
    Network::new(vertices, edges, sources, sinks).expect("grid is a valid network")
}
