use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_poly::{parse_rational, ExactPolynomial};

pub type Coord = (BigRational, BigRational);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub x: BigRational,
    pub y: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: ExactPolynomial,
}

/// A planar network drawn left to right: sources `u_1, …, u_{2n}` top to
/// bottom on the leftmost vertical line, sinks on the rightmost one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
}

/// A directed path from a source to a sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetPath {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    /// Bitset of `vertices`.
    pub mask: Vec<u64>,
}

impl NetPath {
    pub fn meets(&self, other: &NetPath) -> bool {
        self.mask.iter().zip(&other.mask).any(|(a, b)| a & b != 0)
    }
}

fn orient(a: &Coord, b: &Coord, c: &Coord) -> i32 {
    let v = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn on_segment(a: &Coord, b: &Coord, p: &Coord) -> bool {
    orient(a, b, p) == 0
        && p.0 >= a.0.clone().min(b.0.clone())
        && p.0 <= a.0.clone().max(b.0.clone())
        && p.1 >= a.1.clone().min(b.1.clone())
        && p.1 <= a.1.clone().max(b.1.clone())
}

/// Interior intersection point of two segments that cross transversally.
pub fn segment_crossing(a: &Coord, b: &Coord, c: &Coord, d: &Coord) -> Option<Coord> {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 >= 0 || o3 * o4 >= 0 {
        return None;
    }
    let r = (&b.0 - &a.0, &b.1 - &a.1);
    let s = (&d.0 - &c.0, &d.1 - &c.1);
    let denom = &r.0 * &s.1 - &r.1 * &s.0;
    let t = ((&c.0 - &a.0) * &s.1 - (&c.1 - &a.1) * &s.0) / denom;
    Some((&a.0 + &t * &r.0, &a.1 + &t * &r.1))
}

impl Network {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, sources: Vec<usize>, sinks: Vec<usize>) -> Result<Network> {
        let mut out_edges = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            if e.from >= vertices.len() || e.to >= vertices.len() {
                return Err(Error::InvalidNetwork(format!("edge {k} has an unknown endpoint")));
            }
            out_edges[e.from].push(k);
        }
        let net = Network { vertices, edges, sources, sinks, out_edges };
        net.validate()?;
        Ok(net)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidNetwork(msg));
        let vs = &self.vertices;
        let mut ids = HashMap::new();
        for (k, v) in vs.iter().enumerate() {
            if ids.insert(v.id.as_str(), k).is_some() {
                return bad(format!("duplicate vertex id {}", v.id));
            }
        }
        if self.sources.is_empty() || self.sources.len() % 2 == 1 {
            return bad(format!("{} sources; need a positive even number", self.sources.len()));
        }
        if self.sinks.is_empty() {
            return bad("no sinks".into());
        }
        let x_min = vs.iter().map(|v| &v.x).min().unwrap();
        let x_max = vs.iter().map(|v| &v.x).max().unwrap();
        if x_min == x_max {
            return bad("network has no width".into());
        }
        let mut role = vec![0u8; vs.len()];
        for (list, tag, x) in [(&self.sources, 1u8, x_min), (&self.sinks, 2u8, x_max)] {
            for (k, &v) in list.iter().enumerate() {
                if v >= vs.len() || role[v] != 0 {
                    return bad(format!("terminal {v} repeated or out of range"));
                }
                role[v] = tag;
                if &vs[v].x != x {
                    return bad(format!("terminal {} is not on the boundary line", vs[v].id));
                }
                if k > 0 && vs[list[k - 1]].y <= vs[v].y {
                    return bad(format!("terminals must be listed top to bottom at {}", vs[v].id));
                }
            }
        }
        for (k, v) in vs.iter().enumerate() {
            if role[k] == 0 && (&v.x == x_min || &v.x == x_max) {
                return bad(format!("internal vertex {} lies on a boundary line", v.id));
            }
        }
        let mut indeg = vec![0usize; vs.len()];
        for e in &self.edges {
            if vs[e.to].x <= vs[e.from].x {
                return bad(format!("edge {} -> {} does not increase x", vs[e.from].id, vs[e.to].id));
            }
            indeg[e.to] += 1;
        }
        for (k, v) in vs.iter().enumerate() {
            if role[k] == 0 && (indeg[k] > 2 || self.out_edges[k].len() > 2) {
                return bad(format!("internal vertex {} has degree above 2", v.id));
            }
        }
        let pos = |k: usize| (vs[k].x.clone(), vs[k].y.clone());
        for (a, e) in self.edges.iter().enumerate() {
            let (p, q) = (pos(e.from), pos(e.to));
            for (k, _) in vs.iter().enumerate() {
                if k != e.from && k != e.to && on_segment(&p, &q, &pos(k)) {
                    return bad(format!("vertex {} lies inside an edge", vs[k].id));
                }
            }
            for f in &self.edges[a + 1..] {
                let (r, s) = (pos(f.from), pos(f.to));
                if segment_crossing(&p, &q, &r, &s).is_some() {
                    return bad(format!(
                        "edges {}->{} and {}->{} cross away from a vertex",
                        vs[e.from].id, vs[e.to].id, vs[f.from].id, vs[f.to].id
                    ));
                }
                let shared = [e.from, e.to].iter().filter(|v| [f.from, f.to].contains(v)).count();
                if shared == 0 && orient(&p, &q, &r) == 0 && orient(&p, &q, &s) == 0
                    && (on_segment(&p, &q, &r) || on_segment(&p, &q, &s) || on_segment(&r, &s, &p))
                {
                    return bad("overlapping collinear edges".into());
                }
                if shared == 2 {
                    return bad("parallel edges".into());
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.sources.len() / 2
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    pub fn position(&self, v: usize) -> Coord {
        (self.vertices[v].x.clone(), self.vertices[v].y.clone())
    }

    /// All paths from source `u_i` (1-based) to any sink.
    pub fn paths_from(&self, i: usize) -> Vec<NetPath> {
        let words = self.vertices.len().div_ceil(64);
        let is_sink: Vec<bool> = {
            let mut s = vec![false; self.vertices.len()];
            for &w in &self.sinks {
                s[w] = true;
            }
            s
        };
        let mut out = Vec::new();
        let mut edges = Vec::new();
        let mut verts = vec![self.sources[i - 1]];
        fn rec(
            net: &Network,
            is_sink: &[bool],
            words: usize,
            edges: &mut Vec<usize>,
            verts: &mut Vec<usize>,
            out: &mut Vec<NetPath>,
        ) {
            let v = *verts.last().unwrap();
            if is_sink[v] {
                let mut mask = vec![0u64; words];
                for &u in verts.iter() {
                    mask[u / 64] |= 1 << (u % 64);
                }
                out.push(NetPath { edges: edges.clone(), vertices: verts.clone(), mask });
                return;
            }
            for &e in &net.out_edges[v] {
                edges.push(e);
                verts.push(net.edges[e].to);
                rec(net, is_sink, words, edges, verts, out);
                edges.pop();
                verts.pop();
            }
        }
        rec(self, &is_sink, words, &mut edges, &mut verts, &mut out);
        out
    }

    pub fn path_weight(&self, p: &NetPath) -> ExactPolynomial {
        p.edges.iter().fold(ExactPolynomial::one(), |acc, &e| &acc * &self.edges[e].weight)
    }

    pub fn to_file(&self) -> NetworkFile {
        let id = |k: usize| self.vertices[k].id.clone();
        NetworkFile {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexRecord { id: v.id.clone(), x: v.x.to_string(), y: v.y.to_string() })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord { from: id(e.from), to: id(e.to), weight: e.weight.to_string() })
                .collect(),
            sources: self.sources.iter().map(|&k| id(k)).collect(),
            sinks: self.sinks.iter().map(|&k| id(k)).collect(),
        }
    }

    pub fn from_file(file: &NetworkFile) -> Result<Network> {
        let vertices: Vec<Vertex> = file
            .vertices
            .iter()
            .map(|v| Ok(Vertex { id: v.id.clone(), x: parse_rational(&v.x)?, y: parse_rational(&v.y)? }))
            .collect::<Result<_>>()?;
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(k, v)| (v.id.as_str(), k)).collect();
        let look = |id: &str| {
            index.get(id).copied().ok_or_else(|| Error::InvalidNetwork(format!("unknown vertex {id}")))
        };
        let edges = file
            .edges
            .iter()
            .map(|e| Ok(Edge { from: look(&e.from)?, to: look(&e.to)?, weight: e.weight.parse()? }))
            .collect::<Result<_>>()?;
        let sources = file.sources.iter().map(|s| look(s)).collect::<Result<_>>()?;
        let sinks = file.sinks.iter().map(|s| look(s)).collect::<Result<_>>()?;
        Network::new(vertices, edges, sources, sinks)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(s: &str) -> Result<Network> {
        Network::from_file(&serde_json::from_str(s)?)
    }

    /// Replaces every edge weight.
    pub fn with_weights<F: FnMut(usize, &Edge) -> ExactPolynomial>(&self, mut f: F) -> Network {
        let mut net = self.clone();
        for (k, e) in self.edges.iter().enumerate() {
            net.edges[k].weight = f(k, e);
        }
        net
    }

    /// True when every edge weight is a nonnegative rational constant.
    pub fn has_nonnegative_constant_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight.as_constant().is_some_and(|c| !c.is_negative()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: String,
    pub to: String,
    pub weight: String,
}

/// JSON layout of a network.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    pub sources: Vec<String>,
    pub sinks: Vec<String>,
}
