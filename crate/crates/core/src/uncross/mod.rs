//! Mirror-symmetric chord embeddings and their sign-weighted uncrossings.

mod chordmap;
mod table;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

pub use chordmap::{Chord, ChordMap, Crossing, CrossingClass, Point};
pub use table::{cache_path, load_or_compute, FTable, FTableFile};

use crate::diagrams::{Matching, OrdinaryTLDiagram, SymTLDiagram};
use crate::error::{Error, Result};

pub const DEFAULT_CLASS_BOUND: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    /// Joins the two halves before the crossing and the two halves after it.
    Vertical,
    /// Joins each chord's half before the crossing to the other chord's half after it.
    Horizontal,
}

#[derive(Clone, Debug)]
pub struct Uncrossing {
    /// One choice per resolution class of the map.
    pub resolutions: Vec<Resolution>,
    pub diagram: SymTLDiagram,
    pub loops: usize,
    pub uv: usize,
    pub ph: usize,
    pub weight: i64,
}

/// Outcome of tracing one choice of resolutions.
struct Trace {
    /// Left-point partners packed 5 bits per point; 0 means horizontal.
    key: u128,
    loops: usize,
}

/// Flat tracing data derived from a `ChordMap`.
struct Tracer {
    n: usize,
    seg_base: Vec<usize>,
    seg_count: usize,
    lens: Vec<usize>,
    /// Crossing at position `s` of chord `c`: `(crossing, other chord, position on other chord)`.
    along: Vec<Vec<(usize, usize, usize)>>,
    /// For each boundary point index: chord and whether it is the chord's start.
    boundary: Vec<(usize, bool)>,
    /// Boundary point index of each chord's start and end.
    ends: Vec<(usize, usize)>,
    mirror_seg: Vec<usize>,
    class_of: Vec<usize>,
}

fn point_index(n: usize, p: Point) -> usize {
    match p {
        Point::Left(i) => i - 1,
        Point::Right(i) => 2 * n + i - 1,
    }
}

impl Tracer {
    fn new(map: &ChordMap) -> Tracer {
        let n = map.n();
        let chords = map.chords();
        let mut seg_base = Vec::with_capacity(chords.len());
        let mut lens = Vec::with_capacity(chords.len());
        let mut total = 0;
        for c in chords {
            seg_base.push(total);
            lens.push(c.crossings.len());
            total += c.crossings.len() + 1;
        }
        let mut boundary = vec![(usize::MAX, false); 4 * n];
        let mut ends = Vec::with_capacity(chords.len());
        let mut along = Vec::with_capacity(chords.len());
        for (k, c) in chords.iter().enumerate() {
            let (s, e) = (point_index(n, c.start), point_index(n, c.end));
            boundary[s] = (k, true);
            boundary[e] = (k, false);
            ends.push((s, e));
            along.push(
                c.crossings
                    .iter()
                    .map(|&x| {
                        let cr = &map.crossings()[x];
                        let slot = if cr.chords[0] == k { 1 } else { 0 };
                        debug_assert!(chords[cr.chords[slot]].is_left_right() && c.is_left_right());
                        (x, cr.chords[slot], cr.positions[slot])
                    })
                    .collect(),
            );
        }
        let mut mirror_seg = vec![0; total];
        for (k, c) in chords.iter().enumerate() {
            let m = c.mirror;
            // the reflection reverses a chord exactly when it swaps start and end
            let reversed = chords[m].start != c.start.mirror();
            for s in 0..=lens[k] {
                let t = if reversed { lens[k] - s } else { s };
                mirror_seg[seg_base[k] + s] = seg_base[m] + t;
            }
        }
        let class_of = (0..map.crossings().len()).map(|x| map.class_of(x)).collect();
        Tracer { n, seg_base, seg_count: total, lens, along, boundary, ends, mirror_seg, class_of }
    }

    /// Follows a strand from segment `s` of chord `c`. Calls `visit` on every
    /// segment and returns the boundary point reached, or `None` on closing a loop.
    fn walk(
        &self,
        vertical: &[bool],
        mut c: usize,
        mut s: usize,
        mut forward: bool,
        visited: &mut [bool],
        mut visit: impl FnMut(usize),
    ) -> Option<usize> {
        loop {
            let seg = self.seg_base[c] + s;
            if visited[seg] {
                return None;
            }
            visited[seg] = true;
            visit(seg);
            let (x, arrive_before) = if forward {
                if s == self.lens[c] {
                    return Some(self.ends[c].1);
                }
                (s, true)
            } else {
                if s == 0 {
                    return Some(self.ends[c].0);
                }
                (s - 1, false)
            };
            let (crossing, e, pe) = self.along[c][x];
            let leave_before = arrive_before == vertical[self.class_of[crossing]];
            if leave_before {
                c = e;
                s = pe;
                forward = false;
            } else {
                c = e;
                s = pe + 1;
                forward = true;
            }
        }
    }

    fn trace(&self, vertical: &[bool], visited: &mut Vec<bool>, loop_of: &mut Vec<usize>) -> Trace {
        visited.clear();
        visited.resize(self.seg_count, false);
        let m = 4 * self.n;
        let mut partner = vec![usize::MAX; m];
        for p in 0..m {
            if partner[p] != usize::MAX {
                continue;
            }
            let (c, is_start) = self.boundary[p];
            let (s, fwd) = if is_start { (0, true) } else { (self.lens[c], false) };
            let q = self.walk(vertical, c, s, fwd, visited, |_| {}).expect("strands end on the boundary");
            partner[p] = q;
            partner[q] = p;
        }
        // closed loops
        loop_of.clear();
        loop_of.resize(self.seg_count, usize::MAX);
        let mut firsts = Vec::new();
        for seg in 0..self.seg_count {
            if visited[seg] {
                continue;
            }
            let c = self.seg_base.partition_point(|&b| b <= seg) - 1;
            let id = firsts.len();
            firsts.push(seg);
            self.walk(vertical, c, seg - self.seg_base[c], true, visited, |g| loop_of[g] = id);
        }
        let fixed = firsts.iter().enumerate().filter(|&(id, &g)| loop_of[self.mirror_seg[g]] == id).count();
        let loops = (firsts.len() + fixed) / 2;
        let two_n = 2 * self.n;
        let mut key = 0u128;
        for i in 0..two_n {
            let q = partner[i];
            let mirrored = if q < two_n { q + two_n } else { q - two_n };
            assert_eq!(partner[i + two_n], mirrored, "uncrossing is not mirror symmetric");
            let code = if q < two_n {
                q + 1
            } else {
                assert_eq!(q, i + two_n, "strand joins i to j' with i != j");
                0
            };
            key |= (code as u128) << (5 * i);
        }
        Trace { key, loops }
    }

    fn decode(&self, key: u128) -> SymTLDiagram {
        let mut edges = Vec::new();
        for i in 0..2 * self.n {
            let code = ((key >> (5 * i)) & 31) as usize;
            if code > i + 1 {
                edges.push((i + 1, code));
            }
        }
        SymTLDiagram::new(self.n, edges).expect("uncrossing yields a non-crossing diagram")
    }
}

fn class_data(map: &ChordMap, bound: usize) -> Result<Vec<bool>> {
    let k = map.classes().len();
    if k > bound || k > 63 || 2 * map.n() > 25 {
        return Err(Error::BoundExceeded { what: "resolution classes", got: k, bound });
    }
    Ok(map.classes().iter().map(|c| map.crossings()[c[0]].class == CrossingClass::Unpaired).collect())
}

fn sign_and_choice(mask: u64, unpaired: &[bool], vertical: &mut [bool]) -> (usize, usize) {
    let (mut uv, mut ph) = (0, 0);
    for (k, &u) in unpaired.iter().enumerate() {
        let v = mask >> k & 1 == 1;
        vertical[k] = v;
        if u && v {
            uv += 1;
        }
        if !u && !v {
            ph += 1;
        }
    }
    (uv, ph)
}

/// Every uncrossing of the map, one per choice of resolution for each class.
pub fn enumerate_uncrossings(map: &ChordMap, bound: usize) -> Result<Vec<Uncrossing>> {
    let unpaired = class_data(map, bound)?;
    let tracer = Tracer::new(map);
    let k = unpaired.len();
    let mut vertical = vec![false; k];
    let (mut visited, mut loop_of) = (Vec::new(), Vec::new());
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0..(1u64 << k) {
        let (uv, ph) = sign_and_choice(mask, &unpaired, &mut vertical);
        let t = tracer.trace(&vertical, &mut visited, &mut loop_of);
        let sign = if (uv + ph) % 2 == 0 { 1 } else { -1 };
        out.push(Uncrossing {
            resolutions: vertical
                .iter()
                .map(|&v| if v { Resolution::Vertical } else { Resolution::Horizontal })
                .collect(),
            diagram: tracer.decode(t.key),
            loops: t.loops,
            uv,
            ph,
            weight: sign << t.loops,
        });
    }
    Ok(out)
}

/// Total weight of the uncrossings per resulting diagram; zero totals are dropped.
pub fn weight_table(map: &ChordMap, bound: usize) -> Result<BTreeMap<SymTLDiagram, i64>> {
    let unpaired = class_data(map, bound)?;
    let tracer = Tracer::new(map);
    let k = unpaired.len();
    let total = 1u64 << k;
    let chunk = (total / 64).max(1024);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let merged = starts
        .into_par_iter()
        .map(|lo| {
            let mut acc: HashMap<u128, i64> = HashMap::new();
            let mut vertical = vec![false; k];
            let (mut visited, mut loop_of) = (Vec::new(), Vec::new());
            for mask in lo..(lo + chunk).min(total) {
                let (uv, ph) = sign_and_choice(mask, &unpaired, &mut vertical);
                let t = tracer.trace(&vertical, &mut visited, &mut loop_of);
                let sign: i64 = if (uv + ph) % 2 == 0 { 1 } else { -1 };
                *acc.entry(t.key).or_insert(0) += sign << t.loops;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (key, w) in b {
                *a.entry(key).or_insert(0) += w;
            }
            a
        });
    Ok(merged
        .into_iter()
        .filter(|&(_, w)| w != 0)
        .map(|(key, w)| (tracer.decode(key), w))
        .collect())
}

/// `f_D(π)` for every `D`, from the embedding of `ν(π)` chosen by `seed`.
pub fn f_coefficient(pi: &Matching, seed: u64) -> Result<BTreeMap<SymTLDiagram, i64>> {
    weight_table(&ChordMap::embed_nu_pi(pi, seed), DEFAULT_CLASS_BOUND)
}

/// `g_D(d)` for every `D`, from the embedding of `ν(d)` chosen by `seed`.
pub fn g_coefficient(d: &OrdinaryTLDiagram, seed: u64) -> Result<BTreeMap<SymTLDiagram, i64>> {
    weight_table(&ChordMap::embed_nu_d(d, seed), DEFAULT_CLASS_BOUND)
}

/// `g̃_D(d) = (-1)^(z(d) n) g_D(d)`.
pub fn g_tilde(d: &OrdinaryTLDiagram, seed: u64) -> Result<BTreeMap<SymTLDiagram, i64>> {
    let flip = (d.z() * d.n()) % 2 == 1;
    Ok(g_coefficient(d, seed)?.into_iter().map(|(k, v)| (k, if flip { -v } else { v })).collect())
}
