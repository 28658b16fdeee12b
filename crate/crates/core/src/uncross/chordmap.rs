use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{Matching, OrdinaryTLDiagram};

/// A boundary point of the rectangle `[2n] ∪ [2n]'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Left(usize),
    Right(usize),
}

impl Point {
    pub fn mirror(self) -> Point {
        match self {
            Point::Left(i) => Point::Right(i),
            Point::Right(i) => Point::Left(i),
        }
    }

    /// Position in the cyclic boundary order `1, …, 2n, 2n', …, 1'`.
    fn cyclic_position(self, n: usize) -> usize {
        match self {
            Point::Left(i) => i - 1,
            Point::Right(i) => 4 * n - i,
        }
    }
}

/// How two chords meet at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingClass {
    /// A chord crossing its own mirror image; fixed by the reflection.
    Unpaired,
    /// One of a mirror orbit of two crossings; holds the partner's index.
    Paired(usize),
}

#[derive(Clone, Debug)]
pub struct Chord {
    /// Left endpoint for left-right chords, otherwise the endpoint with the smaller label.
    pub start: Point,
    pub end: Point,
    /// Crossing indices ordered from `start` to `end`.
    pub crossings: Vec<usize>,
    /// Index of the mirror chord.
    pub mirror: usize,
}

impl Chord {
    pub fn is_left_right(&self) -> bool {
        matches!((self.start, self.end), (Point::Left(_), Point::Right(_)))
    }
}

#[derive(Clone, Debug)]
pub struct Crossing {
    pub chords: [usize; 2],
    /// Position of this crossing in each chord's crossing list.
    pub positions: [usize; 2],
    pub class: CrossingClass,
    pub point: (BigRational, BigRational),
}

/// A mirror-symmetric straight-chord embedding of a symmetric matching in a disk.
#[derive(Clone, Debug)]
pub struct ChordMap {
    n: usize,
    chords: Vec<Chord>,
    crossings: Vec<Crossing>,
    /// Resolution classes: each unpaired crossing alone, each paired orbit together.
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    placement: Vec<BigRational>,
}

fn rational_from(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Point of the unit circle on the left half for parameter `u ∈ (-1, 1)`:
/// `u → -1` is the top, `u → 1` the bottom.
fn circle_point(u: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let u2 = u * u;
    let denom = &one + &u2;
    let x = -((&one - &u2) / &denom);
    let y = -(BigRational::from_integer(BigInt::from(2)) * u) / &denom;
    (x, y)
}

fn cross(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn sub(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    (&a.0 - &b.0, &a.1 - &b.1)
}

impl ChordMap {
    /// Embeds `ν(π)`: chords `(i, j')` and `(j, i')` for every edge `(i, j)` of `π`.
    pub fn embed_nu_pi(pi: &Matching, seed: u64) -> ChordMap {
        let mut pairs = Vec::new();
        for &(i, j) in pi.edges() {
            pairs.push((Point::Left(i), Point::Right(j)));
            pairs.push((Point::Left(j), Point::Right(i)));
        }
        ChordMap::embed(pi.n(), pairs, seed)
    }

    /// Embeds `ν(d)`: the left side of `d` becomes `1..n`, its right side
    /// (labels `2n, …, n+1` from the top) becomes `(n+1)', …, (2n)'`, and every
    /// edge is doubled by its mirror image.
    pub fn embed_nu_d(d: &OrdinaryTLDiagram, seed: u64) -> ChordMap {
        let n = d.n();
        let place = |v: usize| if v <= n { Point::Left(v) } else { Point::Right(3 * n + 1 - v) };
        let mut pairs = Vec::new();
        for &(a, b) in d.edges() {
            let (p, q) = (place(a), place(b));
            pairs.push((p, q));
            pairs.push((p.mirror(), q.mirror()));
        }
        ChordMap::embed(n, pairs, seed)
    }

    /// Embeds an arbitrary mirror-symmetric perfect matching of the `4n` boundary points.
    pub fn embed(n: usize, pairs: Vec<(Point, Point)>, seed: u64) -> ChordMap {
        let mut chords: Vec<Chord> = pairs
            .into_iter()
            .map(|(p, q)| {
                let (start, end) = match (p, q) {
                    (Point::Right(_), Point::Left(_)) => (q, p),
                    _ if q < p => (q, p),
                    _ => (p, q),
                };
                Chord { start, end, crossings: Vec::new(), mirror: usize::MAX }
            })
            .collect();
        let index: HashMap<(Point, Point), usize> =
            chords.iter().enumerate().map(|(k, c)| ((c.start, c.end), k)).collect();
        for k in 0..chords.len() {
            let (a, b) = (chords[k].start.mirror(), chords[k].end.mirror());
            let key = if index.contains_key(&(a, b)) { (a, b) } else { (b, a) };
            chords[k].mirror = *index.get(&key).expect("matching is mirror symmetric");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let placement = random_placement(n, &mut rng);
            if let Some(map) = ChordMap::try_build(n, chords.clone(), placement) {
                return map;
            }
        }
    }

    fn try_build(n: usize, mut chords: Vec<Chord>, placement: Vec<BigRational>) -> Option<ChordMap> {
        let coords: Vec<(BigRational, BigRational)> = placement.iter().map(circle_point).collect();
        let coord = |p: Point| -> (BigRational, BigRational) {
            match p {
                Point::Left(i) => coords[i - 1].clone(),
                Point::Right(i) => {
                    let (x, y) = &coords[i - 1];
                    (-x.clone(), y.clone())
                }
            }
        };
        let ends: Vec<_> = chords.iter().map(|c| (coord(c.start), coord(c.end))).collect();
        // (chord a, chord b, parameter along a, parameter along b, point)
        let mut raw = Vec::new();
        let mut seen_points = HashSet::new();
        for a in 0..chords.len() {
            for b in a + 1..chords.len() {
                if !interleaved(n, &chords[a], &chords[b]) {
                    continue;
                }
                let (p1, q1) = &ends[a];
                let (p2, q2) = &ends[b];
                let d1 = sub(q1, p1);
                let d2 = sub(q2, p2);
                let denom = cross(&d1, &d2);
                if denom.is_zero() {
                    return None;
                }
                let w = sub(p2, p1);
                let t = cross(&w, &d2) / &denom;
                let s = cross(&w, &d1) / &denom;
                debug_assert!(t.is_positive() && s.is_positive());
                let point = (&p1.0 + &t * &d1.0, &p1.1 + &t * &d1.1);
                if !seen_points.insert(point.clone()) {
                    // three or more chords through one point
                    return None;
                }
                raw.push((a, b, t, s, point));
            }
        }
        // order crossings along every chord
        let mut along: Vec<Vec<(BigRational, usize)>> = vec![Vec::new(); chords.len()];
        for (x, (a, b, t, s, _)) in raw.iter().enumerate() {
            along[*a].push((t.clone(), x));
            along[*b].push((s.clone(), x));
        }
        let mut positions = vec![[0usize; 2]; raw.len()];
        for (c, list) in along.iter_mut().enumerate() {
            list.sort_by(|x, y| x.0.cmp(&y.0));
            chords[c].crossings = list.iter().map(|&(_, x)| x).collect();
            for (pos, &(_, x)) in list.iter().enumerate() {
                let slot = if raw[x].0 == c { 0 } else { 1 };
                positions[x][slot] = pos;
            }
        }
        let by_pair: HashMap<(usize, usize), usize> =
            raw.iter().enumerate().map(|(x, r)| ((r.0, r.1), x)).collect();
        let mut crossings = Vec::with_capacity(raw.len());
        for (x, (a, b, _, _, point)) in raw.iter().enumerate() {
            let class = if chords[*a].mirror == *b {
                CrossingClass::Unpaired
            } else {
                let (ma, mb) = (chords[*a].mirror, chords[*b].mirror);
                let key = (ma.min(mb), ma.max(mb));
                let partner = *by_pair.get(&key).expect("crossing set is mirror symmetric");
                CrossingClass::Paired(partner)
            };
            crossings.push(Crossing {
                chords: [*a, *b],
                positions: positions[x],
                class,
                point: point.clone(),
            });
        }
        let mut class_of = vec![usize::MAX; crossings.len()];
        let mut classes = Vec::new();
        for x in 0..crossings.len() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members = match crossings[x].class {
                CrossingClass::Unpaired => vec![x],
                CrossingClass::Paired(p) => vec![x, p],
            };
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        Some(ChordMap { n, chords, crossings, classes, class_of, placement })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, crossing: usize) -> usize {
        self.class_of[crossing]
    }

    pub fn unpaired_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.class == CrossingClass::Unpaired).count()
    }

    pub fn paired_orbit_count(&self) -> usize {
        self.classes.len() - self.unpaired_count()
    }

    /// Placement parameters of the left points, top to bottom.
    pub fn placement(&self) -> &[BigRational] {
        &self.placement
    }

    /// The crossing order along every chord, which determines the embedding
    /// up to isotopy.
    pub fn signature(&self) -> Vec<Vec<(Point, Point)>> {
        self.chords
            .iter()
            .enumerate()
            .map(|(k, c)| {
                c.crossings
                    .iter()
                    .map(|&x| {
                        let [a, b] = self.crossings[x].chords;
                        let other = &self.chords[if a == k { b } else { a }];
                        (other.start, other.end)
                    })
                    .collect()
            })
            .collect()
    }
}

fn interleaved(n: usize, a: &Chord, b: &Chord) -> bool {
    let (mut p, mut q) = (a.start.cyclic_position(n), a.end.cyclic_position(n));
    if p > q {
        std::mem::swap(&mut p, &mut q);
    }
    let inside = |x: usize| p < x && x < q;
    inside(b.start.cyclic_position(n)) != inside(b.end.cyclic_position(n))
}

/// Strictly increasing parameters in `(-1, 1)` for the left points, each
/// jittered inside its own slot.
fn random_placement(n: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let m = 2 * n as i64;
    const DEN: i64 = 1009;
    (0..m)
        .map(|k| {
            let jitter: i64 = rng.gen_range(-(DEN * 2 / 5)..=(DEN * 2 / 5));
            // slot centre -1 + (2k+1)/m, jitter up to 0.4 of the half-width
            rational_from((2 * k + 1 - m) * DEN + jitter, m * DEN)
        })
        .collect()
}
