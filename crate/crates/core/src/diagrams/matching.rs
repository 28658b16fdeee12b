use std::fmt;

use serde::{Deserialize, Serialize};

use super::{parse_pairs, render_pairs};
use crate::error::{Error, Result};

pub const DEFAULT_MATCHING_BOUND: usize = 6;

/// A perfect matching of `{1..2n}`; edges are stored as `(i, j)` with `i < j`,
/// sorted by the smaller endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Matching> {
        let mut norm: Vec<(usize, usize)> =
            edges.into_iter().map(|(i, j)| if i < j { (i, j) } else { (j, i) }).collect();
        norm.sort();
        let mut seen = vec![false; 2 * n + 1];
        if norm.len() != n {
            return Err(Error::InvalidDiagram(format!("{n} edges expected, got {}", norm.len())));
        }
        for &(i, j) in &norm {
            for v in [i, j] {
                if v == 0 || v > 2 * n || seen[v] {
                    return Err(Error::InvalidDiagram(format!("bad matching {norm:?}")));
                }
                seen[v] = true;
            }
        }
        Ok(Matching { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Partner of vertex `v`.
    pub fn partner(&self, v: usize) -> usize {
        for &(i, j) in &self.edges {
            if i == v {
                return j;
            }
            if j == v {
                return i;
            }
        }
        panic!("vertex {v} not in matching");
    }

    /// Number of pairs `(i,j), (k,l)` with `i < k < j < l`.
    pub fn crossing_number(&self) -> usize {
        let mut cn = 0;
        for (a, &(i, j)) in self.edges.iter().enumerate() {
            for &(k, l) in &self.edges[a + 1..] {
                if (i < k && k < j && j < l) || (k < i && i < l && l < j) {
                    cn += 1;
                }
            }
        }
        cn
    }

    /// `(-1)^cn`.
    pub fn sign(&self) -> i64 {
        if self.crossing_number().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn key(&self) -> String {
        render_pairs('M', &self.edges)
    }

    pub fn parse_key(n: usize, key: &str) -> Result<Matching> {
        let body = key
            .trim()
            .strip_prefix("M[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad matching key {key:?}")))?;
        let pairs = parse_pairs(body).ok_or_else(|| Error::Parse(format!("bad matching key {key:?}")))?;
        Matching::new(n, pairs)
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// All `(2n-1)!!` perfect matchings of `{1..2n}`. The smallest free vertex is
/// matched first, with partners tried in increasing order.
pub fn enumerate_matchings(n: usize, bound: usize) -> Result<Vec<Matching>> {
    if n > bound {
        return Err(Error::BoundExceeded { what: "matchings", got: n, bound });
    }
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, n: usize, out: &mut Vec<Matching>) {
        if free.is_empty() {
            let mut e = cur.clone();
            e.sort();
            out.push(Matching { n, edges: e });
            return;
        }
        let first = free.remove(0);
        for idx in 0..free.len() {
            let partner = free.remove(idx);
            cur.push((first, partner));
            rec(free, cur, n, out);
            cur.pop();
            free.insert(idx, partner);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    rec(&mut (1..=2 * n).collect(), &mut Vec::new(), n, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_matchings(1, 6).unwrap().len(), 1);
        assert_eq!(enumerate_matchings(2, 6).unwrap().len(), 3);
        assert_eq!(enumerate_matchings(4, 6).unwrap().len(), 105);
        assert!(enumerate_matchings(7, 6).is_err());
    }

    #[test]
    fn crossing_numbers() {
        let m = |e: Vec<(usize, usize)>| Matching::new(2, e).unwrap();
        assert_eq!(m(vec![(1, 2), (3, 4)]).crossing_number(), 0);
        assert_eq!(m(vec![(1, 3), (2, 4)]).crossing_number(), 1);
        assert_eq!(m(vec![(1, 4), (2, 3)]).crossing_number(), 0);
    }

    #[test]
    fn key_round_trip() {
        for m in enumerate_matchings(3, 6).unwrap() {
            assert_eq!(Matching::parse_key(3, &m.key()).unwrap(), m);
        }
    }
}
