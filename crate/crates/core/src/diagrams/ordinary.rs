use std::fmt;

use super::{parse_pairs, render_pairs};
use crate::error::{Error, Result};

/// A Temperley-Lieb diagram on `2n` points: `1..n` down the left side of a
/// rectangle and `n+1..2n` up the right side, matched without crossings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrdinaryTLDiagram {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl OrdinaryTLDiagram {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<OrdinaryTLDiagram> {
        let mut norm: Vec<(usize, usize)> =
            edges.into_iter().map(|(i, j)| if i < j { (i, j) } else { (j, i) }).collect();
        norm.sort();
        let m = 2 * n;
        let mut used = vec![false; m + 1];
        for &(i, j) in &norm {
            if i == 0 || j > m || i == j || used[i] || used[j] {
                return Err(Error::InvalidDiagram(format!("bad TL diagram {norm:?}")));
            }
            used[i] = true;
            used[j] = true;
        }
        if norm.len() != n {
            return Err(Error::InvalidDiagram(format!("TL diagram {norm:?} is not perfect")));
        }
        for (a, &(i, j)) in norm.iter().enumerate() {
            for &(k, l) in &norm[a + 1..] {
                if (i < k && k < j && j < l) || (k < i && i < l && l < j) {
                    return Err(Error::InvalidDiagram(format!("TL diagram {norm:?} crosses")));
                }
            }
        }
        Ok(OrdinaryTLDiagram { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The diagram joining left point `i` to the right point at the same height.
    pub fn identity(n: usize) -> OrdinaryTLDiagram {
        OrdinaryTLDiagram { n, edges: (1..=n).map(|i| (i, 2 * n + 1 - i)).collect() }
    }

    /// Number of edges with both ends on the left side.
    pub fn z(&self) -> usize {
        self.edges.iter().filter(|&&(_, j)| j <= self.n).count()
    }

    /// Every edge joins a point of `set` to a point outside it.
    pub fn is_compatible(&self, set: &[usize]) -> bool {
        self.edges.iter().all(|&(i, j)| set.contains(&i) != set.contains(&j))
    }

    pub fn key(&self) -> String {
        render_pairs('T', &self.edges)
    }

    pub fn parse_key(n: usize, key: &str) -> Result<OrdinaryTLDiagram> {
        let body = key
            .trim()
            .strip_prefix("T[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad TL key {key:?}")))?;
        let pairs = parse_pairs(body).ok_or_else(|| Error::Parse(format!("bad TL key {key:?}")))?;
        OrdinaryTLDiagram::new(n, pairs)
    }
}

impl fmt::Display for OrdinaryTLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// All Catalan-many diagrams of `TL_n`, sorted by edge list.
pub fn enumerate_tl(n: usize) -> Vec<OrdinaryTLDiagram> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo > hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for j in (lo + 1..=hi).step_by(2) {
            for inner in rec(lo + 1, j - 1) {
                for outer in rec(j + 1, hi) {
                    let mut e = vec![(lo, j)];
                    e.extend(&inner);
                    e.extend(&outer);
                    e.sort();
                    out.push(e);
                }
            }
        }
        out
    }
    let mut out: Vec<OrdinaryTLDiagram> =
        rec(1, 2 * n).into_iter().map(|edges| OrdinaryTLDiagram { n, edges }).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let cat = [1, 1, 2, 5, 14, 42, 132];
        for n in 1..=6 {
            assert_eq!(enumerate_tl(n).len(), cat[n]);
        }
    }

    #[test]
    fn identity_and_z() {
        let id = OrdinaryTLDiagram::identity(2);
        assert_eq!(id.key(), "T[(1,4)(2,3)]");
        assert_eq!(id.z(), 0);
        let cup = OrdinaryTLDiagram::new(2, vec![(1, 2), (3, 4)]).unwrap();
        assert_eq!(cup.z(), 1);
        assert!(OrdinaryTLDiagram::new(2, vec![(1, 3), (2, 4)]).is_err());
        assert_eq!(OrdinaryTLDiagram::parse_key(2, "T[(1,2)(3,4)]").unwrap(), cup);
    }
}
