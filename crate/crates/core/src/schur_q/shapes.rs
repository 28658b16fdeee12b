use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn trim(parts: &[usize]) -> Vec<usize> {
    let mut v = parts.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn is_strict(parts: &[usize]) -> bool {
    let p = trim(parts);
    p.windows(2).all(|w| w[0] > w[1]) && !p.contains(&0)
}

/// A skew shifted diagram `λ/μ`; trailing zero parts are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewShiftedShape {
    outer: Vec<usize>,
    inner: Vec<usize>,
}

impl SkewShiftedShape {
    pub fn new(outer: &[usize], inner: &[usize]) -> Result<SkewShiftedShape> {
        let (outer, inner) = (trim(outer), trim(inner));
        if !is_strict(&outer) || !is_strict(&inner) {
            return Err(Error::InvalidShape(format!("{outer:?}/{inner:?} has a non-strict part list")));
        }
        if inner.len() > outer.len() || inner.iter().zip(&outer).any(|(m, l)| m > l) {
            return Err(Error::InvalidShape(format!("{inner:?} is not contained in {outer:?}")));
        }
        Ok(SkewShiftedShape { outer, inner })
    }

    pub fn straight(outer: &[usize]) -> Result<SkewShiftedShape> {
        SkewShiftedShape::new(outer, &[])
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.iter().sum::<usize>() - self.inner.iter().sum::<usize>()
    }

    /// Cells `(row, column)`, 0-based; row `i` of the shifted diagram starts at column `i`.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &l) in self.outer.iter().enumerate() {
            let m = self.inner.get(i).copied().unwrap_or(0);
            for c in i + m..i + l {
                out.push((i, c));
            }
        }
        out
    }
}

pub fn render_partition(parts: &[usize]) -> String {
    let body: Vec<String> = trim(parts).iter().map(|p| p.to_string()).collect();
    format!("({})", body.join(","))
}

impl fmt::Display for SkewShiftedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            f.write_str(&render_partition(&self.outer))
        } else {
            write!(f, "{}/{}", render_partition(&self.outer), render_partition(&self.inner))
        }
    }
}

/// Parses `"(3,1)"`, `"(3,1)/(2)"` or `"3,1"`.
pub fn parse_partition(s: &str) -> Result<Vec<usize>> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
        .collect()
}

pub fn parse_shape(s: &str) -> Result<SkewShiftedShape> {
    match s.split_once('/') {
        Some((o, i)) => SkewShiftedShape::new(&parse_partition(o)?, &parse_partition(i)?),
        None => SkewShiftedShape::straight(&parse_partition(s)?),
    }
}

fn combine(a: &[usize], b: &[usize], f: fn(usize, usize) -> usize) -> Vec<usize> {
    let len = a.len().max(b.len());
    let at = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
    trim(&(0..len).map(|i| f(at(a, i), at(b, i))).collect::<Vec<_>>())
}

/// `(λ/μ) ∨ (ν/ρ) = (λ∨ν)/(μ∨ρ)` and `(λ/μ) ∧ (ν/ρ) = (λ∧ν)/(μ∧ρ)`, partwise max and min.
pub fn join_meet(a: &SkewShiftedShape, b: &SkewShiftedShape) -> Result<(SkewShiftedShape, SkewShiftedShape)> {
    let join = SkewShiftedShape::new(&combine(&a.outer, &b.outer, usize::max), &combine(&a.inner, &b.inner, usize::max))?;
    let meet = SkewShiftedShape::new(&combine(&a.outer, &b.outer, usize::min), &combine(&a.inner, &b.inner, usize::min))?;
    Ok((join, meet))
}

/// Merge the parts in weakly decreasing order and deal them out alternately.
pub fn sort_split(lambda: &[usize], mu: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if !is_strict(lambda) || !is_strict(mu) {
        return Err(Error::InvalidShape(format!("{lambda:?} and {mu:?} must be strict")));
    }
    let mut all: Vec<usize> = trim(lambda).into_iter().chain(trim(mu)).collect();
    all.sort_by(|a, b| b.cmp(a));
    let first: Vec<usize> = all.iter().step_by(2).copied().collect();
    let second: Vec<usize> = all.iter().skip(1).step_by(2).copied().collect();
    debug_assert!(is_strict(&first) && is_strict(&second));
    Ok((first, second))
}

/// Strict partitions of exactly `size`, largest first part first.
pub fn strict_partitions(size: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, size, &mut Vec::new(), &mut out);
    out
}

/// Strict partitions of every size up to `max_size`.
pub fn strict_partitions_up_to(max_size: usize) -> Vec<Vec<usize>> {
    (0..=max_size).flat_map(strict_partitions).collect()
}

/// Every skew shifted shape `λ/μ` with `|λ| ≤ max_size` (including `μ = ∅`).
pub fn skew_shapes_up_to(max_size: usize) -> Vec<SkewShiftedShape> {
    let mut out = Vec::new();
    for outer in strict_partitions_up_to(max_size) {
        for inner in strict_partitions_up_to(outer.iter().sum()) {
            if let Ok(s) = SkewShiftedShape::new(&outer, &inner) {
                out.push(s);
            }
        }
    }
    out
}

/// Length of the longest strict partition of `d`: the fewest variables in
/// which the `Q_λ` with `|λ| = d` stay linearly independent.
pub fn max_strict_length(d: usize) -> usize {
    let mut l = 0;
    while (l + 1) * (l + 2) / 2 <= d {
        l += 1;
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(o: &[usize], i: &[usize]) -> SkewShiftedShape {
        SkewShiftedShape::new(o, i).unwrap()
    }

    #[test]
    fn shapes_and_parsing() {
        assert!(SkewShiftedShape::new(&[2, 2], &[]).is_err());
        assert!(SkewShiftedShape::new(&[2], &[3]).is_err());
        let s = parse_shape("(3,1)/(2)").unwrap();
        assert_eq!(s, sh(&[3, 1], &[2]));
        assert_eq!(s.to_string(), "(3,1)/(2)");
        assert_eq!(s.cells(), vec![(0, 2), (1, 1)]);
        assert_eq!(parse_shape("(2,1)").unwrap().size(), 3);
        assert_eq!(strict_partitions(6), vec![vec![6], vec![5, 1], vec![4, 2], vec![3, 2, 1]]);
        assert_eq!(max_strict_length(6), 3);
        assert_eq!(max_strict_length(5), 2);
    }

    #[test]
    fn join_meet_examples() {
        assert_eq!(join_meet(&sh(&[3, 1], &[]), &sh(&[2, 1], &[])).unwrap(), (sh(&[3, 1], &[]), sh(&[2, 1], &[])));
        assert_eq!(join_meet(&sh(&[3, 2], &[]), &sh(&[4, 1], &[])).unwrap(), (sh(&[4, 2], &[]), sh(&[3, 1], &[])));
        let (j, m) = join_meet(&sh(&[4, 1], &[2]), &sh(&[3, 2], &[1])).unwrap();
        assert_eq!((j, m), (sh(&[4, 2], &[2]), sh(&[3, 1], &[1])));
    }

    #[test]
    fn sort_split_examples() {
        assert_eq!(sort_split(&[3, 1], &[2]).unwrap(), (vec![3, 1], vec![2]));
        assert_eq!(sort_split(&[2, 1], &[2, 1]).unwrap(), (vec![2, 1], vec![2, 1]));
    }

    #[test]
    fn transfers_keep_strictness() {
        let parts = strict_partitions_up_to(8);
        for a in &parts {
            for b in &parts {
                if a.iter().sum::<usize>() + b.iter().sum::<usize>() > 8 {
                    continue;
                }
                let (s1, s2) = sort_split(a, b).unwrap();
                assert!(is_strict(&s1) && is_strict(&s2));
                join_meet(&sh(a, &[]), &sh(b, &[])).unwrap();
            }
        }
        let skews = skew_shapes_up_to(4);
        for a in &skews {
            for b in &skews {
                join_meet(a, b).unwrap();
            }
        }
    }
}
