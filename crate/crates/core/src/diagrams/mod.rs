//! Perfect matchings, symmetric Temperley-Lieb diagrams and ordinary
//! Temperley-Lieb diagrams, with the combinatorics built on them.

mod matching;
mod ordinary;
mod symmetric;

pub use matching::{enumerate_matchings, Matching, DEFAULT_MATCHING_BOUND};
pub use ordinary::{enumerate_tl, OrdinaryTLDiagram};
pub use symmetric::{
    compatible_diagrams, enumerate_sym_tl, enumerate_sym_tl_even, i_maximal_diagrams,
    is_standard, subset_bijection, subset_bijection_inv, SymTLDiagram, DEFAULT_DIAGRAM_BOUND,
};

/// Parses `(i,j)(k,l)...` into pairs.
pub(crate) fn parse_pairs(body: &str) -> Option<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let r = rest.strip_prefix('(')?;
        let close = r.find(')')?;
        let (i, j) = r[..close].split_once(',')?;
        out.push((i.trim().parse().ok()?, j.trim().parse().ok()?));
        rest = r[close + 1..].trim_start();
    }
    Some(out)
}

pub(crate) fn render_pairs(prefix: char, edges: &[(usize, usize)]) -> String {
    let mut s = String::new();
    s.push(prefix);
    s.push('[');
    for (i, j) in edges {
        s.push_str(&format!("({i},{j})"));
    }
    s.push(']');
    s
}

/// Subsets of `{1..m}` of the given size, in lexicographic order.
pub fn subsets_of_size(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..=m {
            if m - x + 1 < size - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= m {
        rec(1, m, size, &mut Vec::new(), &mut out);
    }
    out
}

/// All even-cardinality subsets of `{1..m}`, by size then lexicographically.
pub fn even_subsets(m: usize) -> Vec<Vec<usize>> {
    (0..=m).step_by(2).flat_map(|s| subsets_of_size(m, s)).collect()
}

/// Complement of `set` in `{1..m}`.
pub fn complement(set: &[usize], m: usize) -> Vec<usize> {
    (1..=m).filter(|x| !set.contains(x)).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_round_trip() {
        let e = vec![(1, 2), (3, 4)];
        let s = render_pairs('V', &e);
        assert_eq!(s, "V[(1,2)(3,4)]");
        assert_eq!(parse_pairs(&s[2..s.len() - 1]).unwrap(), e);
        assert_eq!(parse_pairs("").unwrap(), vec![]);
    }

    #[test]
    fn subset_helpers() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(even_subsets(4).len(), 8);
        assert_eq!(complement(&[1, 3], 4), vec![2, 4]);
        assert_eq!(binomial(16, 8), 12870);
    }
}
