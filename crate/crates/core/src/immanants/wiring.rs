use std::collections::BTreeMap;

use crate::diagrams::OrdinaryTLDiagram;
use crate::error::{Error, Result};

/// A permutation drawn as wires: the wire leaving left height `i` ends at
/// right height `w(i)`, and letter `k` of the word crosses heights `k, k+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    perm: Vec<usize>,
    word: Vec<usize>,
}

fn check_perm(perm: &[usize]) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n + 1];
    for &v in perm {
        if v == 0 || v > n || seen[v] {
            return Err(Error::Parse(format!("{perm:?} is not a permutation of 1..{n}")));
        }
        seen[v] = true;
    }
    Ok(())
}

pub fn inversions(perm: &[usize]) -> usize {
    (0..perm.len()).map(|i| (i + 1..perm.len()).filter(|&j| perm[i] > perm[j]).count()).sum()
}

/// Bubble sort of the final arrangement back to the identity; the swaps read
/// backwards build the arrangement from the identity.
fn bubble_word(perm: &[usize], downward: bool) -> Vec<usize> {
    let n = perm.len();
    let mut at = vec![0; n];
    for (i, &v) in perm.iter().enumerate() {
        at[v - 1] = i + 1;
    }
    let mut swaps = Vec::new();
    loop {
        let mut changed = false;
        let order: Vec<usize> = if downward { (0..n.saturating_sub(1)).collect() } else { (0..n.saturating_sub(1)).rev().collect() };
        for k in order {
            if at[k] > at[k + 1] {
                at.swap(k, k + 1);
                swaps.push(k + 1);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    swaps.reverse();
    swaps
}

impl WiringDiagram {
    /// Reduced word from top-down bubble passes.
    pub fn new(perm: Vec<usize>) -> Result<WiringDiagram> {
        check_perm(&perm)?;
        let word = bubble_word(&perm, true);
        Ok(WiringDiagram { perm, word })
    }

    /// Reduced word from bottom-up bubble passes.
    pub fn alternative(perm: Vec<usize>) -> Result<WiringDiagram> {
        check_perm(&perm)?;
        let word = bubble_word(&perm, false);
        Ok(WiringDiagram { perm, word })
    }

    /// Checks that `word` is reduced and realizes `perm`.
    pub fn with_word(perm: Vec<usize>, word: Vec<usize>) -> Result<WiringDiagram> {
        check_perm(&perm)?;
        let n = perm.len();
        if word.iter().any(|&k| k == 0 || k >= n) {
            return Err(Error::Parse(format!("word {word:?} has letters outside 1..{}", n.saturating_sub(1))));
        }
        let w = WiringDiagram { perm, word };
        if w.word.len() != inversions(&w.perm) || w.realized() != w.perm {
            return Err(Error::Parse(format!("{:?} is not a reduced word for {:?}", w.word, w.perm)));
        }
        Ok(w)
    }

    fn realized(&self) -> Vec<usize> {
        let n = self.perm.len();
        let mut at: Vec<usize> = (1..=n).collect();
        for &k in &self.word {
            at.swap(k - 1, k);
        }
        let mut perm = vec![0; n];
        for (h, &wire) in at.iter().enumerate() {
            perm[wire - 1] = h + 1;
        }
        perm
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The pair of wires (named by their left heights) meeting at each letter.
    pub fn crossings(&self) -> Vec<(usize, usize)> {
        let mut at: Vec<usize> = (1..=self.n()).collect();
        self.word
            .iter()
            .map(|&k| {
                let pair = (at[k - 1].min(at[k]), at[k - 1].max(at[k]));
                at.swap(k - 1, k);
                pair
            })
            .collect()
    }

    /// Resolves the crossings selected by `horizontal` (bit `t` for letter `t`)
    /// horizontally and the rest vertically; returns the diagram and loop count.
    pub fn resolve(&self, horizontal: u64) -> (OrdinaryTLDiagram, usize) {
        let n = self.n();
        const NONE: usize = usize::MAX;
        // nodes 0..2n are the boundary labels 1..2n, the rest are internal
        let mut adj: Vec<[usize; 2]> = vec![[NONE; 2]; 2 * n];
        fn link(adj: &mut [[usize; 2]], a: usize, b: usize) {
            let slot = if adj[a][0] == NONE { 0 } else { 1 };
            adj[a][slot] = b;
            let slot = if adj[b][0] == NONE { 0 } else { 1 };
            adj[b][slot] = a;
        }
        let mut end: Vec<usize> = (0..n).collect();
        for (t, &k) in self.word.iter().enumerate() {
            if horizontal >> t & 1 == 1 {
                continue;
            }
            let (a, b) = (end[k - 1], end[k]);
            link(&mut adj, a, b);
            let fresh = adj.len();
            adj.push([NONE; 2]);
            adj.push([NONE; 2]);
            link(&mut adj, fresh, fresh + 1);
            end[k - 1] = fresh;
            end[k] = fresh + 1;
        }
        for (h, &e) in end.iter().enumerate() {
            // right point at height h+1 carries label 2n - h
            link(&mut adj, e, 2 * n - h - 1);
        }
        let mut seen = vec![false; adj.len()];
        let mut edges = Vec::with_capacity(n);
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            let (mut prev, mut cur) = (start, adj[start][0]);
            seen[start] = true;
            while cur >= 2 * n {
                seen[cur] = true;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            seen[cur] = true;
            edges.push((start + 1, cur + 1));
        }
        let mut loops = 0;
        for start in 2 * n..adj.len() {
            if seen[start] {
                continue;
            }
            loops += 1;
            let (mut prev, mut cur) = (start, adj[start][0]);
            seen[start] = true;
            while cur != start {
                seen[cur] = true;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
        }
        let d = OrdinaryTLDiagram::new(n, edges).expect("resolved wiring diagram is planar");
        (d, loops)
    }

    /// `f_d(w)` for every `d` with a nonzero value: `Σ 2^l (-1)^h` over all
    /// resolutions.
    pub fn coefficients(&self) -> BTreeMap<OrdinaryTLDiagram, i64> {
        let mut out: BTreeMap<OrdinaryTLDiagram, i64> = BTreeMap::new();
        for mask in 0..1u64 << self.word.len() {
            let (d, loops) = self.resolve(mask);
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            *out.entry(d).or_insert(0) += sign << loops;
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}
