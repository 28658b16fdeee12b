use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::shapes::SkewShiftedShape;
use crate::error::{Error, Result};
use crate::exact_poly::{ExactPolynomial, Monomial, Variable};

/// Largest `|λ|` accepted by [`schur_q`].
pub const SHAPE_BOUND: usize = 24;

/// Fillings of the cells with `i'` and `i` alone: primes precede unprimed
/// letters along rows and columns, at most one prime per row and at most
/// one unprimed letter per column.
fn strip_fillings(cells: &[(usize, usize)]) -> u64 {
    let m = cells.len();
    if m > 20 {
        return 0;
    }
    let mut count = 0;
    'outer: for mask in 0u32..1 << m {
        // bit set = primed
        for (a, &(r1, c1)) in cells.iter().enumerate() {
            let pa = mask >> a & 1 == 1;
            for (b, &(r2, c2)) in cells.iter().enumerate().skip(a + 1) {
                let pb = mask >> b & 1 == 1;
                if r1 == r2 {
                    let (left, right) = if c1 < c2 { (pa, pb) } else { (pb, pa) };
                    if (left && right) || (!left && right) {
                        continue 'outer;
                    }
                }
                if c1 == c2 {
                    let (top, bottom) = if r1 < r2 { (pa, pb) } else { (pb, pa) };
                    if (!top && !bottom) || (!top && bottom) {
                        continue 'outer;
                    }
                }
            }
        }
        count += 1;
    }
    count
}

/// Strict partitions `ν` with `inner ⊆ ν ⊆ outer`.
fn between(outer: &[usize], inner: &[usize]) -> Vec<Vec<usize>> {
    fn rec(i: usize, outer: &[usize], inner: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == outer.len() {
            let mut v = cur.clone();
            while v.last() == Some(&0) {
                v.pop();
            }
            out.push(v);
            return;
        }
        let lo = inner.get(i).copied().unwrap_or(0);
        let prev = if i == 0 { usize::MAX } else { cur[i - 1] };
        for p in lo..=outer[i] {
            // strictly decreasing until the first zero part
            if p > 0 && prev != usize::MAX && p >= prev {
                continue;
            }
            if p > 0 && prev == 0 {
                continue;
            }
            cur.push(p);
            rec(i + 1, outer, inner, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, outer, inner, &mut Vec::new(), &mut out);
    out
}

type Memo = HashMap<(Vec<usize>, Vec<usize>, usize), ExactPolynomial>;

fn memo() -> &'static Mutex<Memo> {
    static MEMO: OnceLock<Mutex<Memo>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn q_rec(outer: &[usize], inner: &[usize], k: usize) -> ExactPolynomial {
    if outer == inner {
        return ExactPolynomial::one();
    }
    if k == 0 {
        return ExactPolynomial::zero();
    }
    let key = (outer.to_vec(), inner.to_vec(), k);
    if let Some(p) = memo().lock().expect("memo lock").get(&key) {
        return p.clone();
    }
    let mut out = ExactPolynomial::zero();
    for nu in between(outer, inner) {
        let strip = SkewShiftedShape::new(outer, &nu).expect("intermediate shape").cells();
        let c = strip_fillings(&strip);
        if c == 0 {
            continue;
        }
        let rest = q_rec(&nu, inner, k - 1);
        if rest.is_zero() {
            continue;
        }
        let mono = if strip.is_empty() {
            Monomial::one()
        } else {
            Monomial::from_factors([(Variable::indet(k), strip.len() as u32)])
        };
        out.add_scaled(&rest.mul_monomial(&mono, &crate::exact_poly::rat(1)), &crate::exact_poly::rat(c as i64));
    }
    memo().lock().expect("memo lock").insert(key, out.clone());
    out
}

/// `Q_{λ/μ}(x_1, …, x_k)`: the weight generating function of shifted tableaux
/// of shape `λ/μ` in the letters `1' < 1 < … < k' < k`, built letter by letter.
pub fn schur_q(shape: &SkewShiftedShape, k: usize) -> Result<ExactPolynomial> {
    if k == 0 {
        return Err(Error::InsufficientVariables { k, degree: shape.size() });
    }
    let size: usize = shape.outer().iter().sum();
    if size > SHAPE_BOUND {
        return Err(Error::BoundExceeded { what: "|λ|", got: size, bound: SHAPE_BOUND });
    }
    Ok(q_rec(shape.outer(), shape.inner(), k))
}

/// `Q_r` with `Q_0 = 1` and `Q_{-r} = 0`.
pub fn q_row(r: i64, k: usize) -> ExactPolynomial {
    match r {
        r if r < 0 => ExactPolynomial::zero(),
        0 => ExactPolynomial::one(),
        r => q_rec(&[r as usize], &[], k),
    }
}

/// `Q_{(r,s)}` for any `r, s ≥ 0`, extended by `Q_{(r,r)} = 0` and
/// `Q_{(r,s)} = -Q_{(s,r)}`.
pub fn q_pair(r: usize, s: usize, k: usize) -> ExactPolynomial {
    use std::cmp::Ordering::*;
    match r.cmp(&s) {
        Equal => ExactPolynomial::zero(),
        Less => -q_pair(s, r, k),
        Greater if s == 0 => q_row(r as i64, k),
        Greater => q_rec(&[r, s], &[], k),
    }
}
