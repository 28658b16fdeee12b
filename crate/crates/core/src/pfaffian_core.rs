//! Pfaffians, sub-pfaffians, complementary pfaffians and determinants.

use std::collections::HashMap;

use crate::diagrams::{complement, Matching};
use crate::error::{Error, Result};
use crate::exact_poly::{ExactPolynomial, Variable};

/// A skew-symmetric `dim × dim` matrix stored by its strict upper triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewArray {
    dim: usize,
    upper: Vec<ExactPolynomial>,
}

impl SkewArray {
    /// Builds the array from `f(i, j)` for `1 <= i < j <= dim`.
    pub fn from_fn<F: FnMut(usize, usize) -> ExactPolynomial>(dim: usize, mut f: F) -> SkewArray {
        let mut upper = Vec::with_capacity(dim * dim.saturating_sub(1) / 2);
        for i in 1..=dim {
            for j in i + 1..=dim {
                upper.push(f(i, j));
            }
        }
        SkewArray { dim, upper }
    }

    /// The generic `2n × 2n` array with entries `a[i,j]`.
    pub fn symbolic(n: usize) -> SkewArray {
        SkewArray::from_fn(2 * n, ExactPolynomial::entry)
    }

    /// The array with zero diagonal blocks and `a[i, j+n] = b[i,j]`.
    pub fn from_block(b: &GeneralMatrix) -> Result<SkewArray> {
        if b.rows != b.cols {
            return Err(Error::SizeMismatch(format!("block {}x{} is not square", b.rows, b.cols)));
        }
        let n = b.rows;
        Ok(SkewArray::from_fn(2 * n, |i, j| {
            if i <= n && j > n {
                b.get(i, j - n).clone()
            } else {
                ExactPolynomial::zero()
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn index(&self, i: usize, j: usize) -> usize {
        // row i (1-based) starts after sum_{r<i} (dim - r) entries
        (i - 1) * self.dim - (i - 1) * i / 2 + (j - i - 1)
    }

    /// Entry `(i, j)` with `a_ji = -a_ij` and zero diagonal.
    pub fn entry(&self, i: usize, j: usize) -> ExactPolynomial {
        assert!(i >= 1 && j >= 1 && i <= self.dim && j <= self.dim, "index out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[self.index(i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[self.index(j, i)],
            std::cmp::Ordering::Equal => ExactPolynomial::zero(),
        }
    }

    pub fn upper_ref(&self, i: usize, j: usize) -> &ExactPolynomial {
        assert!(i < j);
        &self.upper[self.index(i, j)]
    }

    /// Substitutes the entries of this array for the variables `a[i,j]` of `p`.
    pub fn evaluate(&self, p: &ExactPolynomial) -> ExactPolynomial {
        p.substitute(|v| match v {
            Variable::Entry(i, j) if (j as usize) <= self.dim => {
                Some(self.upper_ref(i as usize, j as usize).clone())
            }
            _ => None,
        })
    }

    /// `a_π = prod_{(i,j) ∈ π} a_ij`.
    pub fn matching_product(&self, pi: &Matching) -> ExactPolynomial {
        let mut out = ExactPolynomial::one();
        for &(i, j) in pi.edges() {
            out = &out * self.upper_ref(i, j);
        }
        out
    }

    /// The submatrix on the rows and columns of `rows`, relabeled in order.
    pub fn restrict(&self, rows: &[usize]) -> SkewArray {
        SkewArray::from_fn(rows.len(), |a, b| self.entry(rows[a - 1], rows[b - 1]))
    }
}

/// A rectangular matrix of polynomials, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactPolynomial>,
}

impl GeneralMatrix {
    pub fn from_fn<F: FnMut(usize, usize) -> ExactPolynomial>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        GeneralMatrix { rows, cols, entries }
    }

    /// The `n × n` matrix `b[i,j] = a[i, j+n]`, i.e. the off-diagonal block
    /// of the generic `2n × 2n` skew-symmetric array.
    pub fn symbolic_block(n: usize) -> Self {
        GeneralMatrix::from_fn(n, n, |i, j| ExactPolynomial::entry(i, j + n))
    }

    /// The matrix `[a_ij]` of a skew array, viewed as a square matrix.
    pub fn from_skew(a: &SkewArray) -> Self {
        GeneralMatrix::from_fn(a.dim(), a.dim(), |i, j| a.entry(i, j))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactPolynomial {
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }
}

fn check_subset(set: &[usize], dim: usize) -> Result<()> {
    if set.iter().any(|&x| x == 0 || x > dim) {
        return Err(Error::SizeMismatch(format!("{set:?} is not a subset of [{dim}]")));
    }
    if set.len() % 2 == 1 {
        return Err(Error::OddSubset(set.to_vec()));
    }
    Ok(())
}

/// `pf_I(A)`: the pfaffian of the submatrix on `I`; `pf_∅ = 1`.
pub fn pfaffian(a: &SkewArray, set: &[usize]) -> Result<ExactPolynomial> {
    check_subset(set, a.dim())?;
    let mut rows = set.to_vec();
    rows.sort();
    rows.dedup();
    if rows.len() != set.len() {
        return Err(Error::SizeMismatch(format!("{set:?} has repeated elements")));
    }
    let mut memo = HashMap::new();
    Ok(pf_rec(a, &rows, (1u64 << rows.len()) - 1, &mut memo))
}

/// Full pfaffian of `A`.
pub fn pfaffian_full(a: &SkewArray) -> Result<ExactPolynomial> {
    let all: Vec<usize> = (1..=a.dim()).collect();
    pfaffian(a, &all)
}

fn pf_rec(a: &SkewArray, rows: &[usize], mask: u64, memo: &mut HashMap<u64, ExactPolynomial>) -> ExactPolynomial {
    if mask == 0 {
        return ExactPolynomial::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut out = ExactPolynomial::zero();
    let mut sign_positive = true;
    let mut bits = rest;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= !(1 << k);
        let entry = a.entry(rows[first], rows[k]);
        if !entry.is_zero() {
            let sub = pf_rec(a, rows, rest & !(1 << k), memo);
            let term = &entry * &sub;
            if sign_positive {
                out += &term;
            } else {
                out -= &term;
            }
        }
        sign_positive = !sign_positive;
    }
    memo.insert(mask, out.clone());
    out
}

/// `pf_{I,Ī}(A) = pf_I(A) · pf_Ī(A)`.
pub fn complementary_pfaffian(a: &SkewArray, set: &[usize]) -> Result<ExactPolynomial> {
    check_subset(set, a.dim())?;
    let comp = complement(set, a.dim());
    Ok(&pfaffian(a, set)? * &pfaffian(a, &comp)?)
}

/// Determinant by Laplace expansion along rows, memoized on column sets.
pub fn determinant(m: &GeneralMatrix) -> Result<ExactPolynomial> {
    if m.rows != m.cols {
        return Err(Error::SizeMismatch(format!("{}x{} matrix is not square", m.rows, m.cols)));
    }
    let rows: Vec<usize> = (1..=m.rows).collect();
    let cols: Vec<usize> = (1..=m.cols).collect();
    Ok(det_of(m, &rows, &cols))
}

fn det_of(m: &GeneralMatrix, rows: &[usize], cols: &[usize]) -> ExactPolynomial {
    let k = rows.len();
    if k == 0 {
        return ExactPolynomial::one();
    }
    let mut memo: HashMap<u64, ExactPolynomial> = HashMap::new();
    fn rec(
        m: &GeneralMatrix,
        rows: &[usize],
        cols: &[usize],
        depth: usize,
        mask: u64,
        memo: &mut HashMap<u64, ExactPolynomial>,
    ) -> ExactPolynomial {
        if depth == rows.len() {
            return ExactPolynomial::one();
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut out = ExactPolynomial::zero();
        let mut position = 0;
        for (c, &col) in cols.iter().enumerate() {
            if mask & (1 << c) != 0 {
                continue;
            }
            let e = m.get(rows[depth], col);
            if !e.is_zero() {
                let sub = rec(m, rows, cols, depth + 1, mask | (1 << c), memo);
                let t = e * &sub;
                if position % 2 == 0 {
                    out += &t;
                } else {
                    out -= &t;
                }
            }
            position += 1;
        }
        memo.insert(mask, out.clone());
        out
    }
    rec(m, rows, cols, 0, 0, &mut memo)
}

/// The minor `Δ_{I,J}(M)` on rows `I` and columns `J`.
pub fn minor(m: &GeneralMatrix, rows: &[usize], cols: &[usize]) -> Result<ExactPolynomial> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(format!("|I| = {} but |J| = {}", rows.len(), cols.len())));
    }
    if rows.iter().any(|&r| r == 0 || r > m.rows) || cols.iter().any(|&c| c == 0 || c > m.cols) {
        return Err(Error::SizeMismatch("minor indices out of range".into()));
    }
    let mut r = rows.to_vec();
    let mut c = cols.to_vec();
    r.sort();
    c.sort();
    Ok(det_of(m, &r, &c))
}

/// `min(I, Ī)`: pair `i_k` with `j_k` (missing `j_k` count as infinity) and
/// keep the smaller of each pair.
pub fn min_partition(set: &[usize], n: usize) -> Result<Vec<usize>> {
    if set.len() % 2 == 1 {
        return Err(Error::OddSubset(set.to_vec()));
    }
    if set.len() < n || set.iter().any(|&x| x == 0 || x > 2 * n) {
        return Err(Error::Precondition(format!("min(I, Ī) needs |I| >= {n}, got {set:?}")));
    }
    let mut i = set.to_vec();
    i.sort();
    let j = complement(&i, 2 * n);
    let mut out: Vec<usize> =
        i.iter().enumerate().map(|(k, &x)| j.get(k).map_or(x, |&y| x.min(y))).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{compatible_diagrams, even_subsets, subsets_of_size};
    use crate::exact_poly::rat;

    fn a(i: usize, j: usize) -> ExactPolynomial {
        ExactPolynomial::entry(i, j)
    }

    #[test]
    fn pfaffian_examples() {
        let s = SkewArray::symbolic(2);
        assert_eq!(pfaffian_full(&s).unwrap().to_string(), "a[1,2]*a[3,4] - a[1,3]*a[2,4] + a[1,4]*a[2,3]");
        assert_eq!(pfaffian(&s, &[1, 3]).unwrap(), a(1, 3));
        assert_eq!(pfaffian(&s, &[]).unwrap(), ExactPolynomial::one());
        assert!(matches!(pfaffian(&s, &[1, 2, 3]), Err(Error::OddSubset(_))));
    }

    #[test]
    fn pfaffian_matches_matching_sum() {
        for n in 1..=4 {
            let s = SkewArray::symbolic(n);
            let mut want = ExactPolynomial::zero();
            for pi in crate::diagrams::enumerate_matchings(n, 6).unwrap() {
                want.add_scaled(&s.matching_product(&pi), &rat(pi.sign()));
            }
            assert_eq!(pfaffian_full(&s).unwrap(), want);
        }
    }

    #[test]
    fn complementary_examples() {
        let s = SkewArray::symbolic(2);
        assert_eq!(complementary_pfaffian(&s, &[1, 2]).unwrap(), &a(1, 2) * &a(3, 4));
        assert_eq!(complementary_pfaffian(&s, &[1, 2, 3, 4]).unwrap(), pfaffian_full(&s).unwrap());
        assert_eq!(complementary_pfaffian(&s, &[1, 3]).unwrap(), &a(1, 3) * &a(2, 4));
    }

    #[test]
    fn determinant_examples() {
        let x = ExactPolynomial::indet(1);
        let y = ExactPolynomial::indet(2);
        let z = ExactPolynomial::indet(3);
        let t = ExactPolynomial::indet(4);
        let vals = [x.clone(), y.clone(), z.clone(), t.clone()];
        let m = GeneralMatrix::from_fn(2, 2, |i, j| vals[(i - 1) * 2 + (j - 1)].clone());
        assert_eq!(determinant(&m).unwrap(), &(&x * &t) - &(&y * &z));
        assert_eq!(minor(&m, &[1], &[2]).unwrap(), y);
        assert!(minor(&m, &[1], &[1, 2]).is_err());
        assert!(determinant(&GeneralMatrix::from_fn(1, 2, |_, _| x.clone())).is_err());
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        for n in 1..=3 {
            let s = SkewArray::symbolic(n);
            let pf = pfaffian_full(&s).unwrap();
            let det = determinant(&GeneralMatrix::from_skew(&s)).unwrap();
            assert_eq!(&pf * &pf, det);
        }
    }

    #[test]
    fn min_partition_examples() {
        assert_eq!(min_partition(&[1, 2], 2).unwrap(), vec![1, 2]);
        assert_eq!(min_partition(&[2, 3], 2).unwrap(), vec![1, 3]);
        assert_eq!(min_partition(&[1, 2, 3, 4], 2).unwrap(), vec![1, 2, 3, 4]);
        assert!(min_partition(&[1], 2).is_err());
    }

    #[test]
    fn block_sign_law() {
        // I is balanced when it has as many elements in [n] as outside it
        for n in 1..=3 {
            let b = GeneralMatrix::symbolic_block(n);
            let arr = SkewArray::from_block(&b).unwrap();
            for set in even_subsets(2 * n) {
                let got = complementary_pfaffian(&arr, &set).unwrap();
                let comp = complement(&set, 2 * n);
                let split = |s: &[usize]| -> (Vec<usize>, Vec<usize>) {
                    (
                        s.iter().copied().filter(|&x| x <= n).collect(),
                        s.iter().copied().filter(|&x| x > n).map(|x| x - n).collect(),
                    )
                };
                let (i1, i2) = split(&set);
                let (c1, c2) = split(&comp);
                if i1.len() != i2.len() {
                    assert!(got.is_zero());
                    continue;
                }
                let choose2 = |k: usize| k * k.saturating_sub(1) / 2;
                let sign = if (choose2(i1.len()) + choose2(c1.len())) % 2 == 0 { 1 } else { -1 };
                let want = (&minor(&b, &i1, &i2).unwrap() * &minor(&b, &c1, &c2).unwrap()).scale_int(sign);
                assert_eq!(got, want, "I = {set:?}");
            }
        }
    }

    #[test]
    fn nonnegative_test_vector() {
        let arr = SkewArray::from_fn(4, |i, j| match (i, j) {
            (1, 2) | (2, 3) => ExactPolynomial::one(),
            _ => ExactPolynomial::zero(),
        });
        for set in even_subsets(4) {
            let v = pfaffian(&arr, &set).unwrap().as_constant().unwrap();
            assert!(v >= rat(0), "pf_{set:?} = {v}");
        }
    }

    #[test]
    fn compatible_sets_grow_under_min_partition() {
        for n in 1..=5 {
            for size in (n..=2 * n).filter(|s| s % 2 == 0) {
                for set in subsets_of_size(2 * n, size) {
                    let m = min_partition(&set, n).unwrap();
                    let big = compatible_diagrams(&m, n).unwrap();
                    for d in compatible_diagrams(&set, n).unwrap() {
                        assert!(big.contains(&d), "{d} in D({set:?}) but not D({m:?})");
                    }
                }
            }
        }
    }
}
