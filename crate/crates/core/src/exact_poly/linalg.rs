use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{ExactPolynomial, Monomial};

/// Outcome of [`express_in_span`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanResult {
    Coefficients(Vec<BigRational>),
    NotInSpan,
}

impl SpanResult {
    pub fn coefficients(&self) -> Option<&[BigRational]> {
        match self {
            SpanResult::Coefficients(c) => Some(c),
            SpanResult::NotInSpan => None,
        }
    }
}

fn monomial_index<'a, I: IntoIterator<Item = &'a ExactPolynomial>>(
    polys: I,
) -> BTreeMap<Monomial, usize> {
    let mut idx = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = idx.len();
            idx.entry(m.clone()).or_insert(next);
        }
    }
    idx
}

/// Reduces `m` to row echelon form in place; returns the pivot columns.
pub fn row_reduce(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = BigRational::one() / m[row][col].clone();
        for c in col..cols {
            let v = &m[row][c] * &inv;
            m[row][c] = v;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for c in col..cols {
                if !pivot_row[c].is_zero() {
                    let v = &other[c] - &factor * &pivot_row[c];
                    other[c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a dense rational matrix.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut m = rows.to_vec();
    row_reduce(&mut m, cols).len()
}

/// Rank of the coefficient matrix whose rows are the given polynomials and
/// whose columns are the monomials that occur.
pub fn matrix_rank(rows: &[ExactPolynomial]) -> usize {
    let idx = monomial_index(rows);
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|p| {
            let mut r = vec![BigRational::zero(); idx.len()];
            for (mono, c) in p.terms() {
                r[idx[mono]] = c.clone();
            }
            r
        })
        .collect();
    row_reduce(&mut m, idx.len()).len()
}

/// Finds rational `c` with `sum c_i * generators[i] == target`, or certifies
/// that no such combination exists. Free coefficients are set to zero.
pub fn express_in_span(target: &ExactPolynomial, generators: &[ExactPolynomial]) -> SpanResult {
    let idx = monomial_index(generators.iter().chain(std::iter::once(target)));
    let g = generators.len();
    // one equation per monomial, unknowns are the generator coefficients
    let mut m = vec![vec![BigRational::zero(); g + 1]; idx.len()];
    for (col, p) in generators.iter().enumerate() {
        for (mono, c) in p.terms() {
            m[idx[mono]][col] = c.clone();
        }
    }
    for (mono, c) in target.terms() {
        m[idx[mono]][g] = c.clone();
    }
    let pivots = row_reduce(&mut m, g + 1);
    if pivots.last() == Some(&g) {
        return SpanResult::NotInSpan;
    }
    let mut coeffs = vec![BigRational::zero(); g];
    for (row, &col) in pivots.iter().enumerate() {
        coeffs[col] = m[row][g].clone();
    }
    SpanResult::Coefficients(coeffs)
}

/// Recombines generators with the given coefficients.
pub fn combine(coeffs: &[BigRational], generators: &[ExactPolynomial]) -> ExactPolynomial {
    let mut out = ExactPolynomial::zero();
    for (c, p) in coeffs.iter().zip(generators) {
        out.add_scaled(p, c);
    }
    out
}
