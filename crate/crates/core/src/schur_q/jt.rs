use super::shapes::SkewShiftedShape;
use super::tableaux::{q_pair, q_row};
use crate::error::{Error, Result};
use crate::exact_poly::ExactPolynomial;
use crate::pfaffian_core::SkewArray;

/// How the `H` block pairs rows of `λ` with parts of `μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HBlock {
    /// `h_ij = Q_{λ_i - μ_{r+1-j}}`
    Reversed,
    /// `h_ij = Q_{λ_i - μ_j}`
    Direct,
}

fn trimmed(parts: &[usize]) -> Vec<usize> {
    let mut v = parts.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `λ` and `μ` as used for the matrix: `λ` without zero parts, `μ` as given
/// (`μ_r = 0` is allowed), then a trailing zero of `μ` added or dropped when
/// `l + r` is odd.
pub fn padded_parts(lambda: &[usize], mu: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let lambda = trimmed(lambda);
    let mut mu = mu.to_vec();
    if (lambda.len() + mu.len()) % 2 == 1 {
        if mu.last() == Some(&0) {
            mu.pop();
        } else {
            mu.push(0);
        }
    }
    (lambda, mu)
}

fn check_parts(lambda: &[usize], mu: &[usize], allow_nonstrict: bool) -> Result<()> {
    if allow_nonstrict {
        let weakly = |p: &[usize]| p.windows(2).all(|w| w[0] >= w[1]);
        if !weakly(lambda) || !weakly(mu) {
            return Err(Error::InvalidShape(format!("{lambda:?}/{mu:?} is not weakly decreasing")));
        }
        Ok(())
    } else {
        SkewShiftedShape::new(lambda, mu).map(|_| ())
    }
}

/// The `Q`-Jacobi-Trudi matrix `[[A_λ, H], [-H^t, 0]]` with entries in
/// `x_1, …, x_k`. With `allow_nonstrict`, weakly decreasing `λ, μ` give the
/// generalized matrices.
pub fn q_jt_matrix(lambda: &[usize], mu: &[usize], allow_nonstrict: bool, k: usize) -> Result<SkewArray> {
    q_jt_matrix_with(lambda, mu, allow_nonstrict, k, HBlock::Reversed)
}

pub fn q_jt_matrix_with(lambda: &[usize], mu: &[usize], allow_nonstrict: bool, k: usize, h: HBlock) -> Result<SkewArray> {
    check_parts(&trimmed(lambda), &trimmed(mu), allow_nonstrict)?;
    if k == 0 {
        return Err(Error::InsufficientVariables { k, degree: lambda.iter().sum() });
    }
    let (lambda, mu) = padded_parts(lambda, mu);
    let (l, r) = (lambda.len(), mu.len());
    Ok(SkewArray::from_fn(l + r, |i, j| {
        if j <= l {
            q_pair(lambda[i - 1], lambda[j - 1], k)
        } else if i <= l {
            let col = j - l;
            let m = match h {
                HBlock::Reversed => mu[r - col],
                HBlock::Direct => mu[col - 1],
            };
            q_row(lambda[i - 1] as i64 - m as i64, k)
        } else {
            ExactPolynomial::zero()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfaffian_core::pfaffian_full;
    use crate::schur_q::{schur_q, skew_shapes_up_to, SkewShiftedShape};

    fn sign(r: usize) -> i64 {
        if (r * r.saturating_sub(1) / 2).is_multiple_of(2) { 1 } else { -1 }
    }

    #[test]
    fn padding() {
        assert_eq!(padded_parts(&[2, 1], &[]), (vec![2, 1], vec![]));
        assert_eq!(padded_parts(&[3, 1], &[2]), (vec![3, 1], vec![2, 0]));
        assert_eq!(padded_parts(&[3], &[]), (vec![3], vec![0]));
        assert_eq!(padded_parts(&[3], &[1, 0]), (vec![3], vec![1]));
    }

    #[test]
    fn examples() {
        let a = q_jt_matrix(&[2, 1], &[], false, 3).unwrap();
        assert_eq!(pfaffian_full(&a).unwrap(), schur_q(&SkewShiftedShape::straight(&[2, 1]).unwrap(), 3).unwrap());
        let a = q_jt_matrix(&[3, 1], &[2], false, 4).unwrap();
        assert_eq!(pfaffian_full(&a).unwrap(), schur_q(&SkewShiftedShape::new(&[3, 1], &[2]).unwrap(), 4).unwrap());
        assert!(q_jt_matrix(&[2, 2], &[], false, 2).is_err());
        assert!(q_jt_matrix(&[2, 2], &[], true, 2).is_ok());
    }

    #[test]
    fn pfaffian_formula_and_sign_variant() {
        for shape in skew_shapes_up_to(6) {
            let q = schur_q(&shape, 3).unwrap();
            let a = q_jt_matrix(shape.outer(), shape.inner(), false, 3).unwrap();
            assert_eq!(pfaffian_full(&a).unwrap(), q, "{shape}");
            let r = padded_parts(shape.outer(), shape.inner()).1.len();
            let b = q_jt_matrix_with(shape.outer(), shape.inner(), false, 3, HBlock::Direct).unwrap();
            assert_eq!(pfaffian_full(&b).unwrap().scale_int(sign(r)), q, "{shape}");
        }
    }
}
