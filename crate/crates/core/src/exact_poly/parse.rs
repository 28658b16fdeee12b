use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::{ExactPolynomial, Monomial, Variable};
use crate::error::{Error, Result};

/// Parses a rational literal such as `-3`, `7/2` or `0`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

fn parse_variable(tok: &str) -> Result<Variable> {
    let bad = || Error::Parse(format!("bad variable {tok:?}"));
    let inner = |prefix: &str| -> Option<&str> {
        tok.strip_prefix(prefix).and_then(|r| r.strip_suffix(']'))
    };
    if let Some(body) = inner("a[") {
        let (i, j) = body.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        if i == 0 || j == 0 || i >= j {
            return Err(bad());
        }
        Ok(Variable::entry(i, j))
    } else if let Some(body) = inner("x[") {
        let k: usize = body.trim().parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        Ok(Variable::indet(k))
    } else {
        Err(bad())
    }
}

fn parse_term(body: &str) -> Result<(BigRational, Monomial)> {
    let mut coeff = BigRational::one();
    let mut factors = Vec::new();
    for factor in body.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {body:?}")));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coeff *= parse_rational(factor)?;
            continue;
        }
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => {
                let e: u32 =
                    e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
                (v.trim(), e)
            }
            None => (factor, 1),
        };
        factors.push((parse_variable(var)?, exp));
    }
    Ok((coeff, Monomial::from_factors(factors)))
}

impl FromStr for ExactPolynomial {
    type Err = Error;

    /// Accepts the rendered form, e.g. `a[1,2]*a[3,4] - 2*x[1]^3 + 1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = ExactPolynomial::zero();
        let mut sign = 1i64;
        let mut current = String::new();
        let mut depth = 0usize;
        let mut flush = |current: &mut String, sign: i64| -> Result<()> {
            let t = current.trim();
            if t.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let (c, m) = parse_term(t)?;
            out.add_term(m, if sign < 0 { -c } else { c });
            current.clear();
            Ok(())
        };
        for ch in s.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    current.push(ch);
                }
                ']' => {
                    depth = depth.saturating_sub(1);
                    current.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if !current.trim().is_empty() {
                        flush(&mut current, sign)?;
                        sign = 1;
                    }
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                _ => current.push(ch),
            }
        }
        flush(&mut current, sign)?;
        Ok(out)
    }
}
