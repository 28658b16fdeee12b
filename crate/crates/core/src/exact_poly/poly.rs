use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial variable. Matrix entries sort before indeterminates; within a
/// kind the indices are compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    /// `a[i,j]` with `1 <= i < j`.
    Entry(u32, u32),
    /// `x[k]` with `k >= 1`.
    Indet(u32),
}

impl Variable {
    /// Entry variable for an unordered pair; panics if `i == j`.
    pub fn entry(i: usize, j: usize) -> Variable {
        assert!(i != j && i >= 1 && j >= 1, "bad entry indices ({i},{j})");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Variable::Entry(a as u32, b as u32)
    }

    pub fn indet(k: usize) -> Variable {
        assert!(k >= 1, "indeterminates are 1-based");
        Variable::Indet(k as u32)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Entry(i, j) => write!(f, "a[{i},{j}]"),
            Variable::Indet(k) => write!(f, "x[{k}]"),
        }
    }
}

/// A monomial stored as variables with positive exponents, sorted by variable.
///
/// `Ord` is graded lexicographic: higher total degree is greater, ties are
/// broken at the first variable where the exponents differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Monomial {
        Monomial { factors: vec![(v, 1)], degree: 1 }
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs.
    pub fn from_factors<I: IntoIterator<Item = (Variable, u32)>>(it: I) -> Monomial {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in it {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let degree = map.values().sum();
        Monomial { factors: map.into_iter().collect(), degree }
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(pos) => self.factors[pos].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out, degree: self.degree + other.degree }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (x, y) in self.factors.iter().zip(other.factors.iter()) {
                if x.0 != y.0 {
                    // the monomial containing the earlier variable wins
                    return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
                }
                if x.1 != y.1 {
                    return x.1.cmp(&y.1);
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(v: Variable) -> Self {
        Self::term(BigRational::one(), Monomial::var(v))
    }

    /// The variable `a[i,j]` (indices in either order).
    pub fn entry(i: usize, j: usize) -> Self {
        Self::var(Variable::entry(i, j))
    }

    pub fn indet(k: usize) -> Self {
        Self::var(Variable::indet(k))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ExactPolynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The greatest monomial together with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactPolynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&rat(n))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (mm, d) in &self.terms {
            out.add_term(mm.mul(m), d * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    /// Replaces every variable by a polynomial; variables mapped to `None`
    /// are kept as they are.
    pub fn substitute<F>(&self, mut f: F) -> Self
    where
        F: FnMut(Variable) -> Option<ExactPolynomial>,
    {
        let mut cache: BTreeMap<Variable, Option<ExactPolynomial>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for (v, e) in m.factors() {
                let image = cache.entry(*v).or_insert_with(|| f(*v)).clone();
                let base = image.unwrap_or_else(|| Self::var(*v));
                acc = &acc * &base.pow(*e);
            }
            out += &acc;
        }
        out
    }

    /// Variables occurring with nonzero exponent.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> =
            self.terms.keys().flat_map(|m| m.factors().iter().map(|(v, _)| *v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// True if every coefficient is nonnegative.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a ExactPolynomial> for &'a ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: &'a ExactPolynomial) -> ExactPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a ExactPolynomial> for &'a ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: &'a ExactPolynomial) -> ExactPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a ExactPolynomial> for &'a ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: &'a ExactPolynomial) -> ExactPolynomial {
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = ExactPolynomial::zero();
        for (m, c) in &small.terms {
            for (mm, d) in &large.terms {
                out.add_term(m.mul(mm), c * d);
            }
        }
        out
    }
}

impl Add for ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(mut self, rhs: ExactPolynomial) -> ExactPolynomial {
        self += &rhs;
        self
    }
}

impl Sub for ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(mut self, rhs: ExactPolynomial) -> ExactPolynomial {
        self -= &rhs;
        self
    }
}

impl Mul for ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: ExactPolynomial) -> ExactPolynomial {
        &self * &rhs
    }
}

impl Neg for ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        -(self.clone())
    }
}

impl AddAssign<&ExactPolynomial> for ExactPolynomial {
    fn add_assign(&mut self, rhs: &ExactPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&ExactPolynomial> for ExactPolynomial {
    fn sub_assign(&mut self, rhs: &ExactPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl std::iter::Sum for ExactPolynomial {
    fn sum<I: Iterator<Item = ExactPolynomial>>(iter: I) -> Self {
        let mut out = ExactPolynomial::zero();
        for p in iter {
            out += &p;
        }
        out
    }
}

impl<'a> std::iter::Sum<&'a ExactPolynomial> for ExactPolynomial {
    fn sum<I: Iterator<Item = &'a ExactPolynomial>>(iter: I) -> Self {
        let mut out = ExactPolynomial::zero();
        for p in iter {
            out += p;
        }
        out
    }
}
