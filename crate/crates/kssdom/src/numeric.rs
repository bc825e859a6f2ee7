//! Exact rational scalars, vectors, and small dense matrices.
//!
//! Everything downstream (constraint forms, vertex enumeration, certificates)
//! runs on these types; no floating point enters any computation. `Rational`
//! wraps an arbitrary-precision fraction kept in canonical form: reduced, with
//! positive denominator. Equality is therefore plain structural equality.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Exact rational number in canonical form (reduced, denominator > 0).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// Constructs `num/den` in canonical form.
pub fn rat(num: i64, den: i64) -> Result<Rational, NumericError> {
    if den == 0 {
        return Err(NumericError::ZeroDenominator);
    }
    Ok(Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
}

/// Infallible `rat` for literal denominators; panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    rat(num, den).expect("nonzero denominator")
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Result<Rational, NumericError> {
        if self.is_zero() {
            return Err(NumericError::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Rational {
        Rational(num::pow::pow(self.0.clone(), exp as usize))
    }

    /// Exact f64 only for ordering-insensitive uses (never serialized).
    pub fn to_f64_lossy(&self) -> f64 {
        use num::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

macro_rules! binop_impl {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop_impl!(Add, add);
binop_impl!(Sub, sub);
binop_impl!(Mul, mul);
binop_impl!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rational {
    /// Always `numerator/denominator`, e.g. `0/1`, `-2/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| NumericError::ZeroDenominator)?;
        let den: BigInt = den.trim().parse().map_err(|_| NumericError::ZeroDenominator)?;
        if den.is_zero() {
            return Err(NumericError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse()
            .map_err(|_| de::Error::custom(format!("expected rational `p/q`, got `{s}`")))
    }
}

pub type RatVector = Vec<Rational>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Result<Rational, NumericError> {
    if a.len() != b.len() {
        return Err(NumericError::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x * y).sum())
}

/// Dense row-major matrix over `Rational`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<RatVector>) -> Result<Self, NumericError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != ncols {
                return Err(NumericError::DimensionMismatch { expected: ncols, found: r.len() });
            }
        }
        Ok(RatMatrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<RatVector, NumericError> {
        if v.len() != self.cols {
            return Err(NumericError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum())
            .collect())
    }
}

/// Solves `a * x = b` exactly. `None` when `a` is singular (no unique solution).
pub fn solve_square_system(a: &RatMatrix, b: &[Rational]) -> Result<Option<RatVector>, NumericError> {
    let n = a.rows();
    if a.cols() != n {
        return Err(NumericError::DimensionMismatch { expected: n, found: a.cols() });
    }
    if b.len() != n {
        return Err(NumericError::DimensionMismatch { expected: n, found: b.len() });
    }

    let mut m = a.clone();
    let mut rhs = b.to_vec();

    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !m.get(r, col).is_zero()) {
            Some(r) => r,
            None => return Ok(None),
        };
        if pivot_row != col {
            for c in 0..n {
                let tmp = m.get(pivot_row, c).clone();
                *m.get_mut(pivot_row, c) = m.get(col, c).clone();
                *m.get_mut(col, c) = tmp;
            }
            rhs.swap(pivot_row, col);
        }
        let pivot = m.get(col, col).clone();
        for r in (col + 1)..n {
            if m.get(r, col).is_zero() {
                continue;
            }
            let factor = m.get(r, col) / &pivot;
            for c in col..n {
                let delta = &factor * m.get(col, c);
                *m.get_mut(r, c) -= &delta;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= &delta;
        }
    }

    let mut x = vec![Rational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for (c, known) in x.iter().enumerate().skip(row + 1) {
            let delta = m.get(row, c) * known;
            acc -= &delta;
        }
        x[row] = &acc / m.get(row, row);
    }
    Ok(Some(x))
}

/// Rank over the rationals, by exact elimination.
pub fn rank(a: &RatMatrix) -> usize {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let found = match (pivot_row..rows).find(|&r| !m.get(r, col).is_zero()) {
            Some(r) => r,
            None => continue,
        };
        if found != pivot_row {
            for c in 0..cols {
                let tmp = m.get(found, c).clone();
                *m.get_mut(found, c) = m.get(pivot_row, c).clone();
                *m.get_mut(pivot_row, c) = tmp;
            }
        }
        let pivot = m.get(pivot_row, col).clone();
        for r in (pivot_row + 1)..rows {
            if m.get(r, col).is_zero() {
                continue;
            }
            let factor = m.get(r, col) / &pivot;
            for c in col..cols {
                let delta = &factor * m.get(pivot_row, c);
                *m.get_mut(r, c) -= &delta;
            }
        }
        pivot_row += 1;
    }
    pivot_row
}
