//! Exact rational matrices and their canonical normal forms.
//!
//! Entries are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator at all times, so the matrix denominator
//! `denom M = max |b_ij|` and the height `H(M) = max max(|a_ij|, |b_ij|)`
//! read straight off the stored entries.
//!
//! The text format used by the CLI and test fixtures writes rows separated
//! by `;` and entries by `,`, each entry as `a/b` or `a`:
//! `1/2,3;4,5/6`.

mod intmat;
mod normal;

pub(crate) use intmat::IntMatrix;
pub use normal::SnfResult;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    /// Build `numer / denom`, normalizing to lowest terms. Rejects a zero
    /// denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Rat::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// The integer value, if the denominator is one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }
}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.numer().hash(state);
        self.0.denom().hash(state);
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty rational".into()));
        }
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let numer = BigInt::from_str(num_str)
            .map_err(|_| Error::Parse(format!("bad numerator `{num_str}`")))?;
        let denom = match den_str {
            Some(d) => {
                BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad denominator `{d}`")))?
            }
            None => BigInt::one(),
        };
        Rat::new(numer, denom)
    }
}

/// A dense matrix of exact rationals (row-major).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Parse("matrix must have at least one row and column".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged rows".into()));
        }
        let nrows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Ok(RatMatrix { rows: nrows, cols, entries })
    }

    /// Build from integer entries, row-major.
    pub fn from_ints(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        RatMatrix {
            rows,
            cols,
            entries: vals.iter().map(|&v| Rat::from_int(v)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rat::one();
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1);
        RatMatrix { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rat::is_integer)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }
                })
            })
    }

    /// Largest lowest-terms denominator over all entries.
    pub fn denom(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| e.denom().magnitude().clone())
            .max()
            .expect("matrix is nonempty")
    }

    /// Height: max over entries of max(|numerator|, denominator).
    pub fn height(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| e.numer().magnitude().clone().max(e.denom().magnitude().clone()))
            .max()
            .expect("matrix is nonempty")
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    if !self.get(i, k).is_zero() && !rhs.get(k, j).is_zero() {
                        acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        let entries = self.entries.iter().map(|e| e * c).collect();
        RatMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> RatMatrix {
        self.scale(&-Rat::one())
    }

    /// Exact determinant by Gaussian elimination over Q.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a.get(i, k).is_zero());
            let Some(p) = pivot else { return Rat::zero() };
            if p != k {
                for j in 0..n {
                    let tmp = a.get(k, j).clone();
                    a.set(k, j, a.get(p, j).clone());
                    a.set(p, j, tmp);
                }
                det = -det;
            }
            let pv = a.get(k, k).clone();
            det = &det * &pv;
            for i in (k + 1)..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let f = &(a.get(i, k) / &pv);
                for j in k..n {
                    let val = &(a.get(i, j).clone()) - &(f * a.get(k, j));
                    a.set(i, j, val);
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a.get(i, k).is_zero());
            let Some(p) = pivot else { return Err(Error::RankDeficient) };
            if p != k {
                for j in 0..n {
                    let tmp = a.get(k, j).clone();
                    a.set(k, j, a.get(p, j).clone());
                    a.set(p, j, tmp);
                    let tmp = inv.get(k, j).clone();
                    inv.set(k, j, inv.get(p, j).clone());
                    inv.set(p, j, tmp);
                }
            }
            let pv = a.get(k, k).clone();
            let pv_inv = pv.recip()?;
            for j in 0..n {
                let v = a.get(k, j) * &pv_inv;
                a.set(k, j, v);
                let v = inv.get(k, j) * &pv_inv;
                inv.set(k, j, v);
            }
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k).clone();
                for j in 0..n {
                    let v = &(a.get(i, j).clone()) - &(&f * a.get(k, j));
                    a.set(i, j, v);
                    let v = &(inv.get(i, j).clone()) - &(&f * inv.get(k, j));
                    inv.set(i, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Smith normal form of an integral matrix: unimodular U, V with
    /// U*M*V = D diagonal, d_1 | d_2 | ... , diagonal nonnegative.
    pub fn smith_normal_form(&self) -> Result<SnfResult> {
        normal::smith_normal_form(self)
    }

    /// Row-style Hermite normal form of an integral full-row-rank matrix.
    pub fn hermite_normal_form(&self) -> Result<RatMatrix> {
        normal::hermite_normal_form(self)
    }

    pub(crate) fn to_int(&self) -> Result<IntMatrix> {
        if !self.is_integral() {
            return Err(Error::NonIntegral);
        }
        let entries = self.entries.iter().map(|e| e.numer().clone()).collect();
        Ok(IntMatrix::from_vec(self.rows, self.cols, entries))
    }

    pub(crate) fn from_int(m: &IntMatrix) -> Self {
        let entries = m.iter().map(|e| Rat(BigRational::from_integer(e.clone()))).collect();
        RatMatrix { rows: m.rows(), cols: m.cols(), entries }
    }

    /// Least common multiple of the entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for e in &self.entries {
            l = num_integer::lcm(l, e.denom().clone());
        }
        l
    }

    /// Greatest common divisor of the entries of an integral matrix
    /// (zero matrix has content zero).
    pub fn content(&self) -> Result<BigUint> {
        let m = self.to_int()?;
        Ok(m.content())
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl FromStr for RatMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<Rat>> = s
            .split(';')
            .map(|row| row.split(',').map(Rat::from_str).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RatMatrix::from_rows(rows)
    }
}

pub(crate) fn bigint_sign_is_negative(x: &BigInt) -> bool {
    x.sign() == Sign::Minus
}
