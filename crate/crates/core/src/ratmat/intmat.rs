//! Integer matrix workhorse shared by the normal-form and lattice code.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix over Z, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        Self::from_vec(rows, cols, vals.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.iter()
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

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * rhs.get(k, j);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += c * row_src
    pub fn row_addmul(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = c * self.get(src, j);
            let v = self.get(dst, j) + add;
            self.set(dst, j, v);
        }
    }

    /// col_dst += c * col_src
    pub fn col_addmul(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = c * self.get(i, src);
            let v = self.get(i, dst) + add;
            self.set(i, dst, v);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// gcd of all entries (zero for the zero matrix).
    pub fn content(&self) -> BigUint {
        let mut g = BigUint::zero();
        for e in &self.entries {
            g = g.gcd(e.magnitude());
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a.get(k, k).is_zero() {
                let Some(p) = ((k + 1)..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a.set(i, j, q);
                }
            }
            for i in (k + 1)..n {
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }
}

/// Quotient minimizing |a - q*b|; ties resolved toward the floor quotient.
pub(crate) fn div_balanced(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(!b.is_zero());
    let (mut q, r) = a.div_rem(b);
    // |r| < |b|; shift q by one when the remainder exceeds half of |b|
    let two_r: BigInt = r.abs() * 2;
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_division_minimizes_remainder() {
        for a in -20i64..=20 {
            for b in [-7i64, -3, 2, 5] {
                let q = div_balanced(&BigInt::from(a), &BigInt::from(b));
                let r = BigInt::from(a) - &q * BigInt::from(b);
                assert!(r.abs() * 2 <= BigInt::from(b).abs(), "a={a} b={b} q={q} r={r}");
            }
        }
    }

    #[test]
    fn bareiss_det_matches_cofactor() {
        let m = IntMatrix::from_i64(3, 3, &[2, -1, 0, 3, 4, 5, 1, 1, 1]);
        // cofactor by hand: 2*(4-5) - (-1)*(3-5) + 0 = -2 - 2 = -4
        assert_eq!(m.det(), BigInt::from(-4));
        let id = IntMatrix::identity(4);
        assert_eq!(id.det(), BigInt::one());
        let sing = IntMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(sing.det(), BigInt::zero());
    }

    #[test]
    fn content_gcd() {
        let m = IntMatrix::from_i64(2, 2, &[4, 6, 8, 10]);
        assert_eq!(m.content(), BigUint::from(2u32));
        assert_eq!(IntMatrix::zero(2, 2).content(), BigUint::zero());
    }
}
