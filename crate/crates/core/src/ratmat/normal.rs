//! Smith and Hermite normal forms over Z with transform tracking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::intmat::{div_balanced, IntMatrix};
use super::RatMatrix;
use crate::error::{Error, Result};

/// Smith normal form data: U*M*V = D with U, V unimodular and D diagonal
/// with a divisibility chain d_1 | d_2 | ... (nonnegative, trailing zeros
/// allowed).
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: RatMatrix,
    pub d: RatMatrix,
    pub v: RatMatrix,
}

impl SnfResult {
    /// The diagonal of D.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).numer().clone()).collect()
    }
}

pub(super) fn smith_normal_form(m: &RatMatrix) -> Result<SnfResult> {
    let a = m.to_int()?;
    let (u, d, v) = snf_int(&a);
    Ok(SnfResult {
        u: RatMatrix::from_int(&u),
        d: RatMatrix::from_int(&d),
        v: RatMatrix::from_int(&v),
    })
}

/// Position of a minimal-|value| nonzero entry of `a[t.., t..]`,
/// ties broken by smallest (row, col).
fn argmin_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if e.abs() < a.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

pub(crate) fn snf_int(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = argmin_nonzero(&a, t) else {
                // remaining block is zero
                break;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in (t + 1)..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -div_balanced(a.get(i, t), a.get(t, t));
                a.row_addmul(i, t, &q);
                u.row_addmul(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -div_balanced(a.get(t, j), a.get(t, t));
                a.col_addmul(j, t, &q);
                v.col_addmul(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a strictly smaller nonzero entry now sits in row/col t
                continue;
            }

            // pivot must divide every remaining entry for the chain
            let pivot = a.get(t, t).clone();
            let offender = ((t + 1)..rows).find(|&i| {
                ((t + 1)..cols).any(|j| !a.get(i, j).mod_floor(&pivot).is_zero())
            });
            if let Some(i) = offender {
                let one = BigInt::from(1);
                a.row_addmul(t, i, &one);
                u.row_addmul(t, i, &one);
                continue;
            }
            break;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, a, v)
}

pub(super) fn hermite_normal_form(m: &RatMatrix) -> Result<RatMatrix> {
    let a = m.to_int()?;
    if a.rows() > a.cols() {
        return Err(Error::RankDeficient);
    }
    let h = hnf_int(&a)?;
    Ok(RatMatrix::from_int(&h))
}

/// Row-style Hermite normal form. Requires full row rank; pivots positive,
/// entries above each pivot reduced into [0, pivot).
pub(crate) fn hnf_int(m: &IntMatrix) -> Result<IntMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // euclidean elimination within column c, rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if a.get(i, c).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if a.get(i, c).abs() < a.get(b, c).abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            let mut done = true;
            for i in (r + 1)..rows {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let q = -div_balanced(a.get(i, c), a.get(r, c));
                a.row_addmul(i, r, &q);
                if !a.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        let pivot = a.get(r, c).clone();
        for i in 0..r {
            let q = -a.get(i, c).div_floor(&pivot);
            a.row_addmul(i, r, &q);
        }
        r += 1;
    }
    if r < rows {
        return Err(Error::RankDeficient);
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::One;
    use proptest::prelude::*;

    fn m(s: &str) -> RatMatrix {
        s.parse().unwrap()
    }

    fn check_snf(input: &RatMatrix, snf: &SnfResult) {
        // U*M*V = D
        let prod = snf.u.mul(input).mul(&snf.v);
        assert_eq!(prod, snf.d, "U*M*V must reconstruct D");
        // unimodular transforms
        assert!(snf.u.to_int().unwrap().is_unimodular());
        assert!(snf.v.to_int().unwrap().is_unimodular());
        // diagonal, nonnegative, chain
        let d = &snf.d;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert!(d.get(i, j).is_zero(), "off-diagonal entry in D");
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[0].is_zero() {
                assert!(w[1].mod_floor(&w[0]).is_zero(), "chain {w:?}");
            } else {
                assert!(w[1].is_zero(), "zero must be trailing");
            }
        }
    }

    /// Independent oracle: d_1*...*d_k = gcd of all k x k minors.
    fn minor_gcd_chain(a: &IntMatrix) -> Vec<BigInt> {
        let n = a.rows().min(a.cols());
        let mut chain = Vec::with_capacity(n);
        let mut prev = BigInt::one();
        for k in 1..=n {
            let mut g = BigUint::zero();
            for rows in combinations(a.rows(), k) {
                for cols in combinations(a.cols(), k) {
                    let mut sub = IntMatrix::zero(k, k);
                    for (ii, &i) in rows.iter().enumerate() {
                        for (jj, &j) in cols.iter().enumerate() {
                            sub.set(ii, jj, a.get(i, j).clone());
                        }
                    }
                    g = g.gcd(sub.det().magnitude());
                }
            }
            let g = BigInt::from(g);
            if g.is_zero() {
                chain.push(BigInt::zero());
            } else {
                chain.push(&g / &prev);
                prev = g;
            }
        }
        chain
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn snf_examples() {
        let s = m("2,0;0,4").smith_normal_form().unwrap();
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check_snf(&m("2,0;0,4"), &s);

        // d_1 = gcd of entries = 1, d_1*d_2 = |det| = 4
        let s = m("2,1;0,2").smith_normal_form().unwrap();
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(4)]);
        check_snf(&m("2,1;0,2"), &s);

        let s = m("0,0;0,0").smith_normal_form().unwrap();
        assert_eq!(s.diagonal(), vec![BigInt::zero(), BigInt::zero()]);
        check_snf(&m("0,0;0,0"), &s);
    }

    #[test]
    fn snf_rejects_non_integral() {
        assert_eq!(m("1/2,0;0,1").smith_normal_form().unwrap_err(), Error::NonIntegral);
    }

    #[test]
    fn snf_matches_minor_gcd_oracle() {
        let cases = [
            "6,4;2,8",
            "2,1,3;0,2,6;1,1,1",
            "0,-1;6,0",
            "12,8,4;6,10,2;0,0,0",
            "2,0,0,0;0,1,0,0;0,0,3,0;0,0,0,6",
        ];
        for c in cases {
            let mat = m(c);
            let snf = mat.smith_normal_form().unwrap();
            check_snf(&mat, &snf);
            assert_eq!(snf.diagonal(), minor_gcd_chain(&mat.to_int().unwrap()), "{c}");
        }
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(
            RatMatrix::identity(3).hermite_normal_form().unwrap(),
            RatMatrix::identity(3)
        );
        assert_eq!(m("2,0;1,1").hermite_normal_form().unwrap(), m("1,1;0,2"));
        assert_eq!(m("0,1;1,0").hermite_normal_form().unwrap(), RatMatrix::identity(2));
    }

    #[test]
    fn hnf_rejects_rank_deficient() {
        assert_eq!(m("1,2;2,4").hermite_normal_form().unwrap_err(), Error::RankDeficient);
        assert_eq!(m("1,2;0,0").hermite_normal_form().unwrap_err(), Error::RankDeficient);
        // more rows than columns can never have full row rank
        assert_eq!(m("1;2").hermite_normal_form().unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn hnf_wide_matrix() {
        let h = m("2,4,1;0,2,0").hermite_normal_form().unwrap();
        // pivots positive, entries above pivots reduced
        assert_eq!(h, m("2,0,1;0,2,0"));
    }

    type RowOps = Vec<(usize, usize, i64)>;

    fn unimodular_from_ops(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut u = IntMatrix::identity(n);
        for &(i, j, c) in ops {
            let (i, j) = (i % n, j % n);
            if i != j {
                u.row_addmul(i, j, &BigInt::from(c));
            }
        }
        u
    }

    fn matrix_with_ops(max_dim: usize) -> impl Strategy<Value = (RatMatrix, RowOps, RowOps)> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(rows, cols)| {
            (
                proptest::collection::vec(-9i64..=9, rows * cols)
                    .prop_map(move |vals| RatMatrix::from_ints(rows, cols, &vals)),
                proptest::collection::vec((0..16usize, 0..16usize, -3i64..=3), 0..8),
                proptest::collection::vec((0..16usize, 0..16usize, -3i64..=3), 0..8),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn snf_invariant_under_unimodular((mat, uops, vops) in matrix_with_ops(4)) {
            let a = mat.to_int().unwrap();
            let snf = mat.smith_normal_form().unwrap();
            check_snf(&mat, &snf);

            let u = unimodular_from_ops(a.rows(), &uops);
            let v = unimodular_from_ops(a.cols(), &vops);
            let moved = RatMatrix::from_int(&u.mul(&a).mul(&v));
            let snf2 = moved.smith_normal_form().unwrap();
            prop_assert_eq!(snf.diagonal(), snf2.diagonal());
        }

        #[test]
        fn hnf_idempotent_and_left_invariant((mat, uops, _) in matrix_with_ops(3)) {
            let a = mat.to_int().unwrap();
            if let Ok(h) = mat.hermite_normal_form() {
                prop_assert_eq!(h.hermite_normal_form().unwrap(), h.clone());
                let u = unimodular_from_ops(a.rows(), &uops);
                let moved = RatMatrix::from_int(&u.mul(&a));
                prop_assert_eq!(moved.hermite_normal_form().unwrap(), h);
            }
        }
    }
}
