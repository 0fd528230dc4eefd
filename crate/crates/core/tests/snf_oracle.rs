//! Smith normal form against determinantal divisors, computed independently
//! from all k×k minors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use twisted_core::abelian::{smith_normal_form, IntegerMatrix};

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k` = gcd of the k×k minors, for k = 1..; stops at the first zero.
fn determinantal_divisors(a: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariant_factors_match_minors(rows in matrix()) {
        let a = IntegerMatrix::from_rows(&rows);
        let snf = smith_normal_form(&a);
        let divisors = determinantal_divisors(&rows);
        let factors = snf.invariant_factors();
        prop_assert_eq!(factors.len(), divisors.len());
        let mut prev = BigInt::from(1);
        for (f, d) in factors.iter().zip(&divisors) {
            prop_assert!(f.is_positive());
            prop_assert_eq!(f * &prev, BigInt::from(*d));
            prev = BigInt::from(*d);
        }
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn decomposition_is_unimodular(rows in matrix()) {
        let a = IntegerMatrix::from_rows(&rows);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(&(&snf.u * &a) * &snf.v, snf.s.clone());
        prop_assert!((&snf.u * &snf.u_inv).is_identity());
        prop_assert!((&snf.v * &snf.v_inv).is_identity());
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                prop_assert!(i == j || snf.s.get(i, j).is_zero());
            }
        }
    }

    #[test]
    fn invariant_under_unimodular_change(rows in matrix(), k in -3i64..=3) {
        let a = IntegerMatrix::from_rows(&rows);
        // elementary row operation r0 += k r_last
        let n = a.rows();
        let mut e = IntegerMatrix::identity(n);
        if n > 1 {
            e.set(0, n - 1, k);
        }
        let b = &e * &a;
        prop_assert_eq!(smith_normal_form(&a).invariant_factors(), smith_normal_form(&b).invariant_factors());
    }
}
