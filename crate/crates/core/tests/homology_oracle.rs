//! Untwisted homology with integer coefficients against classical simplicial
//! homology, computed from the oriented simplices with ranks over a large prime.

#![allow(clippy::needless_range_loop)]

mod common;

use common::{labels, small_complex};
use proptest::prelude::*;
use twisted_core::abelian::FgAbelianGroup;
use twisted_core::chains::twisted_group_chains;
use twisted_core::spaces::OrderedComplex;
use twisted_core::twist::TwistedStructure;

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut m: Vec<Vec<i64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][c], P - 2);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % P;
                for k in 0..cols {
                    m[r][k] = ((m[r][k] - f * m[rank][k]) % P + P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers of the complex in degrees `0..top`.
fn classical_betti(k: &OrderedComplex, top: usize) -> Vec<usize> {
    let by_dim: Vec<Vec<Vec<usize>>> =
        (0..=top + 1).map(|d| k.simplices().filter(|s| s.len() == d + 1).cloned().collect()).collect();
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || by_dim[d].is_empty() || by_dim[d - 1].is_empty() {
            return 0;
        }
        let rows = by_dim[d - 1].len();
        let mut m = vec![vec![0i64; by_dim[d].len()]; rows];
        for (j, s) in by_dim[d].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let r = by_dim[d - 1].iter().position(|f| *f == face).unwrap();
                m[r][j] = if i % 2 == 0 { 1 } else { P - 1 };
            }
        }
        rank_mod_p(m)
    };
    (0..top).map(|d| by_dim[d].len() - boundary_rank(d) - boundary_rank(d + 1)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn untwisted_homology_is_classical(k in small_complex()) {
        let n = k.vertices().len();
        let s = TwistedStructure::identity(FgAbelianGroup::integers(), &labels(n));
        let c = twisted_group_chains(&k, &s, 3, None, false).unwrap();
        let h = c.homology_all().unwrap();
        let betti = classical_betti(&k, 3);
        for (d, g) in h.iter().enumerate() {
            prop_assert_eq!(g.free_rank, betti[d], "degree {}", d);
            prop_assert!(g.torsion.is_empty());
        }
        let reduced = twisted_group_chains(&k, &s, 3, Some("a"), true).unwrap();
        let hr = reduced.homology_all().unwrap();
        prop_assert_eq!(hr[0].free_rank + 1, betti[0]);
        prop_assert_eq!(&hr[1..], &h[1..]);
    }
}

#[test]
fn oracle_on_known_spaces() {
    let circle = common::complex_from_masks(3, &[0b011, 0b110, 0b101]);
    assert_eq!(classical_betti(&circle, 3), [1, 1, 0]);
    let sphere = common::complex_from_masks(4, &[0b0111, 0b1011, 0b1101, 0b1110]);
    assert_eq!(classical_betti(&sphere, 3), [1, 0, 1]);
}
