#![allow(dead_code)]

use proptest::prelude::*;
use twisted_core::abelian::{FgAbelianGroup, IntegerMatrix};
use twisted_core::spaces::OrderedComplex;
use twisted_core::twist::{TwistedAbelianStructure, TwistedStructure};

pub const NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];

pub fn labels(n: usize) -> Vec<String> {
    NAMES[..n].iter().map(|s| s.to_string()).collect()
}

/// Complex on `n` vertices generated by the given vertex subsets (bitmasks).
pub fn complex_from_masks(n: usize, masks: &[u32]) -> OrderedComplex {
    let facets: Vec<Vec<&str>> = masks
        .iter()
        .map(|m| (0..n).filter(|v| m & (1 << v) != 0).map(|v| NAMES[v]).collect::<Vec<_>>())
        .filter(|f| !f.is_empty())
        .collect();
    OrderedComplex::from_facets(&NAMES[..n], &facets).unwrap()
}

/// Random complex on 3–5 vertices with facets of dimension ≤ 2.
pub fn small_complex() -> impl Strategy<Value = OrderedComplex> {
    (3usize..=5).prop_flat_map(|n| {
        let facet = (0u32..(1 << n)).prop_filter("dimension ≤ 2", |m| m.count_ones() <= 3);
        prop::collection::vec(facet, 1..6).prop_map(move |masks| complex_from_masks(n, &masks))
    })
}

pub fn scalar_twist(g: FgAbelianGroup, vertices: &[String], values: &[i64]) -> TwistedAbelianStructure {
    let k = g.generators();
    let maps = values.iter().map(|&v| IntegerMatrix::scalar(k, v)).collect();
    TwistedStructure::new(g, vertices.to_vec(), maps).unwrap()
}

/// `δ_v = c₀ + c₁M + c₂M²` for one 2×2 matrix `M`: every pair commutes.
pub fn polynomial_twist(vertices: &[String], m: &[i64; 4], coeffs: &[[i64; 3]]) -> TwistedAbelianStructure {
    let m = IntegerMatrix::from_rows(&[vec![m[0], m[1]], vec![m[2], m[3]]]);
    let m2 = &m * &m;
    let maps = coeffs
        .iter()
        .map(|c| &(&IntegerMatrix::scalar(2, c[0]) + &(&IntegerMatrix::scalar(2, c[1]) * &m)) + &(&IntegerMatrix::scalar(2, c[2]) * &m2))
        .collect();
    TwistedStructure::new(FgAbelianGroup::free(2), vertices.to_vec(), maps).unwrap()
}
