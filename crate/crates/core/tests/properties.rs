//! Invariants as properties over randomly generated complexes and twists.

mod common;

use common::{labels, polynomial_twist, scalar_twist, small_complex};
use proptest::prelude::*;
use twisted_core::abelian::{FgAbelianGroup, IntegerMatrix};
use twisted_core::chains::{cone_null_homotopy, twisted_group_chains, verify_null_homotopy};
use twisted_core::groupwords::{FiniteGroupTable, Letter, TwistedFreeConstruction};
use twisted_core::products::twisted_product;
use twisted_core::spaces::{OrderedComplex, Space};
use twisted_core::twist::TwistedStructure;

fn edge_path() -> OrderedComplex {
    OrderedComplex::from_facets(&["a", "b", "c"], &[vec!["a", "b"], vec!["b", "c"]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_squares_to_zero_for_polynomial_twists(
        k in small_complex(),
        m in prop::array::uniform4(-3i64..=3),
        coeffs in prop::collection::vec(prop::array::uniform3(-2i64..=2), 5),
        reduced in any::<bool>(),
    ) {
        let n = k.vertices().len();
        let s = polynomial_twist(&labels(n), &m, &coeffs[..n]);
        let c = twisted_group_chains(&k, &s, 3, Some("a"), reduced).unwrap();
        prop_assert_eq!(c.verify_boundary_squared().unwrap(), None);
    }

    #[test]
    fn boundary_squares_to_zero_with_torsion(
        k in small_complex(),
        order in 2u64..=12,
        values in prop::collection::vec(-5i64..=5, 5),
    ) {
        let n = k.vertices().len();
        let s = scalar_twist(FgAbelianGroup::cyclic(order), &labels(n), &values[..n]);
        let c = twisted_group_chains(&k, &s, 3, Some("a"), true).unwrap();
        prop_assert_eq!(c.verify_boundary_squared().unwrap(), None);
        prop_assert!(c.homology_all().is_ok());
    }

    #[test]
    fn cohomology_obeys_universal_coefficients(
        k in small_complex(),
        values in prop::collection::vec(-3i64..=3, 5),
        reduced in any::<bool>(),
    ) {
        let n = k.vertices().len();
        let s = scalar_twist(FgAbelianGroup::integers(), &labels(n), &values[..n]);
        let c = twisted_group_chains(&k, &s, 3, Some("a"), reduced).unwrap();
        let h = c.homology_all().unwrap();
        let co = c.cohomology_all().unwrap();
        for d in 0..3 {
            prop_assert_eq!(co[d].free_rank, h[d].free_rank);
            let below = if d == 0 { Vec::new() } else { h[d - 1].torsion.clone() };
            prop_assert_eq!(&co[d].torsion, &below);
        }
    }

    #[test]
    fn zero_twist_homology_is_the_chains(k in small_complex()) {
        let n = k.vertices().len();
        let s = scalar_twist(FgAbelianGroup::integers(), &labels(n), &vec![0; n]);
        let c = twisted_group_chains(&k, &s, 3, Some("a"), true).unwrap();
        for d in 0..3 {
            prop_assert!(c.boundary(d).is_zero());
            prop_assert_eq!(c.homology(d).unwrap(), c.chain_group(d).summary());
        }
    }

    #[test]
    fn cones_are_contractible(
        k in small_complex(),
        values in prop::collection::vec(-4i64..=4, 5),
        apex_sign in prop::sample::select(vec![1i64, -1]),
    ) {
        let n = k.vertices().len();
        let s = scalar_twist(FgAbelianGroup::integers(), &labels(n), &values[..n])
            .regular_extension("o", IntegerMatrix::scalar(1, apex_sign))
            .unwrap();
        let cone = Space::from(k).cone("o").unwrap();
        let (c, phi) = cone_null_homotopy(&cone, &s, "o", 3).unwrap();
        prop_assert_eq!(verify_null_homotopy(&c, &phi).unwrap(), None);
        prop_assert!(c.homology_all().unwrap().iter().all(|h| h.is_trivial()));
    }

    #[test]
    fn twisted_products_are_simplicial(order in 2usize..=4, powers in prop::collection::vec(1u64..=3, 3)) {
        let g = FiniteGroupTable::cyclic(order);
        let cap = 3;
        let maps: Vec<_> = powers
            .iter()
            .map(|&k| {
                // non-coprime powers are singular
                let k = if num_integer::gcd(k, order as u64) == 1 { k } else { 1 };
                g.nerve_map(&g.power_map(k), cap)
            })
            .collect();
        let s = TwistedStructure::new(g.nerve_slice(cap), labels(3), maps).unwrap();
        let p = twisted_product(&edge_path(), &s, cap, true).unwrap();
        prop_assert!(p.slice.validate().passed());
    }

    #[test]
    fn word_reduction_is_idempotent_and_associative(
        raw in prop::collection::vec((0usize..8, 0usize..6), 0..12),
        split in 0usize..12,
        split2 in 0usize..12,
    ) {
        let g = FiniteGroupTable::symmetric3();
        let t = g.element("213").unwrap();
        let s = TwistedStructure::constant(g.clone(), &labels(3), g.conjugation(t)).unwrap();
        let f = TwistedFreeConstruction::new(&edge_path(), &s, "a", 2).unwrap();
        let count = f.nerve.count(2);
        let letters: Vec<Letter> = raw.iter().map(|&(l, e)| Letter { label: l % count, element: e }).collect();
        let w = f.reduce(2, letters.clone()).unwrap();
        prop_assert_eq!(&f.reduce(2, w.letters.clone()).unwrap(), &w);
        let (i, j) = {
            let (x, y) = (split.min(letters.len()), split2.min(letters.len()));
            (x.min(y), x.max(y))
        };
        let part = |r: std::ops::Range<usize>| f.reduce(2, letters[r].to_vec()).unwrap();
        let (a, b, c) = (part(0..i), part(i..j), part(j..letters.len()));
        let left = f.multiply(&f.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = f.multiply(&a, &f.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &w);
        prop_assert!(f.multiply(&w, &f.inverse(&w)).unwrap().is_empty());
    }
}
