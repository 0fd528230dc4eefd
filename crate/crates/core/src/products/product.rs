use super::pair_label;
use crate::error::{Error, Result};
use crate::spaces::{Nerve, PathSpace, SimplicialSlice};
use crate::twist::{Invertibility, TwistedSliceStructure};

/// `Y ×_δ S(A)` truncated at `cap`. The cell `(y, x)` of degree `n` has index
/// `y · |S(A)ₙ| + x`.
#[derive(Clone, Debug)]
pub struct TwistedProductSlice {
    pub slice: SimplicialSlice,
    pub fibre_counts: Vec<usize>,
    pub base_counts: Vec<usize>,
}

impl TwistedProductSlice {
    #[inline]
    pub fn cell(&self, n: usize, y: usize, x: usize) -> usize {
        y * self.base_counts[n] + x
    }

    #[inline]
    pub fn split(&self, n: usize, cell: usize) -> (usize, usize) {
        (cell / self.base_counts[n], cell % self.base_counts[n])
    }

    /// Whether the coordinate projection to the base commutes with every face
    /// and degeneracy of the product.
    pub fn projection_violation(&self, base: &SimplicialSlice) -> Option<String> {
        let s = &self.slice;
        for n in 1..=s.cap {
            for i in 0..=n {
                for c in 0..s.count(n) {
                    let (_, x) = self.split(n, c);
                    if self.split(n - 1, s.face(n, c, i)).1 != base.face(n, x, i) {
                        return Some(format!("p∘d_{i} ≠ d_{i}∘p at {}", s.labels[n][c]));
                    }
                }
            }
        }
        if s.has_degeneracies() && base.has_degeneracies() {
            for n in 0..s.cap {
                for i in 0..=n {
                    for c in 0..s.count(n) {
                        let (_, x) = self.split(n, c);
                        if self.split(n + 1, s.degeneracy(n, c, i)).1 != base.degeneracy(n, x, i) {
                            return Some(format!("p∘s_{i} ≠ s_{i}∘p at {}", s.labels[n][c]));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Twisted Cartesian product with fibre the structure's coefficient slice `Y`.
///
/// Faces are `dᵢ(y, x) = (δ_{vᵢ}(dᵢy), dᵢx)`; with `degeneracies` the structure
/// must be non-singular and `sᵢ(y, x) = (δ_{vᵢ}⁻¹(sᵢy), sᵢx)`. The commuting
/// rule is checked first.
pub fn twisted_product(
    space: &dyn PathSpace,
    structure: &TwistedSliceStructure,
    cap: usize,
    degeneracies: bool,
) -> Result<TwistedProductSlice> {
    let aligned = structure.aligned_to(space)?;
    let report = aligned.validate(&space.adjacency())?;
    if let Some(v) = report.violations.first() {
        return Err(Error::NotCommuting(v.v.clone(), v.w.clone()));
    }
    twisted_product_unchecked(space, &aligned, cap, degeneracies)
}

/// As [`twisted_product`] without the commuting check; the structure must
/// already be aligned to the space. Meant for negative controls.
pub fn twisted_product_unchecked(
    space: &dyn PathSpace,
    structure: &TwistedSliceStructure,
    cap: usize,
    degeneracies: bool,
) -> Result<TwistedProductSlice> {
    let y = structure.coefficients();
    if cap > y.cap {
        return Err(Error::DegreeOutOfRange { degree: cap, cap: y.cap });
    }
    if structure.vertices() != space.vertex_labels() {
        return Err(Error::Invalid("structure is not aligned with the space".into()));
    }
    let inverses = if degeneracies {
        if !y.has_degeneracies() {
            return Err(Error::Invalid("fibre slice has no degeneracies".into()));
        }
        match structure.nonsingularity()? {
            Invertibility::Certified(c) => Some(c.inverses),
            Invertibility::SingularAt(v) => return Err(Error::Singular(v)),
        }
    } else {
        None
    };
    let nerve = Nerve::build(space, cap, None)?;
    let fibre_counts: Vec<usize> = (0..=cap).map(|n| y.count(n)).collect();
    let base_counts: Vec<usize> = (0..=cap).map(|n| nerve.count(n)).collect();
    let idx = |n: usize, yc: usize, x: usize| yc * base_counts[n] + x;
    let labels = (0..=cap)
        .map(|n| {
            let mut out = Vec::with_capacity(fibre_counts[n] * base_counts[n]);
            for yc in 0..fibre_counts[n] {
                for x in 0..base_counts[n] {
                    out.push(pair_label(y.label(n, yc), nerve.slice.label(n, x)));
                }
            }
            out
        })
        .collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=cap {
        let mut level = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut table = Vec::with_capacity(fibre_counts[n] * base_counts[n]);
            for yc in 0..fibre_counts[n] {
                let dy = y.face(n, yc, i);
                for x in 0..base_counts[n] {
                    let delta = structure.map(nerve.vertex_at(n, x, i));
                    table.push(idx(n - 1, delta.apply(n - 1, dy), nerve.slice.face(n, x, i)));
                }
            }
            level.push(table);
        }
        faces.push(level);
    }
    let degeneracy_tables = inverses.map(|inv| {
        (0..cap)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        let mut table = Vec::with_capacity(fibre_counts[n] * base_counts[n]);
                        for yc in 0..fibre_counts[n] {
                            let sy = y.degeneracy(n, yc, i);
                            for x in 0..base_counts[n] {
                                let delta_inv = &inv[nerve.vertex_at(n, x, i)];
                                table.push(idx(n + 1, delta_inv.apply(n + 1, sy), nerve.slice.degeneracy(n, x, i)));
                            }
                        }
                        table
                    })
                    .collect()
            })
            .collect()
    });
    let slice = SimplicialSlice { cap, labels, faces, degeneracies: degeneracy_tables, basepoint: None };
    Ok(TwistedProductSlice { slice, fibre_counts, base_counts })
}

/// Basepoint cell label in every degree of a smash product.
pub const SMASH_BASEPOINT: &str = "∗";

/// `Y ∧_δ S(A)`: the twisted product with `Y ×_δ a₀` and `∗ ×_δ S(A)` collapsed
/// to a single cell `∗` (index 0) per degree.
#[derive(Clone, Debug)]
pub struct SmashSlice {
    pub slice: SimplicialSlice,
    /// Product cells sent to `∗`, per degree.
    pub collapsed: Vec<usize>,
    pub product_counts: Vec<usize>,
}

pub fn twisted_smash(
    space: &dyn PathSpace,
    structure: &TwistedSliceStructure,
    basepoint: &str,
    cap: usize,
    degeneracies: bool,
) -> Result<SmashSlice> {
    let y = structure.coefficients();
    let y_base = y.basepoint.clone().ok_or_else(|| Error::Invalid("fibre slice is not pointed".into()))?;
    let a0 = space.vertex_index(basepoint).ok_or_else(|| Error::UnknownVertex(basepoint.to_string()))?;
    for (v, m) in structure.vertices().iter().zip(structure.maps()) {
        if !m.preserves_basepoint(y) {
            return Err(Error::NotBasepointPreserving(v.clone()));
        }
    }
    let product = twisted_product(space, structure, cap, degeneracies)?;
    let base_points: Vec<usize> = {
        let nerve = Nerve::build(space, cap, Some(a0))?;
        nerve.slice.basepoint.expect("pointed nerve")
    };
    let p = &product.slice;
    let mut renumber: Vec<Vec<usize>> = Vec::with_capacity(cap + 1);
    let mut labels = Vec::with_capacity(cap + 1);
    let mut collapsed = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut map = vec![0; p.count(n)];
        let mut lv = vec![SMASH_BASEPOINT.to_string()];
        let mut gone = 0;
        for c in 0..p.count(n) {
            let (yc, x) = product.split(n, c);
            if yc == y_base[n] || x == base_points[n] {
                gone += 1;
            } else {
                map[c] = lv.len();
                lv.push(p.labels[n][c].clone());
            }
        }
        renumber.push(map);
        labels.push(lv);
        collapsed.push(gone);
    }
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut r = vec![0; labels[n].len()];
        for (c, &k) in renumber[n].iter().enumerate() {
            if k != 0 {
                r[k] = c;
            }
        }
        reps.push(r);
    }
    // the collapsed subset must be closed under all structure maps
    for n in 1..=cap {
        for c in (0..p.count(n)).filter(|&c| renumber[n][c] == 0) {
            for i in 0..=n {
                if renumber[n - 1][p.face(n, c, i)] != 0 {
                    return Err(Error::Invalid(format!("collapsed cell {} has d_{i} outside the collapse", p.labels[n][c])));
                }
            }
        }
    }
    if p.has_degeneracies() {
        for n in 0..cap {
            for c in (0..p.count(n)).filter(|&c| renumber[n][c] == 0) {
                for i in 0..=n {
                    if renumber[n + 1][p.degeneracy(n, c, i)] != 0 {
                        return Err(Error::Invalid(format!(
                            "collapsed cell {} has s_{i} outside the collapse",
                            p.labels[n][c]
                        )));
                    }
                }
            }
        }
    }
    let faces = (0..=cap)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    (0..labels[n].len())
                        .map(|k| if k == 0 { 0 } else { renumber[n - 1][p.face(n, reps[n][k], i)] })
                        .collect()
                })
                .collect()
        })
        .collect();
    let degeneracy_tables = p.degeneracies.as_ref().map(|_| {
        (0..cap)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        (0..labels[n].len())
                            .map(|k| if k == 0 { 0 } else { renumber[n + 1][p.degeneracy(n, reps[n][k], i)] })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    });
    let slice = SimplicialSlice {
        cap,
        labels,
        faces,
        degeneracies: degeneracy_tables,
        basepoint: Some(vec![0; cap + 1]),
    };
    Ok(SmashSlice { slice, collapsed, product_counts: (0..=cap).map(|n| p.count(n)).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupwords::FiniteGroupTable;
    use crate::spaces::{standard_simplex_slice, OrderedComplex, SliceMap, SliceViolation};
    use crate::twist::TwistedStructure;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn edge() -> OrderedComplex {
        OrderedComplex::from_facets(&["a", "b"], &[vec!["a", "b"]]).unwrap()
    }

    #[test]
    fn product_counts_and_validation() {
        let g = FiniteGroupTable::cyclic(3);
        let cap = 3;
        let maps = vec![g.nerve_map(&g.power_map(2), cap), g.nerve_map(&g.power_map(1), cap)];
        let s = TwistedStructure::new(g.nerve_slice(cap), labels(&["a", "b"]), maps).unwrap();
        let p = twisted_product(&edge(), &s, cap, true).unwrap();
        assert_eq!(p.slice.counts(), [2, 3 * 3, 9 * 4, 27 * 5]);
        assert!(p.slice.validate().passed());
        let base = Nerve::build(&edge(), cap, None).unwrap();
        assert_eq!(p.projection_violation(&base.slice), None);
    }

    #[test]
    fn non_commuting_twist_breaks_the_face_identities() {
        let g = FiniteGroupTable::symmetric3();
        let cap = 3;
        let conj = |name: &str| g.nerve_map(&g.conjugation(g.element(name).unwrap()), cap);
        let s = TwistedStructure::new(g.nerve_slice(cap), labels(&["a", "b"]), vec![conj("213"), conj("231")]).unwrap();
        assert!(matches!(twisted_product(&edge(), &s, cap, false), Err(Error::NotCommuting(..))));
        let p = twisted_product_unchecked(&edge(), &s, cap, false).unwrap();
        let report = p.slice.validate();
        assert!(report.delta_identity_violations().next().is_some());
        assert!(report.violations.iter().all(|v| matches!(v, SliceViolation::Identity { .. })));
    }

    #[test]
    fn smash_with_a_point_collapses_everything() {
        let g = FiniteGroupTable::cyclic(5);
        let p = OrderedComplex::from_facets(&["a"], &[] as &[Vec<&str>]).unwrap();
        let s = TwistedStructure::new(g.nerve_slice(3), labels(&["a"]), vec![g.nerve_map(&g.power_map(2), 3)]).unwrap();
        let sm = twisted_smash(&p, &s, "a", 3, true).unwrap();
        assert_eq!(sm.slice.counts(), [1, 1, 1, 1]);
        assert_eq!(sm.collapsed, sm.product_counts);
        assert!(sm.slice.validate().passed());
    }

    #[test]
    fn smash_on_the_edge() {
        let g = FiniteGroupTable::cyclic(2);
        let cap = 3;
        let s = TwistedStructure::identity(g.nerve_slice(cap), &labels(&["a", "b"]));
        let sm = twisted_smash(&edge(), &s, "a", cap, true).unwrap();
        // (|Yₙ| − 1)(|S(A)ₙ| − 1) surviving cells plus ∗
        let expected: Vec<usize> = (0..=cap).map(|n| (2usize.pow(n as u32) - 1) * (n + 1) + 1).collect();
        assert_eq!(sm.slice.counts(), expected);
        assert!(sm.slice.validate().passed());
    }

    #[test]
    fn smash_of_a_pointed_interval_over_the_edge() {
        let cap = 2;
        let mut y = standard_simplex_slice(1, cap);
        y.basepoint = Some((0..=cap).map(|n| y.cell_index(n, &format!("({})", vec!["0"; n + 1].join(","))).unwrap()).collect());
        let s = TwistedStructure::identity(y, &labels(&["a", "b"]));
        let sm = twisted_smash(&edge(), &s, "a", cap, true).unwrap();
        // degree 1: 3·3 product cells, 3 + 3 − 1 collapsed
        assert_eq!(sm.product_counts[1], 9);
        assert_eq!(sm.collapsed[1], 5);
        assert_eq!(sm.slice.count(1), 9 - 5 + 1);
        assert!(sm.slice.validate().passed());
    }

    #[test]
    fn smash_needs_a_pointed_fibre() {
        let y = standard_simplex_slice(1, 2);
        let s = TwistedStructure::new(y.clone(), labels(&["a", "b"]), vec![SliceMap::identity(&y), SliceMap::identity(&y)]);
        let s = s.unwrap();
        assert!(twisted_smash(&edge(), &s, "a", 2, false).is_err());
    }
}
