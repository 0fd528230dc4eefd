//! Local triviality of `Y ×_δ S(A) → S(A)` over each simplex, via the explicit
//! untwisting bijection `α_b: Y × Δ[n] → Y ×_δ Δ[n]`.

use std::fmt;

use rayon::prelude::*;

use super::product::{twisted_product, TwistedProductSlice};
use crate::error::{Error, Result};
use crate::spaces::{standard_simplex, Nerve, Path, PathSpace, SliceMap};
use crate::twist::{Coefficients, Invertibility, TwistedSliceStructure, TwistedStructure};

/// `w = (j₁^{l₁} … j_t^{l_t})` with the unused values `i₁ < … < i_s` of `{0..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneDecomposition {
    pub values: Vec<usize>,
    pub multiplicities: Vec<usize>,
    pub missing: Vec<usize>,
}

pub fn monotone_decomposition(w: &[usize], n: usize) -> Result<MonotoneDecomposition> {
    if w.is_empty() || w.windows(2).any(|p| p[0] > p[1]) || w.iter().any(|&v| v > n) {
        return Err(Error::Invalid(format!("{w:?} is not a monotone tuple over 0..={n}")));
    }
    let mut values: Vec<usize> = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    for &v in w {
        if values.last() == Some(&v) {
            *multiplicities.last_mut().expect("paired with values") += 1;
        } else {
            values.push(v);
            multiplicities.push(1);
        }
    }
    let missing = (0..=n).filter(|v| !values.contains(v)).collect();
    Ok(MonotoneDecomposition { values, multiplicities, missing })
}

/// `α_b` tabulated degree by degree on the cells of `Y × Δ[n]` (same cell
/// numbering as the product slices), with its inverse.
#[derive(Clone, Debug)]
pub struct UntwistingMap {
    pub b: Path,
    pub forward: Vec<Vec<usize>>,
    pub backward: Vec<Vec<usize>>,
}

impl UntwistingMap {
    pub fn is_bijective(&self) -> bool {
        self.forward.iter().zip(&self.backward).all(|(f, g)| {
            f.len() == g.len() && f.iter().enumerate().all(|(c, &t)| t < g.len() && g[t] == c)
        })
    }
}

/// Fibre factor `δ_(j_t)^{1−l_t} ⋯ δ_(j_1)^{1−l_1} · δ_(i_1) ⋯ δ_(i_s)` of `α_b` at `w`,
/// or of its inverse when `invert` is set (all exponents negated).
fn fibre_factor(
    simplex_twist: &TwistedSliceStructure,
    inverses: &[SliceMap],
    d: &MonotoneDecomposition,
    invert: bool,
) -> SliceMap {
    let y = simplex_twist.coefficients();
    let sign: i64 = if invert { -1 } else { 1 };
    let mut factors: Vec<(usize, i64)> = d
        .values
        .iter()
        .zip(&d.multiplicities)
        .rev()
        .map(|(&j, &l)| (j, sign * (1 - l as i64)))
        .collect();
    factors.extend(d.missing.iter().map(|&i| (i, sign)));
    let mut out = y.identity_map();
    for (v, k) in factors {
        let p = y
            .map_power(simplex_twist.map(v), Some(&inverses[v]), k)
            .expect("inverse supplied");
        out = y.compose(&out, &p);
    }
    out
}

/// Builds `α_b` for `b ∈ S(A)ₙ` (vertex indices aligned with `structure`) in
/// degrees `0..=cap`.
pub fn untwisting_iso(structure: &TwistedSliceStructure, b: &Path, cap: usize) -> Result<UntwistingMap> {
    let n = b.degree();
    let simplex_twist = structure.induced_simplex_twist(b)?;
    let inverses: Vec<SliceMap> = match structure.nonsingularity()? {
        Invertibility::Certified(c) => b.vertices.iter().map(|&v| c.inverses[v].clone()).collect(),
        Invertibility::SingularAt(v) => return Err(Error::Singular(v)),
    };
    let y = structure.coefficients();
    if cap > y.cap {
        return Err(Error::DegreeOutOfRange { degree: cap, cap: y.cap });
    }
    let simplex = standard_simplex(n);
    let nerve = Nerve::build(&simplex, cap, None)?;
    let mut forward = Vec::with_capacity(cap + 1);
    let mut backward = Vec::with_capacity(cap + 1);
    for q in 0..=cap {
        let ws = nerve.count(q);
        let mut f = vec![0; y.count(q) * ws];
        let mut g = vec![0; y.count(q) * ws];
        for w in 0..ws {
            let d = monotone_decomposition(&nerve.path(q, w).vertices, n)?;
            let alpha = fibre_factor(&simplex_twist, &inverses, &d, false);
            let beta = fibre_factor(&simplex_twist, &inverses, &d, true);
            for yc in 0..y.count(q) {
                f[yc * ws + w] = alpha.apply(q, yc) * ws + w;
                g[yc * ws + w] = beta.apply(q, yc) * ws + w;
            }
        }
        forward.push(f);
        backward.push(g);
    }
    Ok(UntwistingMap { b: b.clone(), forward, backward })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleFailureKind {
    NotBijective,
    Face(usize),
    Degeneracy(usize),
    Projection(String),
    ProductSlice(String),
}

/// Where local triviality failed: base simplex `b`, degree, cell, and what.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleWitness {
    pub b: String,
    pub degree: usize,
    pub cell: String,
    pub kind: BundleFailureKind,
}

impl fmt::Display for BundleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BundleFailureKind::NotBijective => write!(f, "α_b not bijective over {}", self.b),
            BundleFailureKind::Face(i) => {
                write!(f, "d_{i}∘α_b ≠ α_b∘d_{i} over {} at degree {}, cell {}", self.b, self.degree, self.cell)
            }
            BundleFailureKind::Degeneracy(i) => {
                write!(f, "s_{i}∘α_b ≠ α_b∘s_{i} over {} at degree {}, cell {}", self.b, self.degree, self.cell)
            }
            BundleFailureKind::Projection(s) | BundleFailureKind::ProductSlice(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BundleReport {
    pub simplices_checked: usize,
    pub face_checks: usize,
    pub degeneracy_checks: usize,
    pub failures: Vec<BundleWitness>,
}

impl BundleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_simplex(
    structure: &TwistedSliceStructure,
    b: &Path,
    b_label: &str,
    cap: usize,
) -> Result<BundleReport> {
    let n = b.degree();
    let simplex = standard_simplex(n);
    let simplex_twist = structure.induced_simplex_twist(b)?;
    let y = structure.coefficients().clone();
    let twisted = twisted_product(&simplex, &simplex_twist, cap, true)?;
    let flat = twisted_product(&simplex, &TwistedStructure::identity(y, simplex.vertices()), cap, true)?;
    let alpha = untwisting_iso(structure, b, cap)?;
    let mut report = BundleReport { simplices_checked: 1, ..Default::default() };
    let witness = |degree: usize, cell: usize, kind: BundleFailureKind, p: &TwistedProductSlice| BundleWitness {
        b: b_label.to_string(),
        degree,
        cell: p.slice.labels[degree][cell].clone(),
        kind,
    };
    if !alpha.is_bijective() {
        report.failures.push(BundleWitness {
            b: b_label.to_string(),
            degree: 0,
            cell: String::new(),
            kind: BundleFailureKind::NotBijective,
        });
        return Ok(report);
    }
    let (t, u) = (&twisted.slice, &flat.slice);
    for q in 1..=cap {
        for i in 0..=q {
            for c in 0..u.count(q) {
                report.face_checks += 1;
                if t.face(q, alpha.forward[q][c], i) != alpha.forward[q - 1][u.face(q, c, i)] {
                    report.failures.push(witness(q, c, BundleFailureKind::Face(i), &flat));
                    return Ok(report);
                }
            }
        }
    }
    for q in 0..cap {
        for i in 0..=q {
            for c in 0..u.count(q) {
                report.degeneracy_checks += 1;
                if t.degeneracy(q, alpha.forward[q][c], i) != alpha.forward[q + 1][u.degeneracy(q, c, i)] {
                    report.failures.push(witness(q, c, BundleFailureKind::Degeneracy(i), &flat));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// For every `b ∈ S(A)ₙ` with `n ≤ max_base_degree`, certifies that `α_b` is a
/// bijection in degrees `≤ cap` intertwining the untwisted and twisted faces and
/// degeneracies. Also checks that `Y ×_δ S(A)` is a simplicial set and that the
/// projection to `S(A)` is a simplicial map.
pub fn verify_bundle_local_triviality(
    space: &dyn PathSpace,
    structure: &TwistedSliceStructure,
    cap: usize,
    max_base_degree: usize,
) -> Result<BundleReport> {
    let aligned = structure.aligned_to(space)?;
    if let Invertibility::SingularAt(v) = aligned.nonsingularity()? {
        return Err(Error::Singular(v));
    }
    let product = twisted_product(space, &aligned, cap, true)?;
    let mut report = BundleReport::default();
    let validation = product.slice.validate();
    if let Some(v) = validation.violations.first() {
        report.failures.push(BundleWitness {
            b: String::new(),
            degree: 0,
            cell: String::new(),
            kind: BundleFailureKind::ProductSlice(v.to_string()),
        });
    }
    let nerve = Nerve::build(space, max_base_degree.min(cap), None)?;
    if let Some(v) = product.projection_violation(&Nerve::build(space, cap, None)?.slice) {
        report.failures.push(BundleWitness {
            b: String::new(),
            degree: 0,
            cell: String::new(),
            kind: BundleFailureKind::Projection(v),
        });
    }
    let bases: Vec<&Path> = nerve.paths.iter().flatten().collect();
    let parts = bases
        .par_iter()
        .map(|b| check_simplex(&aligned, b, &space.path_label(b), cap))
        .collect::<Result<Vec<_>>>()?;
    for p in parts {
        report.simplices_checked += p.simplices_checked;
        report.face_checks += p.face_checks;
        report.degeneracy_checks += p.degeneracy_checks;
        report.failures.extend(p.failures);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupwords::FiniteGroupTable;
    use crate::spaces::{FiniteCategory, OrderedComplex};

    fn z5_twist(cap: usize) -> TwistedSliceStructure {
        let g = FiniteGroupTable::cyclic(5);
        let maps = vec![g.nerve_map(&g.power_map(2), cap), g.nerve_map(&g.power_map(3), cap)];
        TwistedStructure::new(g.nerve_slice(cap), vec!["a".into(), "b".into()], maps).unwrap()
    }

    fn edge() -> OrderedComplex {
        OrderedComplex::from_facets(&["a", "b"], &[vec!["a", "b"]]).unwrap()
    }

    #[test]
    fn decompositions() {
        let d = monotone_decomposition(&[0, 0, 2, 2, 2], 3).unwrap();
        assert_eq!(d.values, [0, 2]);
        assert_eq!(d.multiplicities, [2, 3]);
        assert_eq!(d.missing, [1, 3]);
        assert!(monotone_decomposition(&[1, 0], 1).is_err());
        assert!(monotone_decomposition(&[0, 4], 3).is_err());
    }

    #[test]
    fn untwisting_on_the_edge() {
        let cap = 2;
        let s = z5_twist(cap);
        let nerve = Nerve::build(&edge(), 1, None).unwrap();
        let ab = nerve.slice.cell_index(1, "(a,b)").unwrap();
        let alpha = untwisting_iso(&s, nerve.path(1, ab), cap).unwrap();
        assert!(alpha.is_bijective());
        let y = s.coefficients();
        let simplex = Nerve::build(&standard_simplex(1), cap, None).unwrap();
        let ws = |q| simplex.count(q);
        // w = (0,0,1): factor δ_a⁻¹ = ×3 on (1,2)
        let w = simplex.slice.cell_index(2, "(0,0,1)").unwrap();
        let yc = y.cell_index(2, "(1,2)").unwrap();
        let image = alpha.forward[2][yc * ws(2) + w];
        assert_eq!(image % ws(2), w);
        assert_eq!(y.label(2, image / ws(2)), "(3,1)");
        // w = (0,0): factor δ_a⁻¹·δ_b = ×9 ≡ ×4
        let w = simplex.slice.cell_index(1, "(0,0)").unwrap();
        let yc = y.cell_index(1, "(4)").unwrap();
        assert_eq!(y.label(1, alpha.forward[1][yc * ws(1) + w] / ws(1)), "(1)");
        // w = (0,1) uses every vertex once: identity
        let w = simplex.slice.cell_index(1, "(0,1)").unwrap();
        assert_eq!(alpha.forward[1][yc * ws(1) + w], yc * ws(1) + w);
        // α_b⁻¹ undoes it
        let c = yc * ws(2) + simplex.slice.cell_index(2, "(0,1,1)").unwrap();
        assert_eq!(alpha.backward[2][alpha.forward[2][c]], c);
    }

    #[test]
    fn edge_bundle_is_locally_trivial() {
        let r = verify_bundle_local_triviality(&edge(), &z5_twist(4), 4, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        // paths of degree ≤ 3 on an edge: 2 + 3 + 4 + 5
        assert_eq!(r.simplices_checked, 14);
    }

    #[test]
    fn category_bundle_is_locally_trivial() {
        let arrow = FiniteCategory::new(&["a", "b"], &[("f", "a", "b")], &[]).unwrap();
        let r = verify_bundle_local_triviality(&arrow, &z5_twist(3), 3, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.face_checks > 0 && r.degeneracy_checks > 0);
    }
}
