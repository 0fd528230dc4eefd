use std::collections::BTreeSet;

use super::complex::{twisted_group_chains, ChainComplex};
use crate::abelian::{exactness_witness, IntegerMatrix, PresentedMap};
use crate::error::{Error, Result};
use crate::spaces::{OrderedComplex, PathSpace};
use crate::twist::TwistedAbelianStructure;

/// Degreewise maps `fₙ: Cₙ → C′ₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub maps: Vec<IntegerMatrix>,
}

impl ChainMap {
    /// First degree where `f∘∂ ≢ ∂′∘f` modulo the relations of `C′`.
    pub fn commutation_failure(&self, source: &ChainComplex, target: &ChainComplex) -> Result<Option<usize>> {
        for n in 1..self.maps.len() {
            let lhs = self.maps[n - 1].checked_mul(source.boundary(n))?;
            let rhs = target.boundary(n).checked_mul(&self.maps[n])?;
            if !target.chain_group(n - 1).congruent(&lhs, &rhs)? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

/// Direct sum of two complexes over the same coefficients, second summand's
/// labels tagged.
fn direct_sum(a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex> {
    let bases = (0..=a.cap())
        .map(|n| {
            let mut labels: Vec<String> = a.basis(n).iter().map(|l| format!("1:{l}")).collect();
            labels.extend(b.basis(n).iter().map(|l| format!("2:{l}")));
            labels
        })
        .collect();
    let boundaries = (0..=a.cap()).map(|n| a.boundary(n).direct_sum(b.boundary(n))).collect();
    ChainComplex::from_parts(a.coefficients().clone(), bases, boundaries, a.is_reduced())
}

/// Inclusion of bases by label, scaled by `sign`.
fn inclusion(source: &ChainComplex, target: &ChainComplex, n: usize, offset: usize, sign: i64) -> Result<IntegerMatrix> {
    let k = source.coefficients().generators();
    let block = IntegerMatrix::scalar(k, sign);
    let mut m = IntegerMatrix::zeros(k * target.rank(n), k * source.rank(n));
    for (col, label) in source.basis(n).iter().enumerate() {
        let row = target
            .position(n, label)
            .ok_or_else(|| Error::Invalid(format!("{label} missing from the larger complex")))?;
        m.add_block((offset + row) * k, col * k, &block);
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCounts {
    pub whole: usize,
    pub first: usize,
    pub second: usize,
    pub overlap: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MayerVietorisReport {
    /// Path counts per degree, `n ≤ cap`.
    pub counts: Vec<DegreeCounts>,
    /// Degrees where `S(K)ₙ ≠ S(K₁)ₙ ∪ S(K₂)ₙ` or the overlap is not `S(K₁∩K₂)ₙ`.
    pub set_failures: Vec<usize>,
    pub chain_map_failures: Vec<String>,
    pub exactness_failures: Vec<String>,
}

impl MayerVietorisReport {
    pub fn passed(&self) -> bool {
        self.set_failures.is_empty() && self.chain_map_failures.is_empty() && self.exactness_failures.is_empty()
    }
}

fn path_sets(k: &OrderedComplex, n: usize) -> BTreeSet<Vec<String>> {
    k.enumerate_paths(n).iter().map(|p| k.path_labels(p)).collect()
}

/// Checks `0 → C(K₁∩K₂) → C(K₁) ⊕ C(K₂) → C(K) → 0` with maps `x ↦ (x, −x)` and
/// `(y, z) ↦ y + z`, on reduced twisted chains pointed in the intersection,
/// together with the path-set decomposition it rests on.
pub fn mayer_vietoris_check(
    k1: &OrderedComplex,
    k2: &OrderedComplex,
    structure: &TwistedAbelianStructure,
    cap: usize,
    basepoint: &str,
) -> Result<MayerVietorisReport> {
    let whole = k1.union(k2)?;
    let overlap = k1.intersection(k2)?;
    if overlap.vertex_index(basepoint).is_none() {
        return Err(Error::Invalid(format!("basepoint `{basepoint}` is not in the intersection")));
    }
    let mut report = MayerVietorisReport::default();
    for n in 0..=cap {
        let (s, s1, s2, s12) = (path_sets(&whole, n), path_sets(k1, n), path_sets(k2, n), path_sets(&overlap, n));
        let union: BTreeSet<_> = s1.union(&s2).cloned().collect();
        let inter: BTreeSet<_> = s1.intersection(&s2).cloned().collect();
        if union != s || inter != s12 {
            report.set_failures.push(n);
        }
        report.counts.push(DegreeCounts { whole: s.len(), first: s1.len(), second: s2.len(), overlap: s12.len() });
    }
    let chains = |k: &OrderedComplex| twisted_group_chains(k, &structure.aligned_to(k)?, cap, Some(basepoint), true);
    let (c, c1, c2, c12) = (chains(&whole)?, chains(k1)?, chains(k2)?, chains(&overlap)?);
    let middle = direct_sum(&c1, &c2)?;
    let mut f = ChainMap { maps: Vec::new() };
    let mut g = ChainMap { maps: Vec::new() };
    for n in 0..=cap {
        let into_first = inclusion(&c12, &c1, n, 0, 1)?;
        let into_second = inclusion(&c12, &c2, n, 0, -1)?;
        let mut fn_ = IntegerMatrix::zeros(into_first.rows() + into_second.rows(), into_first.cols());
        fn_.add_block(0, 0, &into_first);
        fn_.add_block(into_first.rows(), 0, &into_second);
        f.maps.push(fn_);
        g.maps.push(inclusion(&c1, &c, n, 0, 1)?.hcat(&inclusion(&c2, &c, n, 0, 1)?)?);
    }
    if let Some(n) = f.commutation_failure(&c12, &middle)? {
        report.chain_map_failures.push(format!("x ↦ (x, −x) fails to commute with ∂ in degree {n}"));
    }
    if let Some(n) = g.commutation_failure(&middle, &c)? {
        report.chain_map_failures.push(format!("(y, z) ↦ y + z fails to commute with ∂ in degree {n}"));
    }
    for n in 0..=cap {
        let (a, b, t) = (c12.chain_group(n), middle.chain_group(n), c.chain_group(n));
        let fm = PresentedMap::new(a, b, &f.maps[n])?;
        let gm = PresentedMap::new(b, t, &g.maps[n])?;
        if !fm.is_well_defined()? || !gm.is_well_defined()? {
            report.exactness_failures.push(format!("maps in degree {n} do not respect relations"));
            continue;
        }
        if let Some(v) = fm.injectivity_witness()? {
            report.exactness_failures.push(format!("degree {n}: x ↦ (x, −x) kills {v:?}"));
        }
        if let Some(v) = exactness_witness(&fm, &gm)? {
            report.exactness_failures.push(format!("degree {n}: middle kernel element {v:?} is not an image"));
        }
        if let Some(j) = gm.surjectivity_witness()? {
            report
                .exactness_failures
                .push(format!("degree {n}: {} is not hit", c.label_of_coordinate(n, j)));
        }
    }
    Ok(report)
}
