use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::lattice::{columns_in_span, kernel_modulo, LatticeSolver};
use super::matrix::IntegerMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Canonical invariant-factor form `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k`, `tᵢ | tᵢ₊₁`, `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupSummary {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupSummary {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for GroupSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Z^rows / column-span(A)` in canonical form.
pub fn cokernel_summary(a: &IntegerMatrix) -> GroupSummary {
    let snf = smith_normal_form(a);
    let torsion = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
    GroupSummary { free_rank: a.rows() - snf.rank(), torsion }
}

/// Finitely generated abelian group `Zⁿ / span(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    generators: usize,
    relations: IntegerMatrix,
}

impl FgAbelianGroup {
    pub fn new(generators: usize, relations: IntegerMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(Self { generators, relations })
    }

    pub fn free(rank: usize) -> Self {
        Self { generators: rank, relations: IntegerMatrix::zeros(rank, 0) }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_summary(0, &[order])
    }

    /// `Z^free_rank ⊕ ⊕ Z/tᵢ`, one generator per summand.
    pub fn from_summary(free_rank: usize, torsion: &[u64]) -> Self {
        let n = free_rank + torsion.len();
        let mut rel = IntegerMatrix::zeros(n, torsion.len());
        for (k, t) in torsion.iter().enumerate() {
            rel.set(free_rank + k, k, *t);
        }
        Self { generators: n, relations: rel }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntegerMatrix {
        &self.relations
    }

    pub fn summary(&self) -> GroupSummary {
        cokernel_summary(&self.relations)
    }

    /// `G^k` with block-diagonal relations.
    pub fn power(&self, k: usize) -> Self {
        let mut rel = IntegerMatrix::zeros(self.generators * k, self.relations.cols() * k);
        for b in 0..k {
            rel.add_block(b * self.generators, b * self.relations.cols(), &self.relations);
        }
        Self { generators: self.generators * k, relations: rel }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            generators: self.generators + other.generators,
            relations: self.relations.direct_sum(&other.relations),
        }
    }

    pub fn has_relations(&self) -> bool {
        self.relations.cols() > 0 && !self.relations.is_zero()
    }

    pub fn solver(&self) -> LatticeSolver {
        LatticeSolver::new(&self.relations)
    }

    /// First column of `m` that is not zero in the group.
    pub fn first_nonzero_column(&self, m: &IntegerMatrix) -> Result<Option<usize>> {
        if m.rows() != self.generators {
            return Err(Error::DimensionMismatch("column length vs generators".into()));
        }
        columns_in_span(m, &self.relations)
    }

    pub fn is_zero_matrix(&self, m: &IntegerMatrix) -> Result<bool> {
        Ok(self.first_nonzero_column(m)?.is_none())
    }

    pub fn vector_is_zero(&self, v: &[BigInt]) -> Result<bool> {
        let m = IntegerMatrix::from_columns(self.generators, &[v.to_vec()]);
        self.is_zero_matrix(&m)
    }

    /// `a ≡ b` as group elements (columnwise).
    pub fn congruent(&self, a: &IntegerMatrix, b: &IntegerMatrix) -> Result<bool> {
        if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
            return Err(Error::DimensionMismatch("congruence of differently sized matrices".into()));
        }
        self.is_zero_matrix(&(a - b))
    }
}

/// Certificate for a valid endomorphism: `R·X = M·R`.
#[derive(Clone, Debug)]
pub struct EndomorphismCertificate {
    pub relation_images: IntegerMatrix,
}

/// Whether `m` descends to an endomorphism of `g`: every relation must map into
/// the relation lattice.
pub fn is_valid_endomorphism(
    g: &FgAbelianGroup,
    m: &IntegerMatrix,
) -> Result<(bool, Option<EndomorphismCertificate>)> {
    let n = g.generators();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix on a group with {} generators",
            m.rows(),
            m.cols(),
            n
        )));
    }
    let mr = m.checked_mul(g.relations())?;
    if mr.cols() == 0 {
        return Ok((true, Some(EndomorphismCertificate { relation_images: IntegerMatrix::zeros(0, 0) })));
    }
    let solver = g.solver();
    let mut cols = Vec::with_capacity(mr.cols());
    for j in 0..mr.cols() {
        match solver.solve(&mr.column(j))? {
            Some(x) => cols.push(x),
            None => return Ok((false, None)),
        }
    }
    let x = IntegerMatrix::from_columns(g.relations().cols(), &cols);
    Ok((true, Some(EndomorphismCertificate { relation_images: x })))
}

/// An integer matrix acting on the generators of a presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianEndomorphism {
    group: FgAbelianGroup,
    matrix: IntegerMatrix,
}

impl AbelianEndomorphism {
    pub fn new(group: FgAbelianGroup, matrix: IntegerMatrix) -> Result<Self> {
        let (ok, _) = is_valid_endomorphism(&group, &matrix)?;
        if !ok {
            return Err(Error::Invalid(format!("{matrix} does not preserve the relation lattice")));
        }
        Ok(Self { group, matrix })
    }

    pub fn identity(group: &FgAbelianGroup) -> Self {
        Self { matrix: IntegerMatrix::identity(group.generators()), group: group.clone() }
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch("composition across groups".into()));
        }
        Ok(Self { group: self.group.clone(), matrix: self.matrix.checked_mul(&other.matrix)? })
    }
}

/// Inverse `N` with `M·N ≡ N·M ≡ I` when `M` is an automorphism.
///
/// A surjective endomorphism of a finitely generated abelian group is
/// bijective, so the candidate is found by solving `M·N ≡ I` and then
/// certified in both orders.
pub fn automorphism_inverse(g: &FgAbelianGroup, m: &IntegerMatrix) -> Result<Option<IntegerMatrix>> {
    let n = g.generators();
    let (valid, _) = is_valid_endomorphism(g, m)?;
    if !valid {
        return Err(Error::Invalid("not an endomorphism".into()));
    }
    let aug = m.hcat(g.relations())?;
    let solver = LatticeSolver::new(&aug);
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[k] = BigInt::one();
        match solver.solve(&e)? {
            Some(x) => cols.push(x[..n].to_vec()),
            None => return Ok(None),
        }
    }
    let inv = IntegerMatrix::from_columns(n, &cols);
    let id = IntegerMatrix::identity(n);
    let (inv_valid, _) = is_valid_endomorphism(g, &inv)?;
    if !inv_valid || !g.congruent(&(m * &inv), &id)? || !g.congruent(&(&inv * m), &id)? {
        return Ok(None);
    }
    Ok(Some(inv))
}

pub fn is_automorphism(g: &FgAbelianGroup, m: &AbelianEndomorphism) -> Result<bool> {
    Ok(automorphism_inverse(g, m.matrix())?.is_some())
}

/// `M1·M2 ≡ M2·M1` modulo the relation lattice.
pub fn endomorphisms_commute(m1: &AbelianEndomorphism, m2: &AbelianEndomorphism) -> Result<bool> {
    if m1.group != m2.group {
        return Err(Error::GroupMismatch("endomorphisms of different groups".into()));
    }
    m1.group.congruent(&(&m1.matrix * &m2.matrix), &(&m2.matrix * &m1.matrix))
}

/// A homomorphism between presented groups, given on generators.
#[derive(Clone, Debug)]
pub struct PresentedMap<'a> {
    pub source: &'a FgAbelianGroup,
    pub target: &'a FgAbelianGroup,
    pub matrix: &'a IntegerMatrix,
}

impl<'a> PresentedMap<'a> {
    pub fn new(source: &'a FgAbelianGroup, target: &'a FgAbelianGroup, matrix: &'a IntegerMatrix) -> Result<Self> {
        if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} map between groups on {} and {} generators",
                matrix.rows(),
                matrix.cols(),
                source.generators(),
                target.generators()
            )));
        }
        Ok(Self { source, target, matrix })
    }

    /// Relations of the source must land in the relations of the target.
    pub fn is_well_defined(&self) -> Result<bool> {
        let img = self.matrix.checked_mul(self.source.relations())?;
        Ok(self.target.first_nonzero_column(&img)?.is_none())
    }

    /// Lattice of source vectors mapping to zero in the target.
    pub fn kernel_lattice(&self) -> Result<IntegerMatrix> {
        kernel_modulo(self.matrix, self.target.relations())
    }

    /// First kernel basis vector that is nonzero in the source, if any.
    pub fn injectivity_witness(&self) -> Result<Option<Vec<BigInt>>> {
        let k = self.kernel_lattice()?;
        Ok(columns_in_span(&k, self.source.relations())?.map(|j| k.column(j)))
    }

    /// First target generator not hit modulo relations, if any.
    pub fn surjectivity_witness(&self) -> Result<Option<usize>> {
        let span = self.matrix.hcat(self.target.relations())?;
        let id = IntegerMatrix::identity(self.target.generators());
        columns_in_span(&id, &span)
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`: `g∘f ≡ 0` and `ker g ⊆ im f + R_B`.
///
/// Returns a kernel vector of `g` missing from the image of `f` on failure.
pub fn exactness_witness(f: &PresentedMap<'_>, g: &PresentedMap<'_>) -> Result<Option<Vec<BigInt>>> {
    let gf = g.matrix.checked_mul(f.matrix)?;
    if let Some(j) = g.target.first_nonzero_column(&gf)? {
        return Ok(Some(f.matrix.column(j)));
    }
    let k = g.kernel_lattice()?;
    let im = f.matrix.hcat(f.target.relations())?;
    Ok(columns_in_span(&k, &im)?.map(|j| k.column(j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernels() {
        assert_eq!(cokernel_summary(&IntegerMatrix::from_rows(&[vec![2]])).to_string(), "Z/2");
        let s = cokernel_summary(&IntegerMatrix::diagonal(&[2, 3]));
        assert_eq!(s, GroupSummary { free_rank: 0, torsion: vec![BigInt::from(6)] });
        let s = cokernel_summary(&IntegerMatrix::zeros(2, 1));
        assert_eq!(s, GroupSummary::free(2));
    }

    #[test]
    fn endomorphism_validity() {
        let z = FgAbelianGroup::integers();
        assert!(is_valid_endomorphism(&z, &IntegerMatrix::scalar(1, 5)).unwrap().0);
        let z2 = FgAbelianGroup::cyclic(2);
        assert!(is_valid_endomorphism(&z2, &IntegerMatrix::scalar(1, 3)).unwrap().0);
        let g = FgAbelianGroup::from_summary(0, &[4, 2]);
        let swap = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(!is_valid_endomorphism(&g, &swap).unwrap().0);
        assert!(is_valid_endomorphism(&g, &IntegerMatrix::identity(3)).is_err());
    }

    #[test]
    fn automorphisms() {
        let z = FgAbelianGroup::integers();
        let neg = AbelianEndomorphism::new(z.clone(), IntegerMatrix::scalar(1, -1)).unwrap();
        assert!(is_automorphism(&z, &neg).unwrap());
        let two = AbelianEndomorphism::new(z.clone(), IntegerMatrix::scalar(1, 2)).unwrap();
        assert!(!is_automorphism(&z, &two).unwrap());
        let z5 = FgAbelianGroup::cyclic(5);
        let inv = automorphism_inverse(&z5, &IntegerMatrix::scalar(1, 2)).unwrap().unwrap();
        assert!(z5.congruent(&inv, &IntegerMatrix::scalar(1, 3)).unwrap());
        // 2 is a zero divisor in Z/4
        assert!(automorphism_inverse(&FgAbelianGroup::cyclic(4), &IntegerMatrix::scalar(1, 2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn commuting() {
        let z2 = FgAbelianGroup::free(2);
        let a = AbelianEndomorphism::new(z2.clone(), IntegerMatrix::from_rows(&[vec![1, 1], vec![0, 1]])).unwrap();
        let b = AbelianEndomorphism::new(z2.clone(), IntegerMatrix::from_rows(&[vec![1, 0], vec![1, 1]])).unwrap();
        assert!(endomorphisms_commute(&a, &a).unwrap());
        assert!(!endomorphisms_commute(&a, &b).unwrap());
        let d1 = AbelianEndomorphism::new(z2.clone(), IntegerMatrix::diagonal(&[2, 3])).unwrap();
        let d2 = AbelianEndomorphism::new(z2, IntegerMatrix::diagonal(&[-1, 7])).unwrap();
        assert!(endomorphisms_commute(&d1, &d2).unwrap());
        let other = AbelianEndomorphism::identity(&FgAbelianGroup::integers());
        assert!(endomorphisms_commute(&a, &other).is_err());
    }

    #[test]
    fn presented_maps() {
        // Z --2--> Z --> Z/2 is exact in the middle
        let z = FgAbelianGroup::integers();
        let z2 = FgAbelianGroup::cyclic(2);
        let two = IntegerMatrix::scalar(1, 2);
        let one = IntegerMatrix::identity(1);
        let f = PresentedMap::new(&z, &z, &two).unwrap();
        let g = PresentedMap::new(&z, &z2, &one).unwrap();
        assert!(g.is_well_defined().unwrap());
        assert_eq!(f.injectivity_witness().unwrap(), None);
        assert_eq!(g.surjectivity_witness().unwrap(), None);
        assert_eq!(exactness_witness(&f, &g).unwrap(), None);
        assert_eq!(f.surjectivity_witness().unwrap(), Some(0));
    }
}
