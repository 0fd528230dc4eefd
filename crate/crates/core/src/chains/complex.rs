use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::abelian::{cokernel_summary, kernel_modulo, FgAbelianGroup, GroupSummary, IntegerMatrix, LatticeSolver};
use crate::error::{Error, Result};
use crate::products::twisted_product;
use crate::spaces::{Nerve, PathSpace, SimplicialSlice};
use crate::twist::{TwistedAbelianStructure, TwistedSliceStructure};

/// Truncated chain complex `C₀ ← C₁ ← … ← C_cap` with `Cₙ = G^{kₙ}`, one copy of
/// the coefficient group `G` per basis label. `boundaries[n]` is `∂ₙ: Cₙ → Cₙ₋₁`
/// as a block matrix; `∂₀` has no rows.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    cap: usize,
    reduced: bool,
    bases: Vec<Vec<String>>,
    coefficients: FgAbelianGroup,
    groups: Vec<FgAbelianGroup>,
    boundaries: Vec<IntegerMatrix>,
}

/// `∂ₙ₋₁∂ₙ` fails to vanish on this basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWitness {
    pub degree: usize,
    pub label: String,
}

impl fmt::Display for BoundaryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∂∂ ≠ 0 on {} in degree {}", self.label, self.degree)
    }
}

impl ChainComplex {
    /// Assembles a complex from a Δ-set slice: degree-`n` basis = cells not in
    /// `killed[n]`; the block from cell `c` to `dᵢc` accumulates `(−1)ⁱ·block(n, c, i)`.
    /// Blocks landing on a killed cell are dropped.
    pub fn from_slice(
        slice: &SimplicialSlice,
        coefficients: &FgAbelianGroup,
        killed: Option<&[usize]>,
        block: impl Fn(usize, usize, usize) -> IntegerMatrix + Sync,
    ) -> Result<Self> {
        let cap = slice.cap;
        let g = coefficients.generators();
        let mut positions: Vec<Vec<Option<usize>>> = Vec::with_capacity(cap + 1);
        let mut bases = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut pos = vec![None; slice.count(n)];
            let mut labels = Vec::new();
            for (c, p) in pos.iter_mut().enumerate() {
                if killed.is_some_and(|k| k[n] == c) {
                    continue;
                }
                *p = Some(labels.len());
                labels.push(slice.labels[n][c].clone());
            }
            positions.push(pos);
            bases.push(labels);
        }
        let mut boundaries = vec![IntegerMatrix::zeros(0, g * bases[0].len())];
        let assembled = (1..=cap)
            .into_par_iter()
            .map(|n| {
                let mut d = IntegerMatrix::zeros(g * bases[n - 1].len(), g * bases[n].len());
                for c in 0..slice.count(n) {
                    let Some(col) = positions[n][c] else { continue };
                    for i in 0..=n {
                        let Some(row) = positions[n - 1][slice.face(n, c, i)] else { continue };
                        let b = block(n, c, i);
                        if b.rows() != g || b.cols() != g {
                            return Err(Error::DimensionMismatch(format!("{}x{} block", b.rows(), b.cols())));
                        }
                        let b = if i % 2 == 1 { -&b } else { b };
                        d.add_block(row * g, col * g, &b);
                    }
                }
                Ok(d)
            })
            .collect::<Result<Vec<_>>>()?;
        boundaries.extend(assembled);
        let groups = bases.iter().map(|b| coefficients.power(b.len())).collect();
        Ok(Self { cap, reduced: killed.is_some(), bases, coefficients: coefficients.clone(), groups, boundaries })
    }

    /// Direct construction; used for perturbed complexes in tests and controls.
    pub fn from_parts(
        coefficients: FgAbelianGroup,
        bases: Vec<Vec<String>>,
        boundaries: Vec<IntegerMatrix>,
        reduced: bool,
    ) -> Result<Self> {
        if bases.is_empty() || bases.len() != boundaries.len() {
            return Err(Error::DimensionMismatch("one boundary per degree".into()));
        }
        let g = coefficients.generators();
        for n in 0..bases.len() {
            let rows = if n == 0 { 0 } else { g * bases[n - 1].len() };
            if boundaries[n].rows() != rows || boundaries[n].cols() != g * bases[n].len() {
                return Err(Error::DimensionMismatch(format!("boundary in degree {n}")));
            }
        }
        let groups = bases.iter().map(|b| coefficients.power(b.len())).collect();
        Ok(Self { cap: bases.len() - 1, reduced, bases, coefficients, groups, boundaries })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn coefficients(&self) -> &FgAbelianGroup {
        &self.coefficients
    }

    pub fn basis(&self, n: usize) -> &[String] {
        &self.bases[n]
    }

    pub fn rank(&self, n: usize) -> usize {
        self.bases[n].len()
    }

    pub fn chain_group(&self, n: usize) -> &FgAbelianGroup {
        &self.groups[n]
    }

    pub fn boundary(&self, n: usize) -> &IntegerMatrix {
        &self.boundaries[n]
    }

    pub fn boundaries(&self) -> &[IntegerMatrix] {
        &self.boundaries
    }

    /// Position of a basis label in degree `n`.
    pub fn position(&self, n: usize, label: &str) -> Option<usize> {
        self.bases[n].iter().position(|l| l == label)
    }

    pub fn label_of_coordinate(&self, n: usize, coordinate: usize) -> &str {
        &self.bases[n][coordinate / self.coefficients.generators().max(1)]
    }

    /// `∂ₙ₋₁∂ₙ ≡ 0` modulo the relations of `Cₙ₋₂`, for `2 ≤ n ≤ cap`.
    pub fn verify_boundary_squared(&self) -> Result<Option<BoundaryWitness>> {
        let found = (2..=self.cap)
            .into_par_iter()
            .map(|n| {
                let dd = self.boundaries[n - 1].checked_mul(&self.boundaries[n])?;
                Ok(self.groups[n - 2]
                    .first_nonzero_column(&dd)?
                    .map(|j| BoundaryWitness { degree: n, label: self.label_of_coordinate(n, j).to_string() }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(found.into_iter().flatten().next())
    }

    /// `Hₙ = ker ∂ₙ / im ∂ₙ₊₁` for `n < cap`, computed in the presented groups.
    pub fn homology(&self, n: usize) -> Result<GroupSummary> {
        if n >= self.cap {
            return Err(Error::DegreeOutOfRange { degree: n, cap: self.cap });
        }
        let target_relations = if n == 0 {
            IntegerMatrix::zeros(0, 0)
        } else {
            self.groups[n - 1].relations().clone()
        };
        let incoming = self.boundaries[n + 1].hcat(self.groups[n].relations())?;
        subquotient(&self.boundaries[n], &target_relations, &incoming, n)
    }

    /// `Hⁿ = ker ∂ₙ₊₁ᵀ / im ∂ₙᵀ` for `n < cap`. Only free coefficients are
    /// supported; with torsion the dual of a block presentation is not a block
    /// presentation of the cochains.
    pub fn cohomology(&self, n: usize) -> Result<GroupSummary> {
        if self.coefficients.has_relations() {
            return Err(Error::Invalid("cohomology needs free coefficients".into()));
        }
        if n >= self.cap {
            return Err(Error::DegreeOutOfRange { degree: n, cap: self.cap });
        }
        let out = self.boundaries[n + 1].transpose();
        let free = IntegerMatrix::zeros(out.rows(), 0);
        subquotient(&out, &free, &self.boundaries[n].transpose(), n)
    }

    pub fn cohomology_all(&self) -> Result<Vec<GroupSummary>> {
        (0..self.cap).into_par_iter().map(|n| self.cohomology(n)).collect()
    }

    /// `H₀ … H_{cap−1}`, computed in parallel.
    pub fn homology_all(&self) -> Result<Vec<GroupSummary>> {
        (0..self.cap).into_par_iter().map(|n| self.homology(n)).collect()
    }
}

/// `ker(out mod relations) / span(incoming)`; every column of `incoming` must
/// already lie in the kernel.
fn subquotient(
    out: &IntegerMatrix,
    relations: &IntegerMatrix,
    incoming: &IntegerMatrix,
    n: usize,
) -> Result<GroupSummary> {
    let cycles = kernel_modulo(out, relations)?;
    if cycles.cols() == 0 {
        return Ok(GroupSummary::trivial());
    }
    let solver = LatticeSolver::new(&cycles);
    let mut coords: Vec<Vec<BigInt>> = Vec::with_capacity(incoming.cols());
    for j in 0..incoming.cols() {
        let x = solver
            .solve(&incoming.column(j))?
            .ok_or_else(|| Error::Invalid(format!("boundary column {j} is not a cycle in degree {n}")))?;
        coords.push(x);
    }
    Ok(cokernel_summary(&IntegerMatrix::from_columns(cycles.cols(), &coords)))
}

/// Reduced or unreduced twisted chains of `S(A)` with coefficients in the
/// structure's abelian group: `∂(g_x) = Σᵢ (−1)ⁱ δ_{vᵢ}(g)_{dᵢx}`.
pub fn twisted_group_chains(
    space: &dyn PathSpace,
    structure: &TwistedAbelianStructure,
    cap: usize,
    basepoint: Option<&str>,
    reduced: bool,
) -> Result<ChainComplex> {
    if cap == 0 {
        return Err(Error::Invalid("cap must be at least 1".into()));
    }
    let aligned = structure.aligned_to(space)?;
    let report = aligned.validate(&space.adjacency())?;
    if let Some(v) = report.violations.first() {
        return Err(Error::NotCommuting(v.v.clone(), v.w.clone()));
    }
    let base = match basepoint {
        Some(b) => Some(space.vertex_index(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?),
        None if reduced => return Err(Error::Invalid("reduced chains need a basepoint".into())),
        None => None,
    };
    let nerve = Nerve::build(space, cap, base)?;
    let killed = if reduced { nerve.slice.basepoint.clone() } else { None };
    ChainComplex::from_slice(&nerve.slice, aligned.coefficients(), killed.as_deref(), |n, c, i| {
        aligned.map(nerve.vertex_at(n, c, i)).clone()
    })
}

/// Chains of the Δ-set `Y ×_δ S(A)` with coefficients `coefficients`:
/// `∂(y⊗x) = Σᵢ (−1)ⁱ δ_{vᵢ}(dᵢy) ⊗ dᵢx`. Requires `cap < Y.cap`.
pub fn twisted_product_chains(
    space: &dyn PathSpace,
    structure: &TwistedSliceStructure,
    coefficients: &FgAbelianGroup,
    cap: usize,
) -> Result<ChainComplex> {
    let y_cap = structure.coefficients().cap;
    if cap == 0 || cap + 1 > y_cap {
        return Err(Error::DegreeOutOfRange { degree: cap, cap: y_cap.saturating_sub(1) });
    }
    let product = twisted_product(space, structure, cap, false)?;
    let id = IntegerMatrix::identity(coefficients.generators());
    ChainComplex::from_slice(&product.slice, coefficients, None, |_, _, _| id.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::Sign;
    use crate::spaces::{standard_simplex_slice, OrderedComplex};
    use crate::twist::TwistedStructure;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn scalars(vertices: &[&str], values: &[i64]) -> TwistedAbelianStructure {
        let maps = values.iter().map(|&v| IntegerMatrix::scalar(1, v)).collect();
        TwistedStructure::new(FgAbelianGroup::integers(), labels(vertices), maps).unwrap()
    }

    fn edge() -> OrderedComplex {
        OrderedComplex::from_facets(&["a", "b"], &[vec!["a", "b"]]).unwrap()
    }

    fn circle() -> OrderedComplex {
        OrderedComplex::from_facets(&["a", "b", "c"], &[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap()
    }

    #[test]
    fn scalar_edge_differential() {
        let c = twisted_group_chains(&edge(), &scalars(&["a", "b"], &[2, 3]), 2, Some("a"), true).unwrap();
        assert_eq!(c.basis(0), ["(b)"]);
        assert_eq!(c.basis(1), ["(a,b)", "(b,b)"]);
        // ∂(a,b) = δ_a(b) − δ_b(a) with (a) killed; ∂(b,b) = 3(b) − 3(b)
        assert_eq!(c.boundary(1), &IntegerMatrix::from_rows(&[vec![2, 0]]));
        assert_eq!(c.homology(0).unwrap().to_string(), "Z/2");
        assert!(c.verify_boundary_squared().unwrap().is_none());
    }

    #[test]
    fn circle_with_identity_twist() {
        let s = TwistedStructure::identity(FgAbelianGroup::integers(), &labels(&["a", "b", "c"]));
        let c = twisted_group_chains(&circle(), &s, 3, None, false).unwrap();
        let h = c.homology_all().unwrap();
        assert_eq!(h.iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["Z", "Z", "0"]);
    }

    #[test]
    fn cohomology_of_circle_and_scalar_edge() {
        let s = TwistedStructure::identity(FgAbelianGroup::integers(), &labels(&["a", "b", "c"]));
        let c = twisted_group_chains(&circle(), &s, 3, None, false).unwrap();
        let h = c.cohomology_all().unwrap();
        assert_eq!(h.iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["Z", "Z", "0"]);
        // H̃₀ = Z/2 reappears as torsion one degree up
        let c = twisted_group_chains(&edge(), &scalars(&["a", "b"], &[2, 3]), 3, Some("a"), true).unwrap();
        assert!(c.cohomology(0).unwrap().is_trivial());
        assert!(c.cohomology(1).unwrap().torsion_u64().contains(&2));
    }

    #[test]
    fn cohomology_rejects_torsion_coefficients() {
        let s = TwistedStructure::identity(FgAbelianGroup::cyclic(3), &labels(&["a", "b"]));
        let c = twisted_group_chains(&edge(), &s, 2, None, false).unwrap();
        assert!(c.cohomology(0).is_err());
    }

    #[test]
    fn zero_twist_has_zero_differentials() {
        let s = scalars(&["a", "b"], &[0, 0]);
        let c = twisted_group_chains(&edge(), &s, 3, Some("a"), true).unwrap();
        assert!(c.boundaries().iter().all(IntegerMatrix::is_zero));
        for n in 0..3 {
            assert_eq!(c.homology(n).unwrap(), c.chain_group(n).summary());
        }
    }

    #[test]
    fn point_reduced_and_unreduced() {
        let p = OrderedComplex::from_facets(&["a"], &[] as &[Vec<&str>]).unwrap();
        let s = scalars(&["a"], &[1]);
        let unreduced = twisted_group_chains(&p, &s, 3, Some("a"), false).unwrap();
        let reduced = twisted_group_chains(&p, &s, 3, Some("a"), true).unwrap();
        assert_eq!(unreduced.homology(0).unwrap().to_string(), "Z");
        assert_eq!(unreduced.homology(1).unwrap().to_string(), "0");
        assert!(reduced.homology_all().unwrap().iter().all(GroupSummary::is_trivial));
        assert!(twisted_group_chains(&p, &s, 3, None, true).is_err());
    }

    #[test]
    fn torsion_coefficients() {
        let s = TwistedStructure::new(
            FgAbelianGroup::cyclic(4),
            labels(&["a", "b"]),
            vec![IntegerMatrix::scalar(1, 1), IntegerMatrix::scalar(1, 3)],
        )
        .unwrap();
        let c = twisted_group_chains(&edge(), &s, 3, Some("a"), true).unwrap();
        assert!(c.verify_boundary_squared().unwrap().is_none());
        // ∂(a,b) = (b) in C̃₀ = Z/4 kills everything
        assert!(c.homology(0).unwrap().is_trivial());
    }

    #[test]
    fn sign_flip_is_caught() {
        let c = twisted_group_chains(&circle(), &scalars(&["a", "b", "c"], &[1, 1, 1]), 3, None, false).unwrap();
        let mut boundaries = c.boundaries().to_vec();
        // ∂(a,b,b) = (b,b) − (a,b) + (a,b); drop the sign on d₁
        let col = c.position(2, "(a,b,b)").unwrap();
        let row = c.position(1, "(a,b)").unwrap();
        assert_eq!(boundaries[2].get(row, col).sign(), Sign::NoSign);
        *boundaries[2].get_mut(row, col) = BigInt::from(2);
        let broken =
            ChainComplex::from_parts(c.coefficients().clone(), (0..=3).map(|n| c.basis(n).to_vec()).collect(), boundaries, false)
                .unwrap();
        let w = broken.verify_boundary_squared().unwrap().unwrap();
        assert_eq!(w.degree, 2);
        assert_eq!(w.label, "(a,b,b)");
    }

    #[test]
    fn product_with_a_point_fibre() {
        let y = standard_simplex_slice(0, 4);
        let twist = TwistedStructure::identity(y.clone(), &labels(&["a", "b"]));
        let prod = twisted_product_chains(&edge(), &twist, &FgAbelianGroup::integers(), 3).unwrap();
        let plain = twisted_group_chains(&edge(), &scalars(&["a", "b"], &[1, 1]), 3, None, false).unwrap();
        assert_eq!(prod.homology_all().unwrap(), plain.homology_all().unwrap());
        assert!(twisted_product_chains(&edge(), &twist, &FgAbelianGroup::integers(), 4).is_err());
    }
}
