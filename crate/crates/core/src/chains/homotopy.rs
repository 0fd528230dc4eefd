use std::fmt;

use super::complex::{twisted_group_chains, ChainComplex};
use crate::abelian::IntegerMatrix;
use crate::error::{Error, Result};
use crate::spaces::{Nerve, PathSpace, Space};
use crate::twist::{Coefficients, TwistedAbelianStructure};

/// Degree-raising maps `Φₙ: Cₙ → Cₙ₊₁` for `0 ≤ n < cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainHomotopy {
    pub maps: Vec<IntegerMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub degree: usize,
    pub label: String,
    pub detail: String,
}

impl fmt::Display for HomotopyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}, {}: {}", self.degree, self.label, self.detail)
    }
}

/// `apex ∗ x` for every cell `x`, per degree `0..cap`: the unique path one degree up
/// starting at the apex with `d₀` equal to `x`.
fn apex_joins(nerve: &Nerve, apex: usize) -> Result<Vec<Vec<usize>>> {
    let s = &nerve.slice;
    let mut out = Vec::with_capacity(s.cap);
    for n in 0..s.cap {
        let mut join = vec![usize::MAX; s.count(n)];
        for c in 0..s.count(n + 1) {
            if nerve.vertex_at(n + 1, c, 0) != apex {
                continue;
            }
            let x = s.face(n + 1, c, 0);
            if join[x] != usize::MAX {
                return Err(Error::Invalid(format!("{} has two extensions from the apex", s.labels[n][x])));
            }
            join[x] = c;
        }
        if let Some(x) = join.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Invalid(format!("apex is not initial: nothing joins {}", s.labels[n][x])));
        }
        out.push(join);
    }
    Ok(out)
}

/// Cell-level identities behind the homotopy: `d₀(a∗x) = x` and
/// `dᵢ(a∗x) = a∗(dᵢ₋₁x)` for `i ≥ 1`.
pub fn cone_face_identities(space: &Space, apex: &str, cap: usize) -> Result<Option<HomotopyWitness>> {
    let a = space.vertex_index(apex).ok_or_else(|| Error::UnknownVertex(apex.to_string()))?;
    let nerve = Nerve::build(space, cap, Some(a))?;
    let joins = apex_joins(&nerve, a)?;
    let s = &nerve.slice;
    for n in 0..cap {
        for x in 0..s.count(n) {
            let ax = joins[n][x];
            if s.face(n + 1, ax, 0) != x {
                return Ok(Some(HomotopyWitness {
                    degree: n,
                    label: s.labels[n][x].clone(),
                    detail: "d_0 Φ ≠ id".into(),
                }));
            }
            // in degree 0 the only other face is the apex itself
            for i in (1..=n + 1).filter(|_| n > 0) {
                if s.face(n + 1, ax, i) != joins[n - 1][s.face(n, x, i - 1)] {
                    return Ok(Some(HomotopyWitness {
                        degree: n,
                        label: s.labels[n][x].clone(),
                        detail: format!("d_{i} Φ ≠ Φ d_{}", i - 1),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Reduced complex of the cone at its apex and the homotopy
/// `Φ(g_x) = (δ_a⁻¹ g)_{a∗x}`.
///
/// The structure must be a regular extension: `δ_a` invertible and commuting
/// with every other `δ_v`.
pub fn cone_null_homotopy(
    cone: &Space,
    structure: &TwistedAbelianStructure,
    apex: &str,
    cap: usize,
) -> Result<(ChainComplex, ChainHomotopy)> {
    if !cone.is_cone_with_apex(apex) {
        return Err(Error::Invalid(format!("`{apex}` is not the apex of a cone")));
    }
    let aligned = structure.aligned_to(cone)?;
    let g = aligned.coefficients();
    let a = cone.vertex_index(apex).expect("apex is a vertex");
    let delta_a = aligned.map(a);
    let inv = g.inverse(delta_a)?.ok_or_else(|| Error::Singular(apex.to_string()))?;
    for (v, m) in aligned.vertices().iter().zip(aligned.maps()) {
        if g.difference(&g.compose(delta_a, m), &g.compose(m, delta_a))?.is_some() {
            return Err(Error::NotCommuting(apex.to_string(), v.clone()));
        }
    }
    let complex = twisted_group_chains(cone, &aligned, cap, Some(apex), true)?;
    let nerve = Nerve::build(cone, cap, Some(a))?;
    let joins = apex_joins(&nerve, a)?;
    let base = nerve.slice.basepoint.as_ref().expect("pointed");
    let k = g.generators();
    let mut maps = Vec::with_capacity(cap);
    for n in 0..cap {
        let mut phi = IntegerMatrix::zeros(k * complex.rank(n + 1), k * complex.rank(n));
        let position = |deg: usize, cell: usize| -> Option<usize> {
            if cell == base[deg] {
                None
            } else {
                Some(if cell > base[deg] { cell - 1 } else { cell })
            }
        };
        for x in 0..nerve.count(n) {
            let (Some(col), Some(row)) = (position(n, x), position(n + 1, joins[n][x])) else { continue };
            phi.add_block(row * k, col * k, &inv);
        }
        maps.push(phi);
    }
    Ok((complex, ChainHomotopy { maps }))
}

/// `∂ₙ₊₁Φₙ + Φₙ₋₁∂ₙ ≡ id` on `Cₙ` for every `0 ≤ n < cap`.
pub fn verify_null_homotopy(c: &ChainComplex, phi: &ChainHomotopy) -> Result<Option<HomotopyWitness>> {
    if phi.maps.len() != c.cap() {
        return Err(Error::DimensionMismatch(format!("{} homotopy maps for cap {}", phi.maps.len(), c.cap())));
    }
    for n in 0..c.cap() {
        let dim = c.chain_group(n).generators();
        let mut total = c.boundary(n + 1).checked_mul(&phi.maps[n])?;
        if n > 0 {
            total = &total + &phi.maps[n - 1].checked_mul(c.boundary(n))?;
        }
        let defect = &total - &IntegerMatrix::identity(dim);
        if let Some(j) = c.chain_group(n).first_nonzero_column(&defect)? {
            return Ok(Some(HomotopyWitness {
                degree: n,
                label: c.label_of_coordinate(n, j).to_string(),
                detail: "∂Φ + Φ∂ ≠ id".into(),
            }));
        }
    }
    Ok(None)
}
