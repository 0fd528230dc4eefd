//! Exhaustive checking of the Δ-identity and the simplicial identities for
//! anything exposing faces and (optionally) degeneracies degree by degree.

use std::fmt;

/// Which identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    /// `dᵢdⱼ = dⱼdᵢ₊₁` for `i ≥ j`
    FaceFace,
    /// `sⱼsᵢ = sᵢ₊₁sⱼ` for `i ≥ j`
    DegeneracyDegeneracy,
    /// `dᵢsⱼ = sⱼ₋₁dᵢ` for `i < j`
    FaceBelowDegeneracy,
    /// `dⱼsⱼ = dⱼ₊₁sⱼ = id`
    FaceDegeneracyIdentity,
    /// `dᵢsⱼ = sⱼdᵢ₋₁` for `i > j + 1`
    FaceAboveDegeneracy,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 5] = [
        IdentityKind::FaceFace,
        IdentityKind::DegeneracyDegeneracy,
        IdentityKind::FaceBelowDegeneracy,
        IdentityKind::FaceDegeneracyIdentity,
        IdentityKind::FaceAboveDegeneracy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::FaceFace => "d_i d_j = d_j d_(i+1)",
            IdentityKind::DegeneracyDegeneracy => "s_j s_i = s_(i+1) s_j",
            IdentityKind::FaceBelowDegeneracy => "d_i s_j = s_(j-1) d_i",
            IdentityKind::FaceDegeneracyIdentity => "d_j s_j = d_(j+1) s_j = id",
            IdentityKind::FaceAboveDegeneracy => "d_i s_j = s_j d_(i-1)",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed instance: identity, degree of the element, and the indices `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub kind: IdentityKind,
    pub degree: usize,
    pub i: usize,
    pub j: usize,
}

/// Graded object with faces and possibly degeneracies, truncated at `cap`.
pub trait Graded {
    type Elem: PartialEq;

    fn cap(&self) -> usize;

    fn has_degeneracies(&self) -> bool;

    /// `dᵢ` on an element of degree `n ≥ 1`.
    fn face(&self, n: usize, x: &Self::Elem, i: usize) -> Self::Elem;

    /// `sᵢ` on an element of degree `n < cap`.
    fn degeneracy(&self, n: usize, x: &Self::Elem, i: usize) -> Self::Elem;
}

/// Checks every identity applicable to `x` (of degree `n`) that stays within the cap.
///
/// Failures are appended to `out`; the return value is the number of
/// identity instances examined.
pub fn check_element<G: Graded>(g: &G, n: usize, x: &G::Elem, out: &mut Vec<IdentityFailure>) -> usize {
    let mut checked = 0;
    let cap = g.cap();
    if n >= 2 {
        for j in 0..n {
            let dj = g.face(n, x, j);
            for i in j..n {
                let lhs = g.face(n - 1, &dj, i);
                let di1 = g.face(n, x, i + 1);
                let rhs = g.face(n - 1, &di1, j);
                checked += 1;
                if lhs != rhs {
                    out.push(IdentityFailure { kind: IdentityKind::FaceFace, degree: n, i, j });
                }
            }
        }
    }
    if !g.has_degeneracies() || n + 1 > cap {
        return checked;
    }
    for j in 0..=n {
        let sj = g.degeneracy(n, x, j);
        // d_j s_j = d_{j+1} s_j = id
        checked += 1;
        if g.face(n + 1, &sj, j) != *x || g.face(n + 1, &sj, j + 1) != *x {
            out.push(IdentityFailure { kind: IdentityKind::FaceDegeneracyIdentity, degree: n, i: j, j });
        }
        if n >= 1 {
            for i in 0..j {
                let lhs = g.face(n + 1, &sj, i);
                let rhs = g.degeneracy(n - 1, &g.face(n, x, i), j - 1);
                checked += 1;
                if lhs != rhs {
                    out.push(IdentityFailure { kind: IdentityKind::FaceBelowDegeneracy, degree: n, i, j });
                }
            }
            for i in j + 2..=n + 1 {
                let lhs = g.face(n + 1, &sj, i);
                let rhs = g.degeneracy(n - 1, &g.face(n, x, i - 1), j);
                checked += 1;
                if lhs != rhs {
                    out.push(IdentityFailure { kind: IdentityKind::FaceAboveDegeneracy, degree: n, i, j });
                }
            }
        }
        if n + 2 <= cap {
            for i in j..=n {
                let lhs = g.degeneracy(n + 1, &g.degeneracy(n, x, i), j);
                let rhs = g.degeneracy(n + 1, &sj, i + 1);
                checked += 1;
                if lhs != rhs {
                    out.push(IdentityFailure { kind: IdentityKind::DegeneracyDegeneracy, degree: n, i, j });
                }
            }
        }
    }
    checked
}
