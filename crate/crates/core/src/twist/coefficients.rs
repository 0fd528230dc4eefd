use std::fmt::Debug;

use crate::abelian::{automorphism_inverse, is_valid_endomorphism, FgAbelianGroup, IntegerMatrix};
use crate::error::Result;
use crate::spaces::{SimplicialSlice, SliceMap};

/// A coefficient object together with its self-maps.
///
/// Implemented for presented abelian groups (integer matrices on generators),
/// finite groups given by tables (see `groupwords`) and simplicial slices
/// (levelwise cell maps).
pub trait Coefficients: Clone + Debug + Send + Sync {
    type Map: Clone + Debug + PartialEq + Send + Sync;

    fn kind(&self) -> &'static str;

    fn identity_map(&self) -> Self::Map;

    /// Why `m` is not an endomorphism, if it is not.
    fn map_defect(&self, m: &Self::Map) -> Result<Option<String>>;

    /// `f ∘ g`
    fn compose(&self, f: &Self::Map, g: &Self::Map) -> Self::Map;

    /// First point where `f` and `g` differ, as a human-readable witness.
    fn difference(&self, f: &Self::Map, g: &Self::Map) -> Result<Option<String>>;

    /// Two-sided inverse, certified.
    fn inverse(&self, f: &Self::Map) -> Result<Option<Self::Map>>;

    /// `f^k`; negative `k` requires `inverse`.
    fn map_power(&self, f: &Self::Map, inverse: Option<&Self::Map>, k: i64) -> Option<Self::Map> {
        let base = if k < 0 { inverse?.clone() } else { f.clone() };
        let mut out = self.identity_map();
        for _ in 0..k.unsigned_abs() {
            out = self.compose(&base, &out);
        }
        Some(out)
    }
}

impl Coefficients for FgAbelianGroup {
    type Map = IntegerMatrix;

    fn kind(&self) -> &'static str {
        "abelian"
    }

    fn identity_map(&self) -> IntegerMatrix {
        IntegerMatrix::identity(self.generators())
    }

    fn map_defect(&self, m: &IntegerMatrix) -> Result<Option<String>> {
        if m.rows() != self.generators() || m.cols() != self.generators() {
            return Ok(Some(format!("{}x{} matrix on {} generators", m.rows(), m.cols(), self.generators())));
        }
        let (ok, _) = is_valid_endomorphism(self, m)?;
        Ok((!ok).then(|| format!("{m} does not preserve the relations")))
    }

    fn compose(&self, f: &IntegerMatrix, g: &IntegerMatrix) -> IntegerMatrix {
        f * g
    }

    fn difference(&self, f: &IntegerMatrix, g: &IntegerMatrix) -> Result<Option<String>> {
        Ok(self
            .first_nonzero_column(&(f - g))?
            .map(|j| format!("generator e{j}: {:?} vs {:?}", f.column(j), g.column(j))))
    }

    fn inverse(&self, f: &IntegerMatrix) -> Result<Option<IntegerMatrix>> {
        automorphism_inverse(self, f)
    }
}

impl Coefficients for SimplicialSlice {
    type Map = SliceMap;

    fn kind(&self) -> &'static str {
        "slice"
    }

    fn identity_map(&self) -> SliceMap {
        SliceMap::identity(self)
    }

    fn map_defect(&self, m: &SliceMap) -> Result<Option<String>> {
        if let Some(v) = m.morphism_violation(self) {
            return Ok(Some(v));
        }
        Ok((!m.preserves_basepoint(self)).then(|| "moves the basepoint".to_string()))
    }

    fn compose(&self, f: &SliceMap, g: &SliceMap) -> SliceMap {
        f.compose(g)
    }

    fn difference(&self, f: &SliceMap, g: &SliceMap) -> Result<Option<String>> {
        for (n, (a, b)) in f.levels.iter().zip(&g.levels).enumerate() {
            if let Some(c) = a.iter().zip(b).position(|(x, y)| x != y) {
                return Ok(Some(format!(
                    "cell {}: {} vs {}",
                    self.labels[n][c], self.labels[n][a[c]], self.labels[n][b[c]]
                )));
            }
        }
        Ok(None)
    }

    fn inverse(&self, f: &SliceMap) -> Result<Option<SliceMap>> {
        // the inverse of a bijective slice morphism is again a morphism
        Ok(f.inverse())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::standard_simplex_slice;

    #[test]
    fn abelian_inverse_and_power() {
        let z5 = FgAbelianGroup::cyclic(5);
        let two = IntegerMatrix::scalar(1, 2);
        let inv = z5.inverse(&two).unwrap().unwrap();
        assert!(z5.difference(&(&two * &inv), &z5.identity_map()).unwrap().is_none());
        let cube = z5.map_power(&two, Some(&inv), -3).unwrap();
        // 3^3 = 27 ≡ 2
        assert!(z5.difference(&cube, &two).unwrap().is_none());
        assert!(FgAbelianGroup::integers().inverse(&two).unwrap().is_none());
    }

    #[test]
    fn slice_maps() {
        let s = standard_simplex_slice(1, 2);
        let id = s.identity_map();
        assert!(s.map_defect(&id).unwrap().is_none());
        // swapping the two vertices is not order preserving
        let mut swap = id.clone();
        swap.levels[0] = vec![1, 0];
        assert!(s.map_defect(&swap).unwrap().is_some());
        assert!(s.difference(&swap, &id).unwrap().is_some());
    }
}
