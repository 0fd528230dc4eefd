use std::fmt;

use rayon::prelude::*;

use super::coefficients::Coefficients;
use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::spaces::{AdjacencyRelation, Path, PathSpace, SimplicialSlice};

/// Assignment `v ↦ δ_v` of a self-map of the coefficients to every vertex.
///
/// `maps[k]` belongs to `vertices[k]`. Builders of chains and products align
/// the vertex order with the space via [`TwistedStructure::aligned_to`].
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedStructure<C: Coefficients> {
    coefficients: C,
    vertices: Vec<String>,
    maps: Vec<C::Map>,
}

pub type TwistedAbelianStructure = TwistedStructure<FgAbelianGroup>;
pub type TwistedSliceStructure = TwistedStructure<SimplicialSlice>;

/// Adjacent pair whose maps do not commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingViolation {
    pub v: String,
    pub w: String,
    pub witness: String,
}

impl fmt::Display for CommutingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ_{} ∘ δ_{} ≠ δ_{} ∘ δ_{} ({})", self.v, self.w, self.w, self.v, self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistReport {
    /// Every adjacent pair that was examined, in adjacency order.
    pub checked_pairs: Vec<(String, String)>,
    pub violations: Vec<CommutingViolation>,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn covers(&self, v: &str, w: &str) -> bool {
        self.checked_pairs.iter().any(|(a, b)| (a == v && b == w) || (a == w && b == v))
    }
}

/// Per-vertex inverses, each certified in both orders.
#[derive(Clone, Debug, PartialEq)]
pub struct NonSingularityCertificate<M> {
    pub inverses: Vec<M>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Invertibility<M> {
    Certified(NonSingularityCertificate<M>),
    SingularAt(String),
}

impl<M> Invertibility<M> {
    pub fn certificate(self) -> Option<NonSingularityCertificate<M>> {
        match self {
            Invertibility::Certified(c) => Some(c),
            Invertibility::SingularAt(_) => None,
        }
    }
}

impl<C: Coefficients> TwistedStructure<C> {
    /// Checks that every map is an endomorphism of the coefficients.
    pub fn new(coefficients: C, vertices: Vec<String>, maps: Vec<C::Map>) -> Result<Self> {
        if vertices.len() != maps.len() {
            return Err(Error::DimensionMismatch(format!("{} vertices, {} maps", vertices.len(), maps.len())));
        }
        for (v, m) in vertices.iter().zip(&maps) {
            if let Some(why) = coefficients.map_defect(m)? {
                return Err(Error::Invalid(format!("δ_{v}: {why}")));
            }
        }
        Ok(Self { coefficients, vertices, maps })
    }

    /// Skips the endomorphism check; for negative controls only.
    pub fn new_unchecked(coefficients: C, vertices: Vec<String>, maps: Vec<C::Map>) -> Self {
        Self { coefficients, vertices, maps }
    }

    pub fn identity(coefficients: C, vertices: &[String]) -> Self {
        let maps = vec![coefficients.identity_map(); vertices.len()];
        Self { coefficients, vertices: vertices.to_vec(), maps }
    }

    /// Same map at every vertex.
    pub fn constant(coefficients: C, vertices: &[String], map: C::Map) -> Result<Self> {
        let maps = vec![map; vertices.len()];
        Self::new(coefficients, vertices.to_vec(), maps)
    }

    pub fn coefficients(&self) -> &C {
        &self.coefficients
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn maps(&self) -> &[C::Map] {
        &self.maps
    }

    pub fn map(&self, v: usize) -> &C::Map {
        &self.maps[v]
    }

    pub fn map_of(&self, label: &str) -> Result<&C::Map> {
        let k = self.position(label)?;
        Ok(&self.maps[k])
    }

    fn position(&self, label: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Commuting rule on adjacent pairs only; indices refer to `self.vertices`.
    pub fn validate(&self, adjacency: &AdjacencyRelation) -> Result<TwistReport> {
        let pairs: Vec<(usize, usize)> = adjacency.pairs().collect();
        if let Some(&(v, w)) = pairs.iter().find(|&&(v, w)| v.max(w) >= self.vertices.len()) {
            return Err(Error::UnknownVertex(format!("vertex index {}", v.max(w))));
        }
        let outcomes = pairs
            .par_iter()
            .map(|&(v, w)| {
                let vw = self.coefficients.compose(&self.maps[v], &self.maps[w]);
                let wv = self.coefficients.compose(&self.maps[w], &self.maps[v]);
                self.coefficients.difference(&vw, &wv)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut report = TwistReport::default();
        for (&(v, w), outcome) in pairs.iter().zip(outcomes) {
            let (a, b) = (self.vertices[v].clone(), self.vertices[w].clone());
            if let Some(witness) = outcome {
                report.violations.push(CommutingViolation { v: a.clone(), w: b.clone(), witness });
            }
            report.checked_pairs.push((a, b));
        }
        Ok(report)
    }

    /// Aligns to the space's vertex order, then validates on its adjacency.
    pub fn validate_on(&self, space: &dyn PathSpace) -> Result<TwistReport> {
        self.aligned_to(space)?.validate(&space.adjacency())
    }

    pub fn nonsingularity(&self) -> Result<Invertibility<C::Map>> {
        let mut inverses = Vec::with_capacity(self.maps.len());
        for (v, m) in self.vertices.iter().zip(&self.maps) {
            match self.coefficients.inverse(m)? {
                Some(inv) => inverses.push(inv),
                None => return Ok(Invertibility::SingularAt(v.clone())),
            }
        }
        Ok(Invertibility::Certified(NonSingularityCertificate { inverses }))
    }

    pub fn is_nonsingular(&self) -> Result<Option<NonSingularityCertificate<C::Map>>> {
        Ok(self.nonsingularity()?.certificate())
    }

    /// Extension to the cone with apex `apex`, placed first as in the cone's vertex order.
    pub fn regular_extension(&self, apex: &str, delta_apex: C::Map) -> Result<Self> {
        if self.vertices.iter().any(|v| v == apex) {
            return Err(Error::ApexCollision(apex.to_string()));
        }
        if let Some(why) = self.coefficients.map_defect(&delta_apex)? {
            return Err(Error::Invalid(format!("δ_{apex}: {why}")));
        }
        if self.coefficients.inverse(&delta_apex)?.is_none() {
            return Err(Error::Singular(apex.to_string()));
        }
        for (v, m) in self.vertices.iter().zip(&self.maps) {
            let am = self.coefficients.compose(&delta_apex, m);
            let ma = self.coefficients.compose(m, &delta_apex);
            if self.coefficients.difference(&am, &ma)?.is_some() {
                return Err(Error::NotCommuting(apex.to_string(), v.clone()));
            }
        }
        let mut vertices = vec![apex.to_string()];
        vertices.extend(self.vertices.iter().cloned());
        let mut maps = vec![delta_apex];
        maps.extend(self.maps.iter().cloned());
        Ok(Self { coefficients: self.coefficients.clone(), vertices, maps })
    }

    /// Restriction to the given vertices, in the given order.
    pub fn restrict<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let mut maps = Vec::with_capacity(labels.len());
        for l in labels {
            maps.push(self.maps[self.position(l.as_ref())?].clone());
        }
        Ok(Self {
            coefficients: self.coefficients.clone(),
            vertices: labels.iter().map(|l| l.as_ref().to_string()).collect(),
            maps,
        })
    }

    /// Restriction in the vertex order of `space`.
    pub fn aligned_to(&self, space: &dyn PathSpace) -> Result<Self> {
        self.restrict(space.vertex_labels())
    }

    /// Structure on `Δ[n]` with `δ_(i) = δ_{vᵢ}` for a path `b` (vertex indices into `self`).
    pub fn induced_simplex_twist(&self, b: &Path) -> Result<Self> {
        let mut maps = Vec::with_capacity(b.vertices.len());
        for &v in &b.vertices {
            maps.push(self.maps.get(v).cloned().ok_or_else(|| Error::UnknownVertex(format!("vertex index {v}")))?);
        }
        Ok(Self {
            coefficients: self.coefficients.clone(),
            vertices: (0..b.vertices.len()).map(|i| i.to_string()).collect(),
            maps,
        })
    }
}
