//! Tabulation of `S(A)` up to a degree cap, plus the `Space` wrapper over both input kinds.

use std::collections::HashMap;

use super::category::FiniteCategory;
use super::complex::OrderedComplex;
use super::path::{AdjacencyRelation, Path, PathSpace};
use super::slice::SimplicialSlice;
use crate::error::{Error, Result};

/// Paths of `S(A)` in degrees `0..=cap`, indexed, with the tabulated slice.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub paths: Vec<Vec<Path>>,
    index: Vec<HashMap<Path, usize>>,
    pub slice: SimplicialSlice,
    pub basepoint: Option<usize>,
}

impl Nerve {
    /// Enumerates `S(A)ₙ` for `n ≤ cap` and tabulates faces and degeneracies.
    ///
    /// `basepoint` is a vertex index; the constant paths at it become the
    /// basepoint of the slice.
    pub fn build(space: &dyn PathSpace, cap: usize, basepoint: Option<usize>) -> Result<Self> {
        if let Some(b) = basepoint {
            if b >= space.vertex_labels().len() {
                return Err(Error::UnknownVertex(format!("vertex index {b}")));
            }
        }
        let paths: Vec<Vec<Path>> = (0..=cap).map(|n| space.enumerate_paths(n)).collect();
        let index: Vec<HashMap<Path, usize>> = paths
            .iter()
            .map(|ps| ps.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect())
            .collect();
        let lookup = |n: usize, p: &Path| -> Result<usize> {
            index[n]
                .get(p)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("{} is not in degree {n}", space.path_label(p))))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=cap {
            let mut level = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let table = paths[n]
                    .iter()
                    .map(|p| space.face(p, i).and_then(|q| lookup(n - 1, &q)))
                    .collect::<Result<Vec<_>>>()?;
                level.push(table);
            }
            faces.push(level);
        }
        let mut degeneracies = Vec::with_capacity(cap);
        for n in 0..cap {
            let mut level = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let table = paths[n]
                    .iter()
                    .map(|p| space.degeneracy(p, i).and_then(|q| lookup(n + 1, &q)))
                    .collect::<Result<Vec<_>>>()?;
                level.push(table);
            }
            degeneracies.push(level);
        }
        let base_cells = match basepoint {
            Some(b) => Some((0..=cap).map(|n| lookup(n, &space.constant_path(b, n))).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let labels = paths.iter().map(|ps| ps.iter().map(|p| space.path_label(p)).collect()).collect();
        let slice = SimplicialSlice { cap, labels, faces, degeneracies: Some(degeneracies), basepoint: base_cells };
        Ok(Self { paths, index, slice, basepoint })
    }

    pub fn cap(&self) -> usize {
        self.slice.cap
    }

    pub fn count(&self, n: usize) -> usize {
        self.paths[n].len()
    }

    pub fn path(&self, n: usize, cell: usize) -> &Path {
        &self.paths[n][cell]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p.degree())?.get(p).copied()
    }

    /// `vᵢ` of the cell: the vertex removed by `dᵢ`.
    pub fn vertex_at(&self, n: usize, cell: usize, i: usize) -> usize {
        self.paths[n][cell].vertices[i]
    }

    /// Whether the cell is the basepoint copy in its degree.
    pub fn is_basepoint(&self, n: usize, cell: usize) -> bool {
        self.slice.basepoint.as_ref().is_some_and(|b| b[n] == cell)
    }
}

/// `S(A)` truncated at `cap` as a bare slice.
pub fn nerve_slice(space: &dyn PathSpace, cap: usize, basepoint: Option<usize>) -> Result<SimplicialSlice> {
    Ok(Nerve::build(space, cap, basepoint)?.slice)
}

/// The full ordered simplex on vertices `"0"..="n"`.
pub fn standard_simplex(n: usize) -> OrderedComplex {
    let labels: Vec<String> = (0..=n).map(|v| v.to_string()).collect();
    OrderedComplex::from_facets(&labels, std::slice::from_ref(&labels)).expect("full simplex is valid")
}

/// The standard `n`-simplex `Δ[n]` on vertices `"0"..="n"`, truncated at `cap`.
pub fn standard_simplex_slice(n: usize, cap: usize) -> SimplicialSlice {
    nerve_slice(&standard_simplex(n), cap, None).expect("full simplex tabulates")
}

/// Either kind of input space.
#[derive(Clone, Debug, PartialEq)]
pub enum Space {
    Complex(OrderedComplex),
    Category(FiniteCategory),
}

impl Space {
    pub fn kind(&self) -> &'static str {
        match self {
            Space::Complex(_) => "complex",
            Space::Category(_) => "category",
        }
    }

    pub fn cone(&self, apex: &str) -> Result<Space> {
        Ok(match self {
            Space::Complex(k) => Space::Complex(k.cone(apex)?),
            Space::Category(c) => Space::Category(c.cone(apex)?),
        })
    }

    pub fn is_cone_with_apex(&self, apex: &str) -> bool {
        match self {
            Space::Complex(k) => k.is_cone_with_apex(apex),
            Space::Category(c) => c.is_cone_with_apex(apex),
        }
    }

    fn inner(&self) -> &dyn PathSpace {
        match self {
            Space::Complex(k) => k,
            Space::Category(c) => c,
        }
    }
}

impl From<OrderedComplex> for Space {
    fn from(k: OrderedComplex) -> Self {
        Space::Complex(k)
    }
}

impl From<FiniteCategory> for Space {
    fn from(c: FiniteCategory) -> Self {
        Space::Category(c)
    }
}

impl PathSpace for Space {
    fn vertex_labels(&self) -> &[String] {
        self.inner().vertex_labels()
    }

    fn enumerate_paths(&self, n: usize) -> Vec<Path> {
        self.inner().enumerate_paths(n)
    }

    fn face(&self, p: &Path, i: usize) -> Result<Path> {
        self.inner().face(p, i)
    }

    fn degeneracy(&self, p: &Path, i: usize) -> Result<Path> {
        self.inner().degeneracy(p, i)
    }

    fn adjacency(&self) -> AdjacencyRelation {
        self.inner().adjacency()
    }

    fn constant_path(&self, v: usize, n: usize) -> Path {
        self.inner().constant_path(v, n)
    }

    fn path_label(&self, p: &Path) -> String {
        self.inner().path_label(p)
    }

    fn path_labels(&self, p: &Path) -> Vec<String> {
        self.inner().path_labels(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn simplex_counts_are_multisets() {
        // monotone (n+1)-tuples from m+1 vertices
        let s = standard_simplex_slice(2, 4);
        for n in 0..=4 {
            assert_eq!(s.count(n), binomial(3 + n, n + 1));
        }
        assert!(s.validate().passed());
    }

    #[test]
    fn arrow_nerve() {
        let c = FiniteCategory::new(&["a", "b"], &[("f", "a", "b")], &[]).unwrap();
        let nerve = Nerve::build(&c, 3, Some(0)).unwrap();
        assert_eq!(nerve.slice.counts(), vec![2, 3, 4, 5]);
        assert!(nerve.slice.validate().passed());
        assert_eq!(nerve.slice.label(1, 1), "a f b");
        assert!(nerve.is_basepoint(2, nerve.slice.cell_index(2, "a id_a a id_a a").unwrap()));
    }

    #[test]
    fn broken_faces_are_reported() {
        let mut s = standard_simplex_slice(1, 2);
        let (a, b) = (s.cell_index(1, "(0,0)").unwrap(), s.cell_index(1, "(1,1)").unwrap());
        let c = s.cell_index(2, "(0,1,1)").unwrap();
        s.faces[2][0][c] = if s.faces[2][0][c] == a { b } else { a };
        let report = s.validate();
        assert!(!report.passed());
        assert!(report.delta_identity_violations().count() > 0);
    }
}
