use std::collections::BTreeSet;

use crate::error::Result;

/// An `n`-path: `n + 1` vertex indices, and for categories the `n` arrows between them.
///
/// For ordered complexes `arrows` is always empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn simplex(vertices: Vec<usize>) -> Self {
        Self { vertices, arrows: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The vertex removed by `dᵢ` (and doubled by `sᵢ`).
    pub fn vertex(&self, i: usize) -> usize {
        self.vertices[i]
    }

    /// Interleaved `v₀ α₁ v₁ … αₙ vₙ` index sequence; the canonical sort key.
    pub fn key(&self) -> Vec<usize> {
        let mut key = Vec::with_capacity(self.vertices.len() + self.arrows.len());
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 && !self.arrows.is_empty() {
                key.push(self.arrows[k - 1]);
            }
            key.push(*v);
        }
        key
    }

    pub fn is_constant_at(&self, v: usize) -> bool {
        self.vertices.iter().all(|&w| w == v)
    }
}

/// Unordered pairs of distinct vertices whose twist maps must commute.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdjacencyRelation {
    pairs: BTreeSet<(usize, usize)>,
}

impl AdjacencyRelation {
    pub fn insert(&mut self, v: usize, w: usize) {
        if v != w {
            self.pairs.insert((v.min(w), v.max(w)));
        }
    }

    pub fn contains(&self, v: usize, w: usize) -> bool {
        v == w || self.pairs.contains(&(v.min(w), v.max(w)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Common interface of the two kinds of input space: the path simplicial set `S(A)`.
pub trait PathSpace: Send + Sync {
    fn vertex_labels(&self) -> &[String];

    fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels().iter().position(|l| l == label)
    }

    /// `S(A)ₙ`, sorted by [`Path::key`], degenerate paths included.
    fn enumerate_paths(&self, n: usize) -> Vec<Path>;

    fn face(&self, p: &Path, i: usize) -> Result<Path>;

    fn degeneracy(&self, p: &Path, i: usize) -> Result<Path>;

    fn adjacency(&self) -> AdjacencyRelation;

    fn constant_path(&self, v: usize, n: usize) -> Path;

    fn path_label(&self, p: &Path) -> String;

    /// Label-level description of a path, stable across spaces sharing labels.
    fn path_labels(&self, p: &Path) -> Vec<String>;
}
