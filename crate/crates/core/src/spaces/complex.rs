use std::collections::{BTreeSet, HashMap, HashSet};

use super::path::{AdjacencyRelation, Path, PathSpace};
use crate::error::{Error, Result};

/// Simplicial complex on a totally ordered vertex list.
///
/// Simplices are stored as strictly increasing tuples of vertex indices; the
/// order of `vertices` is the total order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedComplex {
    vertices: Vec<String>,
    simplices: BTreeSet<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexViolation {
    DuplicateVertex(String),
    EmptySimplex,
    UnknownVertex(String),
    NotIncreasing(Vec<String>),
    MissingFace { simplex: Vec<String>, face: Vec<String> },
    MissingVertex(String),
}

impl std::fmt::Display for ComplexViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComplexViolation::DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            ComplexViolation::EmptySimplex => write!(f, "empty simplex"),
            ComplexViolation::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            ComplexViolation::NotIncreasing(s) => write!(f, "tuple ({}) is not increasing", s.join(",")),
            ComplexViolation::MissingFace { simplex, face } => {
                write!(f, "simplex ({}) is missing face ({})", simplex.join(","), face.join(","))
            }
            ComplexViolation::MissingVertex(v) => write!(f, "vertex {v} is not a 0-simplex"),
        }
    }
}

impl OrderedComplex {
    /// Complex generated by `facets` (all faces added). Facet labels may be
    /// listed in any order; they are sorted by the vertex order.
    pub fn from_facets<V: AsRef<str>, S: AsRef<str>>(vertices: &[V], facets: &[Vec<S>]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index = label_index(&vertices)?;
        let mut simplices = BTreeSet::new();
        for v in 0..vertices.len() {
            simplices.insert(vec![v]);
        }
        for facet in facets {
            let mut idx = Vec::with_capacity(facet.len());
            for l in facet {
                let l = l.as_ref();
                idx.push(*index.get(l).ok_or_else(|| Error::UnknownVertex(l.to_string()))?);
            }
            idx.sort_unstable();
            idx.dedup();
            if idx.is_empty() {
                return Err(Error::Invalid("empty facet".into()));
            }
            let k = idx.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| idx[b]).collect();
                simplices.insert(face);
            }
        }
        Ok(Self { vertices, simplices })
    }

    /// Raw constructor: simplices exactly as given, as label tuples. Run
    /// [`OrderedComplex::validate`] before use.
    pub fn from_simplices<V: AsRef<str>, S: AsRef<str>>(vertices: &[V], simplices: &[Vec<S>]) -> (Self, Vec<ComplexViolation>) {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut violations = Vec::new();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                violations.push(ComplexViolation::DuplicateVertex(l.clone()));
            }
        }
        let mut set = BTreeSet::new();
        for s in simplices {
            if s.is_empty() {
                violations.push(ComplexViolation::EmptySimplex);
                continue;
            }
            let mut idx = Vec::new();
            let mut ok = true;
            for l in s {
                match index.get(l.as_ref()) {
                    Some(&i) => idx.push(i),
                    None => {
                        violations.push(ComplexViolation::UnknownVertex(l.as_ref().to_string()));
                        ok = false;
                    }
                }
            }
            if !ok {
                continue;
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                violations.push(ComplexViolation::NotIncreasing(
                    s.iter().map(|l| l.as_ref().to_string()).collect(),
                ));
                continue;
            }
            set.insert(idx);
        }
        (Self { vertices: labels, simplices: set }, violations)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn contains_simplex(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    /// Face closure, vertex coverage and ordering.
    pub fn validate(&self) -> Vec<ComplexViolation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for l in &self.vertices {
            if !seen.insert(l) {
                out.push(ComplexViolation::DuplicateVertex(l.clone()));
            }
        }
        for v in 0..self.vertices.len() {
            if !self.simplices.contains(&vec![v]) {
                out.push(ComplexViolation::MissingVertex(self.vertices[v].clone()));
            }
        }
        for s in &self.simplices {
            if s.windows(2).any(|w| w[0] >= w[1]) {
                out.push(ComplexViolation::NotIncreasing(self.labels_of(s)));
                continue;
            }
            if s.len() < 2 {
                continue;
            }
            for drop in 0..s.len() {
                let face: Vec<usize> =
                    s.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, v)| *v).collect();
                if !self.simplices.contains(&face) {
                    out.push(ComplexViolation::MissingFace { simplex: self.labels_of(s), face: self.labels_of(&face) });
                }
            }
        }
        out
    }

    pub fn labels_of(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// The same complex with `apex` prepended to the order and joined to every simplex.
    pub fn cone(&self, apex: &str) -> Result<Self> {
        if self.vertices.iter().any(|v| v == apex) {
            return Err(Error::ApexCollision(apex.to_string()));
        }
        let mut vertices = vec![apex.to_string()];
        vertices.extend(self.vertices.iter().cloned());
        let mut simplices = BTreeSet::new();
        simplices.insert(vec![0]);
        for s in &self.simplices {
            let shifted: Vec<usize> = s.iter().map(|v| v + 1).collect();
            let mut joined = vec![0];
            joined.extend(&shifted);
            simplices.insert(shifted);
            simplices.insert(joined);
        }
        Ok(Self { vertices, simplices })
    }

    /// Whether the first vertex is a cone point: joined to every simplex.
    pub fn is_cone_with_apex(&self, apex: &str) -> bool {
        if self.vertices.first().map(String::as_str) != Some(apex) {
            return false;
        }
        self.simplices.iter().all(|s| {
            if s[0] == 0 {
                return true;
            }
            let mut joined = vec![0];
            joined.extend(s);
            self.simplices.contains(&joined)
        })
    }

    /// Subcomplex generated by the given facets (labels), keeping this vertex order
    /// restricted to the vertices that occur.
    pub fn subcomplex<S: AsRef<str>>(&self, facets: &[Vec<S>]) -> Result<Self> {
        let full = Self::from_facets(&self.vertices, facets)?;
        for s in &full.simplices {
            if !self.simplices.contains(s) {
                return Err(Error::Invalid(format!("({}) is not a simplex", self.labels_of(s).join(","))));
            }
        }
        let used: BTreeSet<usize> = facets
            .iter()
            .flatten()
            .map(|l| self.vertex_index(l.as_ref()).expect("checked above"))
            .collect();
        Ok(full.restrict_to(&used))
    }

    fn restrict_to(&self, keep: &BTreeSet<usize>) -> Self {
        let order: Vec<usize> = keep.iter().copied().collect();
        let remap: HashMap<usize, usize> = order.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let vertices = order.iter().map(|&o| self.vertices[o].clone()).collect();
        let simplices = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|v| keep.contains(v)))
            .map(|s| s.iter().map(|v| remap[v]).collect())
            .collect();
        Self { vertices, simplices }
    }

    fn label_simplices(&self) -> BTreeSet<Vec<String>> {
        self.simplices.iter().map(|s| self.labels_of(s)).collect()
    }

    /// Simplexwise union. Vertex orders must be restrictions of one total order.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let order = merge_orders(&self.vertices, &other.vertices)?;
        let labels: Vec<Vec<String>> = self.label_simplices().into_iter().chain(other.label_simplices()).collect();
        Self::from_facets(&order, &labels)
    }

    /// Simplexwise intersection; errors when it is empty.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        let order = merge_orders(&self.vertices, &other.vertices)?;
        let theirs = other.label_simplices();
        let common: Vec<Vec<String>> = self.label_simplices().into_iter().filter(|s| theirs.contains(s)).collect();
        if common.is_empty() {
            return Err(Error::EmptyIntersection);
        }
        let present: HashSet<&String> = common.iter().flatten().collect();
        let order: Vec<String> = order.into_iter().filter(|v| present.contains(v)).collect();
        Self::from_facets(&order, &common)
    }
}

fn label_index(vertices: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::new();
    for (i, l) in vertices.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::Invalid(format!("duplicate vertex {l}")));
        }
    }
    Ok(index)
}

/// Merges two vertex orders into one total order extending both; ties go to
/// the first list. Fails when the orders disagree on a common pair.
fn merge_orders(a: &[String], b: &[String]) -> Result<Vec<String>> {
    let pos_b: HashMap<&String, usize> = b.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let common_a: Vec<&String> = a.iter().filter(|v| pos_b.contains_key(v)).collect();
    if common_a.windows(2).any(|w| pos_b[w[0]] > pos_b[w[1]]) {
        return Err(Error::IncompatibleOrders(format!("{a:?} vs {b:?}")));
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut j = 0;
    for v in a {
        if let Some(&pb) = pos_b.get(v) {
            while j < pb {
                out.push(b[j].clone());
                j += 1;
            }
            j = pb + 1;
        }
        out.push(v.clone());
    }
    out.extend(b[j..].iter().cloned());
    Ok(out)
}

impl PathSpace for OrderedComplex {
    fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    fn enumerate_paths(&self, n: usize) -> Vec<Path> {
        // monotone tuples supported on simplices, generated in lexicographic order
        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::with_capacity(n + 1);
        let mut support: Vec<usize> = Vec::new();
        self.extend_paths(n + 1, &mut stack, &mut support, &mut out);
        out
    }

    fn face(&self, p: &Path, i: usize) -> Result<Path> {
        let n = p.degree();
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, degree: n });
        }
        let mut v = p.vertices.clone();
        v.remove(i);
        Ok(Path::simplex(v))
    }

    fn degeneracy(&self, p: &Path, i: usize) -> Result<Path> {
        let n = p.degree();
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, degree: n });
        }
        let mut v = p.vertices.clone();
        v.insert(i, p.vertices[i]);
        Ok(Path::simplex(v))
    }

    fn adjacency(&self) -> AdjacencyRelation {
        let mut adj = AdjacencyRelation::default();
        for s in self.simplices.iter().filter(|s| s.len() == 2) {
            adj.insert(s[0], s[1]);
        }
        adj
    }

    fn constant_path(&self, v: usize, n: usize) -> Path {
        Path::simplex(vec![v; n + 1])
    }

    fn path_label(&self, p: &Path) -> String {
        format!("({})", self.path_labels(p).join(","))
    }

    fn path_labels(&self, p: &Path) -> Vec<String> {
        self.labels_of(&p.vertices)
    }
}

impl OrderedComplex {
    fn extend_paths(&self, len: usize, stack: &mut Vec<usize>, support: &mut Vec<usize>, out: &mut Vec<Path>) {
        if stack.len() == len {
            out.push(Path::simplex(stack.clone()));
            return;
        }
        let start = stack.last().copied().unwrap_or(0);
        for v in start..self.vertices.len() {
            let fresh = support.last() != Some(&v);
            if fresh {
                support.push(v);
                if !self.simplices.contains(support.as_slice()) {
                    support.pop();
                    continue;
                }
            }
            stack.push(v);
            self.extend_paths(len, stack, support, out);
            stack.pop();
            if fresh {
                support.pop();
            }
        }
    }
}
