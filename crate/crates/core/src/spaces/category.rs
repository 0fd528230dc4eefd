use std::collections::HashMap;

use super::path::{AdjacencyRelation, Path, PathSpace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Finite category with explicit composition table.
///
/// Morphism indices `0..objects.len()` are the identities `id_<object>`, in
/// object order; declared morphisms follow in declaration order. This index
/// order is the one used to sort paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    // (g, f) -> g ∘ f
    compose: HashMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    MissingComposite { g: String, f: String },
    NotComposable { g: String, f: String },
    WrongEndpoints { g: String, f: String, result: String },
    IdentityLaw { morphism: String },
    Associativity { h: String, g: String, f: String },
}

impl std::fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CategoryViolation::MissingComposite { g, f: ff } => write!(f, "no composite for {g} ∘ {ff}"),
            CategoryViolation::NotComposable { g, f: ff } => write!(f, "{g} ∘ {ff} listed but not composable"),
            CategoryViolation::WrongEndpoints { g, f: ff, result } => {
                write!(f, "{g} ∘ {ff} = {result} has the wrong source or target")
            }
            CategoryViolation::IdentityLaw { morphism } => write!(f, "identity law fails for {morphism}"),
            CategoryViolation::Associativity { h, g, f: ff } => {
                write!(f, "({h} ∘ {g}) ∘ {ff} ≠ {h} ∘ ({g} ∘ {ff})")
            }
        }
    }
}

pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

impl FiniteCategory {
    /// Builds a category from objects, named non-identity morphisms
    /// `(name, source, target)` and composition entries `(g, f, g∘f)`.
    /// Identities are implicit and compose as identities. The composition
    /// table is not checked here; see [`FiniteCategory::validate`].
    pub fn new<S: AsRef<str>>(objects: &[S], morphisms: &[(S, S, S)], compose: &[(S, S, S)]) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|o| o.as_ref().to_string()).collect();
        let obj_index: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj_index.len() != objects.len() {
            return Err(Error::Invalid("duplicate object".into()));
        }
        let mut all: Vec<Morphism> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism { name: identity_name(o), source: i, target: i })
            .collect();
        for (name, s, t) in morphisms {
            let source = *obj_index.get(s.as_ref()).ok_or_else(|| Error::UnknownVertex(s.as_ref().into()))?;
            let target = *obj_index.get(t.as_ref()).ok_or_else(|| Error::UnknownVertex(t.as_ref().into()))?;
            all.push(Morphism { name: name.as_ref().to_string(), source, target });
        }
        let mor_index: HashMap<String, usize> = all.iter().enumerate().map(|(i, m)| (m.name.clone(), i)).collect();
        if mor_index.len() != all.len() {
            return Err(Error::Invalid("duplicate morphism name".into()));
        }
        let mut table = HashMap::new();
        for (i, m) in all.iter().enumerate() {
            table.insert((m.target, i), i);
            table.insert((i, m.source), i);
        }
        for (g, f, h) in compose {
            let lookup = |name: &str| {
                mor_index.get(name).copied().ok_or_else(|| Error::Invalid(format!("unknown morphism {name}")))
            };
            let (gi, fi, hi) = (lookup(g.as_ref())?, lookup(f.as_ref())?, lookup(h.as_ref())?);
            // a conflicting identity entry overrides the implicit one so validation can flag it
            table.insert((gi, fi), hi);
        }
        Ok(Self { objects, morphisms: all, compose: table })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, object: usize) -> usize {
        object
    }

    pub fn is_identity(&self, m: usize) -> bool {
        m < self.objects.len()
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn non_identity_count(&self) -> usize {
        self.morphisms.len() - self.objects.len()
    }

    /// Exhaustive check of composition totality, endpoints, identity laws and associativity.
    pub fn validate(&self) -> Vec<CategoryViolation> {
        let name = |i: usize| self.morphisms[i].name.clone();
        let mut out = Vec::new();
        let m = self.morphisms.len();
        for (&(g, f), &h) in &self.compose {
            if self.morphisms[f].target != self.morphisms[g].source {
                out.push(CategoryViolation::NotComposable { g: name(g), f: name(f) });
            } else if self.morphisms[h].source != self.morphisms[f].source
                || self.morphisms[h].target != self.morphisms[g].target
            {
                out.push(CategoryViolation::WrongEndpoints { g: name(g), f: name(f), result: name(h) });
            }
        }
        for f in 0..m {
            let (s, t) = (self.morphisms[f].source, self.morphisms[f].target);
            if self.compose(t, f) != Some(f) || self.compose(f, s) != Some(f) {
                out.push(CategoryViolation::IdentityLaw { morphism: name(f) });
            }
        }
        for f in 0..m {
            for g in 0..m {
                if self.morphisms[f].target != self.morphisms[g].source {
                    continue;
                }
                if self.compose(g, f).is_none() {
                    out.push(CategoryViolation::MissingComposite { g: name(g), f: name(f) });
                }
            }
        }
        if !out.is_empty() {
            out.sort_by_key(|v| format!("{v:?}"));
            return out;
        }
        for f in 0..m {
            for g in (0..m).filter(|&g| self.morphisms[g].source == self.morphisms[f].target) {
                for h in (0..m).filter(|&h| self.morphisms[h].source == self.morphisms[g].target) {
                    let gf = self.compose[&(g, f)];
                    let hg = self.compose[&(h, g)];
                    if self.compose[&(h, gf)] != self.compose[&(hg, f)] {
                        out.push(CategoryViolation::Associativity { h: name(h), g: name(g), f: name(f) });
                    }
                }
            }
        }
        out
    }

    /// Cone `apex ∗ C`: a new initial object, first in the object order, with one
    /// arrow `e_<apex>_<v>` to every object `v`.
    pub fn cone(&self, apex: &str) -> Result<Self> {
        if self.objects.iter().any(|o| o == apex) {
            return Err(Error::ApexCollision(apex.to_string()));
        }
        let mut objects = vec![apex.to_string()];
        objects.extend(self.objects.iter().cloned());
        let cone_arrow = |v: &str| format!("e_{apex}_{v}");
        let mut morphisms: Vec<(String, String, String)> =
            self.objects.iter().map(|v| (cone_arrow(v), apex.to_string(), v.clone())).collect();
        let declared: Vec<&Morphism> = self.morphisms.iter().skip(self.objects.len()).collect();
        for m in &declared {
            if morphisms.iter().any(|(n, _, _)| *n == m.name) {
                return Err(Error::ApexCollision(m.name.clone()));
            }
            morphisms.push((m.name.clone(), self.objects[m.source].clone(), self.objects[m.target].clone()));
        }
        let mut compose: Vec<(String, String, String)> = Vec::new();
        for (&(g, f), &h) in &self.compose {
            if !self.is_identity(g) && !self.is_identity(f) {
                compose.push((self.morphisms[g].name.clone(), self.morphisms[f].name.clone(), self.morphisms[h].name.clone()));
            }
        }
        for m in &declared {
            compose.push((
                m.name.clone(),
                cone_arrow(&self.objects[m.source]),
                cone_arrow(&self.objects[m.target]),
            ));
        }
        compose.sort();
        Self::new(&objects, &morphisms, &compose)
    }

    /// Whether `apex` is the first object and initial, with no other arrows into it.
    pub fn is_cone_with_apex(&self, apex: &str) -> bool {
        if self.objects.first().map(String::as_str) != Some(apex) {
            return false;
        }
        let mut out_count = vec![0usize; self.objects.len()];
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.target == 0 && !self.is_identity(i) {
                return false;
            }
            if m.source == 0 {
                out_count[m.target] += 1;
            }
        }
        out_count.iter().all(|&c| c == 1)
    }
}

impl PathSpace for FiniteCategory {
    fn vertex_labels(&self) -> &[String] {
        &self.objects
    }

    fn enumerate_paths(&self, n: usize) -> Vec<Path> {
        let mut out: Vec<Path> =
            (0..self.objects.len()).map(|v| Path { vertices: vec![v], arrows: Vec::new() }).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &out {
                let last = *p.vertices.last().expect("nonempty");
                for (a, m) in self.morphisms.iter().enumerate().filter(|(_, m)| m.source == last) {
                    let mut q = p.clone();
                    q.arrows.push(a);
                    q.vertices.push(m.target);
                    next.push(q);
                }
            }
            out = next;
        }
        out.sort_by_key(Path::key);
        out
    }

    fn face(&self, p: &Path, i: usize) -> Result<Path> {
        let n = p.degree();
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, degree: n });
        }
        let mut q = p.clone();
        q.vertices.remove(i);
        if i == 0 {
            q.arrows.remove(0);
        } else if i == n {
            q.arrows.pop();
        } else {
            let (f, g) = (p.arrows[i - 1], p.arrows[i]);
            let gf = self.compose(g, f).ok_or_else(|| Error::MissingComposite {
                g: self.morphisms[g].name.clone(),
                f: self.morphisms[f].name.clone(),
            })?;
            q.arrows.splice(i - 1..=i, [gf]);
        }
        Ok(q)
    }

    fn degeneracy(&self, p: &Path, i: usize) -> Result<Path> {
        let n = p.degree();
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, degree: n });
        }
        let mut q = p.clone();
        let v = p.vertices[i];
        q.vertices.insert(i, v);
        q.arrows.insert(i, self.identity(v));
        Ok(q)
    }

    fn adjacency(&self) -> AdjacencyRelation {
        let mut adj = AdjacencyRelation::default();
        for (i, m) in self.morphisms.iter().enumerate() {
            if !self.is_identity(i) {
                adj.insert(m.source, m.target);
            }
        }
        adj
    }

    fn constant_path(&self, v: usize, n: usize) -> Path {
        Path { vertices: vec![v; n + 1], arrows: vec![self.identity(v); n] }
    }

    fn path_label(&self, p: &Path) -> String {
        self.path_labels(p).join(" ")
    }

    fn path_labels(&self, p: &Path) -> Vec<String> {
        let mut out = Vec::with_capacity(2 * p.vertices.len());
        for (k, &v) in p.vertices.iter().enumerate() {
            if k > 0 {
                out.push(self.morphisms[p.arrows[k - 1]].name.clone());
            }
            out.push(self.objects[v].clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn arrow() -> FiniteCategory {
        FiniteCategory::new(&["a", "b"], &[("f", "a", "b")], &[]).unwrap()
    }

    #[test]
    fn validation() {
        let point = FiniteCategory::new::<&str>(&["a"], &[], &[]).unwrap();
        assert!(point.validate().is_empty());
        assert!(arrow().validate().is_empty());
        // a -f-> b -g-> c without g∘f
        let broken =
            FiniteCategory::new(&["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c")], &[]).unwrap();
        assert_eq!(
            broken.validate(),
            vec![CategoryViolation::MissingComposite { g: "g".into(), f: "f".into() }]
        );
        let fixed = FiniteCategory::new(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
            &[("g", "f", "h")],
        )
        .unwrap();
        assert!(fixed.validate().is_empty());
    }

    #[test]
    fn associativity_failure_detected() {
        // (x∘x)∘y = y∘y = x but x∘(x∘y) = x∘y = y
        let c = FiniteCategory::new(
            &["o"],
            &[("x", "o", "o"), ("y", "o", "o")],
            &[("x", "x", "y"), ("x", "y", "y"), ("y", "x", "x"), ("y", "y", "x")],
        )
        .unwrap();
        assert!(c.validate().iter().any(|v| matches!(v, CategoryViolation::Associativity { .. })));
    }

    #[test]
    fn nerve_paths_and_faces() {
        let c = arrow();
        let labels: Vec<String> = c.enumerate_paths(1).iter().map(|p| c.path_label(p)).collect();
        assert_eq!(labels, ["a id_a a", "a f b", "b id_b b"]);
        let point = FiniteCategory::new::<&str>(&["a"], &[], &[]).unwrap();
        for n in 0..4 {
            assert_eq!(point.enumerate_paths(n).len(), 1);
        }
        let afb = c.enumerate_paths(1)[1].clone();
        let s1 = c.degeneracy(&afb, 1).unwrap();
        assert_eq!(c.path_label(&s1), "a f b id_b b");
        assert_eq!(c.face(&s1, 1).unwrap(), afb);
        assert_eq!(c.face(&afb, 0).unwrap().vertices, vec![1]);
    }

    #[test]
    fn inner_face_composes() {
        let c = FiniteCategory::new(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
            &[("g", "f", "h")],
        )
        .unwrap();
        let p = Path { vertices: vec![0, 1, 2], arrows: vec![3, 4] };
        assert_eq!(c.path_label(&c.face(&p, 1).unwrap()), "a h c");
    }

    #[test]
    fn adjacency_ignores_identities() {
        assert_eq!(arrow().adjacency().pairs().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn cone_of_arrow() {
        let c = arrow().cone("o").unwrap();
        assert!(c.validate().is_empty(), "{:?}", c.validate());
        assert_eq!(c.non_identity_count(), 3);
        assert!(c.is_cone_with_apex("o"));
        // a -> b is itself the cone on b
        assert!(arrow().is_cone_with_apex("a"));
        assert!(!arrow().is_cone_with_apex("b"));
        assert!(arrow().cone("a").is_err());
    }
}
