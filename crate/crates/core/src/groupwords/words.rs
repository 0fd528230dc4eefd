use super::group::FiniteGroupTable;
use crate::error::{Error, Result};
use crate::spaces::{Graded, Nerve, PathSpace};
use crate::twist::{Invertibility, TwistedStructure};

pub type TwistedFiniteGroupStructure = TwistedStructure<FiniteGroupTable>;

/// `g_x`: element `g` in the copy of `G` labelled by the path `x` (a cell index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub label: usize,
    pub element: usize,
}

/// Reduced word in the free product of the copies `G_x`, `x ∈ S(A)ₙ`, with the
/// basepoint copy killed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub degree: usize,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty(degree: usize) -> Self {
        Self { degree, letters: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }
}

/// `F^G_δ[A]` in degrees `0..=cap` for a finite group `G` and a twist on `A`.
#[derive(Clone, Debug)]
pub struct TwistedFreeConstruction {
    pub nerve: Nerve,
    pub structure: TwistedFiniteGroupStructure,
    inverses: Option<Vec<Vec<usize>>>,
    basepoint: Vec<usize>,
}

impl TwistedFreeConstruction {
    /// Validates the commuting rule, then tabulates `S(A)` to `cap` pointed at `basepoint`.
    /// Degeneracies are available iff the structure is non-singular.
    pub fn new(space: &dyn PathSpace, structure: &TwistedFiniteGroupStructure, basepoint: &str, cap: usize) -> Result<Self> {
        let aligned = structure.aligned_to(space)?;
        let report = aligned.validate(&space.adjacency())?;
        if let Some(v) = report.violations.first() {
            return Err(Error::NotCommuting(v.v.clone(), v.w.clone()));
        }
        Self::new_unchecked(space, &aligned, basepoint, cap)
    }

    /// No commuting check; the structure must be aligned with the space.
    pub fn new_unchecked(
        space: &dyn PathSpace,
        structure: &TwistedFiniteGroupStructure,
        basepoint: &str,
        cap: usize,
    ) -> Result<Self> {
        if structure.vertices() != space.vertex_labels() {
            return Err(Error::Invalid("structure is not aligned with the space".into()));
        }
        let a0 = space.vertex_index(basepoint).ok_or_else(|| Error::UnknownVertex(basepoint.to_string()))?;
        let nerve = Nerve::build(space, cap, Some(a0))?;
        let inverses = match structure.nonsingularity()? {
            Invertibility::Certified(c) => Some(c.inverses),
            Invertibility::SingularAt(_) => None,
        };
        let basepoint = nerve.slice.basepoint.clone().expect("pointed nerve");
        Ok(Self { nerve, structure: structure.clone(), inverses, basepoint })
    }

    pub fn group(&self) -> &FiniteGroupTable {
        self.structure.coefficients()
    }

    pub fn cap(&self) -> usize {
        self.nerve.cap()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.inverses.is_some()
    }

    pub fn basepoint_cell(&self, n: usize) -> usize {
        self.basepoint[n]
    }

    /// Labels of degree `n` that carry a nontrivial copy of `G`.
    pub fn free_labels(&self, n: usize) -> Vec<usize> {
        (0..self.nerve.count(n)).filter(|&c| c != self.basepoint[n]).collect()
    }

    /// Canonical form: drop basepoint and identity letters, merge equal
    /// neighbouring labels, repeat to a fixpoint (one stack pass).
    pub fn reduce(&self, degree: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Word> {
        if degree > self.cap() {
            return Err(Error::DegreeOutOfRange { degree, cap: self.cap() });
        }
        let g = self.group();
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if l.label >= self.nerve.count(degree) {
                return Err(Error::Invalid(format!("label {} is not a path of degree {degree}", l.label)));
            }
            if l.label == self.basepoint[degree] || l.element == g.identity() {
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.label == l.label => {
                    top.element = g.mul(top.element, l.element);
                    if top.element == g.identity() {
                        stack.pop();
                    }
                }
                _ => stack.push(l),
            }
        }
        Ok(Word { degree, letters: stack })
    }

    pub fn multiply(&self, a: &Word, b: &Word) -> Result<Word> {
        if a.degree != b.degree {
            return Err(Error::DimensionMismatch(format!("degrees {} and {}", a.degree, b.degree)));
        }
        self.reduce(a.degree, a.letters.iter().chain(&b.letters).copied())
    }

    pub fn inverse(&self, w: &Word) -> Word {
        let g = self.group();
        Word {
            degree: w.degree,
            letters: w.letters.iter().rev().map(|l| Letter { label: l.label, element: g.inv(l.element) }).collect(),
        }
    }

    /// `d^δ_i(g_x) = (δ_{vᵢ}(g))_{dᵢx}`, letterwise, then reduced.
    pub fn twisted_face(&self, w: &Word, i: usize) -> Result<Word> {
        let n = w.degree;
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, degree: n });
        }
        let letters = w.letters.iter().map(|l| {
            let delta = self.structure.map(self.nerve.vertex_at(n, l.label, i));
            Letter { label: self.nerve.slice.face(n, l.label, i), element: delta[l.element] }
        });
        self.reduce(n - 1, letters.collect::<Vec<_>>())
    }

    /// `s^δ_i(g_x) = (δ_{vᵢ}⁻¹(g))_{sᵢx}`, letterwise, then reduced.
    pub fn twisted_degeneracy(&self, w: &Word, i: usize) -> Result<Word> {
        let n = w.degree;
        let inverses = self.inverses.as_ref().ok_or_else(|| Error::Singular("degeneracies need an invertible twist".into()))?;
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, degree: n });
        }
        if n + 1 > self.cap() {
            return Err(Error::DegreeOutOfRange { degree: n + 1, cap: self.cap() });
        }
        let letters = w.letters.iter().map(|l| {
            let inv = &inverses[self.nerve.vertex_at(n, l.label, i)];
            Letter { label: self.nerve.slice.degeneracy(n, l.label, i), element: inv[l.element] }
        });
        self.reduce(n + 1, letters.collect::<Vec<_>>())
    }

    pub fn display(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters
            .iter()
            .map(|l| format!("{}_{}", self.group().name(l.element), self.nerve.slice.label(w.degree, l.label)))
            .collect::<Vec<_>>()
            .join(" · ")
    }
}

impl Graded for TwistedFreeConstruction {
    type Elem = Word;

    fn cap(&self) -> usize {
        self.nerve.cap()
    }

    fn has_degeneracies(&self) -> bool {
        self.inverses.is_some()
    }

    fn face(&self, _n: usize, x: &Word, i: usize) -> Word {
        self.twisted_face(x, i).expect("face index checked by caller")
    }

    fn degeneracy(&self, _n: usize, x: &Word, i: usize) -> Word {
        self.twisted_degeneracy(x, i).expect("degeneracy index checked by caller")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::OrderedComplex;

    fn edge() -> OrderedComplex {
        OrderedComplex::from_facets(&["a", "b"], &[vec!["a", "b"]]).unwrap()
    }

    fn z5_edge(db: u64) -> TwistedFreeConstruction {
        let g = FiniteGroupTable::cyclic(5);
        let maps = vec![g.power_map(1), g.power_map(db)];
        let s = TwistedStructure::new(g, vec!["a".into(), "b".into()], maps).unwrap();
        TwistedFreeConstruction::new(&edge(), &s, "a", 3).unwrap()
    }

    fn cell(f: &TwistedFreeConstruction, n: usize, label: &str) -> usize {
        f.nerve.slice.cell_index(n, label).unwrap()
    }

    #[test]
    fn reduction_rules() {
        let f = z5_edge(2);
        let x = cell(&f, 1, "(a,b)");
        let y = cell(&f, 1, "(b,b)");
        let l = |label, element| Letter { label, element };
        assert!(f.reduce(1, [l(x, 2), l(x, 3)]).unwrap().is_empty());
        assert_eq!(f.reduce(1, [l(x, 2), l(x, 1)]).unwrap().letters, vec![l(x, 3)]);
        assert!(f.reduce(1, [l(cell(&f, 1, "(a,a)"), 4)]).unwrap().is_empty());
        assert_eq!(f.reduce(1, [l(x, 1), l(y, 2), l(y, 3), l(x, 1)]).unwrap().letters, vec![l(x, 2)]);
    }

    #[test]
    fn faces_and_degeneracies_on_the_edge() {
        let f = z5_edge(2);
        let ab = cell(&f, 1, "(a,b)");
        let w = Word { degree: 1, letters: vec![Letter { label: ab, element: 1 }] };
        let d0 = f.twisted_face(&w, 0).unwrap();
        assert_eq!(f.display(&d0), "1_(b)");
        // δ_b(1) = 2 lands on the basepoint copy (a)
        assert!(f.twisted_face(&w, 1).unwrap().is_empty());
        // δ_b⁻¹ = ×3
        assert_eq!(f.display(&f.twisted_degeneracy(&w, 1).unwrap()), "3_(a,b,b)");
    }

    #[test]
    fn group_law() {
        let f = z5_edge(3);
        let x = cell(&f, 2, "(a,b,b)");
        let y = cell(&f, 2, "(b,b,b)");
        let w = f.reduce(2, [Letter { label: x, element: 1 }, Letter { label: y, element: 4 }]).unwrap();
        assert!(f.multiply(&w, &f.inverse(&w)).unwrap().is_empty());
        assert_eq!(f.multiply(&w, &Word::empty(2)).unwrap(), w);
        assert!(f.multiply(&w, &Word::empty(1)).is_err());
    }
}
