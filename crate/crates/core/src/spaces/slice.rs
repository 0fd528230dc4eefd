//! Degree-truncated simplicial sets (and Δ-sets) with tabulated structure maps.

use std::fmt;

use super::identities::{check_element, Graded, IdentityFailure, IdentityKind};
use crate::error::{Error, Result};

/// Finite simplicial set truncated at degree `cap`, stored as face and
/// degeneracy tables over cell indices.
///
/// `faces[n][i][c]` is `dᵢ` of cell `c` in degree `n ≥ 1` (`faces[0]` is
/// empty); `degeneracies[n][i][c]` is `sᵢ` for `n < cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSlice {
    pub cap: usize,
    pub labels: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Option<Vec<Vec<Vec<usize>>>>,
    pub basepoint: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceViolation {
    Shape(String),
    Identity { kind: IdentityKind, degree: usize, cell: String, i: usize, j: usize },
    Basepoint { degree: usize, detail: String },
}

impl fmt::Display for SliceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceViolation::Shape(s) => write!(f, "malformed slice: {s}"),
            SliceViolation::Identity { kind, degree, cell, i, j } => {
                write!(f, "{kind} fails at degree {degree}, cell {cell}, i={i}, j={j}")
            }
            SliceViolation::Basepoint { degree, detail } => write!(f, "basepoint in degree {degree}: {detail}"),
        }
    }
}

/// Outcome of an exhaustive slice validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SliceReport {
    pub checked: usize,
    pub violations: Vec<SliceViolation>,
}

impl SliceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn delta_identity_violations(&self) -> impl Iterator<Item = &SliceViolation> {
        self.violations
            .iter()
            .filter(|v| matches!(v, SliceViolation::Identity { kind: IdentityKind::FaceFace, .. }))
    }
}

impl SimplicialSlice {
    pub fn count(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn face(&self, n: usize, cell: usize, i: usize) -> usize {
        self.faces[n][i][cell]
    }

    pub fn degeneracy(&self, n: usize, cell: usize, i: usize) -> usize {
        self.degeneracies.as_ref().expect("slice has no degeneracies")[n][i][cell]
    }

    pub fn has_degeneracies(&self) -> bool {
        self.degeneracies.is_some()
    }

    pub fn label(&self, n: usize, cell: usize) -> &str {
        &self.labels[n][cell]
    }

    pub fn cell_index(&self, n: usize, label: &str) -> Option<usize> {
        self.labels[n].iter().position(|l| l == label)
    }

    /// Same slice with degrees above `cap` dropped.
    pub fn truncate(&self, cap: usize) -> Result<Self> {
        if cap > self.cap {
            return Err(Error::DegreeOutOfRange { degree: cap, cap: self.cap });
        }
        let mut out = self.clone();
        out.cap = cap;
        out.labels.truncate(cap + 1);
        out.faces.truncate(cap + 1);
        if let Some(d) = out.degeneracies.as_mut() {
            d.truncate(cap);
        }
        if let Some(b) = out.basepoint.as_mut() {
            b.truncate(cap + 1);
        }
        Ok(out)
    }

    /// Δ-set obtained by forgetting degeneracies.
    pub fn without_degeneracies(&self) -> Self {
        Self { degeneracies: None, ..self.clone() }
    }

    fn check_shape(&self) -> Vec<SliceViolation> {
        let mut out = Vec::new();
        let shape = |s: String| SliceViolation::Shape(s);
        if self.labels.len() != self.cap + 1 || self.faces.len() != self.cap + 1 {
            out.push(shape(format!("expected {} degrees", self.cap + 1)));
            return out;
        }
        for n in 1..=self.cap {
            if self.faces[n].len() != n + 1 {
                out.push(shape(format!("degree {n} has {} face maps", self.faces[n].len())));
                continue;
            }
            for (i, table) in self.faces[n].iter().enumerate() {
                if table.len() != self.count(n) {
                    out.push(shape(format!("d_{i} in degree {n} has {} entries", table.len())));
                } else if let Some(c) = table.iter().position(|&t| t >= self.count(n - 1)) {
                    out.push(shape(format!("d_{i} of cell {} in degree {n} out of range", self.labels[n][c])));
                }
            }
        }
        if let Some(deg) = &self.degeneracies {
            if deg.len() != self.cap {
                out.push(shape(format!("expected degeneracies for degrees 0..{}", self.cap)));
                return out;
            }
            for n in 0..self.cap {
                if deg[n].len() != n + 1 {
                    out.push(shape(format!("degree {n} has {} degeneracies", deg[n].len())));
                    continue;
                }
                for (i, table) in deg[n].iter().enumerate() {
                    if table.len() != self.count(n) || table.iter().any(|&t| t >= self.count(n + 1)) {
                        out.push(shape(format!("s_{i} in degree {n} malformed")));
                    }
                }
            }
        }
        if let Some(b) = &self.basepoint {
            if b.len() != self.cap + 1 || b.iter().enumerate().any(|(n, &c)| c >= self.count(n)) {
                out.push(shape("basepoint table malformed".into()));
            }
        }
        out
    }

    /// Exhaustive check of the Δ-identity, of all simplicial identities that stay
    /// within the cap (when degeneracies are present), and of basepoint closure.
    pub fn validate(&self) -> SliceReport {
        let mut report = SliceReport { checked: 0, violations: self.check_shape() };
        if !report.violations.is_empty() {
            return report;
        }
        let mut failures: Vec<IdentityFailure> = Vec::new();
        for n in 0..=self.cap {
            for cell in 0..self.count(n) {
                let before = failures.len();
                report.checked += check_element(self, n, &cell, &mut failures);
                for f in &failures[before..] {
                    report.violations.push(SliceViolation::Identity {
                        kind: f.kind,
                        degree: f.degree,
                        cell: self.labels[n][cell].clone(),
                        i: f.i,
                        j: f.j,
                    });
                }
            }
        }
        if let Some(b) = &self.basepoint {
            for n in 1..=self.cap {
                for i in 0..=n {
                    report.checked += 1;
                    if self.face(n, b[n], i) != b[n - 1] {
                        report.violations.push(SliceViolation::Basepoint {
                            degree: n,
                            detail: format!("d_{i} leaves the basepoint"),
                        });
                    }
                }
            }
            if self.has_degeneracies() {
                for n in 0..self.cap {
                    for i in 0..=n {
                        report.checked += 1;
                        if self.degeneracy(n, b[n], i) != b[n + 1] {
                            report.violations.push(SliceViolation::Basepoint {
                                degree: n,
                                detail: format!("s_{i} leaves the basepoint"),
                            });
                        }
                    }
                }
            }
        }
        report
    }
}

impl Graded for SimplicialSlice {
    type Elem = usize;

    fn cap(&self) -> usize {
        self.cap
    }

    fn has_degeneracies(&self) -> bool {
        self.degeneracies.is_some()
    }

    fn face(&self, n: usize, x: &usize, i: usize) -> usize {
        self.faces[n][i][*x]
    }

    fn degeneracy(&self, n: usize, x: &usize, i: usize) -> usize {
        SimplicialSlice::degeneracy(self, n, *x, i)
    }
}

/// Levelwise self-map of a slice: `levels[n][c]` is the image of cell `c` in degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SliceMap {
    pub levels: Vec<Vec<usize>>,
}

impl SliceMap {
    pub fn identity(slice: &SimplicialSlice) -> Self {
        Self { levels: (0..=slice.cap).map(|n| (0..slice.count(n)).collect()).collect() }
    }

    #[inline]
    pub fn apply(&self, n: usize, cell: usize) -> usize {
        self.levels[n][cell]
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            levels: other
                .levels
                .iter()
                .enumerate()
                .map(|(n, lv)| lv.iter().map(|&c| self.levels[n][c]).collect())
                .collect(),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let mut levels = Vec::with_capacity(self.levels.len());
        for lv in &self.levels {
            let mut inv = vec![usize::MAX; lv.len()];
            for (c, &img) in lv.iter().enumerate() {
                if img >= lv.len() || inv[img] != usize::MAX {
                    return None;
                }
                inv[img] = c;
            }
            levels.push(inv);
        }
        Some(Self { levels })
    }

    /// Where the map fails to be a morphism of slices, if anywhere.
    pub fn morphism_violation(&self, slice: &SimplicialSlice) -> Option<String> {
        if self.levels.len() != slice.cap + 1
            || self.levels.iter().enumerate().any(|(n, lv)| {
                lv.len() != slice.count(n) || lv.iter().any(|&c| c >= slice.count(n))
            })
        {
            return Some("map does not match the slice shape".into());
        }
        for n in 1..=slice.cap {
            for i in 0..=n {
                for c in 0..slice.count(n) {
                    if self.apply(n - 1, slice.face(n, c, i)) != slice.face(n, self.apply(n, c), i) {
                        return Some(format!("does not commute with d_{i} at {}", slice.labels[n][c]));
                    }
                }
            }
        }
        if slice.has_degeneracies() {
            for n in 0..slice.cap {
                for i in 0..=n {
                    for c in 0..slice.count(n) {
                        if self.apply(n + 1, slice.degeneracy(n, c, i)) != slice.degeneracy(n, self.apply(n, c), i) {
                            return Some(format!("does not commute with s_{i} at {}", slice.labels[n][c]));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn preserves_basepoint(&self, slice: &SimplicialSlice) -> bool {
        match &slice.basepoint {
            Some(b) => b.iter().enumerate().all(|(n, &c)| self.apply(n, c) == c),
            None => true,
        }
    }
}
