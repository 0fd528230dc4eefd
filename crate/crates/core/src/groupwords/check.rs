//! Exhaustive and sampled checks of the simplicial identities on reduced
//! words, the homomorphism property of the structure maps, and the comparison
//! with twisted chains under abelianization.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::group::Abelianization;
use super::words::{Letter, TwistedFreeConstruction, Word};
use crate::abelian::IntegerMatrix;
use crate::chains::ChainComplex;
use crate::error::{Error, Result};
use crate::spaces::{check_element, IdentityKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Words are checked in degrees `0..=max_degree`.
    pub max_degree: usize,
    /// All reduced words up to this length are enumerated.
    pub exhaustive_length: usize,
    pub random_samples: usize,
    /// Random words are built from at most this many letters before reduction.
    pub random_length: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { max_degree: 3, exhaustive_length: 2, random_samples: 1000, random_length: 6, seed: 0 }
    }
}

/// A failed identity together with the word it failed on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordFailure {
    pub kind: IdentityKind,
    pub degree: usize,
    pub i: usize,
    pub j: usize,
    pub word: String,
}

impl fmt::Display for WordFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails for i={}, j={} on {} (degree {})", self.kind, self.i, self.j, self.word, self.degree)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub exhaustive_words: usize,
    pub random_words: usize,
    pub identity_checks: usize,
    pub homomorphism_checks: usize,
    pub failures: Vec<WordFailure>,
    pub homomorphism_failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.homomorphism_failures.is_empty()
    }

    /// Failures of the face-face identity alone.
    pub fn delta_failures(&self) -> impl Iterator<Item = &WordFailure> {
        self.failures.iter().filter(|f| f.kind == IdentityKind::FaceFace)
    }
}

/// Every reduced word of degree `n` with at most `max_len` letters.
pub fn enumerate_words(f: &TwistedFreeConstruction, n: usize, max_len: usize) -> Vec<Word> {
    let labels = f.free_labels(n);
    let g = f.group();
    let elements: Vec<usize> = (0..g.order()).filter(|&e| e != g.identity()).collect();
    let mut out = vec![Word::empty(n)];
    let mut frontier = vec![Word::empty(n)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &label in &labels {
                if w.letters.last().is_some_and(|l| l.label == label) {
                    continue;
                }
                for &element in &elements {
                    let mut letters = w.letters.clone();
                    letters.push(Letter { label, element });
                    next.push(Word { degree: n, letters });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn random_word(f: &TwistedFreeConstruction, rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Result<Word> {
    let labels = f.free_labels(n);
    if labels.is_empty() {
        return Ok(Word::empty(n));
    }
    let len = rng.gen_range(1..=max_len.max(1));
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter {
            label: labels[rng.gen_range(0..labels.len())],
            element: rng.gen_range(0..f.group().order()),
        })
        .collect();
    f.reduce(n, letters)
}

fn homomorphism_failure(f: &TwistedFreeConstruction, a: &Word, b: &Word) -> Result<(usize, Option<String>)> {
    let n = a.degree;
    let ab = f.multiply(a, b)?;
    let mut checks = 0;
    if n >= 1 {
        for i in 0..=n {
            checks += 1;
            if f.twisted_face(&ab, i)? != f.multiply(&f.twisted_face(a, i)?, &f.twisted_face(b, i)?)? {
                return Ok((checks, Some(format!("d_{i} on {} · {}", f.display(a), f.display(b)))));
            }
        }
    }
    if f.is_nonsingular() && n < f.cap() {
        for i in 0..=n {
            checks += 1;
            let lhs = f.twisted_degeneracy(&ab, i)?;
            if lhs != f.multiply(&f.twisted_degeneracy(a, i)?, &f.twisted_degeneracy(b, i)?)? {
                return Ok((checks, Some(format!("s_{i} on {} · {}", f.display(a), f.display(b)))));
            }
        }
    }
    Ok((checks, None))
}

/// Runs the simplicial identities on every reduced word of length at most
/// `exhaustive_length` and on `random_samples` seeded random words, all in
/// degrees `≤ max_degree`; random pairs also exercise the homomorphism property.
///
/// Identities that would leave degree `cap` are skipped, so `cap ≥ max_degree + 2`
/// covers all of them.
pub fn check_simplicial_identities(f: &TwistedFreeConstruction, config: &CheckConfig) -> Result<IdentityReport> {
    if config.max_degree > f.cap() {
        return Err(Error::DegreeOutOfRange { degree: config.max_degree, cap: f.cap() });
    }
    let mut words: Vec<Word> = (0..=config.max_degree)
        .flat_map(|n| enumerate_words(f, n, config.exhaustive_length))
        .collect();
    let exhaustive_words = words.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut pairs = Vec::with_capacity(config.random_samples);
    for _ in 0..config.random_samples {
        let n = rng.gen_range(0..=config.max_degree);
        let a = random_word(f, &mut rng, n, config.random_length)?;
        let b = random_word(f, &mut rng, n, config.random_length)?;
        words.push(a.clone());
        pairs.push((a, b));
    }
    let results: Vec<(usize, Vec<WordFailure>)> = words
        .par_iter()
        .map(|w| {
            let mut out = Vec::new();
            let checked = check_element(f, w.degree, w, &mut out);
            let failures = out
                .into_iter()
                .map(|e| WordFailure { kind: e.kind, degree: e.degree, i: e.i, j: e.j, word: f.display(w) })
                .collect();
            (checked, failures)
        })
        .collect();
    let homs = pairs
        .par_iter()
        .map(|(a, b)| homomorphism_failure(f, a, b))
        .collect::<Result<Vec<_>>>()?;
    let mut report = IdentityReport { exhaustive_words, random_words: config.random_samples, ..Default::default() };
    for (checked, failures) in results {
        report.identity_checks += checked;
        report.failures.extend(failures);
    }
    for (checked, failure) in homs {
        report.homomorphism_checks += checked;
        report.homomorphism_failures.extend(failure);
    }
    Ok(report)
}

/// Image of a word in the reduced abelian chains `C̃ₙ(A; G^{ab})`: one block of
/// `G^{ab}` coordinates per non-basepoint path.
pub fn abelianize(f: &TwistedFreeConstruction, w: &Word, ab: &Abelianization) -> Vec<BigInt> {
    let k = ab.group.generators();
    let base = f.basepoint_cell(w.degree);
    let slots = f.nerve.count(w.degree) - 1;
    let mut v = vec![BigInt::zero(); k * slots];
    for l in &w.letters {
        let pos = if l.label > base { l.label - 1 } else { l.label };
        for (t, x) in ab.images[l.element].iter().enumerate() {
            v[pos * k + t] += x;
        }
    }
    v
}

/// Reduced chains of the base with coefficients `G^{ab}` and the induced twist,
/// on the same cells as `f`.
pub fn abelianized_chains(f: &TwistedFreeConstruction, ab: &Abelianization) -> Result<ChainComplex> {
    let induced = ab.induced_structure(&f.structure)?;
    let killed: Vec<usize> = (0..=f.cap()).map(|n| f.basepoint_cell(n)).collect();
    ChainComplex::from_slice(&f.nerve.slice, &ab.group, Some(&killed), |n, c, i| {
        induced.map(f.nerve.vertex_at(n, c, i)).clone()
    })
}

/// `Σᵢ (−1)ⁱ ab(dᵢw) ≡ ∂ ab(w)` for each word of positive degree; returns the
/// first word where it fails.
pub fn abelianization_mismatch(
    f: &TwistedFreeConstruction,
    ab: &Abelianization,
    chains: &ChainComplex,
    words: &[Word],
) -> Result<Option<String>> {
    for w in words.iter().filter(|w| w.degree >= 1) {
        let n = w.degree;
        let mut lhs = vec![BigInt::zero(); chains.chain_group(n - 1).generators()];
        for i in 0..=n {
            let d = abelianize(f, &f.twisted_face(w, i)?, ab);
            for (acc, x) in lhs.iter_mut().zip(d) {
                if i % 2 == 0 {
                    *acc += x;
                } else {
                    *acc -= x;
                }
            }
        }
        let rhs = chains.boundary(n).mul_vec(&abelianize(f, w, ab))?;
        let rows = lhs.len();
        let same = chains.chain_group(n - 1).congruent(
            &IntegerMatrix::from_columns(rows, &[lhs]),
            &IntegerMatrix::from_columns(rows, &[rhs]),
        )?;
        if !same {
            return Ok(Some(f.display(w)));
        }
    }
    Ok(None)
}
