use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{smith_normal_form, FgAbelianGroup, IntegerMatrix};
use crate::error::{Error, Result};
use crate::spaces::{SimplicialSlice, SliceMap};
use crate::twist::{Coefficients, TwistedAbelianStructure, TwistedStructure};

/// Finite group given by its multiplication table: `table[g][h] = g·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validates closure, identity, inverses and associativity exhaustively.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("multiplication table is not square over the elements".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::Invalid(format!("{} has no inverse", names[g])))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!(
                            "({}·{})·{} ≠ {}·({}·{})",
                            names[a], names[b], names[c], names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Self { names, table, identity, inverses })
    }

    /// `Z/n` on elements `"0"..`, written additively.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table).expect("cyclic group table")
    }

    /// The symmetric group on three letters; elements are the permutations in
    /// one-line notation, composed right to left.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let index: HashMap<[usize; 3], usize> = perms.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let names = perms.iter().map(|p| format!("{}{}{}", p[0] + 1, p[1] + 1, p[2] + 1)).collect();
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index[&[p[q[0]], p[q[1]], p[q[2]]]]).collect())
            .collect();
        Self::new(names, table).expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `x ↦ g·x·g⁻¹`
    pub fn conjugation(&self, g: usize) -> Vec<usize> {
        (0..self.order()).map(|x| self.mul(self.mul(g, x), self.inv(g))).collect()
    }

    /// `x ↦ xᵏ`; a homomorphism whenever the group is abelian.
    pub fn power_map(&self, k: u64) -> Vec<usize> {
        (0..self.order())
            .map(|x| (0..k).fold(self.identity, |acc, _| self.mul(acc, x)))
            .collect()
    }

    /// First pair `(g, h)` with `φ(gh) ≠ φ(g)φ(h)`.
    pub fn homomorphism_violation(&self, phi: &[usize]) -> Option<(usize, usize)> {
        let n = self.order();
        if phi.len() != n || phi.iter().any(|&x| x >= n) {
            return Some((0, 0));
        }
        for g in 0..n {
            for h in 0..n {
                if phi[self.mul(g, h)] != self.mul(phi[g], phi[h]) {
                    return Some((g, h));
                }
            }
        }
        None
    }

    fn tuple_index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &g| acc * self.order() + g)
    }

    fn tuple(&self, mut index: usize, len: usize) -> Vec<usize> {
        let mut t = vec![0; len];
        for k in (0..len).rev() {
            t[k] = index % self.order();
            index /= self.order();
        }
        t
    }

    /// The classifying nerve `BG` truncated at `cap`: degree `n` cells are
    /// `n`-tuples `(g₁,…,gₙ)`; inner faces multiply neighbours, outer faces
    /// drop an end, degeneracies insert the identity. Pointed at the all-identity tuples.
    pub fn nerve_slice(&self, cap: usize) -> SimplicialSlice {
        let o = self.order();
        let count = |n: usize| o.pow(n as u32);
        let labels = (0..=cap)
            .map(|n| {
                (0..count(n))
                    .map(|c| {
                        let t = self.tuple(c, n);
                        format!("({})", t.iter().map(|&g| self.names[g].as_str()).collect::<Vec<_>>().join(","))
                    })
                    .collect()
            })
            .collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=cap {
            let level = (0..=n)
                .map(|i| {
                    (0..count(n))
                        .map(|c| {
                            let mut t = self.tuple(c, n);
                            if i == 0 {
                                t.remove(0);
                            } else if i == n {
                                t.pop();
                            } else {
                                let merged = self.mul(t[i - 1], t[i]);
                                t.splice(i - 1..=i, [merged]);
                            }
                            self.tuple_index(&t)
                        })
                        .collect()
                })
                .collect();
            faces.push(level);
        }
        let degeneracies = (0..cap)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        (0..count(n))
                            .map(|c| {
                                let mut t = self.tuple(c, n);
                                t.insert(i, self.identity);
                                self.tuple_index(&t)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let basepoint = (0..=cap).map(|n| self.tuple_index(&vec![self.identity; n])).collect();
        SimplicialSlice { cap, labels, faces, degeneracies: Some(degeneracies), basepoint: Some(basepoint) }
    }

    /// Self-map of [`FiniteGroupTable::nerve_slice`] induced by a homomorphism, componentwise.
    pub fn nerve_map(&self, phi: &[usize], cap: usize) -> SliceMap {
        let levels = (0..=cap)
            .map(|n| {
                (0..self.order().pow(n as u32))
                    .map(|c| {
                        let t: Vec<usize> = self.tuple(c, n).iter().map(|&g| phi[g]).collect();
                        self.tuple_index(&t)
                    })
                    .collect()
            })
            .collect();
        SliceMap { levels }
    }
}

impl Coefficients for FiniteGroupTable {
    type Map = Vec<usize>;

    fn kind(&self) -> &'static str {
        "finite_group"
    }

    fn identity_map(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }

    fn map_defect(&self, m: &Vec<usize>) -> Result<Option<String>> {
        Ok(self.homomorphism_violation(m).map(|(g, h)| {
            if m.len() != self.order() {
                "map is not defined on every element".to_string()
            } else {
                format!("φ({}·{}) ≠ φ({})·φ({})", self.names[g], self.names[h], self.names[g], self.names[h])
            }
        }))
    }

    fn compose(&self, f: &Vec<usize>, g: &Vec<usize>) -> Vec<usize> {
        g.iter().map(|&x| f[x]).collect()
    }

    fn difference(&self, f: &Vec<usize>, g: &Vec<usize>) -> Result<Option<String>> {
        Ok(f.iter().zip(g).position(|(a, b)| a != b).map(|x| {
            format!("at {}: {} vs {}", self.names[x], self.names[f[x]], self.names[g[x]])
        }))
    }

    fn inverse(&self, f: &Vec<usize>) -> Result<Option<Vec<usize>>> {
        let mut inv = vec![usize::MAX; f.len()];
        for (x, &y) in f.iter().enumerate() {
            if inv[y] != usize::MAX {
                return Ok(None);
            }
            inv[y] = x;
        }
        Ok(Some(inv))
    }
}

/// `G^{ab}` in reduced coordinates, with the image of every element.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: FgAbelianGroup,
    /// `images[g]` is the coordinate vector of the class of `g`.
    pub images: Vec<Vec<BigInt>>,
    coordinates: Vec<usize>,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
}

impl Abelianization {
    /// Abelian group on the elements with relations `e_g + e_h − e_{gh}`,
    /// brought to Smith form; coordinates with unit invariant factor are dropped.
    pub fn of(g: &FiniteGroupTable) -> Self {
        let n = g.order();
        let mut rel = IntegerMatrix::zeros(n, n * n);
        for a in 0..n {
            for b in 0..n {
                let col = a * n + b;
                *rel.get_mut(a, col) += 1;
                *rel.get_mut(b, col) += 1;
                *rel.get_mut(g.mul(a, b), col) -= 1;
            }
        }
        let snf = smith_normal_form(&rel);
        let factor = |i: usize| if i < snf.rank() { snf.s.get(i, i).clone() } else { BigInt::zero() };
        let coordinates: Vec<usize> = (0..n).filter(|&i| !factor(i).is_one()).collect();
        let k = coordinates.len();
        let mut relations = Vec::new();
        for (pos, &i) in coordinates.iter().enumerate() {
            let d = factor(i);
            if !d.is_zero() {
                let mut col = vec![BigInt::zero(); k];
                col[pos] = d;
                relations.push(col);
            }
        }
        let group = FgAbelianGroup::new(k, IntegerMatrix::from_columns(k, &relations)).expect("shape");
        let reduce = |v: Vec<BigInt>| -> Vec<BigInt> {
            coordinates
                .iter()
                .map(|&i| {
                    let d = factor(i);
                    if d.is_zero() {
                        v[i].clone()
                    } else {
                        ((&v[i] % &d) + &d) % &d
                    }
                })
                .collect()
        };
        let images = (0..n).map(|x| reduce(snf.u.column(x))).collect();
        Self { group, images, coordinates, u: snf.u, u_inv: snf.u_inv }
    }

    /// Matrix of the endomorphism of `G^{ab}` induced by a homomorphism `φ`.
    pub fn induced(&self, phi: &[usize]) -> IntegerMatrix {
        let n = phi.len();
        let mut p = IntegerMatrix::zeros(n, n);
        for (x, &y) in phi.iter().enumerate() {
            p.set(y, x, 1);
        }
        let full = &(&self.u * &p) * &self.u_inv;
        full.select(&self.coordinates, &self.coordinates)
    }

    pub fn induced_structure(&self, s: &TwistedStructure<FiniteGroupTable>) -> Result<TwistedAbelianStructure> {
        let maps = s.maps().iter().map(|m| self.induced(m)).collect();
        TwistedStructure::new(self.group.clone(), s.vertices().to_vec(), maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::GroupSummary;

    #[test]
    fn rejects_non_groups() {
        let names: Vec<String> = vec!["e".into(), "x".into()];
        assert!(FiniteGroupTable::new(names.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroupTable::new(names, vec![vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn s3_basics() {
        let s3 = FiniteGroupTable::symmetric3();
        assert_eq!(s3.order(), 6);
        let t = s3.element("213").unwrap();
        let c = s3.element("231").unwrap();
        assert_ne!(s3.mul(t, c), s3.mul(c, t));
        assert!(s3.homomorphism_violation(&s3.conjugation(c)).is_none());
        assert!(s3.homomorphism_violation(&s3.power_map(2)).is_some());
    }

    #[test]
    fn abelianizations() {
        let z6 = Abelianization::of(&FiniteGroupTable::cyclic(6));
        assert_eq!(z6.group.summary(), GroupSummary { free_rank: 0, torsion: vec![BigInt::from(6)] });
        let s3 = Abelianization::of(&FiniteGroupTable::symmetric3());
        assert_eq!(s3.group.summary(), GroupSummary { free_rank: 0, torsion: vec![BigInt::from(2)] });
        let g = FiniteGroupTable::symmetric3();
        // transpositions map to the generator, 3-cycles to zero
        let t = g.element("213").unwrap();
        let c = g.element("231").unwrap();
        assert!(s3.group.vector_is_zero(&s3.images[c]).unwrap());
        assert!(!s3.group.vector_is_zero(&s3.images[t]).unwrap());
    }

    #[test]
    fn induced_maps_are_homomorphisms_of_the_quotient() {
        let g = FiniteGroupTable::cyclic(5);
        let ab = Abelianization::of(&g);
        let m = ab.induced(&g.power_map(2));
        for x in 0..5 {
            let lhs = m.mul_vec(&ab.images[x]).unwrap();
            let rhs = &ab.images[(2 * x) % 5];
            let diff: Vec<BigInt> = lhs.iter().zip(rhs).map(|(a, b)| a - b).collect();
            assert!(ab.group.vector_is_zero(&diff).unwrap());
        }
    }

    #[test]
    fn classifying_nerve() {
        let g = FiniteGroupTable::cyclic(3);
        let y = g.nerve_slice(3);
        assert_eq!(y.counts(), vec![1, 3, 9, 27]);
        assert!(y.validate().passed());
        let s3 = FiniteGroupTable::symmetric3();
        assert!(s3.nerve_slice(3).validate().passed());
        let phi = g.nerve_map(&g.power_map(2), 3);
        assert!(phi.morphism_violation(&y).is_none());
        assert!(phi.preserves_basepoint(&y));
    }
}
