//! Smith normal form over the integers.
//!
//! Every elementary operation is mirrored on the transformation matrices and
//! their inverses, so a decomposition always carries explicit unimodular
//! certificates `U·A·V = S`, `U·U⁻¹ = I`, `V·V⁻¹ = I`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    rank: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries `d₁ | d₂ | … | d_rank`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Checks `U·A·V = S`, the inverse certificates, diagonality and the
    /// divisibility chain.
    pub fn certifies(&self, a: &IntegerMatrix) -> bool {
        let Ok(uav) = self.u.checked_mul(a).and_then(|ua| ua.checked_mul(&self.v)) else {
            return false;
        };
        if uav != self.s {
            return false;
        }
        if !(&self.u * &self.u_inv).is_identity() || !(&self.v * &self.v_inv).is_identity() {
            return false;
        }
        for i in 0..self.s.rows() {
            for j in 0..self.s.cols() {
                if i != j && !self.s.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag: Vec<&BigInt> = (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i)).collect();
        for (k, d) in diag.iter().enumerate() {
            if d.is_negative() {
                return false;
            }
            if k < self.rank && d.is_zero() || k >= self.rank && !d.is_zero() {
                return false;
            }
            if k + 1 < self.rank && !diag[k + 1].is_multiple_of(d) {
                return false;
            }
        }
        true
    }
}

struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap_rows(x, y);
            self.u.swap_rows(x, y);
            self.u_inv.swap_cols(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap_cols(x, y);
            self.v.swap_cols(x, y);
            self.v_inv.swap_rows(x, y);
        }
    }

    // row[dst] += k row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    // col[dst] += k col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the smallest nonzero |entry| in the trailing submatrix.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let m = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| &m < b) {
                    let done = m.is_one();
                    best = Some((i, j, m));
                    if done {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Smallest nonzero |entry| on row t / column t, at or after the pivot.
    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.a.get(t, t).abs());
        for i in t + 1..self.a.rows() {
            let v = self.a.get(i, t);
            if !v.is_zero() && (best.2.is_zero() || v.abs() < best.2) {
                best = (i, t, v.abs());
            }
        }
        for j in t + 1..self.a.cols() {
            let v = self.a.get(t, j);
            if !v.is_zero() && (best.2.is_zero() || v.abs() < best.2) {
                best = (t, j, v.abs());
            }
        }
        (best.0, best.1)
    }

    fn run(mut self) -> SmithDecomposition {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut rank = 0;
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..rows {
                    let e = self.a.get(i, t);
                    if e.is_zero() {
                        continue;
                    }
                    let q = e.div_floor(&p);
                    self.add_row(i, t, &-q);
                    if !self.a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    let e = self.a.get(t, j);
                    if e.is_zero() {
                        continue;
                    }
                    let q = e.div_floor(&p);
                    self.add_col(j, t, &-q);
                    if !self.a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    let (i, j) = self.min_in_cross(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // cross cleared; enforce that the pivot divides the remainder
                let offending = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a.get(i, j).is_multiple_of(&p))
                });
                match offending {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            rank += 1;
        }
        SmithDecomposition { u: self.u, s: self.a, v: self.v, u_inv: self.u_inv, v_inv: self.v_inv, rank }
    }
}

/// Computes `U·A·V = S` with `S` diagonal, nonnegative, `d₁ | d₂ | …`.
///
/// Pivoting always picks the entry of least absolute value, which keeps the
/// intermediate coefficients small on the matrices this crate produces.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let reducer = Reducer {
        a: a.clone(),
        u: IntegerMatrix::identity(a.rows()),
        u_inv: IntegerMatrix::identity(a.rows()),
        v: IntegerMatrix::identity(a.cols()),
        v_inv: IntegerMatrix::identity(a.cols()),
    };
    reducer.run()
}
