//! Integer lattices: membership, kernels and bases of column spans.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntegerMatrix;
use super::smith::{smith_normal_form, SmithDecomposition};
use crate::error::{Error, Result};

/// A matrix together with its Smith form, reused for repeated solves `A·x = b`.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    a: IntegerMatrix,
    snf: SmithDecomposition,
}

impl LatticeSolver {
    pub fn new(a: &IntegerMatrix) -> Self {
        Self { a: a.clone(), snf: smith_normal_form(a) }
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.a
    }

    pub fn decomposition(&self) -> &SmithDecomposition {
        &self.snf
    }

    /// Integer solution of `A·x = b`, or `None` when `b` is outside the column lattice.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if b.len() != self.a.rows() {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.a.rows()
            )));
        }
        // S·y = U·b, x = V·y
        let ub = self.snf.u.mul_vec(b)?;
        let rank = self.snf.rank();
        let mut y = vec![BigInt::zero(); self.a.cols()];
        for (i, c) in ub.iter().enumerate() {
            if i < rank {
                let d = self.snf.s.get(i, i);
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !c.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.snf.v.mul_vec(&y)?))
    }

    pub fn contains(&self, b: &[BigInt]) -> Result<bool> {
        Ok(self.solve(b)?.is_some())
    }

    /// First column of `m` outside the lattice, if any.
    pub fn first_column_outside(&self, m: &IntegerMatrix) -> Result<Option<usize>> {
        for j in 0..m.cols() {
            if !self.contains(&m.column(j))? {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

/// Integer solution of `A·x = b` when one exists.
pub fn solve_in_lattice(a: &IntegerMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    LatticeSolver::new(a).solve(b)
}

/// Basis (as columns) of the integer kernel `{x : A·x = 0}`.
pub fn kernel_basis(a: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(a);
    let cols: Vec<usize> = (snf.rank()..a.cols()).collect();
    let rows: Vec<usize> = (0..a.cols()).collect();
    snf.v.select(&rows, &cols)
}

/// A basis (as columns) of the lattice spanned by the columns of `a`.
pub fn column_span_basis(a: &IntegerMatrix) -> IntegerMatrix {
    // U·A·V = S  ⇒  span(A) = span(U⁻¹·S)
    let snf = smith_normal_form(a);
    let mut out = IntegerMatrix::zeros(a.rows(), snf.rank());
    for k in 0..snf.rank() {
        let d = snf.s.get(k, k);
        for i in 0..a.rows() {
            out.set(i, k, snf.u_inv.get(i, k) * d);
        }
    }
    out
}

/// Basis of `{x ∈ Zᵐ : F·x ∈ span(R)}` for `F: p×m`, `R: p×r`.
///
/// This is the kernel of the induced map into the group presented by `R`,
/// pulled back to the free cover.
pub fn kernel_modulo(f: &IntegerMatrix, r: &IntegerMatrix) -> Result<IntegerMatrix> {
    if f.rows() != r.rows() {
        return Err(Error::DimensionMismatch("kernel_modulo row counts".into()));
    }
    let m = f.cols();
    let aug = f.hcat(r)?;
    let k = kernel_basis(&aug);
    let rows: Vec<usize> = (0..m).collect();
    let cols: Vec<usize> = (0..k.cols()).collect();
    Ok(column_span_basis(&k.select(&rows, &cols)))
}

/// Whether every column of `m` lies in the lattice spanned by `lattice`.
pub fn columns_in_span(m: &IntegerMatrix, lattice: &IntegerMatrix) -> Result<Option<usize>> {
    if m.cols() == 0 {
        return Ok(None);
    }
    if lattice.cols() == 0 {
        return Ok((0..m.cols()).find(|&j| m.column(j).iter().any(|v| !v.is_zero())));
    }
    LatticeSolver::new(lattice).first_column_outside(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::matrix::int_vec;

    #[test]
    fn solves_spec_examples() {
        let two = IntegerMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve_in_lattice(&two, &int_vec(&[4])).unwrap(), Some(int_vec(&[2])));
        assert_eq!(solve_in_lattice(&two, &int_vec(&[3])).unwrap(), None);
        let d = IntegerMatrix::diagonal(&[2, 3]);
        assert_eq!(solve_in_lattice(&d, &int_vec(&[2, 0])).unwrap(), Some(int_vec(&[1, 0])));
        assert!(solve_in_lattice(&d, &int_vec(&[1])).is_err());
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2, 3]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn span_basis_drops_dependencies() {
        let a = IntegerMatrix::from_rows(&[vec![2, 4, 0], vec![0, 0, 0]]);
        let b = column_span_basis(&a);
        assert_eq!(b.cols(), 1);
        assert_eq!(columns_in_span(&a, &b).unwrap(), None);
        assert_eq!(columns_in_span(&b, &a).unwrap(), None);
    }

    #[test]
    fn kernel_modulo_torsion() {
        // Z -> Z/4 via multiplication by 2: kernel is 2Z
        let f = IntegerMatrix::from_rows(&[vec![2]]);
        let r = IntegerMatrix::from_rows(&[vec![4]]);
        let k = kernel_modulo(&f, &r).unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.max_abs(), BigInt::from(2));
    }
}
