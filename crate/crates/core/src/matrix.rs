//! Dense exact matrices over ℚ, ℚ(i) or 𝔽_p.
//!
//! Matrices are maps between column spaces: an `r × c` matrix sends `K^c`
//! to `K^r` by left multiplication. Empty matrices (`0 × n`, `n × 0`) are
//! valid and show up constantly as differentials in and out of absent
//! bidegrees.

use std::fmt;

use crate::field::{FieldSpec, Scalar};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major, rows * cols
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let s = f(r, c);
                assert_eq!(s.field(), field, "entry field mismatch");
                entries.push(s);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from rows of scalars; every entry must belong to
    /// `field`. Rows may be empty only if all are.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry in {} inside a {} matrix",
                        s.field(),
                        field
                    )));
                }
                entries.push(s.clone());
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&n| field.from_i64(n)).collect())
            .collect();
        Matrix::from_rows(field, data).expect("integer rows are well formed")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(Scalar::neg).collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Matrix> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(format!(
                "scale by {} element",
                s.field()
            )));
        }
        let entries = self.entries.iter().map(|e| e.mul(s)).collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Entrywise complex conjugation (identity over ℚ and 𝔽_p).
    pub fn conjugate(&self) -> Matrix {
        let entries = self.entries.iter().map(Scalar::conjugate).collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.at(c, r).clone()
        })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols && self.rows != 0 && other.rows != 0 {
            return Err(Error::DimensionMismatch("vstack column mismatch".into()));
        }
        let cols = if self.rows == 0 {
            other.cols
        } else {
            self.cols
        };
        let mut entries = Vec::with_capacity((self.rows + other.rows) * cols);
        entries.extend(self.entries.iter().cloned());
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols,
            entries,
        })
    }

    /// Puts `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row mismatch".into()));
        }
        let mut m = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.at_mut(r, c) = self.at(r, c).clone();
            }
            for c in 0..other.cols {
                *m.at_mut(r, self.cols + c) = other.at(r, c).clone();
            }
        }
        Ok(m)
    }

    pub fn submatrix_cols(&self, range: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.field, self.rows, range.len(), |r, c| {
            self.at(r, range.start + c).clone()
        })
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form together with the rank.
    ///
    /// The result is canonical: two row-equivalent matrices produce the same
    /// output, so subspaces stored as rref bases compare by equality.
    pub fn rank_and_rref(&self) -> (usize, Matrix) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.at(pivot_row, col).inverse().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.at(pivot_row, c).mul(&inv);
                *m.at_mut(pivot_row, c) = v;
            }
            for r in 0..m.rows {
                if r == pivot_row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c).sub(&factor.mul(m.at(pivot_row, c)));
                    *m.at_mut(r, c) = v;
                }
            }
            pivot_row += 1;
        }
        (pivot_row, m)
    }

    pub fn rank(&self) -> usize {
        self.rank_and_rref().0
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Solves `self · X = rhs` column by column. Returns `Err(Inconsistent)`
    /// when no solution exists; among solutions the one with free variables
    /// set to zero is returned.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} equations vs rhs with {} rows",
                self.rows, rhs.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let (_, red) = aug.rank_and_rref();
        let mut solution = Matrix::zero(self.field, self.cols, rhs.cols);
        // Locate pivots of the coefficient block.
        let mut pivot_of_row = Vec::new();
        for r in 0..red.rows {
            let mut pivot = None;
            for c in 0..red.cols {
                if !red.at(r, c).is_zero() {
                    pivot = Some(c);
                    break;
                }
            }
            match pivot {
                None => break,
                Some(c) if c < self.cols => pivot_of_row.push((r, c)),
                // Pivot inside the rhs block: 0 = 1, inconsistent.
                Some(_) => return Err(Error::Inconsistent),
            }
        }
        for (r, c) in pivot_of_row {
            for j in 0..rhs.cols {
                *solution.at_mut(c, j) = red.at(r, self.cols + j).clone();
            }
        }
        Ok(solution)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "inverse of non-square matrix".into(),
            ));
        }
        let aug = self.hstack(&Matrix::identity(self.field, self.rows))?;
        let (_, red) = aug.rank_and_rref();
        // Invertible iff the left block reduced to the identity.
        let left = red.submatrix_cols(0..self.cols);
        if left != Matrix::identity(self.field, self.rows) {
            return Err(Error::NotInvertible);
        }
        Ok(red.submatrix_cols(self.cols..2 * self.cols))
    }

    /// Applies the matrix to a vector given as a slice.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "apply: length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (c, vc) in v.iter().enumerate() {
                    if !vc.is_zero() && !self.at(r, c).is_zero() {
                        acc = acc.add(&self.at(r, c).mul(vc));
                    }
                }
                acc
            })
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_law() {
        let f = FieldSpec::Rationals;
        let a = Matrix::from_i64_rows(f, &[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(f, 2);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_eq!(id.mul(&a).unwrap(), a);
    }

    #[test]
    fn rational_addition_reduces() {
        let f = FieldSpec::Rationals;
        let half = Matrix::from_rows(f, vec![vec![Scalar::ratio(f, 1, 2)]]).unwrap();
        let one = Matrix::from_i64_rows(f, &[&[1]]);
        assert_eq!(half.add(&half).unwrap(), one);
    }

    #[test]
    fn conjugate_negates_imaginary_entries() {
        let f = FieldSpec::GaussianRationals;
        let m = Matrix::from_rows(f, vec![vec![Scalar::i()]]).unwrap();
        let c = Matrix::from_rows(f, vec![vec![Scalar::i().neg()]]).unwrap();
        assert_eq!(m.conjugate(), c);
        assert_eq!(m.conjugate().conjugate(), m);
    }

    #[test]
    fn rank_of_proportional_rows() {
        let f = FieldSpec::Rationals;
        let m = Matrix::from_i64_rows(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::zero(f, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(f, 5).rank(), 5);
    }

    #[test]
    fn rref_is_canonical_under_row_operations() {
        let f = FieldSpec::Rationals;
        let a = Matrix::from_i64_rows(f, &[&[1, 2, 3], &[0, 1, 1]]);
        // Row-equivalent variant: r0 <- 2*r0 + r1, swap rows.
        let b = Matrix::from_i64_rows(f, &[&[0, 1, 1], &[2, 5, 7]]);
        assert_eq!(a.rank_and_rref().1, b.rank_and_rref().1);
        let (_, r) = a.rank_and_rref();
        assert_eq!(r.rank_and_rref().1, r, "rref is idempotent");
    }

    #[test]
    fn solve_and_inverse() {
        let f = FieldSpec::Rationals;
        let a = Matrix::from_i64_rows(f, &[&[2, 1], &[1, 1]]);
        let b = Matrix::from_i64_rows(f, &[&[3], &[2]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(f, 2));

        let singular = Matrix::from_i64_rows(f, &[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().is_err());
        let bad_rhs = Matrix::from_i64_rows(f, &[&[1], &[2]]);
        assert!(matches!(singular.solve(&bad_rhs), Err(Error::Inconsistent)));
    }

    #[test]
    fn empty_matrices_are_fine() {
        let f = FieldSpec::PrimeField(5);
        let a = Matrix::zero(f, 0, 3);
        let b = Matrix::zero(f, 3, 2);
        let prod = a.mul(&b).unwrap();
        assert_eq!((prod.rows(), prod.cols()), (0, 2));
        assert_eq!(a.rank(), 0);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = Matrix::identity(FieldSpec::Rationals, 2);
        let b = Matrix::identity(FieldSpec::PrimeField(3), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_))));
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(_))));
    }
}
