//! Subspaces of `K^n` with canonical echelon bases, lattice operations and
//! linear-map preimages.
//!
//! A subspace is stored as the reduced row echelon form of any spanning set,
//! which is unique per subspace. Equality of subspaces is therefore plain
//! structural equality, and every operation below returns canonical output.

use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix, // rows form a basis, in rref, no zero rows
}

impl Subspace {
    /// The zero subspace of `K^ambient`.
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(field, 0, ambient),
        }
    }

    /// All of `K^ambient`.
    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Span of the rows of `m` inside `K^(m.cols())`.
    pub fn from_rows(m: &Matrix) -> Self {
        let (rank, rref) = m.rank_and_rref();
        let basis = Matrix::from_fn(m.field(), rank, m.cols(), |r, c| rref.at(r, c).clone());
        Subspace {
            ambient: m.cols(),
            basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    /// The canonical echelon basis, rows = basis vectors.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field(),
                other.field()
            )));
        }
        Ok(())
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)?))
    }

    /// `self ∩ other`, by the Zassenhaus block trick: row reduce
    /// `[U U; W 0]`; rows whose left block vanished carry the intersection
    /// in their right block.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let f = self.field();
        let n = self.ambient;
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&Matrix::zero(f, other.dim(), n))?;
        let stacked = top.vstack(&bottom)?;
        let (_, red) = stacked.rank_and_rref();
        let mut rows = Vec::new();
        for r in 0..red.rows() {
            let left_zero = (0..n).all(|c| red.at(r, c).is_zero());
            if left_zero {
                let right: Vec<_> = (n..2 * n).map(|c| red.at(r, c).clone()).collect();
                if right.iter().any(|s| !s.is_zero()) {
                    rows.push(right);
                }
            }
        }
        let m = Matrix::from_rows(f, rows).expect("rows share length");
        let m = if m.rows() == 0 {
            Matrix::zero(f, 0, n)
        } else {
            m
        };
        Ok(Subspace::from_rows(&m))
    }

    /// Does `self` contain `other`?
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.sum(other)?.dim() == self.dim())
    }

    /// Does `self` contain the given row vector?
    pub fn contains_vector(&self, v: &Matrix) -> Result<bool> {
        let candidate = Subspace::from_rows(&self.basis.vstack(v)?);
        Ok(candidate.dim() == self.dim())
    }

    /// `dim(self / other)`, requiring `other ⊆ self`.
    pub fn quotient_dim(&self, other: &Subspace) -> Result<usize> {
        if !self.contains(other)? {
            return Err(Error::NotASubspace(
                "quotient requires the second space to lie inside the first".into(),
            ));
        }
        Ok(self.dim() - other.dim())
    }

    /// Image of the subspace under a linear map (rows transformed by `m`).
    pub fn map_by(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map from K^{} applied to subspace of K^{}",
                m.cols(),
                self.ambient
            )));
        }
        // Row vectors: (m · vᵀ)ᵀ = v · mᵀ.
        let image = self.basis.mul(&m.transpose())?;
        Ok(Subspace::from_rows(&image))
    }
}

/// Kernel and image of `m` viewed as a map `K^cols → K^rows`.
///
/// The kernel lives in the domain, the image in the codomain; both come out
/// with canonical echelon bases, so `dim ker + dim im = cols` is an exact
/// identity here.
pub fn kernel_image(m: &Matrix) -> (Subspace, Subspace) {
    (kernel(m), image(m))
}

pub fn kernel(m: &Matrix) -> Subspace {
    let f = m.field();
    let n = m.cols();
    let (_, red) = m.rank_and_rref();
    // Pivot columns from the rref.
    let mut pivot_cols = Vec::new();
    for r in 0..red.rows() {
        if let Some(c) = (0..n).find(|&c| !red.at(r, c).is_zero()) {
            pivot_cols.push(c);
        }
    }
    let is_pivot = |c: usize| pivot_cols.contains(&c);
    let mut rows = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot(c)) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = red.at(r, free).neg();
        }
        rows.push(v);
    }
    let mat = Matrix::from_rows(f, rows).expect("kernel rows share length");
    let mat = if mat.rows() == 0 {
        Matrix::zero(f, 0, n)
    } else {
        mat
    };
    Subspace::from_rows(&mat)
}

pub fn image(m: &Matrix) -> Subspace {
    Subspace::from_rows(&m.transpose())
}

/// `{x : m·x ∈ w}` for `w` a subspace of the codomain of `m`.
pub fn preimage(m: &Matrix, w: &Subspace) -> Result<Subspace> {
    if w.ambient_dim() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "preimage: map into K^{} but subspace of K^{}",
            m.rows(),
            w.ambient_dim()
        )));
    }
    if m.field() != w.field() {
        return Err(Error::FieldMismatch(format!(
            "{} vs {}",
            m.field(),
            w.field()
        )));
    }
    // Solve m·x = Wᵀ·y: kernel of [m | -Wᵀ], projected to the x block.
    let wt = w.basis().transpose().neg();
    let block = m.hstack(&wt)?;
    let ker = kernel(&block);
    let xs = Matrix::from_fn(m.field(), ker.dim(), m.cols(), |r, c| {
        ker.basis().at(r, c).clone()
    });
    Ok(Subspace::from_rows(&xs))
}

/// A quotient `numerator / denominator` with a chosen set of representative
/// rows, supporting exact coordinate extraction. Representatives are picked
/// deterministically (echelon extension of the denominator basis), so all
/// downstream matrices are reproducible.
#[derive(Clone, Debug)]
pub struct Quotient {
    numerator: Subspace,
    denominator: Subspace,
    reps: Matrix,
}

impl Quotient {
    pub fn new(numerator: Subspace, denominator: Subspace) -> Result<Quotient> {
        if !numerator.contains(&denominator)? {
            return Err(Error::NotASubspace(
                "quotient denominator is not contained in the numerator".into(),
            ));
        }
        let f = numerator.field();
        let n = numerator.ambient_dim();
        // Extend the denominator basis by numerator rows that survive
        // reduction; the reduced remainders are the representatives.
        let mut echelon: Vec<Vec<_>> = (0..denominator.dim())
            .map(|r| denominator.basis().row(r))
            .collect();
        let mut reps = Vec::new();
        for r in 0..numerator.dim() {
            let mut v = numerator.basis().row(r);
            reduce_against(&mut v, &echelon);
            if v.iter().any(|s| !s.is_zero()) {
                normalize(&mut v);
                echelon.push(v.clone());
                echelon.sort_by_key(|row| row.iter().position(|s| !s.is_zero()));
                reps.push(v);
            }
        }
        let reps = Matrix::from_rows(f, reps).expect("rep rows share length");
        let reps = if reps.rows() == 0 {
            Matrix::zero(f, 0, n)
        } else {
            reps
        };
        Ok(Quotient {
            numerator,
            denominator,
            reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.numerator.ambient_dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.numerator.field()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Representative rows, one per quotient basis vector.
    pub fn reps(&self) -> &Matrix {
        &self.reps
    }

    /// Coordinates of an ambient row vector in the quotient basis. The
    /// vector must lie in the numerator.
    pub fn coords(&self, v: &[crate::field::Scalar]) -> Result<Vec<crate::field::Scalar>> {
        let f = self.field();
        let k = self.dim();
        let stacked = self.reps.vstack(self.denominator.basis())?;
        let rhs = Matrix::from_rows(f, vec![v.to_vec()])?.transpose();
        let sol = stacked.transpose().solve(&rhs)?;
        Ok((0..k).map(|r| sol.at(r, 0).clone()).collect())
    }

    /// Expresses the images of the representative rows of another quotient
    /// under a linear map as a matrix in this quotient's coordinates.
    pub fn matrix_from(&self, source: &Quotient, map: &Matrix) -> Result<Matrix> {
        let mut cols = Vec::new();
        for r in 0..source.dim() {
            let v = source.reps.row(r);
            let image = map.apply(&v);
            cols.push(self.coords(&image)?);
        }
        Ok(Matrix::from_fn(
            self.field(),
            self.dim(),
            cols.len(),
            |r, c| cols[c][r].clone(),
        ))
    }

    /// Image of a subspace of the ambient (contained in the numerator) in
    /// quotient coordinates.
    pub fn project_subspace(&self, s: &Subspace) -> Result<Subspace> {
        let mut rows = Vec::new();
        for r in 0..s.dim() {
            rows.push(self.coords(&s.basis().row(r))?);
        }
        let m = Matrix::from_rows(self.field(), rows)?;
        let m = if m.rows() == 0 {
            Matrix::zero(self.field(), 0, self.dim())
        } else {
            m
        };
        Ok(Subspace::from_rows(&m))
    }
}

fn reduce_against(v: &mut [crate::field::Scalar], echelon: &[Vec<crate::field::Scalar>]) {
    for row in echelon {
        let Some(lead) = row.iter().position(|s| !s.is_zero()) else {
            continue;
        };
        if v[lead].is_zero() {
            continue;
        }
        let factor = v[lead].mul(&row[lead].inverse().expect("leading entry nonzero"));
        for (vi, ri) in v.iter_mut().zip(row) {
            *vi = vi.sub(&factor.mul(ri));
        }
    }
}

fn normalize(v: &mut [crate::field::Scalar]) {
    if let Some(lead) = v.iter().position(|s| !s.is_zero()) {
        let inv = v[lead].inverse().expect("leading entry nonzero");
        for s in v.iter_mut() {
            *s = s.mul(&inv);
        }
    }
}
