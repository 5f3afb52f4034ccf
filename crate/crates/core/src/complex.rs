//! Bounded double complexes: validation, elementary models and the
//! structural constructors (sum, tensor, dual, shift, transpose, conjugate).
//!
//! The stored convention is the anticommuting one: `∂₁∘∂₂ + ∂₂∘∂₁ = 0`.
//! With it the total differential is plainly `∂₁ + ∂₂` with no
//! sign bookkeeping. The commuting variant is reachable by flipping the
//! sign of `∂₁` on odd columns but is not a public representation.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::shape::{Shape, SsSide};
use crate::{Error, Result};

pub type Bidegree = (i32, i32);

/// A bounded double complex over one of the supported fields.
///
/// Components are stored sparsely: bidegrees absent from the map are zero
/// dimensional, and differentials in or out of them are empty matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    field: FieldSpec,
    dims: BTreeMap<Bidegree, usize>,
    d1: BTreeMap<Bidegree, Matrix>,
    d2: BTreeMap<Bidegree, Matrix>,
}

/// One failed structural identity, reported by [`DoubleComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub p: i32,
    pub q: i32,
    pub identity: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `∂₁∘∂₁ ≠ 0` out of `(p, q)`.
    D1Squares,
    /// `∂₂∘∂₂ ≠ 0` out of `(p, q)`.
    D2Squares,
    /// `∂₁∘∂₂ + ∂₂∘∂₁ ≠ 0` out of `(p, q)`.
    Anticommute,
    /// A stored matrix has the wrong size for its endpoints.
    MatrixShape {
        which: SsSide,
        expected: (usize, usize),
        got: (usize, usize),
    },
    /// A stored matrix lives over the wrong field.
    MatrixField { which: SsSide },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.identity {
            ViolationKind::D1Squares => {
                write!(f, "∂1∘∂1 ≠ 0 out of ({}, {})", self.p, self.q)
            }
            ViolationKind::D2Squares => {
                write!(f, "∂2∘∂2 ≠ 0 out of ({}, {})", self.p, self.q)
            }
            ViolationKind::Anticommute => {
                write!(f, "∂1∘∂2 + ∂2∘∂1 ≠ 0 out of ({}, {})", self.p, self.q)
            }
            ViolationKind::MatrixShape {
                which,
                expected,
                got,
            } => write!(
                f,
                "∂{which} at ({}, {}) should be {}x{} but is {}x{}",
                self.p, self.q, expected.0, expected.1, got.0, got.1
            ),
            ViolationKind::MatrixField { which } => {
                write!(
                    f,
                    "∂{which} at ({}, {}) lives over the wrong field",
                    self.p, self.q
                )
            }
        }
    }
}

pub(crate) fn describe_violations(v: &[Violation]) -> String {
    match v.first() {
        None => "no violations".to_string(),
        Some(first) if v.len() == 1 => first.to_string(),
        Some(first) => format!("{first} (and {} more)", v.len() - 1),
    }
}

impl DoubleComplex {
    pub fn new(field: FieldSpec) -> Self {
        DoubleComplex {
            field,
            dims: BTreeMap::new(),
            d1: BTreeMap::new(),
            d2: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Declares the dimension of a component; zero removes it.
    pub fn set_dim(&mut self, p: i32, q: i32, dim: usize) {
        if dim == 0 {
            self.dims.remove(&(p, q));
        } else {
            self.dims.insert((p, q), dim);
        }
    }

    /// Stores the matrix of `∂₁: A^{p,q} → A^{p+1,q}`.
    pub fn set_d1(&mut self, p: i32, q: i32, m: Matrix) {
        if m.is_zero() {
            self.d1.remove(&(p, q));
        } else {
            self.d1.insert((p, q), m);
        }
    }

    /// Stores the matrix of `∂₂: A^{p,q} → A^{p,q+1}`.
    pub fn set_d2(&mut self, p: i32, q: i32, m: Matrix) {
        if m.is_zero() {
            self.d2.remove(&(p, q));
        } else {
            self.d2.insert((p, q), m);
        }
    }

    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Nonzero bidegrees in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    /// `(min_p, max_p, min_q, max_q)` of the support; `None` when empty.
    pub fn bounding_box(&self) -> Option<(i32, i32, i32, i32)> {
        let mut it = self.dims.keys();
        let &(p0, q0) = it.next()?;
        let mut bb = (p0, p0, q0, q0);
        for &(p, q) in it {
            bb.0 = bb.0.min(p);
            bb.1 = bb.1.max(p);
            bb.2 = bb.2.min(q);
            bb.3 = bb.3.max(q);
        }
        Some(bb)
    }

    /// The matrix of `∂₁` out of `(p, q)`, materializing zeros for absent
    /// entries.
    pub fn d1(&self, p: i32, q: i32) -> Matrix {
        match self.d1.get(&(p, q)) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.field, self.dim(p + 1, q), self.dim(p, q)),
        }
    }

    pub fn d2(&self, p: i32, q: i32) -> Matrix {
        match self.d2.get(&(p, q)) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.field, self.dim(p, q + 1), self.dim(p, q)),
        }
    }

    /// Checks every structural identity and reports all failures.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (&(p, q), m) in &self.d1 {
            let expected = (self.dim(p + 1, q), self.dim(p, q));
            if (m.rows(), m.cols()) != expected {
                out.push(Violation {
                    p,
                    q,
                    identity: ViolationKind::MatrixShape {
                        which: SsSide::One,
                        expected,
                        got: (m.rows(), m.cols()),
                    },
                });
            }
            if m.field() != self.field {
                out.push(Violation {
                    p,
                    q,
                    identity: ViolationKind::MatrixField { which: SsSide::One },
                });
            }
        }
        for (&(p, q), m) in &self.d2 {
            let expected = (self.dim(p, q + 1), self.dim(p, q));
            if (m.rows(), m.cols()) != expected {
                out.push(Violation {
                    p,
                    q,
                    identity: ViolationKind::MatrixShape {
                        which: SsSide::Two,
                        expected,
                        got: (m.rows(), m.cols()),
                    },
                });
            }
            if m.field() != self.field {
                out.push(Violation {
                    p,
                    q,
                    identity: ViolationKind::MatrixField { which: SsSide::Two },
                });
            }
        }
        if !out.is_empty() {
            // Shape errors make the composite checks meaningless.
            return out;
        }
        for &(p, q) in self.dims.keys() {
            let d1 = self.d1(p, q);
            let d2 = self.d2(p, q);
            if !self
                .d1(p + 1, q)
                .mul(&d1)
                .map(|m| m.is_zero())
                .unwrap_or(false)
            {
                out.push(Violation {
                    p,
                    q,
                    identity: ViolationKind::D1Squares,
                });
            }
            if !self
                .d2(p, q + 1)
                .mul(&d2)
                .map(|m| m.is_zero())
                .unwrap_or(false)
            {
                out.push(Violation {
                    p,
                    q,
                    identity: ViolationKind::D2Squares,
                });
            }
            let mixed = self
                .d1(p, q + 1)
                .mul(&d2)
                .and_then(|a| self.d2(p + 1, q).mul(&d1).and_then(|b| a.add(&b)));
            if !mixed.map(|m| m.is_zero()).unwrap_or(false) {
                out.push(Violation {
                    p,
                    q,
                    identity: ViolationKind::Anticommute,
                });
            }
        }
        out
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidComplex(violations))
        }
    }

    /// The rank-one elementary complex of the given shape: all components
    /// one dimensional, all drawn maps `+1`, except that in a square the
    /// `∂₁` out of the top-left corner is `-1` (the sign anticommutation
    /// forces).
    pub fn elementary(shape: Shape, field: FieldSpec) -> Self {
        let mut a = DoubleComplex::new(field);
        let one = Matrix::identity(field, 1);
        for &(p, q) in shape.point_set().iter() {
            a.set_dim(p, q, 1);
        }
        match shape {
            Shape::Square { p, q } => {
                a.set_d1(p - 1, q - 1, one.clone());
                a.set_d2(p - 1, q - 1, one.clone());
                a.set_d2(p, q - 1, one.clone());
                a.set_d1(p - 1, q, one.neg());
            }
            _ => {
                let set = shape.point_set();
                for &(p, q) in &set {
                    if set.contains(&(p + 1, q)) {
                        a.set_d1(p, q, one.clone());
                    }
                    if set.contains(&(p, q + 1)) {
                        a.set_d2(p, q, one.clone());
                    }
                }
            }
        }
        a
    }

    pub fn direct_sum(&self, other: &DoubleComplex) -> Result<DoubleComplex> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        let mut out = DoubleComplex::new(self.field);
        let keys: std::collections::BTreeSet<_> =
            self.dims.keys().chain(other.dims.keys()).copied().collect();
        for &(p, q) in &keys {
            out.set_dim(p, q, self.dim(p, q) + other.dim(p, q));
        }
        for &(p, q) in &keys {
            out.set_d1(
                p,
                q,
                block_diag(self.field, &self.d1(p, q), &other.d1(p, q)),
            );
            out.set_d2(
                p,
                q,
                block_diag(self.field, &self.d2(p, q), &other.d2(p, q)),
            );
        }
        Ok(out)
    }

    /// Tensor product with the Koszul sign on the total degree of the left
    /// factor: `∂(a⊗b) = ∂a⊗b + (-1)^{|a|} a⊗∂b`.
    pub fn tensor(&self, other: &DoubleComplex) -> Result<DoubleComplex> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        let f = self.field;
        let mut out = DoubleComplex::new(f);
        // Layout of (A⊗B)^{p,q}: blocks (p1,q1)⊗(p-p1,q-q1) ordered by
        // (p1,q1); within a block, a-index major.
        let mut layout: BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>> = BTreeMap::new();
        for (&(p1, q1), &da) in &self.dims {
            for (&(p2, q2), &db) in &other.dims {
                let entry = layout.entry((p1 + p2, q1 + q2)).or_default();
                entry.push(((p1, q1), (p2, q2), da * db));
            }
        }
        let offsets =
            |blocks: &Vec<(Bidegree, Bidegree, usize)>| -> BTreeMap<(Bidegree, Bidegree), usize> {
                let mut map = BTreeMap::new();
                let mut off = 0;
                for &(a, b, d) in blocks {
                    map.insert((a, b), off);
                    off += d;
                }
                map
            };
        for (&(p, q), blocks) in &layout {
            out.set_dim(p, q, blocks.iter().map(|&(_, _, d)| d).sum());
        }
        for (&(p, q), blocks) in &layout {
            let src_off = offsets(blocks);
            let src_dim = out.dim(p, q);
            for (target, horizontal) in [((p + 1, q), true), ((p, q + 1), false)] {
                let Some(tblocks) = layout.get(&target) else {
                    continue;
                };
                let tgt_off = offsets(tblocks);
                let tgt_dim = out.dim(target.0, target.1);
                let mut m = Matrix::zero(f, tgt_dim, src_dim);
                for &((p1, q1), (p2, q2), _) in blocks {
                    let da = self.dim(p1, q1);
                    let db = other.dim(p2, q2);
                    let base = src_off[&((p1, q1), (p2, q2))];
                    // ∂a ⊗ b part.
                    let left = if horizontal {
                        self.d1(p1, q1)
                    } else {
                        self.d2(p1, q1)
                    };
                    let lt = if horizontal {
                        ((p1 + 1, q1), (p2, q2))
                    } else {
                        ((p1, q1 + 1), (p2, q2))
                    };
                    if let Some(&tbase) = tgt_off.get(&lt) {
                        for r in 0..left.rows() {
                            for c in 0..da {
                                let v = left.at(r, c);
                                if v.is_zero() {
                                    continue;
                                }
                                for j in 0..db {
                                    let row = tbase + r * db + j;
                                    let col = base + c * db + j;
                                    *m.at_mut(row, col) = m.at(row, col).add(v);
                                }
                            }
                        }
                    }
                    // (-1)^{|a|} a ⊗ ∂b part.
                    let sign = if (p1 + q1) % 2 == 0 { 1 } else { -1 };
                    let right = if horizontal {
                        other.d1(p2, q2)
                    } else {
                        other.d2(p2, q2)
                    };
                    let rt = if horizontal {
                        ((p1, q1), (p2 + 1, q2))
                    } else {
                        ((p1, q1), (p2, q2 + 1))
                    };
                    if let Some(&tbase) = tgt_off.get(&rt) {
                        let dbt = right.rows();
                        for i in 0..da {
                            for r in 0..dbt {
                                for c in 0..db {
                                    let v = right.at(r, c);
                                    if v.is_zero() {
                                        continue;
                                    }
                                    let signed = if sign == 1 { v.clone() } else { v.neg() };
                                    let row = tbase + i * dbt + r;
                                    let col = base + i * db + c;
                                    *m.at_mut(row, col) = m.at(row, col).add(&signed);
                                }
                            }
                        }
                    }
                }
                if horizontal {
                    out.set_d1(p, q, m);
                } else {
                    out.set_d2(p, q, m);
                }
            }
        }
        Ok(out)
    }

    /// The dual complex reflected at the antidiagonal `p + q = n`:
    /// `(DA)^{p,q} = (A^{n-p,n-q})^∨` with
    /// `∂₁^∨ φ = (-1)^{p+q+1} φ∘∂₁` and likewise for `∂₂`.
    pub fn dual(&self, n: i32) -> DoubleComplex {
        let mut out = DoubleComplex::new(self.field);
        for (&(p, q), &d) in &self.dims {
            out.set_dim(n - p, n - q, d);
        }
        for (p, q) in out.dims.keys().copied().collect::<Vec<_>>() {
            let sign = if (p + q + 1) % 2 == 0 { 1 } else { -1 };
            let m1 = self.d1(n - p - 1, n - q).transpose();
            out.set_d1(p, q, if sign == 1 { m1 } else { m1.neg() });
            let m2 = self.d2(n - p, n - q - 1).transpose();
            out.set_d2(p, q, if sign == 1 { m2 } else { m2.neg() });
        }
        out
    }

    /// Shift by `(i, i)`: `A[i]^{p,q} = A^{p-i,q-i}` with the same matrices.
    pub fn shift(&self, i: i32) -> DoubleComplex {
        let mut out = DoubleComplex::new(self.field);
        for (&(p, q), &d) in &self.dims {
            out.set_dim(p + i, q + i, d);
        }
        for (&(p, q), m) in &self.d1 {
            out.set_d1(p + i, q + i, m.clone());
        }
        for (&(p, q), m) in &self.d2 {
            out.set_d2(p + i, q + i, m.clone());
        }
        out
    }

    /// Swaps the two gradings and the two differentials.
    pub fn transpose_pq(&self) -> DoubleComplex {
        let mut out = DoubleComplex::new(self.field);
        for (&(p, q), &d) in &self.dims {
            out.set_dim(q, p, d);
        }
        for (&(p, q), m) in &self.d1 {
            out.set_d2(q, p, m.clone());
        }
        for (&(p, q), m) in &self.d2 {
            out.set_d1(q, p, m.clone());
        }
        out
    }

    /// Conjugate complex: transpose of the gradings with entrywise Gaussian
    /// conjugation (identity over ℚ and 𝔽_p).
    pub fn conjugate(&self) -> DoubleComplex {
        let mut out = DoubleComplex::new(self.field);
        for (&(p, q), &d) in &self.dims {
            out.set_dim(q, p, d);
        }
        for (&(p, q), m) in &self.d1 {
            out.set_d2(q, p, m.conjugate());
        }
        for (&(p, q), m) in &self.d2 {
            out.set_d1(q, p, m.conjugate());
        }
        out
    }
}

fn block_diag(field: FieldSpec, a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zero(field, a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            *m.at_mut(r, c) = a.at(r, c).clone();
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            *m.at_mut(a.rows() + r, a.cols() + c) = b.at(r, c).clone();
        }
    }
    m
}

/// A bidegree-preserving map of double complexes commuting with both
/// differentials.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: DoubleComplex,
    pub target: DoubleComplex,
    maps: BTreeMap<Bidegree, Matrix>,
}

impl Morphism {
    pub fn new(
        source: DoubleComplex,
        target: DoubleComplex,
        maps: BTreeMap<Bidegree, Matrix>,
    ) -> Self {
        Morphism {
            source,
            target,
            maps,
        }
    }

    pub fn identity(a: &DoubleComplex) -> Self {
        let maps = a
            .support()
            .map(|((p, q), d)| ((p, q), Matrix::identity(a.field(), d)))
            .collect();
        Morphism {
            source: a.clone(),
            target: a.clone(),
            maps,
        }
    }

    pub fn zero(source: &DoubleComplex, target: &DoubleComplex) -> Self {
        Morphism {
            source: source.clone(),
            target: target.clone(),
            maps: BTreeMap::new(),
        }
    }

    /// The component at `(p, q)` (zero matrix if absent).
    pub fn map(&self, p: i32, q: i32) -> Matrix {
        match self.maps.get(&(p, q)) {
            Some(m) => m.clone(),
            None => Matrix::zero(
                self.source.field(),
                self.target.dim(p, q),
                self.source.dim(p, q),
            ),
        }
    }

    pub fn set_map(&mut self, p: i32, q: i32, m: Matrix) {
        if m.is_zero() {
            self.maps.remove(&(p, q));
        } else {
            self.maps.insert((p, q), m);
        }
    }

    /// Checks fields, component shapes, and commutation with both
    /// differentials.
    pub fn validate(&self) -> Result<()> {
        if self.source.field() != self.target.field() {
            return Err(Error::FieldMismatch(
                "morphism endpoints over different fields".into(),
            ));
        }
        for (&(p, q), m) in &self.maps {
            let expected = (self.target.dim(p, q), self.source.dim(p, q));
            if (m.rows(), m.cols()) != expected {
                return Err(Error::InvalidMorphism(format!(
                    "component at ({p}, {q}) should be {}x{}, got {}x{}",
                    expected.0,
                    expected.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let keys: std::collections::BTreeSet<Bidegree> = self
            .source
            .support()
            .map(|(k, _)| k)
            .chain(self.target.support().map(|(k, _)| k))
            .collect();
        for &(p, q) in &keys {
            let f_here = self.map(p, q);
            let lhs1 = self.target.d1(p, q).mul(&f_here)?;
            let rhs1 = self.map(p + 1, q).mul(&self.source.d1(p, q))?;
            if lhs1 != rhs1 {
                return Err(Error::InvalidMorphism(format!(
                    "does not commute with ∂1 at ({p}, {q})"
                )));
            }
            let lhs2 = self.target.d2(p, q).mul(&f_here)?;
            let rhs2 = self.map(p, q + 1).mul(&self.source.d2(p, q))?;
            if lhs2 != rhs2 {
                return Err(Error::InvalidMorphism(format!(
                    "does not commute with ∂2 at ({p}, {q})"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn shape(s: &str) -> Shape {
        s.parse().unwrap()
    }

    #[test]
    fn elementary_complexes_validate() {
        for s in [
            "S^{1,1}",
            "S_1^{0,0}",
            "S_3^{2,2}",
            "S_{1,2}^{0,1}",
            "S_{2,1}^{0,0}",
            "S_2^{0,0}",
        ] {
            let a = DoubleComplex::elementary(shape(s), Q);
            assert_eq!(a.validate(), vec![], "elementary {s}");
            assert_eq!(a.total_dim(), shape(s).len());
        }
        let empty = DoubleComplex::new(Q);
        assert_eq!(empty.validate(), vec![]);
    }

    #[test]
    fn square_with_wrong_sign_fails_anticommutation() {
        let mut a = DoubleComplex::elementary(shape("S^{1,1}"), Q);
        // Overwrite the forced -Id on the top ∂1 with +Id.
        a.set_d1(0, 1, Matrix::identity(Q, 1));
        let violations = a.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].identity, ViolationKind::Anticommute);
        // Reported at the bottom-left corner, the source of the composite.
        assert_eq!((violations[0].p, violations[0].q), (0, 0));
    }

    #[test]
    fn direct_sum_concatenates() {
        let dot = DoubleComplex::elementary(Shape::dot(0, 0), Q);
        let two = dot.direct_sum(&dot).unwrap();
        assert_eq!(two.dim(0, 0), 2);
        assert_eq!(two.validate(), vec![]);

        let square = DoubleComplex::elementary(shape("S^{1,1}"), Q);
        let mix = square.direct_sum(&dot).unwrap();
        assert_eq!(mix.validate(), vec![]);
        assert_eq!(mix.total_dim(), 5);

        let empty = DoubleComplex::new(Q);
        assert_eq!(square.direct_sum(&empty).unwrap(), square);
    }

    #[test]
    fn tensor_unit_and_dims() {
        let unit = DoubleComplex::elementary(Shape::dot(0, 0), Q);
        let z = DoubleComplex::elementary(shape("S_{1,2}^{0,1}"), Q);
        let t = unit.tensor(&z).unwrap();
        assert_eq!(t.validate(), vec![]);
        for ((p, q), d) in z.support() {
            assert_eq!(t.dim(p, q), d);
            assert_eq!(t.d1(p, q), z.d1(p, q));
            assert_eq!(t.d2(p, q), z.d2(p, q));
        }

        let dot_pq = DoubleComplex::elementary(Shape::dot(1, 2), Q);
        let dot_rs = DoubleComplex::elementary(Shape::dot(2, 1), Q);
        let prod = dot_pq.tensor(&dot_rs).unwrap();
        assert_eq!(prod.dim(3, 3), 1);
        assert_eq!(prod.total_dim(), 1);

        let sq = DoubleComplex::elementary(shape("S^{1,1}"), Q);
        let tt = sq.tensor(&sq).unwrap();
        assert_eq!(tt.validate(), vec![]);
        assert_eq!(tt.dim(1, 1), 4);
        assert_eq!(tt.total_dim(), 16);
    }

    #[test]
    fn tensor_dimension_convolution() {
        let a = DoubleComplex::elementary(shape("S_1^{0,0}"), Q);
        let b = DoubleComplex::elementary(shape("S_{1,1}^{0,0}"), Q);
        let t = a.tensor(&b).unwrap();
        for ((p, q), d) in t.support() {
            let expected: usize = a
                .support()
                .map(|((p1, q1), d1)| d1 * b.dim(p - p1, q - q1))
                .sum();
            assert_eq!(d, expected, "dim at ({p},{q})");
        }
        assert_eq!(t.validate(), vec![]);
    }

    #[test]
    fn dual_reflects_and_validates() {
        let dot = DoubleComplex::elementary(Shape::dot(0, 0), Q);
        assert_eq!(dot.dual(2).dim(2, 2), 1);

        for s in ["S_{1,1}^{0,0}", "S_1^{0,0}", "S^{1,1}", "S_{2,2}^{1,0}"] {
            let a = DoubleComplex::elementary(shape(s), Q);
            let d = a.dual(1);
            assert_eq!(d.validate(), vec![], "dual of {s}");
            // Dims reflect.
            for ((p, q), dim) in a.support() {
                assert_eq!(d.dim(1 - p, 1 - q), dim);
            }
            // Double dual restores the dimension table.
            let dd = d.dual(1);
            assert_eq!(
                dd.support().collect::<Vec<_>>(),
                a.support().collect::<Vec<_>>()
            );
        }

        // Support of dual(Even{1,1,0,0}, 1) is the reflection {(1,1),(0,1)}.
        let e = DoubleComplex::elementary(shape("S_{1,1}^{0,0}"), Q);
        let d = e.dual(1);
        assert_eq!(d.dim(1, 1), 1);
        assert_eq!(d.dim(0, 1), 1);
        assert_eq!(d.total_dim(), 2);
    }

    #[test]
    fn transforms_validate_and_involute() {
        let z = DoubleComplex::elementary(shape("S_{1,2}^{0,1}"), FieldSpec::GaussianRationals);
        let shifted = z.shift(1);
        assert_eq!(shifted.validate(), vec![]);
        assert_eq!(shifted.dim(1, 2), 1);

        let t = z.transpose_pq();
        assert_eq!(t.validate(), vec![]);
        assert_eq!(t.dim(1, 0), 1);

        let c = z.conjugate();
        assert_eq!(c.validate(), vec![]);
        assert_eq!(c.conjugate(), z);

        // transpose_pq of a vertical domino is a horizontal one.
        let v = DoubleComplex::elementary(shape("S_{2,1}^{0,0}"), Q);
        let h = v.transpose_pq();
        assert_eq!(h.dim(0, 0), 1);
        assert_eq!(h.dim(1, 0), 1);
        assert!(!h.d1(0, 0).is_zero());
    }

    #[test]
    fn shift_of_dot() {
        let dot = DoubleComplex::elementary(Shape::dot(0, 0), Q);
        assert_eq!(dot.shift(1).dim(1, 1), 1);
    }

    #[test]
    fn morphism_validation() {
        let a = DoubleComplex::elementary(shape("S_1^{0,0}"), Q);
        assert!(Morphism::identity(&a).validate().is_ok());
        assert!(Morphism::zero(&a, &a).validate().is_ok());

        // Killing the target of a nonzero differential breaks commutation.
        let domino = DoubleComplex::elementary(shape("S_{2,1}^{0,0}"), Q);
        let mut bad = Morphism::zero(&domino, &domino);
        bad.set_map(0, 0, Matrix::identity(Q, 1));
        assert!(bad.validate().is_err());

        // Wrong component shape is caught before commutation checks.
        let mut misshapen = Morphism::zero(&a, &a);
        misshapen.set_map(0, 1, Matrix::identity(Q, 2));
        assert!(misshapen.validate().is_err());
    }
}
