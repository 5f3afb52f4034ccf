//! The complete isomorphism invariant of a bounded double complex: the
//! multiplicity of every square and zigzag shape in its decomposition.
//!
//! Multiplicities are never obtained by explicitly splitting the complex.
//! Squares are counted by `dim im(∂₁∘∂₂)` per bidegree, even zigzags by the
//! ranks of the spectral-sequence differentials, odd zigzags by the refined
//! Betti numbers; [`reconcile`] then certifies instance by instance that
//! these counts account for every dimension of the complex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::complex::{Bidegree, DoubleComplex};
use crate::shape::{PageBound, Shape, SsSide};
use crate::spectral;
use crate::Result;

/// A finitely supported map `Shape → ℕ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityVector {
    counts: BTreeMap<Shape, usize>,
}

impl MultiplicityVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (Shape, usize)>) -> Self {
        let mut v = Self::new();
        for (s, c) in counts {
            v.add(s, c);
        }
        v
    }

    pub fn add(&mut self, shape: Shape, count: usize) {
        if count > 0 {
            *self.counts.entry(shape).or_insert(0) += count;
        }
    }

    pub fn get(&self, shape: &Shape) -> usize {
        self.counts.get(shape).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Shape, usize)> {
        self.counts.iter().map(|(s, &c)| (s, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn total_count(&self) -> usize {
        self.counts.values().sum()
    }

    /// Total dimension of the complex the vector describes.
    pub fn total_dim(&self) -> usize {
        self.iter().map(|(s, c)| s.len() * c).sum()
    }

    pub fn plus(&self, other: &MultiplicityVector) -> MultiplicityVector {
        let mut out = self.clone();
        for (s, c) in other.iter() {
            out.add(*s, c);
        }
        out
    }

    /// Applies a shape transform to every entry.
    pub fn map_shapes(&self, f: impl Fn(&Shape) -> Shape) -> MultiplicityVector {
        MultiplicityVector::from_counts(self.iter().map(|(s, c)| (f(s), c)))
    }

    pub fn shift(&self, i: i32) -> MultiplicityVector {
        self.map_shapes(|s| s.shift(i))
    }

    pub fn transpose(&self) -> MultiplicityVector {
        self.map_shapes(|s| s.transpose())
    }

    pub fn reflect(&self, n: i32) -> MultiplicityVector {
        self.map_shapes(|s| s.reflect(n))
    }

    /// Only the zigzag entries.
    pub fn zigzag_part(&self) -> MultiplicityVector {
        MultiplicityVector::from_counts(
            self.iter()
                .filter(|(s, _)| s.is_zigzag())
                .map(|(s, c)| (*s, c)),
        )
    }

    /// Builds the canonical elementary model `⊕ C(S)^{mult(S)}`.
    pub fn realization(&self, field: crate::field::FieldSpec) -> DoubleComplex {
        let mut a = DoubleComplex::new(field);
        for (s, c) in self.iter() {
            let e = DoubleComplex::elementary(*s, field);
            for _ in 0..c {
                a = a.direct_sum(&e).expect("same field");
            }
        }
        a
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            if c == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{c}*{s}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl FromIterator<(Shape, usize)> for MultiplicityVector {
    fn from_iter<T: IntoIterator<Item = (Shape, usize)>>(iter: T) -> Self {
        Self::from_counts(iter)
    }
}

/// Computes the full multiplicity vector of a valid complex.
pub fn multiplicities(a: &DoubleComplex) -> Result<MultiplicityVector> {
    a.ensure_valid()?;
    let mut m = MultiplicityVector::new();

    // Squares: dim im (∂₁∘∂₂) landing in each bidegree.
    for ((p, q), _) in a.support() {
        let count = a.d1(p - 1, q).mul(&a.d2(p - 1, q - 1))?.rank();
        m.add(Shape::Square { p, q }, count);
    }

    // Even zigzags: ranks of the page differentials on both sides. The
    // differential d_r moves r columns (side 1) or r rows (side 2), so r
    // beyond the support extent contributes nothing.
    if let Some((min_p, max_p, min_q, max_q)) = a.bounding_box() {
        for side in [SsSide::One, SsSide::Two] {
            let extent = match side {
                SsSide::One => max_p - min_p,
                SsSide::Two => max_q - min_q,
            };
            for r in 1..=extent.max(0) as u32 {
                let page = spectral::ss_page(a, side, r)?;
                for (&(p, q), diff) in &page.differentials {
                    m.add(Shape::Even { side, r, p, q }, diff.rank());
                }
            }
        }
    }

    // Odd zigzags: refined Betti numbers.
    for (d, table) in spectral::refined_betti(a)? {
        for ((p, q), count) in table {
            m.add(Shape::Odd { d, p, q }, count);
        }
    }

    Ok(m)
}

/// Residuals `dim A^{p,q} - Σ_S mult(S)·[(p,q) ∈ S]` per bidegree; the
/// bookkeeping is consistent iff all residuals vanish.
pub fn reconcile(a: &DoubleComplex, m: &MultiplicityVector) -> BTreeMap<Bidegree, i64> {
    let mut residual: BTreeMap<Bidegree, i64> = BTreeMap::new();
    for ((p, q), dim) in a.support() {
        residual.insert((p, q), dim as i64);
    }
    for (s, c) in m.iter() {
        for pt in s.point_set() {
            *residual.entry(pt).or_insert(0) -= c as i64;
        }
    }
    residual.retain(|_, v| *v != 0);
    residual
}

/// Cohomology tables computed purely combinatorially from a zigzag
/// multiset: Bott-Chern and Aeppli count corners, the Dolbeault theories
/// count row/column-isolated points, Betti numbers count odd zigzags per
/// degree. Squares contribute nothing anywhere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZigzagCohomology {
    pub bott_chern: BTreeMap<Bidegree, usize>,
    pub aeppli: BTreeMap<Bidegree, usize>,
    pub dolbeault1: BTreeMap<Bidegree, usize>,
    pub dolbeault2: BTreeMap<Bidegree, usize>,
    pub betti: BTreeMap<i32, usize>,
}

pub fn cohomology_from_zigzags(m: &MultiplicityVector) -> ZigzagCohomology {
    let mut out = ZigzagCohomology::default();
    for (s, c) in m.iter() {
        if !s.is_zigzag() {
            continue;
        }
        let set = s.point_set();
        for &(p, q) in &set {
            if !set.contains(&(p + 1, q)) && !set.contains(&(p, q + 1)) {
                *out.bott_chern.entry((p, q)).or_insert(0) += c;
            }
            if !set.contains(&(p - 1, q)) && !set.contains(&(p, q - 1)) {
                *out.aeppli.entry((p, q)).or_insert(0) += c;
            }
            if !set.contains(&(p - 1, q)) && !set.contains(&(p + 1, q)) {
                *out.dolbeault1.entry((p, q)).or_insert(0) += c;
            }
            if !set.contains(&(p, q - 1)) && !set.contains(&(p, q + 1)) {
                *out.dolbeault2.entry((p, q)).or_insert(0) += c;
            }
        }
        if let Shape::Odd { d, .. } = s {
            *out.betti.entry(*d).or_insert(0) += c;
        }
    }
    out
}

/// Are two multiplicity vectors equal up to `E_r`-isomorphism, i.e. equal
/// on all odd zigzags and all even zigzags of length `≥ 2r`? Squares are
/// always ignored; at `r = ∞` only odd zigzags matter.
pub fn er_equivalent(a: &MultiplicityVector, b: &MultiplicityVector, r: PageBound) -> bool {
    let relevant = |v: &MultiplicityVector| -> BTreeMap<Shape, usize> {
        v.iter()
            .filter(|(s, _)| match (s, r) {
                (Shape::Odd { .. }, _) => true,
                (Shape::Even { .. }, PageBound::Infinite) => false,
                (Shape::Even { r: len, .. }, PageBound::Finite(bound)) => *len >= bound,
                (Shape::Square { .. }, _) => false,
            })
            .map(|(s, c)| (*s, c))
            .collect()
    };
    relevant(a) == relevant(b)
}

/// Non-∂₁∂₂ degrees computed shape by shape: an odd zigzag of length
/// `2m+1 > 1` contributes `m-1` in its main degree and `m` in the adjacent
/// one; an even zigzag of length `2l` contributes `l` to the two degrees it
/// spans; squares and dots contribute nothing.
pub fn delta_from_zigzags(m: &MultiplicityVector) -> BTreeMap<i32, i64> {
    let mut out = BTreeMap::new();
    for (s, c) in m.iter() {
        let c = c as i64;
        match *s {
            Shape::Odd { d, p, q } => {
                let m_abs = (p + q - d).abs() as i64;
                if m_abs != 0 {
                    let sgn = (p + q - d).signum();
                    *out.entry(d).or_insert(0) += (m_abs - 1) * c;
                    *out.entry(d - sgn).or_insert(0) += m_abs * c;
                }
            }
            Shape::Even { r, p, q, .. } => {
                *out.entry(p + q).or_insert(0) += r as i64 * c;
                *out.entry(p + q + 1).or_insert(0) += r as i64 * c;
            }
            Shape::Square { .. } => {}
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Necessary conditions for a zigzag multiset to come from a compact
/// complex `n`-fold. Square entries are ignored: the input is interpreted
/// as an `E₁`-class. Returns the list of violated conditions.
pub fn realizability_necessary(m: &MultiplicityVector, n: i32) -> Vec<String> {
    let z = m.zigzag_part();
    let mut violations = Vec::new();

    let out_of_range: BTreeSet<Shape> = z
        .iter()
        .filter(|(s, _)| {
            s.point_set()
                .iter()
                .any(|&(p, q)| p < 0 || p > n || q < 0 || q > n)
        })
        .map(|(s, _)| *s)
        .collect();
    for s in out_of_range {
        violations.push(format!("{s} has support outside [0,{n}]²"));
    }

    let corners = [(0, 0), (n, 0), (0, n), (n, n)];
    for (s, _) in z.iter() {
        if s.is_dot() {
            continue;
        }
        let set = s.point_set();
        for c in corners {
            if set.contains(&c) {
                violations.push(format!(
                    "{s} is a non-dot zigzag through the corner ({}, {})",
                    c.0, c.1
                ));
            }
        }
    }

    if z != z.transpose() {
        violations.push("not invariant under transposition (no real structure)".into());
    }
    if z != z.reflect(n) {
        violations.push(format!(
            "not invariant under reflection at p+q={n} (no Serre duality)"
        ));
    }
    if z.get(&Shape::dot(0, 0)) != z.get(&Shape::dot(n, n)) {
        violations.push(format!(
            "multiplicity of the dot at (0,0) differs from the dot at ({n},{n})"
        ));
    }
    violations
}

/// The sub-multiset of bimeromorphically invariant multiplicities: zigzags
/// meeting the boundary frame `p ∈ {0,n}` or `q ∈ {0,n}`, plus non-dot
/// zigzags meeting `(1,1)`, `(1,n-1)`, `(n-1,1)` or `(n-1,n-1)`.
pub fn bimeromorphic_invariants(m: &MultiplicityVector, n: i32) -> MultiplicityVector {
    let interior = [(1, 1), (1, n - 1), (n - 1, 1), (n - 1, n - 1)];
    MultiplicityVector::from_counts(m.iter().filter_map(|(s, c)| {
        if !s.is_zigzag() {
            return None;
        }
        let set = s.point_set();
        let frame = set
            .iter()
            .any(|&(p, q)| p == 0 || p == n || q == 0 || q == n);
        let corner_region = !s.is_dot() && interior.iter().any(|pt| set.contains(pt));
        (frame || corner_region).then_some((*s, c))
    }))
}
