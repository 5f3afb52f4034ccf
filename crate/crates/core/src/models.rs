//! Builders for the standard complex-geometric model complexes: Dolbeault
//! models of nilmanifolds from Lie-algebra data, Hodge-diamond complexes,
//! Hopf and Calabi-Eckmann models, and the blowup / projective-bundle class
//! composers acting on multiplicity vectors.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::{DoubleComplex, Morphism};
use crate::exterior::{bits, masks_by_bidegree, wedge};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::multiplicity::MultiplicityVector;
use crate::shape::Shape;
use crate::subspace::kernel;
use crate::{Error, Result};

/// A rational nilpotent Lie algebra with a compatible almost complex
/// structure: the linear data from which an invariant Dolbeault double
/// complex is built.
#[derive(Clone, Debug)]
pub struct LieData {
    dim: usize,
    /// `brackets[(i, j)] = [e_i, e_j]` for `i < j`, as sparse `(k, c)`
    /// pairs; all indices 0-based.
    brackets: BTreeMap<(usize, usize), Vec<(usize, BigRational)>>,
    /// Matrix of `J` in the chosen basis, columns are images.
    j: Matrix,
}

impl LieData {
    /// Builds Lie data from 1-based sparse structure constants
    /// `[e_i, e_j] = Σ c·e_k` (given for `i < j`) and the matrix of `J`.
    pub fn new(
        dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize, BigRational)>,
        j_rows: Vec<Vec<BigRational>>,
    ) -> Result<LieData> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidLieData(format!(
                "dimension must be a positive even number, got {dim}"
            )));
        }
        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, BigRational)>> = BTreeMap::new();
        for (i, j, k, c) in triples {
            if i == 0 || j == 0 || k == 0 || i > dim || j > dim || k > dim {
                return Err(Error::InvalidLieData(format!(
                    "bracket indices ({i}, {j}, {k}) out of range 1..={dim}"
                )));
            }
            if i == j {
                return Err(Error::InvalidLieData(format!(
                    "[e_{i}, e_{i}] must be zero"
                )));
            }
            let (a, b, c) = if i < j {
                (i - 1, j - 1, c)
            } else {
                (j - 1, i - 1, -c)
            };
            brackets.entry((a, b)).or_default().push((k - 1, c));
        }
        if j_rows.len() != dim || j_rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidLieData(format!(
                "J must be a {dim}x{dim} matrix"
            )));
        }
        let j = Matrix::from_rows(
            FieldSpec::Rationals,
            j_rows
                .into_iter()
                .map(|r| r.into_iter().map(Scalar::Rational).collect())
                .collect(),
        )?;
        let data = LieData { dim, brackets, j };
        data.validate()?;
        Ok(data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_i, e_j]` as a coefficient vector, any `i`, `j` (0-based).
    fn bracket_basis(&self, i: usize, j: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim];
        let (key, sign) = if i < j { ((i, j), 1) } else { ((j, i), -1) };
        if i == j {
            return v;
        }
        if let Some(terms) = self.brackets.get(&key) {
            for (k, c) in terms {
                let c = if sign == 1 { c.clone() } else { -c.clone() };
                v[*k] += c;
            }
        }
        v
    }

    /// Bilinear extension of the bracket to coefficient vectors.
    fn bracket(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                for (k, c) in self.bracket_basis(i, j).into_iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += xi * yj * c;
                    }
                }
            }
        }
        out
    }

    fn apply_j(&self, x: &[BigRational]) -> Vec<BigRational> {
        let col: Vec<Scalar> = x.iter().cloned().map(Scalar::Rational).collect();
        self.j
            .apply(&col)
            .into_iter()
            .map(|s| match s {
                Scalar::Rational(r) => r,
                _ => unreachable!("J is rational"),
            })
            .collect()
    }

    fn basis_vector(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim];
        v[i] = BigRational::from_integer(1.into());
        v
    }

    /// Checks `J² = -Id`, the Jacobi identity and the integrability
    /// (Nijenhuis) condition on basis pairs.
    pub fn validate(&self) -> Result<()> {
        let id = Matrix::identity(FieldSpec::Rationals, self.dim);
        if self.j.mul(&self.j)? != id.neg() {
            return Err(Error::InvalidLieData("J² ≠ -Id".into()));
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for l in 0..self.dim {
                    let ei = self.basis_vector(i);
                    let ej = self.basis_vector(j);
                    let el = self.basis_vector(l);
                    let mut acc = self.bracket(&self.bracket(&ei, &ej), &el);
                    for (t, v) in self
                        .bracket(&self.bracket(&ej, &el), &ei)
                        .into_iter()
                        .enumerate()
                    {
                        acc[t] += v;
                    }
                    for (t, v) in self
                        .bracket(&self.bracket(&el, &ei), &ej)
                        .into_iter()
                        .enumerate()
                    {
                        acc[t] += v;
                    }
                    if acc.iter().any(|v| !v.is_zero()) {
                        return Err(Error::InvalidLieData(format!(
                            "Jacobi identity fails on (e_{}, e_{}, e_{})",
                            i + 1,
                            j + 1,
                            l + 1
                        )));
                    }
                }
            }
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let x = self.basis_vector(i);
                let y = self.basis_vector(j);
                let jx = self.apply_j(&x);
                let jy = self.apply_j(&y);
                let lhs = self.bracket(&jx, &jy);
                let mut rhs = self.apply_j(&self.bracket(&jx, &y));
                for (t, v) in self.apply_j(&self.bracket(&x, &jy)).into_iter().enumerate() {
                    rhs[t] += v;
                }
                for (t, v) in self.bracket(&x, &y).into_iter().enumerate() {
                    rhs[t] += v;
                }
                if lhs != rhs {
                    return Err(Error::InvalidLieData(format!(
                        "almost complex structure is not integrable on (e_{}, e_{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The 6-dimensional nilpotent Lie algebra with brackets
    /// `[e₁,e₂] = e₄`, `[e₁,e₃] = [e₂,e₄] = -e₆` and the complex structure
    /// `Je₁ = e₂`, `Je₃ = e₄`, `Je₅ = e₆`.
    pub fn h9() -> LieData {
        let one = BigRational::from_integer(1.into());
        let triples = vec![
            (1, 2, 4, one.clone()),
            (1, 3, 6, -one.clone()),
            (2, 4, 6, -one.clone()),
        ];
        let mut j = vec![vec![BigRational::zero(); 6]; 6];
        for a in 0..3 {
            j[2 * a + 1][2 * a] = one.clone();
            j[2 * a][2 * a + 1] = -one.clone();
        }
        LieData::new(6, triples, j).expect("h9 data is consistent")
    }
}

/// Expansion of `d` on the complexified dual, in a fixed `(1,0)/(0,1)`
/// eigenbasis. Used to build both the complex and multiplicative
/// endomorphisms of it.
struct ExteriorModel {
    n: usize,
    /// `dg[γ][(α, β)] = coefficient of g_α ∧ g_β in d g_γ`, keys `α < β`.
    dg: Vec<BTreeMap<(u32, u32), Scalar>>,
    /// Eigenbasis rows: `Ω[γ]` expresses `g_γ` in the real dual basis.
    #[cfg_attr(not(test), allow(dead_code))]
    omega: Matrix,
}

impl ExteriorModel {
    fn new(data: &LieData) -> Result<Self> {
        let f = FieldSpec::GaussianRationals;
        let n = data.dim / 2;
        let embed = |r: &BigRational| Scalar::Gaussian {
            re: r.clone(),
            im: BigRational::zero(),
        };

        // (1,0)-forms: row vectors ω with ω∘J = -i·ω, i.e. the kernel of
        // Jᵀ + i·Id over ℚ(i). The canonical echelon basis reproduces the
        // pattern ω^a = e^{2a-1} - i·e^{2a} when J pairs consecutive
        // vectors.
        let jt_plus_i = {
            let mut m = Matrix::from_fn(f, data.dim, data.dim, |r, c| {
                embed(match data.j.at(c, r) {
                    Scalar::Rational(x) => x,
                    _ => unreachable!(),
                })
            });
            for k in 0..data.dim {
                *m.at_mut(k, k) = m.at(k, k).add(&Scalar::i());
            }
            m
        };
        let eigen = kernel(&jt_plus_i);
        if eigen.dim() != n {
            return Err(Error::InvalidLieData(format!(
                "(1,0)-eigenspace has dimension {}, expected {n}",
                eigen.dim()
            )));
        }
        let omega = eigen.basis().clone();
        let omega_bar = omega.conjugate();
        let full = omega.vstack(&omega_bar)?;
        let w = full.inverse().map_err(|_| {
            Error::InvalidLieData("eigenbasis does not span the complexified dual".into())
        })?;

        // d g_γ = Σ_{i<j} B_γ(i,j) e^i∧e^j with B_γ(i,j) = -g_γ([e_i,e_j]),
        // then rewritten in the g-basis via e^i = Σ_α W[i][α] g_α.
        let mut dg = Vec::with_capacity(data.dim);
        for gamma in 0..data.dim {
            let mut coeffs: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
            for i in 0..data.dim {
                for j in (i + 1)..data.dim {
                    let bracket = data.bracket_basis(i, j);
                    let mut b = f.zero();
                    for (k, c) in bracket.iter().enumerate() {
                        if !c.is_zero() {
                            b = b.add(&full.at(gamma, k).mul(&embed(c)));
                        }
                    }
                    let b = b.neg();
                    if b.is_zero() {
                        continue;
                    }
                    for alpha in 0..data.dim {
                        for beta in (alpha + 1)..data.dim {
                            let term = w
                                .at(i, alpha)
                                .mul(w.at(j, beta))
                                .sub(&w.at(i, beta).mul(w.at(j, alpha)));
                            if term.is_zero() {
                                continue;
                            }
                            let key = (alpha as u32, beta as u32);
                            let acc = coeffs
                                .entry(key)
                                .or_insert_with(|| f.zero())
                                .add(&b.mul(&term));
                            coeffs.insert(key, acc);
                        }
                    }
                }
            }
            coeffs.retain(|_, v| !v.is_zero());
            dg.push(coeffs);
        }

        // Integrability at the form level: d of a (1,0)-form has no (0,2)
        // component and conversely.
        for (gamma, coeffs) in dg.iter().enumerate() {
            for &(alpha, beta) in coeffs.keys() {
                let a_bar = alpha as usize >= n;
                let b_bar = beta as usize >= n;
                let bad = if gamma < n {
                    a_bar && b_bar
                } else {
                    !a_bar && !b_bar
                };
                if bad {
                    return Err(Error::InvalidLieData(format!(
                        "d has a component outside bidegrees (1,0)+(0,1) on generator {gamma}"
                    )));
                }
            }
        }
        Ok(ExteriorModel { n, dg, omega })
    }

    fn bidegree_of(&self, mask: u32) -> (i32, i32) {
        let low = (mask & ((1 << self.n) - 1)).count_ones() as i32;
        let high = (mask >> self.n).count_ones() as i32;
        (low, high)
    }

    /// `d` of a basis monomial, as `(mask, coefficient)` terms.
    fn d_monomial(&self, mask: u32) -> Vec<(u32, Scalar)> {
        let f = FieldSpec::GaussianRationals;
        let mut acc: HashMap<u32, Scalar> = HashMap::new();
        for (pos, gamma) in bits(mask).enumerate() {
            let rest = mask & !(1 << gamma);
            let leading_sign = if pos % 2 == 0 { 1 } else { -1 };
            for (&(alpha, beta), c) in &self.dg[gamma as usize] {
                let pair = (1u32 << alpha) | (1u32 << beta);
                let Some((merge_sign, target)) = wedge(pair, rest) else {
                    continue;
                };
                let mut coeff = c.clone();
                if leading_sign * merge_sign < 0 {
                    coeff = coeff.neg();
                }
                let entry = acc.entry(target).or_insert_with(|| f.zero());
                *entry = entry.add(&coeff);
            }
        }
        let mut out: Vec<(u32, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|&(m, _)| m);
        out
    }
}

/// The invariant Dolbeault double complex of a nilmanifold model: the
/// exterior algebra on the complexified dual, bigraded by `(1,0)/(0,1)`
/// type, with `∂₁`/`∂₂` the two bidegree components of the
/// Chevalley-Eilenberg differential `dω(x, y) = -ω([x, y])`.
pub fn lie_complex(data: &LieData) -> Result<DoubleComplex> {
    data.validate()?;
    let f = FieldSpec::GaussianRationals;
    let model = ExteriorModel::new(data)?;
    let n = model.n as u32;

    let mut basis: BTreeMap<(i32, i32), Vec<u32>> = BTreeMap::new();
    let mut index: HashMap<u32, usize> = HashMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let masks = masks_by_bidegree(n, p, q);
            for (i, &m) in masks.iter().enumerate() {
                index.insert(m, i);
            }
            basis.insert((p as i32, q as i32), masks);
        }
    }

    let mut a = DoubleComplex::new(f);
    for (&(p, q), masks) in &basis {
        a.set_dim(p, q, masks.len());
    }
    for (&(p, q), masks) in &basis {
        let d1_dim = basis.get(&(p + 1, q)).map_or(0, Vec::len);
        let d2_dim = basis.get(&(p, q + 1)).map_or(0, Vec::len);
        let mut m1 = Matrix::zero(f, d1_dim, masks.len());
        let mut m2 = Matrix::zero(f, d2_dim, masks.len());
        for (col, &mask) in masks.iter().enumerate() {
            for (target, coeff) in model.d_monomial(mask) {
                let (tp, tq) = model.bidegree_of(target);
                let row = index[&target];
                if (tp, tq) == (p + 1, q) {
                    *m1.at_mut(row, col) = coeff;
                } else if (tp, tq) == (p, q + 1) {
                    *m2.at_mut(row, col) = coeff;
                } else {
                    return Err(Error::InvalidLieData(format!(
                        "stray differential component into bidegree ({tp}, {tq})"
                    )));
                }
            }
        }
        a.set_d1(p, q, m1);
        a.set_d2(p, q, m2);
    }
    a.ensure_valid()?;
    Ok(a)
}

/// Extends a generator-level substitution (rows of `p_matrix` express the
/// images of `g_0, …, g_{2n-1}` in the same basis) to a multiplicative
/// endomorphism of the exterior-algebra complex.
fn extend_multiplicatively(a: &DoubleComplex, n: u32, p_matrix: &Matrix) -> Result<Morphism> {
    let f = a.field();
    let mut basis: BTreeMap<(i32, i32), Vec<u32>> = BTreeMap::new();
    let mut index: HashMap<u32, usize> = HashMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let masks = masks_by_bidegree(n, p, q);
            for (i, &m) in masks.iter().enumerate() {
                index.insert(m, i);
            }
            basis.insert((p as i32, q as i32), masks);
        }
    }
    let mut morphism = Morphism::zero(a, a);
    for (&(p, q), masks) in &basis {
        let mut mat = Matrix::zero(f, masks.len(), masks.len());
        for (col, &mask) in masks.iter().enumerate() {
            // Expand the wedge of generator images, left to right.
            let mut terms: Vec<(u32, Scalar)> = vec![(0, f.one())];
            for gamma in bits(mask) {
                let mut next: HashMap<u32, Scalar> = HashMap::new();
                for (partial, coeff) in &terms {
                    for alpha in 0..(2 * n) {
                        let c = p_matrix.at(gamma as usize, alpha as usize);
                        if c.is_zero() {
                            continue;
                        }
                        let Some((sign, merged)) = wedge(*partial, 1 << alpha) else {
                            continue;
                        };
                        let mut v = coeff.mul(c);
                        if sign < 0 {
                            v = v.neg();
                        }
                        let entry = next.entry(merged).or_insert_with(|| f.zero());
                        *entry = entry.add(&v);
                    }
                }
                terms = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
            for (target, coeff) in terms {
                mat_set_add(&mut mat, index[&target], col, &coeff);
            }
        }
        morphism.set_map(p, q, mat);
    }
    morphism.validate()?;
    Ok(morphism)
}

fn mat_set_add(m: &mut Matrix, r: usize, c: usize, v: &Scalar) {
    let cur = m.at(r, c).add(v);
    *m.at_mut(r, c) = cur;
}

/// The Dolbeault model of the `h₉` nilmanifold.
pub fn h9_complex() -> DoubleComplex {
    lie_complex(&LieData::h9()).expect("h9 model is integrable")
}

/// The endomorphism of the `h₉` model pulling back along
/// `e₁ ↦ e₃ - e₆, e₂ ↦ e₄ + e₅, else 0`, acting on generators as
/// `ω¹ ↦ 0, ω² ↦ ω¹, ω³ ↦ iω¹` (and conjugates).
pub fn h9_endomorphism() -> Result<Morphism> {
    let a = h9_complex();
    let f = FieldSpec::GaussianRationals;
    let mut p = Matrix::zero(f, 6, 6);
    *p.at_mut(1, 0) = f.one();
    *p.at_mut(2, 0) = Scalar::i();
    *p.at_mut(4, 3) = f.one();
    *p.at_mut(5, 3) = Scalar::i().neg();
    extend_multiplicatively(&a, 3, &p)
}

/// A complex with the given dimensions and zero differentials, the
/// `E₁`-model of a manifold with a Hodge decomposition.
pub fn hodge_complex(table: &BTreeMap<(i32, i32), usize>, field: FieldSpec) -> DoubleComplex {
    let mut a = DoubleComplex::new(field);
    for (&(p, q), &dim) in table {
        a.set_dim(p, q, dim);
    }
    a
}

/// The 8-dimensional Hopf-surface model: dots at `(0,0)` and `(2,2)` plus
/// the two length-3 zigzags `S_1^{0,0}` and `S_3^{2,2}`.
pub fn hopf_model() -> DoubleComplex {
    let f = FieldSpec::Rationals;
    let shapes = [
        Shape::dot(0, 0),
        Shape::Odd { d: 1, p: 0, q: 0 },
        Shape::Odd { d: 3, p: 2, q: 2 },
        Shape::dot(2, 2),
    ];
    let mut a = DoubleComplex::new(f);
    for s in shapes {
        a = a
            .direct_sum(&DoubleComplex::elementary(s, f))
            .expect("same field");
    }
    a
}

/// The multiplicity multiset of the Calabi-Eckmann model `M_{u,v}`,
/// `u < v`: the listed base shapes closed under transposition and the
/// antidiagonal reflection at `n = u + v + 1`.
pub fn calabi_eckmann_shapes(u: u32, v: u32) -> Result<BTreeSet<Shape>> {
    if u >= v {
        return Err(Error::InvalidArgument(format!(
            "calabi-eckmann model needs u < v, got u = {u}, v = {v}"
        )));
    }
    let n = (u + v + 1) as i32;
    let mut shapes: BTreeSet<Shape> = BTreeSet::new();
    shapes.insert(Shape::dot(0, 0));
    shapes.insert(Shape::Odd {
        d: 2 * u as i32 + 1,
        p: u as i32,
        q: u as i32,
    });
    for p in 0..u as i32 {
        shapes.insert(Shape::Even {
            side: crate::shape::SsSide::One,
            r: 1,
            p,
            q: p + 1,
        });
    }
    loop {
        let closure: BTreeSet<Shape> = shapes
            .iter()
            .flat_map(|s| [*s, s.transpose(), s.reflect(n), s.transpose().reflect(n)])
            .collect();
        if closure.len() == shapes.len() {
            return Ok(shapes);
        }
        shapes = closure;
    }
}

/// The Calabi-Eckmann model complex itself, each shape with multiplicity 1.
pub fn calabi_eckmann_model(u: u32, v: u32) -> Result<DoubleComplex> {
    let f = FieldSpec::Rationals;
    let mut a = DoubleComplex::new(f);
    for s in calabi_eckmann_shapes(u, v)? {
        a = a
            .direct_sum(&DoubleComplex::elementary(s, f))
            .expect("same field");
    }
    Ok(a)
}

/// `E₁`-class of the blowup of `X` along a codimension-`r` center `Z`:
/// `mult(X) + Σ_{i=1}^{r-1} mult(Z)[i]`.
pub fn blowup_class(
    mx: &MultiplicityVector,
    mz: &MultiplicityVector,
    r: u32,
) -> Result<MultiplicityVector> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "blowup centers have codimension ≥ 2, got {r}"
        )));
    }
    let mut out = mx.clone();
    for i in 1..r as i32 {
        out = out.plus(&mz.shift(i));
    }
    Ok(out)
}

/// `E₁`-class of the projectivization of a rank-`(m+1)` bundle over `X`:
/// `Σ_{i=0}^{m} mult(X)[i]`.
pub fn projective_bundle_class(mx: &MultiplicityVector, m: u32) -> MultiplicityVector {
    let mut out = MultiplicityVector::new();
    for i in 0..=m as i32 {
        out = out.plus(&mx.shift(i));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplicity::{multiplicities, reconcile};
    use crate::spectral;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn abelian_lie_algebra_gives_torus_diamond() {
        let one = BigRational::from_integer(1.into());
        let mut j = vec![vec![BigRational::zero(); 4]; 4];
        for a in 0..2 {
            j[2 * a + 1][2 * a] = one.clone();
            j[2 * a][2 * a + 1] = -one.clone();
        }
        let data = LieData::new(4, Vec::new(), j).unwrap();
        let a = lie_complex(&data).unwrap();
        assert_eq!(a.validate(), vec![]);
        for p in 0..=2i32 {
            for q in 0..=2i32 {
                assert_eq!(a.dim(p, q), binom(2, p as usize) * binom(2, q as usize));
                assert!(a.d1(p, q).is_zero());
                assert!(a.d2(p, q).is_zero());
            }
        }
    }

    #[test]
    fn invalid_j_is_rejected() {
        let j = vec![vec![BigRational::zero(); 4]; 4];
        assert!(LieData::new(4, Vec::new(), j).is_err());
    }

    #[test]
    fn h9_eigenbasis_is_the_standard_one() {
        let data = LieData::h9();
        let model = ExteriorModel::new(&data).unwrap();
        // ω^a = e^{2a-1} - i e^{2a}
        let f = FieldSpec::GaussianRationals;
        for a in 0..3 {
            for c in 0..6 {
                let expected = if c == 2 * a {
                    f.one()
                } else if c == 2 * a + 1 {
                    Scalar::i().neg()
                } else {
                    f.zero()
                };
                assert_eq!(model.omega.at(a, c), &expected, "omega[{a}][{c}]");
            }
        }
    }

    #[test]
    fn h9_structure_equations() {
        let model = ExteriorModel::new(&LieData::h9()).unwrap();
        // dω¹ = 0.
        assert!(model.dg[0].is_empty());
        // dω² is a nonzero multiple of ω¹∧ω̄¹ (pure (1,1), no (2,0) part).
        let d2: Vec<_> = model.dg[1].iter().collect();
        assert_eq!(d2.len(), 1);
        assert_eq!(*d2[0].0, (0, 3));
        assert_eq!(d2[0].1, &Scalar::ratio(FieldSpec::GaussianRationals, 1, 2));
        // dω³ has the two (1,1) terms ω¹∧ω̄² and ω²∧ω̄¹ with coefficients ∓i/2.
        let d3 = &model.dg[2];
        assert_eq!(d3.len(), 2);
        let half_i = Scalar::i().mul(&Scalar::ratio(FieldSpec::GaussianRationals, 1, 2));
        assert_eq!(d3.get(&(0, 4)), Some(&half_i.neg()));
        assert_eq!(d3.get(&(1, 3)), Some(&half_i));
        // Conjugate equations mirror these.
        assert!(model.dg[3].is_empty());
    }

    #[test]
    fn h9_complex_shape() {
        let a = h9_complex();
        assert_eq!(a.validate(), vec![]);
        assert_eq!(a.total_dim(), 64);
        for ((p, q), d) in a.support() {
            assert_eq!(d, binom(3, p as usize) * binom(3, q as usize));
        }
        let h = spectral::de_rham(&a).unwrap();
        assert_eq!(h[&1].0, 4, "b1 = dim g - dim [g,g]");
    }

    #[test]
    fn h9_multiplicities_match_the_known_table() {
        let a = h9_complex();
        let m = multiplicities(&a).unwrap();
        let odd = |d, p, q| Shape::Odd { d, p, q };
        let mut expected = MultiplicityVector::new();
        // The zigzag table: base shapes closed under transpose and the
        // antidiagonal reflection at n = 3. The count at S_3^{2,2} is 1,
        // not the 2 a naive reading of the generator list suggests: of the
        // two (1,1)-generators in that slot one has ∂₁∂₂ ≠ 0 and belongs
        // to the square below.
        for (d, p, q, c) in [
            (0, 0, 0, 1),
            (1, 1, 0, 1),
            (1, 0, 0, 2),
            (2, 2, 0, 1),
            (2, 1, 0, 1),
            (2, 1, 1, 2),
            (2, 0, 0, 1),
            (3, 3, 0, 1),
            (3, 2, 1, 2),
            (3, 2, 2, 1),
        ] {
            let base = odd(d, p, q);
            for s in [
                base,
                base.transpose(),
                base.reflect(3),
                base.transpose().reflect(3),
            ] {
                if expected.get(&s) < c {
                    let missing = c - expected.get(&s);
                    expected.add(s, missing);
                }
            }
        }
        // One square: ∂₁∂₂(ω³∧ω̄³) = dω³∧dω̄³ = -½ ω¹∧ω²∧ω̄¹∧ω̄² ≠ 0.
        expected.add(Shape::Square { p: 2, q: 2 }, 1);
        assert_eq!(m, expected);
        assert!(reconcile(&a, &m).is_empty());
    }

    #[test]
    fn h9_bott_chern_at_the_center() {
        // Hand computation: ker ∂₁ ∩ ker ∂₂ on Λ^{2,2} is 7-dimensional
        // (six monomial cocycles plus ω¹³∧ω̄²³ + ω²³∧ω̄¹³) and im ∂₁∂₂ is
        // the line through ω¹²∧ω̄¹², so BC^{2,2} = 6.
        let a = h9_complex();
        let bc = spectral::bott_chern_aeppli(&a).unwrap();
        assert_eq!(bc[&(2, 2)].0, 6);
        // The zigzag corner scan agrees with every direct table.
        let m = multiplicities(&a).unwrap();
        let scan = crate::multiplicity::cohomology_from_zigzags(&m);
        let direct_bc: BTreeMap<_, _> = bc
            .iter()
            .filter(|(_, v)| v.0 > 0)
            .map(|(&k, v)| (k, v.0))
            .collect();
        assert_eq!(scan.bott_chern, direct_bc);
    }

    #[test]
    fn h9_endomorphism_acts_as_stated() {
        let phi = h9_endomorphism().unwrap();
        // On (1,0): ω² ↦ ω¹, ω³ ↦ iω¹, ω¹ ↦ 0.
        let m10 = phi.map(1, 0);
        let f = FieldSpec::GaussianRationals;
        assert_eq!(m10.at(0, 1), &f.one());
        assert_eq!(m10.at(0, 2), &Scalar::i());
        assert!((0..3).all(|r| m10.at(r, 0).is_zero()));
        // ω¹∧ω² ↦ ω¹∧ω¹ = 0 by multiplicativity.
        assert!(phi.map(2, 0).is_zero());
    }

    #[test]
    fn h9_endomorphism_is_not_strict() {
        let phi = h9_endomorphism().unwrap();
        let induced = spectral::induced_de_rham(&phi).unwrap();
        let (pushed, cut) = induced
            .strictness_pair(crate::shape::SsSide::One, 1, 1)
            .unwrap();
        assert_eq!(pushed.dim(), 0, "φ*F¹H¹ = 0");
        assert_eq!(cut.dim(), 1, "F¹H¹ ∩ im φ* is a line");
        assert!(!induced.is_strict(crate::shape::SsSide::One).unwrap());
    }

    #[test]
    fn hodge_complex_examples() {
        // Genus-g surface.
        let g = 3usize;
        let table = BTreeMap::from([((0, 0), 1), ((1, 0), g), ((0, 1), g), ((1, 1), 1)]);
        let a = hodge_complex(&table, FieldSpec::Rationals);
        let h = spectral::de_rham(&a).unwrap();
        assert_eq!(h[&0].0, 1);
        assert_eq!(h[&1].0, 2 * g);
        assert_eq!(h[&2].0, 1);
        assert!(spectral::ddbar_lemma(&a).unwrap());

        // Projective plane.
        let p2 = hodge_complex(
            &BTreeMap::from([((0, 0), 1), ((1, 1), 1), ((2, 2), 1)]),
            FieldSpec::Rationals,
        );
        let h = spectral::de_rham(&p2).unwrap();
        let betti: Vec<usize> = (0..5).map(|k| h.get(&k).map_or(0, |x| x.0)).collect();
        assert_eq!(betti, vec![1, 0, 1, 0, 1]);

        assert!(hodge_complex(&BTreeMap::new(), FieldSpec::Rationals).is_empty());
    }

    #[test]
    fn hopf_model_basics() {
        let h = hopf_model();
        assert_eq!(h.validate(), vec![]);
        assert_eq!(h.total_dim(), 8);
        let m = multiplicities(&h).unwrap();
        assert_eq!(m.total_count(), 4);
        assert_eq!(m.get(&Shape::dot(0, 0)), 1);
        assert_eq!(m.get(&Shape::Odd { d: 1, p: 0, q: 0 }), 1);
        assert_eq!(m.get(&Shape::Odd { d: 3, p: 2, q: 2 }), 1);
        assert_eq!(m.get(&Shape::dot(2, 2)), 1);
        let delta = spectral::delta_degrees(&h).unwrap();
        assert_eq!(delta[&2], 2);
        assert!(crate::multiplicity::realizability_necessary(&m, 2).is_empty());
        let dr = spectral::de_rham(&h).unwrap();
        let betti: Vec<usize> = (0..5).map(|k| dr.get(&k).map_or(0, |x| x.0)).collect();
        assert_eq!(betti, vec![1, 1, 0, 1, 1]);
        assert_eq!(spectral::middle_cohomology(&h, 2).unwrap(), (0, 0, 0));
        assert!(spectral::degenerates_at(&h, 1).unwrap());
        assert!(!spectral::ddbar_lemma(&h).unwrap());
    }

    #[test]
    fn hodge_diamond_middle_cohomology() {
        // h^{2,0} = h^{0,2} = 1, h^{1,1} = 2: three-space decomposition
        // (1, 2, 1) in the middle degree.
        let table = BTreeMap::from([
            ((2, 0), 1),
            ((0, 2), 1),
            ((1, 1), 2),
            ((0, 0), 1),
            ((2, 2), 1),
        ]);
        let a = hodge_complex(&table, FieldSpec::Rationals);
        assert_eq!(spectral::middle_cohomology(&a, 2).unwrap(), (1, 2, 1));
    }

    #[test]
    fn hopf_selected_invariants_and_ring_class() {
        let m = multiplicities(&hopf_model()).unwrap();
        // Every one of the four zigzags touches the frame or (1,1).
        let selected = crate::multiplicity::bimeromorphic_invariants(&m, 2);
        assert_eq!(selected, m);

        // Scan tables straight from the multiset.
        let scan = crate::multiplicity::cohomology_from_zigzags(&m);
        let expected_bc = BTreeMap::from([
            ((0, 0), 1),
            ((1, 1), 1),
            ((1, 2), 1),
            ((2, 1), 1),
            ((2, 2), 1),
        ]);
        assert_eq!(scan.bott_chern, expected_bc);

        // The E_∞-class of the Hopf model.
        let class = crate::ring::RingClass::class_of(&m, crate::ring::Level::RInf);
        let expected = crate::ring::RingClass::parse(
            "S_0^{0,0} + S_1^{0,0} + S_3^{2,2} + S_4^{2,2}",
            crate::ring::Level::RInf,
        )
        .unwrap();
        assert_eq!(class, expected);
        assert!(class.is_first_quadrant());
    }

    #[test]
    fn product_with_projective_space_matches_bundle_class() {
        // Künneth: [A_H]·[A_P2] in R_1 equals the projective-bundle class
        // of a rank-3 bundle over the Hopf surface.
        let hopf = multiplicities(&hopf_model()).unwrap();
        let p2: MultiplicityVector = [Shape::dot(0, 0), Shape::dot(1, 1), Shape::dot(2, 2)]
            .into_iter()
            .map(|s| (s, 1))
            .collect();
        let lhs = crate::ring::RingClass::class_of(&hopf, crate::ring::Level::R1)
            .mul(&crate::ring::RingClass::class_of(
                &p2,
                crate::ring::Level::R1,
            ))
            .unwrap();
        let rhs = crate::ring::RingClass::class_of(
            &projective_bundle_class(&hopf, 2),
            crate::ring::Level::R1,
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn blowup_deltas_agree_in_extreme_degrees() {
        // Blowing up a ddbar-failing center raises some Δ^k but never
        // k = 0, 1, 2 or 2n-2, 2n-1, 2n (here n = 4).
        let hopf = multiplicities(&hopf_model()).unwrap();
        let ambient = projective_bundle_class(&hopf, 2);
        let blown = blowup_class(&ambient, &hopf, 2).unwrap();
        let before = crate::multiplicity::delta_from_zigzags(&ambient);
        let after = crate::multiplicity::delta_from_zigzags(&blown);
        for k in [0, 1, 2, 6, 7, 8] {
            assert_eq!(
                before.get(&k).copied().unwrap_or(0),
                after.get(&k).copied().unwrap_or(0),
                "degree {k}"
            );
        }
        assert!(after.get(&4) > before.get(&4));
        // Blowing up a ddbar center changes nothing.
        let point = MultiplicityVector::from_counts([(Shape::dot(0, 0), 1)]);
        let trivial = blowup_class(&ambient, &point, 3).unwrap();
        assert_eq!(crate::multiplicity::delta_from_zigzags(&trivial), before);
    }

    #[test]
    fn calabi_eckmann_realizability_and_degeneration() {
        for (u, v) in [(0u32, 1u32), (1, 2), (0, 2)] {
            let a = calabi_eckmann_model(u, v).unwrap();
            let m = multiplicities(&a).unwrap();
            let n = (u + v + 1) as i32;
            assert!(
                crate::multiplicity::realizability_necessary(&m, n).is_empty(),
                "M({u},{v})"
            );
            assert!(
                spectral::degenerates_at(&a, 2).unwrap(),
                "M({u},{v}) at page 2"
            );
            let at_one = spectral::degenerates_at(&a, 1).unwrap();
            assert_eq!(at_one, u == 0, "M({u},{v}) at page 1");
        }
    }

    #[test]
    fn calabi_eckmann_01_is_hopf_like() {
        let a = calabi_eckmann_model(0, 1).unwrap();
        let dr = spectral::de_rham(&a).unwrap();
        let betti: Vec<usize> = (0..5).map(|k| dr.get(&k).map_or(0, |x| x.0)).collect();
        assert_eq!(betti, vec![1, 1, 0, 1, 1]);
        assert_eq!(
            multiplicities(&a).unwrap(),
            multiplicities(&hopf_model()).unwrap()
        );
        assert!(calabi_eckmann_model(1, 1).is_err());
    }

    #[test]
    fn calabi_eckmann_23_has_sphere_betti_numbers() {
        // u = 2 brings in two even-zigzag families; the Betti numbers are
        // those of S⁵ × S⁷.
        let a = calabi_eckmann_model(2, 3).unwrap();
        assert_eq!(a.total_dim(), 24);
        let dr = spectral::de_rham(&a).unwrap();
        for k in 0..=12 {
            let expected = usize::from(matches!(k, 0 | 5 | 7 | 12));
            assert_eq!(dr.get(&k).map_or(0, |x| x.0), expected, "b_{k}");
        }
        let m = multiplicities(&a).unwrap();
        assert_eq!(m.get(&"S_{1,1}^{0,1}".parse().unwrap()), 1);
        assert_eq!(m.get(&"S_{1,1}^{1,2}".parse().unwrap()), 1);
        assert!(!spectral::degenerates_at(&a, 1).unwrap());
    }

    #[test]
    fn blowup_and_bundle_composers() {
        let hopf = multiplicities(&hopf_model()).unwrap();
        assert_eq!(projective_bundle_class(&hopf, 0), hopf);

        // A point blown up inside P²: one extra dot at (1,1).
        let point = MultiplicityVector::from_counts([(Shape::dot(0, 0), 1)]);
        let p2 = projective_bundle_class(&point, 2);
        assert_eq!(
            p2,
            MultiplicityVector::from_counts([
                (Shape::dot(0, 0), 1),
                (Shape::dot(1, 1), 1),
                (Shape::dot(2, 2), 1),
            ])
        );
        let blown = blowup_class(&p2, &point, 2).unwrap();
        assert_eq!(blown.get(&Shape::dot(1, 1)), 2);
        assert!(blowup_class(&p2, &point, 1).is_err());
    }
}
