//! Cohomology of double complexes: total (de Rham), row/column (Dolbeault),
//! Bott-Chern and Aeppli theories, both Frölicher spectral sequences with
//! differentials, Hodge filtrations with refined Betti numbers, the non-∂∂̄
//! degrees, the three-space decomposition of middle cohomology, and maps
//! induced on cohomology by morphisms together with strictness tests.
//!
//! The second spectral sequence is computed by transposing the complex and
//! re-indexing rather than by a second code path, so `₂E_1^{p,q} = H_{∂₁}^{p,q}`
//! and `₂d_r` has bidegree `(-r+1, r)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complex::{Bidegree, DoubleComplex, Morphism};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::shape::SsSide;
use crate::subspace::{image, kernel, preimage, Quotient, Subspace};
use crate::{Error, Result};

/// The total complex `T^k = ⊕_{p+q=k} A^{p,q}` with `d = ∂₁ + ∂₂`.
///
/// Within a degree, blocks are ordered by increasing `p`; both column and
/// row filtration subspaces are then contiguous coordinate ranges.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    field: FieldSpec,
    layout: BTreeMap<i32, Vec<(Bidegree, usize, usize)>>,
    diff: BTreeMap<i32, Matrix>,
}

impl TotalComplex {
    pub fn new(a: &DoubleComplex) -> Self {
        let field = a.field();
        let mut layout: BTreeMap<i32, Vec<(Bidegree, usize, usize)>> = BTreeMap::new();
        for ((p, q), dim) in a.support() {
            layout.entry(p + q).or_default().push(((p, q), 0, dim));
        }
        for blocks in layout.values_mut() {
            blocks.sort_by_key(|&((p, _), _, _)| p);
            let mut off = 0;
            for b in blocks.iter_mut() {
                b.1 = off;
                off += b.2;
            }
        }
        let mut diff = BTreeMap::new();
        let degrees: Vec<i32> = layout.keys().copied().collect();
        for &k in &degrees {
            let rows = layout.get(&(k + 1)).map_or(0, |b| total_of(b));
            let cols = total_of(&layout[&k]);
            let mut m = Matrix::zero(field, rows, cols);
            for &((p, q), off, dim) in &layout[&k] {
                for (target, mat) in [((p + 1, q), a.d1(p, q)), ((p, q + 1), a.d2(p, q))] {
                    let Some(&(_, toff, tdim)) = layout
                        .get(&(k + 1))
                        .and_then(|bs| bs.iter().find(|&&(bd, _, _)| bd == target))
                    else {
                        continue;
                    };
                    debug_assert_eq!((mat.rows(), mat.cols()), (tdim, dim));
                    for r in 0..tdim {
                        for c in 0..dim {
                            let v = mat.at(r, c);
                            if !v.is_zero() {
                                *m.at_mut(toff + r, off + c) = v.clone();
                            }
                        }
                    }
                }
            }
            diff.insert(k, m);
        }
        TotalComplex {
            field,
            layout,
            diff,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.layout.keys().copied()
    }

    pub fn dim(&self, k: i32) -> usize {
        self.layout.get(&k).map_or(0, |b| total_of(b))
    }

    /// The differential `T^k → T^{k+1}` (a zero matrix when either side is
    /// absent).
    pub fn d(&self, k: i32) -> Matrix {
        match self.diff.get(&k) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.field, self.dim(k + 1), self.dim(k)),
        }
    }

    pub fn blocks(&self, k: i32) -> &[(Bidegree, usize, usize)] {
        self.layout.get(&k).map_or(&[], |v| v.as_slice())
    }

    pub fn block(&self, k: i32, bd: Bidegree) -> Option<(usize, usize)> {
        self.blocks(k)
            .iter()
            .find(|&&(b, _, _)| b == bd)
            .map(|&(_, off, dim)| (off, dim))
    }

    /// `F₁^p T^k` (side 1) or `F₂^q T^k` (side 2) as a coordinate subspace.
    pub fn filtration(&self, side: SsSide, k: i32, level: i32) -> Subspace {
        let n = self.dim(k);
        let mut rows = Vec::new();
        for &((p, q), off, dim) in self.blocks(k) {
            let included = match side {
                SsSide::One => p >= level,
                SsSide::Two => q >= level,
            };
            if included {
                for i in 0..dim {
                    let mut v = vec![self.field.zero(); n];
                    v[off + i] = self.field.one();
                    rows.push(v);
                }
            }
        }
        let m = Matrix::from_rows(self.field, rows).expect("unit rows share length");
        let m = if m.rows() == 0 {
            Matrix::zero(self.field, 0, n)
        } else {
            m
        };
        Subspace::from_rows(&m)
    }
}

fn total_of(blocks: &[(Bidegree, usize, usize)]) -> usize {
    blocks.iter().map(|&(_, _, d)| d).sum()
}

/// Total (de Rham) cohomology with chosen cocycle representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    total: TotalComplex,
    h: BTreeMap<i32, Quotient>,
}

impl Cohomology {
    fn build(total: TotalComplex) -> Result<Self> {
        let mut h = BTreeMap::new();
        let degrees: Vec<i32> = total.degrees().collect();
        for &k in &degrees {
            let cocycles = kernel(&total.d(k));
            let boundaries = image(&total.d(k - 1));
            h.insert(k, Quotient::new(cocycles, boundaries)?);
        }
        Ok(Cohomology { total, h })
    }

    pub fn new(a: &DoubleComplex) -> Result<Self> {
        a.ensure_valid()?;
        Self::build(TotalComplex::new(a))
    }

    pub fn total(&self) -> &TotalComplex {
        &self.total
    }

    pub fn betti(&self, k: i32) -> usize {
        self.h.get(&k).map_or(0, Quotient::dim)
    }

    /// All degrees of the underlying support, with their Betti numbers.
    pub fn betti_table(&self) -> BTreeMap<i32, usize> {
        self.h.iter().map(|(&k, q)| (k, q.dim())).collect()
    }

    pub fn quotient(&self, k: i32) -> Option<&Quotient> {
        self.h.get(&k)
    }

    /// Representative cocycles for `H^k`, rows in `T^k` coordinates.
    pub fn representatives(&self, k: i32) -> Matrix {
        match self.h.get(&k) {
            Some(q) => q.reps().clone(),
            None => Matrix::zero(self.total.field(), 0, self.total.dim(k)),
        }
    }

    /// `F_i^p H^k`: classes of cocycles lying in `F_i^p T^k`, expressed in
    /// the chosen basis of `H^k`.
    pub fn filtration(&self, side: SsSide, k: i32, level: i32) -> Result<Subspace> {
        let Some(q) = self.h.get(&k) else {
            return Ok(Subspace::zero(self.total.field(), 0));
        };
        let filtered_cocycles = q
            .numerator()
            .intersect(&self.total.filtration(side, k, level))?;
        q.project_subspace(&filtered_cocycles)
    }
}

/// Per-degree de Rham data: dimension and representative cocycle rows.
pub fn de_rham(a: &DoubleComplex) -> Result<BTreeMap<i32, (usize, Matrix)>> {
    let h = Cohomology::new(a)?;
    Ok(h.total
        .degrees()
        .map(|k| (k, (h.betti(k), h.representatives(k))))
        .collect())
}

/// Row (`side = 1`, with respect to `∂₁`) or column (`side = 2`, `∂₂`)
/// cohomology dimensions per bidegree.
pub fn dolbeault(a: &DoubleComplex, side: SsSide) -> Result<BTreeMap<Bidegree, usize>> {
    a.ensure_valid()?;
    let mut out = BTreeMap::new();
    for ((p, q), _) in a.support() {
        let (outgoing, incoming) = match side {
            SsSide::One => (a.d1(p, q), a.d1(p - 1, q)),
            SsSide::Two => (a.d2(p, q), a.d2(p, q - 1)),
        };
        let dim = kernel(&outgoing).dim() - incoming.rank();
        if dim > 0 {
            out.insert((p, q), dim);
        }
    }
    Ok(out)
}

/// Bott-Chern and Aeppli dimensions per bidegree:
/// `BC = (ker ∂₁ ∩ ker ∂₂) / im ∂₁∂₂` and `Aeppli = ker ∂₁∂₂ / (im ∂₁ + im ∂₂)`.
pub fn bott_chern_aeppli(a: &DoubleComplex) -> Result<BTreeMap<Bidegree, (usize, usize)>> {
    a.ensure_valid()?;
    let mut out = BTreeMap::new();
    for ((p, q), _) in a.support() {
        let closed = kernel(&a.d1(p, q)).intersect(&kernel(&a.d2(p, q)))?;
        let d1d2_in = image(&a.d1(p - 1, q).mul(&a.d2(p - 1, q - 1))?);
        debug_assert!(closed.contains(&d1d2_in).unwrap());
        let bc = closed.dim() - d1d2_in.dim();

        let d1d2_out = a.d1(p, q + 1).mul(&a.d2(p, q))?;
        let nearly_closed = kernel(&d1d2_out);
        let im_sum = image(&a.d1(p - 1, q)).sum(&image(&a.d2(p, q - 1)))?;
        debug_assert!(nearly_closed.contains(&im_sum).unwrap());
        let aeppli = nearly_closed.dim() - im_sum.dim();

        if bc > 0 || aeppli > 0 {
            out.insert((p, q), (bc, aeppli));
        }
    }
    Ok(out)
}

/// Does the natural map `BC → Aeppli` inject in every bidegree?
pub fn ddbar_lemma(a: &DoubleComplex) -> Result<bool> {
    a.ensure_valid()?;
    for ((p, q), _) in a.support() {
        let closed = kernel(&a.d1(p, q)).intersect(&kernel(&a.d2(p, q)))?;
        let im_sum = image(&a.d1(p - 1, q)).sum(&image(&a.d2(p, q - 1)))?;
        let d1d2_in = image(&a.d1(p - 1, q).mul(&a.d2(p - 1, q - 1))?);
        if closed.intersect(&im_sum)?.dim() != d1d2_in.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Non-∂₁∂₂ degrees `Δ^k = Σ_{p+q=k} (dim BC + dim Aeppli) - 2 b_k`,
/// reported for every total degree of the support.
pub fn delta_degrees(a: &DoubleComplex) -> Result<BTreeMap<i32, i64>> {
    let bc_ae = bott_chern_aeppli(a)?;
    let h = Cohomology::new(a)?;
    let mut out: BTreeMap<i32, i64> = h.total.degrees().map(|k| (k, 0)).collect();
    for (&(p, q), &(bc, ae)) in &bc_ae {
        *out.entry(p + q).or_insert(0) += (bc + ae) as i64;
    }
    for k in out.keys().copied().collect::<Vec<_>>() {
        *out.get_mut(&k).unwrap() -= 2 * h.betti(k) as i64;
    }
    Ok(out)
}

/// One page of a Frölicher spectral sequence. Differentials map the entry
/// at `(p, q)` to `(p + r, q - r + 1)` on side 1 and to `(p - r + 1, q + r)`
/// on side 2.
#[derive(Clone, Debug)]
pub struct Page {
    pub side: SsSide,
    pub r: u32,
    pub entries: BTreeMap<Bidegree, PageEntry>,
    pub differentials: BTreeMap<Bidegree, Matrix>,
}

#[derive(Clone, Debug)]
pub struct PageEntry {
    pub dim: usize,
    /// Representative rows in the coordinates of the total-degree space
    /// `T^{p+q}` of the original complex.
    pub reps: Matrix,
}

impl Page {
    pub fn total_dim(&self) -> usize {
        self.entries.values().map(|e| e.dim).sum()
    }

    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.entries.get(&(p, q)).map_or(0, |e| e.dim)
    }

    pub fn differential_rank(&self, p: i32, q: i32) -> usize {
        self.differentials.get(&(p, q)).map_or(0, Matrix::rank)
    }
}

/// Column-filtration page engine; side 2 reuses it on the transposed
/// complex.
struct PageEngine {
    total: TotalComplex,
    z_cache: HashMap<(u32, i32, i32), Subspace>,
}

impl PageEngine {
    fn new(total: TotalComplex) -> Self {
        PageEngine {
            total,
            z_cache: HashMap::new(),
        }
    }

    /// `Z_r^{p,q} = F^p T^{p+q} ∩ d⁻¹(F^{p+r} T^{p+q+1})`, keyed by the
    /// total degree `k = p + q`.
    fn z(&mut self, r: u32, k: i32, p: i32) -> Result<Subspace> {
        if let Some(s) = self.z_cache.get(&(r, k, p)) {
            return Ok(s.clone());
        }
        let target = self.total.filtration(SsSide::One, k + 1, p + r as i32);
        let pre = preimage(&self.total.d(k), &target)?;
        let result = self.total.filtration(SsSide::One, k, p).intersect(&pre)?;
        self.z_cache.insert((r, k, p), result.clone());
        Ok(result)
    }

    /// The quotient presenting `E_r^{p,q} = Z_r / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})`.
    fn entry(&mut self, r: u32, k: i32, p: i32) -> Result<Quotient> {
        debug_assert!(r >= 1);
        let numerator = self.z(r, k, p)?;
        let stay = self.z(r - 1, k, p + 1)?;
        let boundaries = self
            .z(r - 1, k - 1, p - r as i32 + 1)?
            .map_by(&self.total.d(k - 1))?;
        Quotient::new(numerator, stay.sum(&boundaries)?)
    }

    fn page(
        &mut self,
        r: u32,
    ) -> Result<(BTreeMap<Bidegree, Quotient>, BTreeMap<Bidegree, Matrix>)> {
        let degrees: Vec<i32> = self.total.degrees().collect();
        let mut entries = BTreeMap::new();
        for &k in &degrees {
            let ps: Vec<i32> = self
                .total
                .blocks(k)
                .iter()
                .map(|&((p, _), _, _)| p)
                .collect();
            for p in ps {
                let e = self.entry(r, k, p)?;
                if e.dim() > 0 {
                    entries.insert((p, k - p), e);
                }
            }
        }
        let mut diffs = BTreeMap::new();
        for (&(p, q), source) in &entries {
            let k = p + q;
            let target_key = (p + r as i32, q - r as i32 + 1);
            let Some(target) = entries.get(&target_key) else {
                continue;
            };
            let m = target.matrix_from(source, &self.total.d(k))?;
            if !m.is_zero() {
                diffs.insert((p, q), m);
            }
        }
        Ok((entries, diffs))
    }
}

/// Page `r ≥ 1` of the Frölicher spectral sequence on the given side.
pub fn ss_page(a: &DoubleComplex, side: SsSide, r: u32) -> Result<Page> {
    if r < 1 {
        return Err(Error::InvalidArgument("page index must be ≥ 1".into()));
    }
    a.ensure_valid()?;
    let working = match side {
        SsSide::One => a.clone(),
        SsSide::Two => a.transpose_pq(),
    };
    let original_total = TotalComplex::new(a);
    let mut engine = PageEngine::new(TotalComplex::new(&working));
    let (entries, diffs) = engine.page(r)?;
    let mut page = Page {
        side,
        r,
        entries: BTreeMap::new(),
        differentials: BTreeMap::new(),
    };
    for ((p, q), quotient) in entries {
        let key = match side {
            SsSide::One => (p, q),
            SsSide::Two => (q, p),
        };
        let reps = match side {
            SsSide::One => quotient.reps().clone(),
            SsSide::Two => convert_rows(&engine.total, &original_total, p + q, quotient.reps()),
        };
        page.entries.insert(
            key,
            PageEntry {
                dim: quotient.dim(),
                reps,
            },
        );
    }
    for ((p, q), m) in diffs {
        let key = match side {
            SsSide::One => (p, q),
            SsSide::Two => (q, p),
        };
        page.differentials.insert(key, m);
    }
    Ok(page)
}

/// Pages `1..=max_r` on one side.
pub fn ss_pages(a: &DoubleComplex, side: SsSide, max_r: u32) -> Result<Vec<Page>> {
    (1..=max_r).map(|r| ss_page(a, side, r)).collect()
}

/// A page index from which every page equals `E_∞` (support width plus one).
pub fn stable_page(a: &DoubleComplex) -> u32 {
    match a.bounding_box() {
        None => 1,
        Some((min_p, max_p, min_q, max_q)) => {
            let w = (max_p - min_p).max(max_q - min_q);
            w.max(0) as u32 + 1
        }
    }
}

/// Rewrites rows over the transposed total complex into coordinates of the
/// original one.
fn convert_rows(from: &TotalComplex, to: &TotalComplex, k: i32, rows: &Matrix) -> Matrix {
    let mut out = Matrix::zero(to.field(), rows.rows(), to.dim(k));
    for &((p, q), off, dim) in from.blocks(k) {
        let (toff, tdim) = to.block(k, (q, p)).expect("transposed block exists");
        debug_assert_eq!(dim, tdim);
        for r in 0..rows.rows() {
            for i in 0..dim {
                *out.at_mut(r, toff + i) = rows.at(r, off + i).clone();
            }
        }
    }
    out
}

/// Hodge filtrations on one total-cohomology degree plus the refined Betti
/// table obtained by inclusion-exclusion on `F₁^p ∩ F₂^q`.
#[derive(Clone, Debug)]
pub struct FilteredCohomology {
    pub degree: i32,
    pub total_dim: usize,
    pub f1: BTreeMap<i32, Subspace>,
    pub f2: BTreeMap<i32, Subspace>,
    pub refined: BTreeMap<Bidegree, usize>,
}

pub fn hodge_filtrations(a: &DoubleComplex, degree: i32) -> Result<FilteredCohomology> {
    let h = Cohomology::new(a)?;
    filtered_cohomology(&h, a, degree)
}

fn filtered_cohomology(
    h: &Cohomology,
    a: &DoubleComplex,
    degree: i32,
) -> Result<FilteredCohomology> {
    let total_dim = h.betti(degree);
    let (min_p, max_p, min_q, max_q) = a.bounding_box().unwrap_or((0, -1, 0, -1));
    let mut f1 = BTreeMap::new();
    let mut f2 = BTreeMap::new();
    for p in min_p..=max_p + 1 {
        f1.insert(p, h.filtration(SsSide::One, degree, p)?);
    }
    for q in min_q..=max_q + 1 {
        f2.insert(q, h.filtration(SsSide::Two, degree, q)?);
    }
    let mut refined = BTreeMap::new();
    if total_dim > 0 {
        let dim_cap = |p: i32, q: i32| -> Result<usize> {
            let s1 = f1.get(&p.min(max_p + 1)).expect("filtration precomputed");
            let s2 = f2.get(&q.min(max_q + 1)).expect("filtration precomputed");
            Ok(s1.intersect(s2)?.dim())
        };
        for p in min_p..=max_p {
            for q in min_q..=max_q {
                let val =
                    dim_cap(p, q)? as i64 - dim_cap(p + 1, q)? as i64 - dim_cap(p, q + 1)? as i64
                        + dim_cap(p + 1, q + 1)? as i64;
                debug_assert!(val >= 0, "refined Betti numbers are nonnegative");
                if val > 0 {
                    refined.insert((p, q), val as usize);
                }
            }
        }
        debug_assert_eq!(refined.values().sum::<usize>(), total_dim);
    }
    Ok(FilteredCohomology {
        degree,
        total_dim,
        f1,
        f2,
        refined,
    })
}

/// The refined Betti table `b_d^{p,q}` for every degree at once.
pub fn refined_betti(a: &DoubleComplex) -> Result<BTreeMap<i32, BTreeMap<Bidegree, usize>>> {
    let h = Cohomology::new(a)?;
    let mut out = BTreeMap::new();
    for k in h.total.degrees().collect::<Vec<_>>() {
        let fc = filtered_cohomology(&h, a, k)?;
        if !fc.refined.is_empty() {
            out.insert(k, fc.refined);
        }
    }
    Ok(out)
}

/// Do both Frölicher spectral sequences degenerate at page `r`, i.e. does
/// `Σ dim E_r^{p,q} = Σ b_k` hold on each side?
pub fn degenerates_at(a: &DoubleComplex, r: u32) -> Result<bool> {
    let h = Cohomology::new(a)?;
    let betti_sum: usize = h.betti_table().values().sum();
    for side in [SsSide::One, SsSide::Two] {
        if ss_page(a, side, r)?.total_dim() != betti_sum {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is `H^d` a pure Hodge structure of weight `k`, i.e. does
/// `b_d = Σ_{p+q=k} b_d^{p,q}` hold?
pub fn pure_hodge(a: &DoubleComplex, d: i32, k: i32) -> Result<bool> {
    let fc = hodge_filtrations(a, d)?;
    let on_weight: usize = fc
        .refined
        .iter()
        .filter(|&(&(p, q), _)| p + q == k)
        .map(|(_, &v)| v)
        .sum();
    Ok(on_weight == fc.total_dim)
}

/// Summary predicates for reports.
#[derive(Clone, Debug)]
pub struct Predicates {
    pub ddbar: bool,
    /// Smallest page at which both spectral sequences degenerate.
    pub degeneration_stage: u32,
    /// Degree `d` → does `H^d` carry a pure Hodge structure of weight `d`?
    pub pure_hodge: BTreeMap<i32, bool>,
}

pub fn predicates(a: &DoubleComplex) -> Result<Predicates> {
    let ddbar = ddbar_lemma(a)?;
    let bound = stable_page(a);
    let mut degeneration_stage = bound;
    for r in 1..=bound {
        if degenerates_at(a, r)? {
            degeneration_stage = r;
            break;
        }
    }
    let h = Cohomology::new(a)?;
    let mut pure = BTreeMap::new();
    for k in h.total.degrees().collect::<Vec<_>>() {
        pure.insert(k, pure_hodge(a, k, k)?);
    }
    Ok(Predicates {
        ddbar,
        degeneration_stage,
        pure_hodge: pure,
    })
}

/// The three-space decomposition of `H^n`:
/// `(dim H_{∂₂}^{n,0}, dim H^mid, dim H_{∂₁}^{0,n})` where `H^mid` is
/// computed from the band `(n-1,1), …, (1,n-1)`.
///
/// Rejects `n < 2`, where the band degenerates onto the corner bidegrees.
pub fn middle_cohomology(a: &DoubleComplex, n: i32) -> Result<(usize, usize, usize)> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "middle cohomology needs n ≥ 2; below that the band meets the corners".into(),
        ));
    }
    a.ensure_valid()?;
    let first = kernel(&a.d2(n, 0)).dim() - a.d2(n, -1).rank();
    let last = kernel(&a.d1(0, n)).dim() - a.d1(-1, n).rank();

    let total = TotalComplex::new(a);
    let field = total.field();
    let dim_n = total.dim(n);
    let mut rows = Vec::new();
    for &((p, _), off, dim) in total.blocks(n) {
        if p >= 1 && p < n {
            for i in 0..dim {
                let mut v = vec![field.zero(); dim_n];
                v[off + i] = field.one();
                rows.push(v);
            }
        }
    }
    let band = if rows.is_empty() {
        Subspace::zero(field, dim_n)
    } else {
        Subspace::from_rows(&Matrix::from_rows(field, rows)?)
    };
    let cocycles = kernel(&total.d(n)).intersect(&band)?;
    let boundaries = image(&total.d(n - 1)).intersect(&band)?;
    let mid = cocycles.dim() - boundaries.dim();
    Ok((first, mid, last))
}

/// The maps induced on total cohomology by a morphism, one matrix per
/// degree, in the canonical representative bases of source and target.
pub struct InducedCohomology {
    pub source: Cohomology,
    pub target: Cohomology,
    pub maps: BTreeMap<i32, Matrix>,
}

pub fn induced_de_rham(f: &Morphism) -> Result<InducedCohomology> {
    f.validate()?;
    let source = Cohomology::new(&f.source)?;
    let target = Cohomology::new(&f.target)?;
    let mut maps = BTreeMap::new();
    let degrees: BTreeSet<i32> = source
        .total
        .degrees()
        .chain(target.total.degrees())
        .collect();
    for &k in &degrees {
        let (sq, tq) = match (source.quotient(k), target.quotient(k)) {
            (Some(s), Some(t)) => (s, t),
            _ => continue,
        };
        let m = total_map(f, &source.total, &target.total, k);
        let induced = tq.matrix_from(sq, &m)?;
        maps.insert(k, induced);
    }
    Ok(InducedCohomology {
        source,
        target,
        maps,
    })
}

/// Builds the block matrix `T^k(source) → T^k(target)` of a morphism.
fn total_map(f: &Morphism, source: &TotalComplex, target: &TotalComplex, k: i32) -> Matrix {
    let mut m = Matrix::zero(source.field(), target.dim(k), source.dim(k));
    for &((p, q), soff, sdim) in source.blocks(k) {
        let Some((toff, tdim)) = target.block(k, (p, q)) else {
            continue;
        };
        let comp = f.map(p, q);
        debug_assert_eq!((comp.rows(), comp.cols()), (tdim, sdim));
        for r in 0..tdim {
            for c in 0..sdim {
                let v = comp.at(r, c);
                if !v.is_zero() {
                    *m.at_mut(toff + r, soff + c) = v.clone();
                }
            }
        }
    }
    m
}

impl InducedCohomology {
    pub fn map(&self, k: i32) -> Matrix {
        match self.maps.get(&k) {
            Some(m) => m.clone(),
            None => Matrix::zero(
                self.source.total.field(),
                self.target.betti(k),
                self.source.betti(k),
            ),
        }
    }

    /// The pair `(f(F_i^p H^k), F_i^p H^k ∩ im f)` whose equality for all
    /// `p` and `k` is strictness.
    pub fn strictness_pair(
        &self,
        side: SsSide,
        k: i32,
        level: i32,
    ) -> Result<(Subspace, Subspace)> {
        let m = self.map(k);
        let pushed = self.source.filtration(side, k, level)?.map_by(&m)?;
        let full_image =
            Subspace::full(self.source.total.field(), self.source.betti(k)).map_by(&m)?;
        let cut = self
            .target
            .filtration(side, k, level)?
            .intersect(&full_image)?;
        Ok((pushed, cut))
    }

    /// Does the induced map respect the Hodge filtration strictly, i.e.
    /// `f(F^p H) = F^p H ∩ im f` for all degrees and levels?
    pub fn is_strict(&self, side: SsSide) -> Result<bool> {
        let degrees: BTreeSet<i32> = self
            .source
            .total
            .degrees()
            .chain(self.target.total.degrees())
            .collect();
        for &k in &degrees {
            let levels: BTreeSet<i32> = self
                .source
                .total
                .blocks(k)
                .iter()
                .chain(self.target.total.blocks(k))
                .map(|&((p, q), _, _)| match side {
                    SsSide::One => p,
                    SsSide::Two => q,
                })
                .collect();
            for &level in &levels {
                let (pushed, cut) = self.strictness_pair(side, k, level)?;
                if pushed != cut {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Shape;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn elem(s: &str) -> DoubleComplex {
        DoubleComplex::elementary(s.parse::<Shape>().unwrap(), Q)
    }

    #[test]
    fn squares_are_cohomologically_invisible() {
        let sq = elem("S^{1,1}");
        let dr = de_rham(&sq).unwrap();
        assert!(dr.values().all(|(d, _)| *d == 0), "de Rham vanishes");
        assert!(dolbeault(&sq, SsSide::One).unwrap().is_empty());
        assert!(dolbeault(&sq, SsSide::Two).unwrap().is_empty());
        assert!(bott_chern_aeppli(&sq).unwrap().is_empty());
        for side in [SsSide::One, SsSide::Two] {
            for r in 1..4 {
                assert_eq!(ss_page(&sq, side, r).unwrap().total_dim(), 0);
            }
        }
        assert!(ddbar_lemma(&sq).unwrap());
    }

    #[test]
    fn dot_has_one_class_everywhere() {
        let dot = DoubleComplex::elementary(Shape::dot(1, 2), Q);
        let dr = de_rham(&dot).unwrap();
        assert_eq!(dr[&3].0, 1);
        assert_eq!(dolbeault(&dot, SsSide::One).unwrap()[&(1, 2)], 1);
        assert_eq!(dolbeault(&dot, SsSide::Two).unwrap()[&(1, 2)], 1);
        assert_eq!(bott_chern_aeppli(&dot).unwrap()[&(1, 2)], (1, 1));
        let fc = hodge_filtrations(&dot, 3).unwrap();
        assert_eq!(fc.refined[&(1, 2)], 1);
        assert_eq!(fc.refined.len(), 1);
    }

    #[test]
    fn even_zigzag_page_story() {
        // The length-4 zigzag S_{1,2}^{0,1}: E_1 supported at (0,1) and
        // (2,0); d_2 of rank one connects them; page 3 is zero; de Rham
        // vanishes; the other spectral sequence is zero from page 1 on.
        let z = elem("S_{1,2}^{0,1}");
        let p1 = ss_page(&z, SsSide::One, 1).unwrap();
        assert_eq!(p1.dim(0, 1), 1);
        assert_eq!(p1.dim(2, 0), 1);
        assert_eq!(p1.total_dim(), 2);
        assert!(p1.differentials.is_empty(), "d_1 vanishes here");

        let p2 = ss_page(&z, SsSide::One, 2).unwrap();
        assert_eq!(p2.total_dim(), 2);
        assert_eq!(p2.differential_rank(0, 1), 1);

        let p3 = ss_page(&z, SsSide::One, 3).unwrap();
        assert_eq!(p3.total_dim(), 0);

        assert_eq!(ss_page(&z, SsSide::Two, 1).unwrap().total_dim(), 0);
        assert!(de_rham(&z).unwrap().values().all(|(d, _)| *d == 0));

        // Dolbeault matches the page-1 indexing: ₁E₁ = H_{∂₂}, ₂E₁ = H_{∂₁}.
        let h2 = dolbeault(&z, SsSide::Two).unwrap();
        assert_eq!(h2.get(&(0, 1)), Some(&1));
        assert_eq!(h2.get(&(2, 0)), Some(&1));
        assert_eq!(h2.len(), 2);
        assert!(dolbeault(&z, SsSide::One).unwrap().is_empty());
    }

    #[test]
    fn side_two_page_conventions() {
        // Transposed story: S_{2,2}^{1,0} feeds the second spectral
        // sequence, with ₂d_2 of bidegree (-1, 2).
        let z = elem("S_{2,2}^{1,0}");
        let p1 = ss_page(&z, SsSide::Two, 1).unwrap();
        assert_eq!(p1.dim(1, 0), 1);
        assert_eq!(p1.dim(0, 2), 1);
        let p2 = ss_page(&z, SsSide::Two, 2).unwrap();
        assert_eq!(p2.differential_rank(1, 0), 1);
        assert_eq!(ss_page(&z, SsSide::One, 1).unwrap().total_dim(), 0);
    }

    #[test]
    fn odd_zigzag_filtration_jumps() {
        // S_d^{p,q} has a single de Rham class with refined Betti
        // concentrated at (p, q).
        for (d, p, q) in [(1, 0, 0), (3, 2, 2), (2, 0, 0), (1, 1, 0), (4, 1, 2)] {
            let z = DoubleComplex::elementary(Shape::Odd { d, p, q }, Q);
            let dr = de_rham(&z).unwrap();
            for (k, (dim, _)) in dr {
                assert_eq!(dim, usize::from(k == d), "betti of S_{d} at degree {k}");
            }
            let fc = hodge_filtrations(&z, d).unwrap();
            assert_eq!(
                fc.refined,
                BTreeMap::from([((p, q), 1)]),
                "refined table of S_{d}^{{{p},{q}}}"
            );
        }
    }

    #[test]
    fn page_dims_shrink_by_differential_ranks() {
        let a = elem("S_{1,2}^{0,1}")
            .direct_sum(&elem("S^{1,1}"))
            .unwrap()
            .direct_sum(&DoubleComplex::elementary(Shape::dot(0, 0), Q))
            .unwrap();
        for side in [SsSide::One, SsSide::Two] {
            let pages = ss_pages(&a, side, stable_page(&a) + 1).unwrap();
            for w in pages.windows(2) {
                let (cur, next) = (&w[0], &w[1]);
                for (&(p, q), e) in &cur.entries {
                    let out_rank = cur.differential_rank(p, q);
                    let in_rank = cur
                        .differentials
                        .iter()
                        .filter(|(&(sp, sq), _)| match side {
                            SsSide::One => (sp + cur.r as i32, sq - cur.r as i32 + 1) == (p, q),
                            SsSide::Two => (sp - cur.r as i32 + 1, sq + cur.r as i32) == (p, q),
                        })
                        .map(|(_, m)| m.rank())
                        .sum::<usize>();
                    assert_eq!(next.dim(p, q), e.dim - out_rank - in_rank);
                }
            }
        }
    }

    #[test]
    fn stable_page_equals_betti() {
        let a = elem("S_{1,2}^{0,1}")
            .direct_sum(&elem("S_2^{0,0}"))
            .unwrap();
        let h = Cohomology::new(&a).unwrap();
        let betti_sum: usize = h.betti_table().values().sum();
        let r = stable_page(&a);
        for side in [SsSide::One, SsSide::Two] {
            assert_eq!(ss_page(&a, side, r).unwrap().total_dim(), betti_sum);
        }
    }

    #[test]
    fn delta_of_small_zigzags() {
        let z = elem("S_1^{0,0}");
        let delta = delta_degrees(&z).unwrap();
        assert_eq!(delta.get(&1), Some(&0));
        assert_eq!(delta.get(&2), Some(&1));

        for (shape, at, l) in [("S_{1,3}^{0,2}", 2, 3), ("S_{2,2}^{1,0}", 1, 2)] {
            let z = elem(shape);
            let delta = delta_degrees(&z).unwrap();
            assert_eq!(delta.get(&at), Some(&l), "{shape} at p+q");
            assert_eq!(delta.get(&(at + 1)), Some(&l), "{shape} at p+q+1");
        }

        let dot = DoubleComplex::elementary(Shape::dot(2, 2), Q);
        assert!(delta_degrees(&dot).unwrap().values().all(|&v| v == 0));
    }

    #[test]
    fn ddbar_for_squares_and_dots() {
        let a = elem("S^{1,1}")
            .direct_sum(&DoubleComplex::elementary(Shape::dot(0, 0), Q))
            .unwrap();
        assert!(ddbar_lemma(&a).unwrap());
        assert!(predicates(&a).unwrap().ddbar);
        let z = elem("S_1^{0,0}");
        assert!(!ddbar_lemma(&z).unwrap());
    }

    #[test]
    fn middle_band_rejects_small_n() {
        let dot = DoubleComplex::elementary(Shape::dot(0, 0), Q);
        assert!(middle_cohomology(&dot, 1).is_err());
        let corner = DoubleComplex::elementary(Shape::dot(2, 0), Q);
        assert_eq!(middle_cohomology(&corner, 2).unwrap(), (1, 0, 0));
    }

    #[test]
    fn identity_and_zero_morphisms_are_strict() {
        let a = elem("S_1^{0,0}").direct_sum(&elem("S^{1,1}")).unwrap();
        let id = Morphism::identity(&a);
        let ind = induced_de_rham(&id).unwrap();
        assert!(ind.is_strict(SsSide::One).unwrap());
        assert!(ind.is_strict(SsSide::Two).unwrap());

        let zero = Morphism::zero(&a, &a);
        let ind = induced_de_rham(&zero).unwrap();
        assert!(ind.is_strict(SsSide::One).unwrap());
        assert!(ind.is_strict(SsSide::Two).unwrap());
    }
}
