//! Deterministic random double complexes with known decompositions.
//!
//! A sample is produced by drawing a random multiset of shapes inside a
//! box, realizing the elementary model, and conjugating every component by
//! random invertible matrices. The result is a generic-looking complex
//! whose multiplicity vector is known by construction, which is exactly
//! what the reconciliation and equivalence tests need. Used by the test
//! suites and the browser demo; not part of the mathematical API.

use rand::Rng;

use crate::complex::DoubleComplex;
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::multiplicity::MultiplicityVector;
use crate::shape::{Shape, SsSide};

#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    /// Support box `[0, width) × [0, height)`.
    pub width: i32,
    pub height: i32,
    /// Largest allowed dimension per bidegree.
    pub max_dim: usize,
    /// Number of shape draws attempted.
    pub draws: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            width: 4,
            height: 4,
            max_dim: 3,
            draws: 7,
        }
    }
}

/// A random shape whose support fits in the box, or `None` when the draw
/// does not fit.
fn draw_shape(rng: &mut impl Rng, width: i32, height: i32) -> Option<Shape> {
    let shape = match rng.gen_range(0..6) {
        0 => Shape::dot(rng.gen_range(0..width), rng.gen_range(0..height)),
        1 | 2 => {
            // Odd zigzag of length 3 or 5.
            let m = rng.gen_range(1..=2);
            let sign: bool = rng.gen();
            let (p, q, d);
            if sign {
                // concentrated in degrees d, d-1: columns p-m..p
                p = rng.gen_range(0..width);
                let a = rng.gen_range(0..height);
                d = p + a;
                q = d + m - p;
            } else {
                p = rng.gen_range(0..width);
                let a = rng.gen_range(0..height);
                d = p + a;
                q = d - m - p;
            }
            Shape::Odd { d, p, q }
        }
        3 => {
            let r = rng.gen_range(1..=3u32);
            let side = if rng.gen() { SsSide::One } else { SsSide::Two };
            let p = rng.gen_range(0..width);
            let q = rng.gen_range(0..height);
            Shape::Even { side, r, p, q }
        }
        _ => Shape::Square {
            p: rng.gen_range(1..width.max(2)),
            q: rng.gen_range(1..height.max(2)),
        },
    };
    let fits = shape
        .point_set()
        .iter()
        .all(|&(p, q)| p >= 0 && p < width && q >= 0 && q < height);
    fits.then_some(shape)
}

/// A random multiset of shapes in the box respecting the per-bidegree
/// dimension cap.
pub fn random_multiplicities(rng: &mut impl Rng, cfg: &SampleConfig) -> MultiplicityVector {
    let mut m = MultiplicityVector::new();
    let mut dims: std::collections::BTreeMap<(i32, i32), usize> = Default::default();
    for _ in 0..cfg.draws {
        let Some(shape) = draw_shape(rng, cfg.width, cfg.height) else {
            continue;
        };
        let pts = shape.point_set();
        if pts
            .iter()
            .any(|pt| dims.get(pt).copied().unwrap_or(0) + 1 > cfg.max_dim)
        {
            continue;
        }
        for pt in pts {
            *dims.entry(pt).or_insert(0) += 1;
        }
        m.add(shape, 1);
    }
    m
}

fn random_scalar(rng: &mut impl Rng, field: FieldSpec) -> crate::field::Scalar {
    match field {
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-2..=2)),
        FieldSpec::GaussianRationals => {
            let re = field.from_i64(rng.gen_range(-2..=2));
            let im = crate::field::Scalar::i().mul(&field.from_i64(rng.gen_range(-1..=1)));
            re.add(&im)
        }
        FieldSpec::PrimeField(p) => field.from_i64(rng.gen_range(0..p.min(64)) as i64),
    }
}

fn random_invertible(rng: &mut impl Rng, field: FieldSpec, n: usize) -> Matrix {
    if n == 0 {
        return Matrix::zero(field, 0, 0);
    }
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| random_scalar(rng, field));
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// Conjugates every component by a random invertible matrix. The result is
/// isomorphic to the input, hence has the same multiplicity vector, but no
/// longer looks elementary.
pub fn scramble(a: &DoubleComplex, rng: &mut impl Rng) -> DoubleComplex {
    let field = a.field();
    let mut bases: std::collections::BTreeMap<(i32, i32), (Matrix, Matrix)> = Default::default();
    for ((p, q), dim) in a.support() {
        let g = random_invertible(rng, field, dim);
        let inv = g.inverse().expect("generated invertible");
        bases.insert((p, q), (g, inv));
    }
    let g = |bases: &std::collections::BTreeMap<(i32, i32), (Matrix, Matrix)>,
             p: i32,
             q: i32,
             dim: usize| {
        bases
            .get(&(p, q))
            .map(|(g, _)| g.clone())
            .unwrap_or_else(|| Matrix::zero(field, dim, dim))
    };
    let mut out = DoubleComplex::new(field);
    for ((p, q), dim) in a.support() {
        out.set_dim(p, q, dim);
    }
    for ((p, q), _) in a.support() {
        let (_, inv) = &bases[&(p, q)];
        let d1 = a.d1(p, q);
        if d1.rows() > 0 {
            let left = g(&bases, p + 1, q, d1.rows());
            out.set_d1(p, q, left.mul(&d1).unwrap().mul(inv).unwrap());
        }
        let d2 = a.d2(p, q);
        if d2.rows() > 0 {
            let left = g(&bases, p, q + 1, d2.rows());
            out.set_d2(p, q, left.mul(&d2).unwrap().mul(inv).unwrap());
        }
    }
    out
}

/// A random valid complex with its (known) multiplicity vector.
pub fn random_complex(
    rng: &mut impl Rng,
    field: FieldSpec,
    cfg: &SampleConfig,
) -> (DoubleComplex, MultiplicityVector) {
    let m = random_multiplicities(rng, cfg);
    let a = scramble(&m.realization(field), rng);
    (a, m)
}

/// A small rotation of coefficient fields for mixed-field test corpora.
pub fn field_cycle(i: usize) -> FieldSpec {
    match i % 5 {
        0 => FieldSpec::Rationals,
        1 => FieldSpec::PrimeField(2),
        2 => FieldSpec::GaussianRationals,
        3 => FieldSpec::PrimeField(5),
        _ => FieldSpec::PrimeField(13),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid_and_reproducible() {
        let cfg = SampleConfig::default();
        for seed in 0..10u64 {
            let field = field_cycle(seed as usize);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, m) = random_complex(&mut rng, field, &cfg);
            assert_eq!(a.validate(), vec![], "seed {seed}");
            assert_eq!(a.total_dim(), m.total_dim(), "seed {seed}");

            let mut rng2 = ChaCha8Rng::seed_from_u64(seed);
            let (b, m2) = random_complex(&mut rng2, field, &cfg);
            assert_eq!(a, b, "determinism at seed {seed}");
            assert_eq!(m, m2);
        }
    }

    #[test]
    fn scrambling_preserves_multiplicities() {
        let cfg = SampleConfig {
            width: 3,
            height: 3,
            max_dim: 2,
            draws: 5,
        };
        for seed in 0..6u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
            let (a, m) = random_complex(&mut rng, field_cycle(seed as usize), &cfg);
            let computed = crate::multiplicity::multiplicities(&a).unwrap();
            assert_eq!(computed, m, "seed {seed}");
        }
    }
}
