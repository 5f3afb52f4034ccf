//! Exact-arithmetic structure theory of bounded double complexes.
//!
//! A bounded double complex over a field decomposes uniquely into *squares*
//! and *zigzags*. This crate computes that decomposition (as a multiplicity
//! vector) together with every cohomology theory attached to a double
//! complex — de Rham, row/column (Dolbeault), Bott-Chern and Aeppli — both
//! Frölicher spectral sequences with their differentials, Hodge filtrations
//! and refined Betti numbers, non-∂∂̄ degrees, the Grothendieck rings of
//! double complexes up to `E_r`-isomorphism, and builders for the standard
//! complex-geometric model complexes (nilmanifold Dolbeault models, Hopf and
//! Calabi-Eckmann models, Hodge diamonds, blowup and projective-bundle class
//! composers).
//!
//! All arithmetic is exact: scalars are elements of ℚ, ℚ(i) or 𝔽_p and every
//! dimension is obtained from exact rank computations. There is no floating
//! point anywhere.

pub mod complex;
pub mod doc;
pub mod field;
pub mod matrix;
pub mod models;
pub mod multiplicity;
pub mod render;
pub mod ring;
pub mod sample;
pub mod shape;
pub mod spectral;
pub mod subspace;

mod exterior;

pub use complex::{DoubleComplex, Morphism, Violation};
pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use multiplicity::MultiplicityVector;
pub use ring::{Level, NormalForm, RingClass};
pub use shape::{PageBound, Shape, SsSide};
pub use subspace::Subspace;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("not a subspace: {0}")]
    NotASubspace(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("invalid complex: {}", complex::describe_violations(.0))]
    InvalidComplex(Vec<Violation>),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("ring level mismatch: {0}")]
    LevelMismatch(String),
    #[error("invalid Lie data: {0}")]
    InvalidLieData(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
