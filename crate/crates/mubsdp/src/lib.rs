//! Symmetry-reduced moment relaxations for the existence of `k` mutually unbiased
//! bases in dimension `d`.
//!
//! The exact core works over [`Rational`]; linear forms and elimination are
//! generic over [`Scalar`] so the same code evaluates numerically in `f64`/`f32`.

pub mod checks;
pub mod combinatorics;
pub mod linalg;
pub mod model;
pub mod reducer;
pub mod scalar;
pub mod sdp;
pub mod specht;
pub mod word;
pub mod wreath;

pub use scalar::Scalar;

/// Exact rationals, the scalar for all symbolic work.
pub type Rational = num_rational::BigRational;
/// Affine forms over exact rationals.
pub type RationalForm = linalg::LinearForm<Rational>;
/// Affine forms evaluated in double precision.
pub type F64Form = linalg::LinearForm<f64>;
/// Affine forms evaluated in single precision.
pub type F32Form = linalg::LinearForm<f32>;
