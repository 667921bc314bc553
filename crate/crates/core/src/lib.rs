//! Exact computations on filiform Leibniz algebras: the three structural
//! families, their derivation and pre-derivation spaces, and decisions of
//! characteristic and strong nilpotency.

pub mod algebra;
pub mod classify;
pub mod derivops;
pub mod error;
pub mod exactlin;
pub mod families;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use exactlin::{MatrixQ, Rational, SubspaceQ};
