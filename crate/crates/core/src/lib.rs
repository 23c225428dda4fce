//! Exact graded invariants of codimension-one foliations on projective space.
//!
//! Everything is computed over `ℚ(i)` with exact Gaussian elimination on
//! homogeneous slices of polynomial differential forms.

pub mod complex;
pub mod error;
pub mod foliation;
pub mod form;
pub mod linalg;
pub mod parser;
pub mod poly;
pub mod scalar;
pub mod unfolding;

pub use complex::{ComplexKind, Engine};
pub use error::{Error, Result};
pub use foliation::{Foliation, FoliationSpec, LogarithmicSpec, RationalSpec};
pub use form::Form;
pub use poly::{Monomial, Poly};
pub use scalar::Scalar;
