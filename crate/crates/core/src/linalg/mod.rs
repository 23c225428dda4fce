//! Exact linear algebra on graded slices.

mod basis;
mod matrix;
mod operator;
mod subspace;
mod vector;

pub use basis::{index_tuples, SliceBasis};
pub use matrix::ExactMatrix;
pub use operator::Operator;
pub use subspace::Subspace;
pub use vector::SparseVec;
