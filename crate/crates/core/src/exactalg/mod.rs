//! Exact linear algebra over the rationals and prime fields.

mod matrix;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::{kernel, rref, solve_affine, MatrixQ};
pub use scalar::{is_prime, FieldSpec, Scalar};
pub use sparse::{
    linear_dependencies, reduce_full_with, reduce_top_with, sparse_axpy, sparse_from_pairs, sparse_scale, Echelon, SpanSolver,
    SparseVec,
};
pub use subspace::{contains, intersect, Subspace};
