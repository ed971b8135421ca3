//! Exact computations for quiver algebras defined by potentials.
//!
//! The crate covers the path algebra of a finite quiver, the cyclic calculus
//! on potentials, the algebra `A(Q,W)` truncated by degree, PBW deformation
//! conditions with potential reconstruction, and generators for a catalogue of
//! worked examples.

pub mod commands;
pub mod error;
pub mod exactalg;
pub mod pbwengine;
pub mod potentials;
pub mod sampling;
pub mod quiverpath;
pub mod textformat;
pub mod vacualgebra;
pub mod zoo;

pub use error::{Error, Result};
pub use exactalg::{FieldSpec, MatrixQ, Scalar, Subspace};
pub use pbwengine::{Deformation, LambdaTable, PbwReport};
pub use potentials::{CycleClass, Potential, TensorElement};
pub use quiverpath::{BimoduleSpan, Element, Path, Quiver};
pub use vacualgebra::{RelationSet, TruncatedAlgebra};
