//! The algebra `A(Q,W) = kQ/(∂ₐW)` truncated by degree, the map `θ`, the
//! relation intersection `R·kQ₁ ∩ kQ₁·R`, and truncated exactness checks
//! for the Calabi-Yau complex.

mod complex;
mod cy;
mod intersection;
mod relations;
mod truncated;

pub use complex::{build_complex, check_exactness, ComplexData, DegreePiece, ExactnessReport};
pub use cy::{cy_check, cy_check_relations, one_sided_homology, CyReport, DegreeHomology, POSITIONS};
pub use intersection::{relation_intersection, theta, RelationIntersection, ThetaMap};
pub(crate) use intersection::{left_multiply, right_multiply};
pub use relations::RelationSet;
pub(crate) use relations::to_sparse;
pub use truncated::{build_graded, TruncatedAlgebra};
