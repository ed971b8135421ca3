//! Quivers, paths and the path algebra kQ.
//!
//! Paths are stored in application order and printed right-to-left, so the
//! product `x · y` applies `y` first.

mod element;
mod path;
mod quiver;
mod span;

pub use element::{graded_component, multiply, Element};
pub use path::{compose, enumerate_paths, strip_left, strip_right, Path, PathCodec};
pub use quiver::{Arrow, Quiver};
pub(crate) use quiver::valid_id;
pub use span::BimoduleSpan;
