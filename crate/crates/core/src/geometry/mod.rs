//! Exact rational planar geometry: points, segments, PL paths, the sup metric
//! on paths and the Hausdorff distance on finite unions of segments.
//!
//! Nothing in here touches floating point. Distances are carried squared;
//! decimal renderings are produced on demand with round-half-even.

mod hausdorff;
mod path;
mod primitives;
pub mod rational;
mod surd;

pub use hausdorff::{directed_distance_sq, hausdorff_distance_sq};
pub use path::{sup_distance, PLPath, SqDistance};
pub use primitives::{orient, point_segment_distance_sq, segments_intersect, Intersection, Point2, Segment};
pub use rational::Rational;
pub use surd::{quadratic_roots, Surd};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate segment at {0}")]
    DegenerateSegment(Point2),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("parameter {0} outside [0,1]")]
    ParameterOutOfRange(Rational),
    #[error("empty segment set")]
    EmptySet,
}
