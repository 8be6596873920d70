//! Distance geometry over prime fields and the VC-dimension of
//! sphere-intersection classifiers.
//!
//! Points of `F_q^d` are indexed row-major in radix `q` ([`PointId`]), and
//! subsets are dense bitsets over that index ([`PointSet`]). The modules
//! build on each other: [`field`] and [`geometry`] give spheres and poles,
//! [`graph`] the distance graph and chain counts, [`prism`] the prisms and
//! bad sets, [`vc`] shattering and VC-dimension, [`pac`] the learning
//! simulation, and [`harness`] configuration and records for the binary.

pub mod check;
pub mod error;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod harness;
pub mod pac;
pub mod pointset;
pub mod prism;
pub mod vc;

pub use check::{Check, CheckOutcome};
pub use error::{Error, Result};
pub use field::{FieldParams, Point, PointId, Space};
pub use geometry::Geometry;
pub use graph::DistanceGraph;
pub use pointset::PointSet;
