//! Tripod configurations and triple normals of closed curves.
//!
//! A tripod configuration of a closed curve is a triple of normal geodesics
//! meeting at one point at pairwise angles of `2pi/3`. This crate locates and
//! certifies them for
//!
//! * locally convex Euclidean curves given by a support function
//!   ([`tripod_euclidean`]),
//! * arbitrary closed curves and arbitrary prescribed angles, through
//!   maximal circumscribing triangles ([`triple_normal`]),
//! * near-circular curves on the sphere and in the hyperbolic plane, as
//!   critical points of a distance-sum functional ([`morse`]),
//! * regular polygons ([`polygon`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod curves;
pub mod error;
pub mod geometry;
pub mod io;
pub mod morse;
pub mod numeric;
pub mod polygon;
pub mod triple_normal;
pub mod tripod_euclidean;

pub use config::{NormalFoot, TripodConfiguration};
pub use curves::{CurveModel, SampledCurve, SupportCurve};
pub use error::{Error, Result};
pub use geometry::{Angle, GeodesicLine, GeometryKind, Vec2};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
