//! Planar R-curves and R-paths: validators for the curvature-type
//! conditions, rasterized R-hulls, loop erasure and test-curve generation.
//!
//! Everything is generic over the scalar type; the aliases below fix it to
//! `f64` (or `f32` with the `F32` suffix).

pub mod error;
pub mod geom;
pub mod polyline;
pub mod rhull;
pub mod scalar;
pub mod transforms;
pub mod validators;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Point2 = geom::point::Point<f64>;
pub type Polyline2 = polyline::Polyline<f64>;
pub type AngularSet2 = geom::angular::AngularSet<f64>;
pub type Report = validators::ValidationReport<f64>;
pub type Options = validators::CheckOptions<f64>;
pub type HullRaster = rhull::RHullRaster<f64>;

pub type Point2F32 = geom::point::Point<f32>;
pub type Polyline2F32 = polyline::Polyline<f32>;
pub type AngularSet2F32 = geom::angular::AngularSet<f32>;
pub type ReportF32 = validators::ValidationReport<f32>;
pub type OptionsF32 = validators::CheckOptions<f32>;
pub type HullRasterF32 = rhull::RHullRaster<f32>;
