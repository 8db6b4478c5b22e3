//! Raster and arc-polygon approximations of the R-hull.

mod arcs;
mod edt;
mod frame;
mod raster;
mod nested;
mod normal;
mod reach;

pub use arcs::{r_hull_arcs, ArcPolygon, BoundaryPiece};
pub use frame::{CellBox, RasterFrame};
pub use raster::{r_hull_raster, r_hull_raster_in, RHullRaster};
pub use reach::{reach_at_least, reach_at_least_seeded, ReachCheck, DEFAULT_REACH_SEED};
pub use nested::{nested_family, NestedFamily};
pub use normal::{normal_set_raster, normal_set_raster_with, DEFAULT_PROBE_CELLS};
