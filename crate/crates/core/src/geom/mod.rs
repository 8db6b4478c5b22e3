//! Plane primitives: points, arcs of the unit circle, lenses, curved angles
//! and convex hulls.

pub mod angular;
pub mod constraints;
pub mod hull;
pub mod lens;
pub mod point;

pub use angular::{canonical_angle, circular_distance, smallest_enclosing_arc, AngularInterval, AngularSet, Direction};
pub use constraints::{curved_angle_measure, halfcircle_constraint};
pub use hull::{convex_hull, min_enclosing_circle, tangent_cone_at_hull_vertex, ConvexPolygon, HullCone, HullLocation};
pub use lens::Lens;
pub use point::{dist_point_segment, Point};
