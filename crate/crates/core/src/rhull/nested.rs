use crate::error::{Error, Result};
use crate::geom::hull::min_enclosing_circle;
use crate::geom::point::Point;
use crate::polyline::Polyline;
use crate::scalar::Scalar;
use crate::validators::{require_r_path, CheckOptions};

use super::frame::RasterFrame;
use super::normal::normal_set_raster;
use super::raster::{r_hull_raster_in, RHullRaster};

/// Hulls of growing prefixes on one shared frame, with the checks run on them.
#[derive(Debug, Clone)]
pub struct NestedFamily<T> {
    /// Arc-length cut points `s_k`, increasing.
    pub cuts: Vec<T>,
    pub hulls: Vec<RHullRaster<T>>,
    /// `(k, cell)`: a cell of hull `k` with no cell of hull `k + 1` within one cell.
    pub nesting_violations: Vec<(usize, (usize, usize))>,
    /// Cuts whose end point is not within one cell of the hull boundary.
    pub boundary_violations: Vec<usize>,
    /// Cuts whose forward direction misses the dilated normal set, with the
    /// angular distance.
    pub direction_violations: Vec<(usize, T)>,
}

impl<T> NestedFamily<T> {
    pub fn passed(&self) -> bool {
        self.nesting_violations.is_empty() && self.boundary_violations.is_empty() && self.direction_violations.is_empty()
    }
}

/// Hulls `Ω_s` of the prefixes `c([0, s])` at `sample_count` cut points spread
/// evenly over the open length range.
pub fn nested_family<T: Scalar>(
    c: &Polyline<T>,
    radius: T,
    sample_count: usize,
    grid_n: usize,
    opts: &CheckOptions<T>,
) -> Result<NestedFamily<T>> {
    if sample_count == 0 {
        return Err(Error::Domain("sample_count must be positive".into()));
    }
    require_r_path("nested_family", c, radius, opts)?;
    let (center, r) = min_enclosing_circle(c.vertices())?;
    if r >= radius {
        return Err(Error::precondition(
            "nested_family",
            format!("curve is not inside an open disk of radius {radius} (enclosing radius {r})"),
            Vec::new(),
        ));
    }
    let frame = RasterFrame::around(center, radius, grid_n)?;
    let total = c.length();
    let cuts: Vec<T> = (1..=sample_count)
        .map(|k| total * T::lit(k as f64 / (sample_count + 1) as f64))
        .collect();
    let mut out = NestedFamily {
        cuts: cuts.clone(),
        hulls: Vec::with_capacity(sample_count),
        nesting_violations: Vec::new(),
        boundary_violations: Vec::new(),
        direction_violations: Vec::new(),
    };
    for (k, &s) in cuts.iter().enumerate() {
        let prefix = c.prefix_by_length(s)?;
        let hull = r_hull_raster_in(&prefix, radius, &frame)?;
        let x = prefix.last();
        if !near_boundary(&hull, x) {
            out.boundary_violations.push(k);
        }
        let dir = forward_direction(c, s);
        let normals = normal_set_raster(&hull, x)?.dilate(opts.ang_slack);
        if !normals.contains(dir) {
            out.direction_violations.push((k, normals.distance_to(dir)));
        }
        out.hulls.push(hull);
    }
    for k in 1..out.hulls.len() {
        if let Err(cell) = out.hulls[k - 1].is_subset_of(&out.hulls[k], 1) {
            out.nesting_violations.push((k - 1, cell));
        }
    }
    Ok(out)
}

/// Both an inside and an outside cell within one cell of `x`.
fn near_boundary<T: Scalar>(hull: &RHullRaster<T>, x: Point<T>) -> bool {
    let Some((ci, cj)) = hull.frame().cell_of(x) else {
        return false;
    };
    let (mut inside, mut outside) = (false, false);
    for j in cj.saturating_sub(1)..=cj + 1 {
        for i in ci.saturating_sub(1)..=ci + 1 {
            if hull.is_inside(i, j) {
                inside = true;
            } else {
                outside = true;
            }
        }
    }
    inside && outside
}

/// Direction of the segment continuing the curve past arc length `s`.
fn forward_direction<T: Scalar>(c: &Polyline<T>, s: T) -> T {
    let mut acc = T::zero();
    for k in 0..c.segment_count() {
        acc += c.segment_length(k);
        if acc > s {
            return c.segment_dir(k).angle();
        }
    }
    c.segment_dir(c.segment_count() - 1).angle()
}
