use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geom::angular::{smallest_enclosing_arc, AngularSet};
use crate::geom::point::Point;
use crate::scalar::Scalar;

use super::raster::RHullRaster;

pub const DEFAULT_PROBE_CELLS: f64 = 8.0;

/// Angular samples per probe ring.
const RING_SAMPLES: usize = 2048;

/// Ray directions used to collect free points around the probed vertex.
const POOL_DIRS: usize = 8192;

/// Normal set of the raster region at boundary point `x`, probing out to
/// [`DEFAULT_PROBE_CELLS`].
pub fn normal_set_raster<T: Scalar>(region: &RHullRaster<T>, x: Point<T>) -> Result<AngularSet<T>> {
    normal_set_raster_with(region, x, DEFAULT_PROBE_CELLS)
}

/// Tangent-cone estimate at `x` and its polar cone on the unit circle.
///
/// The region is read through its clearance field. On each ring of radius
/// `r` (cells) around `x` the arc where clearance is non-negative is measured;
/// the extents are fitted as `alpha + beta / r` so that a constant offset of
/// the field does not widen the cone. A ring with no non-negative sample
/// contributes a zero-width cone along its clearance maximum.
///
/// For hull rasters the arc ends are then tightened with a sub-cell
/// clearance: free grid points are slid onto the boundary of the input's
/// `R`-neighbourhood, and free points found by casting rays from `x` are
/// added, so the grid spacing does not rotate the cone edges.
pub fn normal_set_raster_with<T: Scalar>(region: &RHullRaster<T>, x: Point<T>, probe_cells: f64) -> Result<AngularSet<T>> {
    if !(probe_cells >= 3.0) {
        return Err(Error::Domain(format!("probe radius must be at least 3 cells, got {probe_cells}")));
    }
    let s0 = region.clearance_at(x);
    if s0 < -1.0 {
        return Err(Error::Domain(format!("point is outside the region (clearance {s0:.3} cells)")));
    }
    if s0 > 1.0 {
        return Ok(AngularSet::empty());
    }
    let cell = region.cell().as_f64();
    let (px, py) = (x.x.as_f64(), x.y.as_f64());
    let point = |r: f64, theta: f64| Point::new(T::lit(px + r * cell * theta.cos()), T::lit(py + r * cell * theta.sin()));
    let at = |r: f64, theta: f64| region.clearance_at(point(r, theta));
    let pool = region.ray_free_points(x, POOL_DIRS, 2.0 * probe_cells + 2.0);
    let fine = |r: f64, theta: f64| region.refined_clearance_at(point(r, theta), &pool);
    let mut radii = Vec::new();
    let mut r = 2.0;
    while r <= probe_cells + 1e-9 {
        radii.push(r);
        r += 1.0;
    }
    let mut fits = Vec::new();
    let mut mids = Vec::new();
    for &r in &radii {
        let vals: Vec<f64> = (0..RING_SAMPLES).map(|k| at(r, TAU * k as f64 / RING_SAMPLES as f64)).collect();
        match ring_cone(&vals) {
            RingCone::Full => return Ok(AngularSet::empty()),
            RingCone::Arc { start, width } => {
                let (start, width) = refine_arc(|t| fine(r, t), start, width);
                fits.push((r, width));
                mids.push(start + width * 0.5);
            }
        }
    }
    let alpha = fit_extent(&fits);
    if alpha >= PI {
        return Ok(AngularSet::empty());
    }
    let mid = circular_mean(&mids);
    let start = mid + PI - (PI - alpha) * 0.5;
    Ok(AngularSet::arc(T::lit(start), T::lit(PI - alpha)))
}

enum RingCone {
    Full,
    Arc { start: f64, width: f64 },
}

/// Smallest arc covering the non-negative part of one ring.
fn ring_cone(vals: &[f64]) -> RingCone {
    let n = vals.len();
    let step = TAU / n as f64;
    if vals.iter().all(|&v| v >= 0.0) {
        return RingCone::Full;
    }
    let mut angles = Vec::new();
    for k in 0..n {
        let (a, b) = (vals[k], vals[(k + 1) % n]);
        let theta = k as f64 * step;
        if a >= 0.0 {
            angles.push(theta);
        }
        if (a >= 0.0) != (b >= 0.0) {
            // sub-sample crossing
            angles.push(theta + step * a / (a - b));
        }
    }
    if angles.is_empty() {
        let (k, _) = vals
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, &v)| if v > best.1 { (k, v) } else { best });
        return RingCone::Arc {
            start: k as f64 * step,
            width: 0.0,
        };
    }
    match smallest_enclosing_arc(&angles) {
        Some(iv) if iv.width < TAU - 2.0 * step => RingCone::Arc {
            start: iv.start,
            width: iv.width,
        },
        _ => RingCone::Full,
    }
}

/// Pulls both ends of a ring arc inwards to where the refined clearance
/// `f` becomes non-negative. The coarse field never lies below the refined
/// one, so the refined arc sits inside the coarse arc.
fn refine_arc(f: impl Fn(f64) -> f64, start: f64, width: f64) -> (f64, f64) {
    let step = TAU / RING_SAMPLES as f64;
    if width <= 0.0 {
        return (start, width);
    }
    let end = start + width;
    let edge = |from: f64, dir: f64| {
        let mut out = from;
        let mut t = 0.0;
        while t <= width && f(from + dir * t) < 0.0 {
            out = from + dir * t;
            t += step;
        }
        if t > width {
            return None;
        }
        let (mut a, mut b) = (out, from + dir * t);
        for _ in 0..12 {
            let m = 0.5 * (a + b);
            if f(m) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        Some(b)
    };
    match (edge(start, 1.0), edge(end, -1.0)) {
        (Some(lo), Some(hi)) if hi >= lo => (lo, hi - lo),
        _ => (start + width * 0.5, 0.0),
    }
}

/// Intercept of a least-squares fit `width = alpha + beta / r`, kept within
/// the observed range.
fn fit_extent(fits: &[(f64, f64)]) -> f64 {
    let n = fits.len() as f64;
    let lo = fits.iter().map(|f| f.1).fold(f64::INFINITY, f64::min);
    let hi = fits.iter().map(|f| f.1).fold(f64::NEG_INFINITY, f64::max);
    if fits.len() < 2 {
        return fits.first().map_or(0.0, |f| f.1);
    }
    let mx = fits.iter().map(|f| 1.0 / f.0).sum::<f64>() / n;
    let my = fits.iter().map(|f| f.1).sum::<f64>() / n;
    let sxx: f64 = fits.iter().map(|f| (1.0 / f.0 - mx).powi(2)).sum();
    let sxy: f64 = fits.iter().map(|f| (1.0 / f.0 - mx) * (f.1 - my)).sum();
    let beta = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let alpha = my - beta * mx;
    // extrapolation may overshoot; allow a small margin below the narrowest ring
    alpha.clamp((2.0 * lo - hi).max(0.0), hi)
}

fn circular_mean(angles: &[f64]) -> f64 {
    let (s, c) = angles.iter().fold((0.0, 0.0), |acc, a| (acc.0 + a.sin(), acc.1 + a.cos()));
    s.atan2(c)
}
