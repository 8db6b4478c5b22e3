use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::hull::min_enclosing_circle;
use crate::geom::point::Point;
use crate::polyline::Polyline;
use crate::scalar::Scalar;

use super::edt::{feature_transform_rows, squared_dist_to, squared_edt_rows, NO_FEATURE};
use super::frame::{CellBox, RasterFrame};

/// Clearance stored for cells outside the window, in cells.
const FAR_OUTSIDE: f32 = -1.0e6;

/// Rasterized R-hull.
///
/// A cell is outside iff the open disk of radius `R` around some free grid
/// point (a point at distance `>= R` from the input) covers the whole cell
/// square; every other cell is inside. Data is kept for a window around the
/// input; cells outside the window are outside.
///
/// `clearance` is the distance (in cells) from a cell center to the nearest
/// free grid point minus `R`: non-negative exactly on the cell centers of the
/// continuous hull, up to lattice quantization.
#[derive(Debug, Clone, PartialEq)]
pub struct RHullRaster<T> {
    frame: RasterFrame<T>,
    radius: T,
    window: CellBox,
    inside: Vec<bool>,
    clearance: Vec<f32>,
    /// Nearest free grid point (frame indices) of each window cell, when the
    /// raster comes from a free set.
    nearest_free: Option<Vec<(u32, u32)>>,
    /// Input segments in lattice coordinates, for refined clearance.
    source: Option<Vec<[f64; 4]>>,
}

fn half_diag() -> f64 {
    std::f64::consts::FRAC_1_SQRT_2
}

/// Open `x`-interval where the horizontal line at height `y` is closer than
/// `r` to segment `ab`.
fn capsule_row_interval(a: (f64, f64), b: (f64, f64), r: f64, y: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in [a, b] {
        let dy = y - p.1;
        if dy.abs() < r {
            let s = (r * r - dy * dy).sqrt();
            lo = lo.min(p.0 - s);
            hi = hi.max(p.0 + s);
        }
    }
    let (ux, uy) = (b.0 - a.0, b.1 - a.1);
    let len = (ux * ux + uy * uy).sqrt();
    if len > 0.0 {
        let (ux, uy) = (ux / len, uy / len);
        let dy = y - a.1;
        // along = X ux + dy uy in [0, len]; across = -X uy + dy ux in (-r, r)
        let along = linear_range(ux, dy * uy, 0.0, len);
        let across = linear_range(-uy, dy * ux, -r, r);
        if let (Some(p), Some(q)) = (along, across) {
            let (l, h) = (p.0.max(q.0), p.1.min(q.1));
            if l < h {
                lo = lo.min(a.0 + l);
                hi = hi.max(a.0 + h);
            }
        }
    }
    (lo < hi).then_some((lo, hi))
}

/// `{X : lo <= alpha X + beta <= hi}` as an interval, `None` if empty.
fn linear_range(alpha: f64, beta: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    if alpha.abs() < 1e-300 {
        return (beta >= lo && beta <= hi).then_some((f64::NEG_INFINITY, f64::INFINITY));
    }
    let p = (lo - beta) / alpha;
    let q = (hi - beta) / alpha;
    Some((p.min(q), p.max(q)))
}

/// Smallest `t >= 0` with `q + t d` in the closed capsule of radius `r`
/// around segment `s`.
fn capsule_entry(q: (f64, f64), d: (f64, f64), s: &[f64; 4], r: f64) -> Option<f64> {
    let mut best = f64::INFINITY;
    for c in [(s[0], s[1]), (s[2], s[3])] {
        let (fx, fy) = (q.0 - c.0, q.1 - c.1);
        let a = d.0 * d.0 + d.1 * d.1;
        let b = fx * d.0 + fy * d.1;
        let k = fx * fx + fy * fy - r * r;
        if k <= 0.0 {
            return Some(0.0);
        }
        let disc = b * b - a * k;
        if a > 0.0 && disc >= 0.0 {
            let t = (-b - disc.sqrt()) / a;
            if t >= 0.0 {
                best = best.min(t);
            }
        }
    }
    let (ux, uy) = (s[2] - s[0], s[3] - s[1]);
    let len = ux.hypot(uy);
    if len > 0.0 {
        let (ux, uy) = (ux / len, uy / len);
        let (fx, fy) = (q.0 - s[0], q.1 - s[1]);
        // along = (f + t d).u in [0, len], across = (f + t d) x u in [-r, r]
        let along = linear_range(d.0 * ux + d.1 * uy, fx * ux + fy * uy, 0.0, len);
        let across = linear_range(d.0 * uy - d.1 * ux, fx * uy - fy * ux, -r, r);
        if let (Some(p), Some(q)) = (along, across) {
            let (l, h) = (p.0.max(q.0).max(0.0), p.1.min(q.1));
            if l <= h {
                best = best.min(l);
            }
        }
    }
    best.is_finite().then_some(best)
}

/// Parameter interval `[lo, hi]` (clipped to `t >= 0`) of the ray `q + t d`
/// inside the open capsule of radius `r` around segment `s`, `d` a unit
/// vector.
fn capsule_span(q: (f64, f64), d: (f64, f64), s: &[f64; 4], r: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for c in [(s[0], s[1]), (s[2], s[3])] {
        let (fx, fy) = (q.0 - c.0, q.1 - c.1);
        let b = fx * d.0 + fy * d.1;
        let disc = b * b - (fx * fx + fy * fy - r * r);
        if disc > 0.0 {
            let e = disc.sqrt();
            lo = lo.min(-b - e);
            hi = hi.max(-b + e);
        }
    }
    let (ux, uy) = (s[2] - s[0], s[3] - s[1]);
    let len = ux.hypot(uy);
    if len > 0.0 {
        let (ux, uy) = (ux / len, uy / len);
        let (fx, fy) = (q.0 - s[0], q.1 - s[1]);
        let along = linear_range(d.0 * ux + d.1 * uy, fx * ux + fy * uy, 0.0, len);
        let across = linear_range(d.0 * uy - d.1 * ux, fx * uy - fy * ux, -r, r);
        if let (Some(p), Some(q)) = (along, across) {
            let (l, h) = (p.0.max(q.0), p.1.min(q.1));
            if l < h {
                lo = lo.min(l);
                hi = hi.max(h);
            }
        }
    }
    let lo = lo.max(0.0);
    (lo < hi).then_some((lo, hi))
}

fn require_in_disk<T: Scalar>(vertices: &[Point<T>], radius: T) -> Result<(Point<T>, T)> {
    if !(radius > T::zero()) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    let (center, r) = min_enclosing_circle(vertices)?;
    if r >= radius {
        return Err(Error::precondition(
            "r_hull",
            format!("input is not inside an open disk of radius {radius} (enclosing radius {r})"),
            Vec::new(),
        ));
    }
    Ok((center, r))
}

/// Bounding box of the points, as `(lo, hi)` corners.
pub(crate) fn bounding_box<T: Scalar>(points: &[Point<T>]) -> (Point<T>, Point<T>) {
    let mut lo = points[0];
    let mut hi = points[0];
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

/// R-hull raster of a polyline with `grid_n` cells per `R`.
///
/// The input must lie in an open disk of radius `R`.
pub fn r_hull_raster<T: Scalar>(c: &Polyline<T>, radius: T, grid_n: usize) -> Result<RHullRaster<T>> {
    let (center, _) = require_in_disk(c.vertices(), radius)?;
    let frame = RasterFrame::around(center, radius, grid_n)?;
    r_hull_raster_in(c, radius, &frame)
}

/// Same as [`r_hull_raster`] on a caller-supplied frame, so rasters of
/// different inputs can be compared cell by cell.
pub fn r_hull_raster_in<T: Scalar>(c: &Polyline<T>, radius: T, frame: &RasterFrame<T>) -> Result<RHullRaster<T>> {
    require_in_disk(c.vertices(), radius)?;
    let cell = frame.cell.as_f64();
    let r_cells = radius.as_f64() / cell;
    let (lo, hi) = bounding_box(c.vertices());
    let window = frame.box_around(lo, hi, frame.cell * T::lit(2.0));
    let pad = frame.cell * T::lit(r_cells.ceil() + 4.0);
    let domain = frame.box_around(lo, hi, frame.cell * T::lit(2.0) + pad);
    let (nu0, nv0) = frame.lattice_coords(Point::new(lo.x - radius, lo.y - radius));
    let (nu1, nv1) = frame.lattice_coords(Point::new(hi.x + radius, hi.y + radius));
    if nu0 < 3.0 || nv0 < 3.0 || nu1 > (frame.nx - 4) as f64 || nv1 > (frame.ny - 4) as f64 {
        return Err(Error::Domain("input does not fit the raster frame".into()));
    }
    let (w, h) = (domain.width(), domain.height());
    let (ox, oy) = (frame.origin.x.as_f64(), frame.origin.y.as_f64());
    let segs: Vec<((f64, f64), (f64, f64))> = c
        .vertices()
        .windows(2)
        .map(|p| ((p[0].x.as_f64(), p[0].y.as_f64()), (p[1].x.as_f64(), p[1].y.as_f64())))
        .collect();
    let r = radius.as_f64();
    // free grid points: distance to the polyline at least R
    let free: Vec<bool> = (0..h)
        .into_par_iter()
        .flat_map_iter(|row| {
            let y = oy + (domain.j0 + row) as f64 * cell;
            let mut blocked = vec![false; w];
            for &(a, b) in &segs {
                if let Some((x0, x1)) = capsule_row_interval(a, b, r, y) {
                    let u0 = (x0 - ox) / cell - domain.i0 as f64;
                    let u1 = (x1 - ox) / cell - domain.i0 as f64;
                    let i_lo = (u0.floor() + 1.0).max(0.0);
                    let i_hi = (u1.ceil() - 1.0).min(w as f64 - 1.0);
                    if i_lo <= i_hi {
                        blocked[i_lo as usize..=i_hi as usize].fill(true);
                    }
                }
            }
            blocked.into_iter().map(|b| !b)
        })
        .collect();
    let (ou, ov) = frame.lattice_coords(frame.origin);
    let source = segs
        .iter()
        .map(|&(a, b)| [(a.0 - ox) / cell + ou, (a.1 - oy) / cell + ov, (b.0 - ox) / cell + ou, (b.1 - oy) / cell + ov])
        .collect();
    Ok(from_free_set(frame, radius, window, domain, &free, Some(source)))
}

/// Hull raster on `window` given the free grid points of `domain`.
fn from_free_set<T: Scalar>(
    frame: &RasterFrame<T>,
    radius: T,
    window: CellBox,
    domain: CellBox,
    free: &[bool],
    source: Option<Vec<[f64; 4]>>,
) -> RHullRaster<T> {
    let r_cells = (radius / frame.cell).as_f64();
    let (w, h) = (domain.width(), domain.height());
    let rows = (window.j0 - domain.j0)..(window.j1 - domain.j0);
    let feats = feature_transform_rows(free, w, h, rows);
    let thr2 = cover_threshold_sq(r_cells);
    let n = window.width() * window.height();
    let mut inside = Vec::with_capacity(n);
    let mut clearance = Vec::with_capacity(n);
    let mut nearest = Vec::with_capacity(n);
    for jr in 0..window.height() {
        for ir in 0..window.width() {
            let x = window.i0 - domain.i0 + ir;
            let y = window.j0 - domain.j0 + jr;
            let f = feats[jr * w + x];
            let d2 = squared_dist_to(f, x, y, w);
            inside.push(d2 >= thr2);
            clearance.push((d2.sqrt() - r_cells).min(1.0e6) as f32);
            nearest.push(if f == NO_FEATURE {
                (u32::MAX, u32::MAX)
            } else {
                ((f as usize % w + domain.i0) as u32, (f as usize / w + domain.j0) as u32)
            });
        }
    }
    RHullRaster {
        frame: *frame,
        radius,
        window,
        inside,
        clearance,
        nearest_free: Some(nearest),
        source,
    }
}

/// Squared radius (cells²) of the open disks that must cover a whole cell.
fn cover_threshold_sq(r_cells: f64) -> f64 {
    let t = r_cells - half_diag();
    t * t
}

impl<T: Scalar> RHullRaster<T> {
    /// Raster from a membership predicate evaluated at cell centers, for
    /// synthetic regions. Clearance is the signed distance to the mask edge.
    pub fn from_fn<F: Fn(Point<T>) -> bool + Sync>(frame: &RasterFrame<T>, radius: T, f: F) -> Self {
        let full = frame.full_box();
        let (w, h) = (full.width(), full.height());
        let mask: Vec<bool> = (0..w * h)
            .into_par_iter()
            .map(|k| f(frame.center_of(k % w, k / w)))
            .collect();
        let (mut i0, mut j0, mut i1, mut j1) = (usize::MAX, usize::MAX, 0, 0);
        for k in 0..w * h {
            if mask[k] {
                let (i, j) = (k % w, k / w);
                i0 = i0.min(i);
                j0 = j0.min(j);
                i1 = i1.max(i + 1);
                j1 = j1.max(j + 1);
            }
        }
        if i0 == usize::MAX {
            return RHullRaster {
                frame: *frame,
                radius,
                window: CellBox { i0: 0, j0: 0, i1: 0, j1: 0 },
                inside: Vec::new(),
                clearance: Vec::new(),
                nearest_free: None,
                source: None,
            };
        }
        let window = CellBox {
            i0: i0.saturating_sub(2),
            j0: j0.saturating_sub(2),
            i1: (i1 + 2).min(w),
            j1: (j1 + 2).min(h),
        };
        let outside: Vec<bool> = mask.iter().map(|&m| !m).collect();
        let rows = window.j0..window.j1;
        let to_out = squared_edt_rows(&outside, w, h, rows.clone());
        let to_in = squared_edt_rows(&mask, w, h, rows);
        let mut inside = Vec::new();
        let mut clearance = Vec::new();
        for jr in 0..window.height() {
            for i in window.i0..window.i1 {
                let k = jr * w + i;
                let m = mask[(window.j0 + jr) * w + i];
                inside.push(m);
                let c = if m { to_out[k].sqrt() - 0.5 } else { -(to_in[k].sqrt() - 0.5) };
                clearance.push(c.min(1.0e6) as f32);
            }
        }
        RHullRaster {
            frame: *frame,
            radius,
            window,
            inside,
            clearance,
            nearest_free: None,
            source: None,
        }
    }

    pub fn frame(&self) -> &RasterFrame<T> {
        &self.frame
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn cell(&self) -> T {
        self.frame.cell
    }

    pub fn window(&self) -> CellBox {
        self.window
    }

    pub fn is_inside(&self, i: usize, j: usize) -> bool {
        self.window.contains(i, j) && self.inside[self.window.index(i, j)]
    }

    pub fn count(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn inside_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in self.window.j0..self.window.j1 {
            for i in self.window.i0..self.window.i1 {
                if self.inside[self.window.index(i, j)] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether the cell containing `p` is inside.
    pub fn contains_point(&self, p: Point<T>) -> bool {
        self.frame.cell_of(p).is_some_and(|(i, j)| self.is_inside(i, j))
    }

    /// Clearance of cell `(i, j)` in cells.
    pub fn clearance(&self, i: usize, j: usize) -> f32 {
        if self.window.contains(i, j) {
            self.clearance[self.window.index(i, j)]
        } else {
            FAR_OUTSIDE
        }
    }

    /// Clearance at an arbitrary point, in cells.
    ///
    /// Hull rasters measure the distance from `p` to the nearest free grid
    /// points recorded around it; other rasters interpolate bilinearly.
    pub fn clearance_at(&self, p: Point<T>) -> f64 {
        let (u, v) = self.frame.lattice_coords(p);
        if u < 0.0 || v < 0.0 {
            return FAR_OUTSIDE as f64;
        }
        if let Some(nearest) = &self.nearest_free {
            let r_cells = (self.radius / self.frame.cell).as_f64();
            let (ci, cj) = (u.round() as usize, v.round() as usize);
            let mut best = f64::INFINITY;
            for j in cj.saturating_sub(1)..=cj + 1 {
                for i in ci.saturating_sub(1)..=ci + 1 {
                    if !self.window.contains(i, j) {
                        continue;
                    }
                    let (qi, qj) = nearest[self.window.index(i, j)];
                    if qi != u32::MAX {
                        best = best.min((u - qi as f64).hypot(v - qj as f64));
                    }
                }
            }
            return if best.is_finite() { best - r_cells } else { FAR_OUTSIDE as f64 };
        }
        let (i, j) = (u.floor() as usize, v.floor() as usize);
        let (fu, fv) = (u - i as f64, v - j as f64);
        let c = |a: usize, b: usize| self.clearance(a, b) as f64;
        let bottom = c(i, j) * (1.0 - fu) + c(i + 1, j) * fu;
        let top = c(i, j + 1) * (1.0 - fu) + c(i + 1, j + 1) * fu;
        bottom * (1.0 - fv) + top * fv
    }

    /// Like [`clearance_at`](Self::clearance_at), but each recorded free grid
    /// point is first slid towards `p` until it meets the input's
    /// `R`-neighbourhood, and the extra free points `pool` (lattice
    /// coordinates) are also considered. Falls back to `clearance_at` for
    /// rasters without a source polyline.
    pub(crate) fn refined_clearance_at(&self, p: Point<T>, pool: &[(f64, f64)]) -> f64 {
        let (Some(nearest), Some(source)) = (&self.nearest_free, &self.source) else {
            return self.clearance_at(p);
        };
        let (u, v) = self.frame.lattice_coords(p);
        if u < 0.0 || v < 0.0 {
            return FAR_OUTSIDE as f64;
        }
        let r_cells = (self.radius / self.frame.cell).as_f64();
        let (ci, cj) = (u.round() as usize, v.round() as usize);
        let mut seen: Vec<(u32, u32)> = Vec::with_capacity(9);
        let mut best = f64::INFINITY;
        for j in cj.saturating_sub(1)..=cj + 1 {
            for i in ci.saturating_sub(1)..=ci + 1 {
                if !self.window.contains(i, j) {
                    continue;
                }
                let q = nearest[self.window.index(i, j)];
                if q.0 == u32::MAX || seen.contains(&q) {
                    continue;
                }
                seen.push(q);
                let (qx, qy) = (q.0 as f64, q.1 as f64);
                let (dx, dy) = (u - qx, v - qy);
                let t = source
                    .iter()
                    .filter_map(|s| capsule_entry((qx, qy), (dx, dy), s, r_cells))
                    .fold(1.0f64, f64::min);
                best = best.min((1.0 - t) * dx.hypot(dy));
            }
        }
        for &(cx, cy) in pool {
            best = best.min((u - cx).hypot(v - cy));
        }
        if best.is_finite() {
            best - r_cells
        } else {
            FAR_OUTSIDE as f64
        }
    }

    /// Free points on rays from `p`: along each of `dirs` directions, the
    /// first point leaving the input's open `R`-neighbourhood, kept when it
    /// lies within `max_gap` cells of the circle of radius `R` around `p`.
    /// Lattice coordinates; empty for rasters without a source polyline.
    pub(crate) fn ray_free_points(&self, p: Point<T>, dirs: usize, max_gap: f64) -> Vec<(f64, f64)> {
        let Some(source) = &self.source else {
            return Vec::new();
        };
        let r_cells = (self.radius / self.frame.cell).as_f64();
        let (u, v) = self.frame.lattice_coords(p);
        let mut spans = Vec::with_capacity(source.len());
        let mut out = Vec::new();
        for k in 0..dirs {
            let a = std::f64::consts::TAU * k as f64 / dirs as f64;
            let d = (a.cos(), a.sin());
            spans.clear();
            spans.extend(source.iter().filter_map(|s| capsule_span((u, v), d, s, r_cells)));
            spans.sort_by(|x, y| x.0.total_cmp(&y.0));
            let mut exit = 0.0f64;
            for &(lo, hi) in &spans {
                if lo > exit {
                    break;
                }
                exit = exit.max(hi);
            }
            if exit - r_cells <= max_gap {
                out.push((u + exit * d.0, v + exit * d.1));
            }
        }
        out
    }

    /// Checks that every inside cell of `self` has an inside cell of `other`
    /// within `halo` cells (Chebyshev distance); returns the first offender.
    pub fn is_subset_of(&self, other: &Self, halo: usize) -> std::result::Result<(), (usize, usize)> {
        if self.frame != other.frame {
            return Err((usize::MAX, usize::MAX));
        }
        for (i, j) in self.inside_cells() {
            let hit = (i.saturating_sub(halo)..=i + halo)
                .any(|a| (j.saturating_sub(halo)..=j + halo).any(|b| other.is_inside(a, b)));
            if !hit {
                return Err((i, j));
            }
        }
        Ok(())
    }

    /// Binary PGM (P5) of the window, 255 = inside, top row = largest `y`.
    /// A header comment records the frame placement of the window.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut header = String::from("P5\n");
        let o = self.frame.center_of(self.window.i0, self.window.j0);
        let _ = writeln!(
            header,
            "# first-cell-center {} {} cell {} window {} {}",
            o.x, o.y, self.frame.cell, self.window.i0, self.window.j0
        );
        let _ = write!(header, "{} {}\n255\n", self.window.width(), self.window.height());
        let mut out = header.into_bytes();
        for j in (self.window.j0..self.window.j1).rev() {
            for i in self.window.i0..self.window.i1 {
                out.push(if self.inside[self.window.index(i, j)] { 255 } else { 0 });
            }
        }
        out
    }

    /// Hull of the inside cell centers at the same cover radius; a fixed point
    /// for rasters produced by [`r_hull_raster`].
    pub fn rehull(&self) -> Self {
        let r_cells = (self.radius / self.frame.cell).as_f64();
        let thr2 = cover_threshold_sq(r_cells);
        let pad = r_cells.ceil() as usize + 4;
        let domain = CellBox {
            i0: self.window.i0.saturating_sub(pad),
            j0: self.window.j0.saturating_sub(pad),
            i1: (self.window.i1 + pad).min(self.frame.nx),
            j1: (self.window.j1 + pad).min(self.frame.ny),
        };
        let (w, h) = (domain.width(), domain.height());
        let mut set = vec![false; w * h];
        for (i, j) in self.inside_cells() {
            set[(j - domain.j0) * w + (i - domain.i0)] = true;
        }
        let to_set = squared_edt_rows(&set, w, h, 0..h);
        let free: Vec<bool> = to_set.iter().map(|&d2| d2 >= thr2).collect();
        from_free_set(&self.frame, self.radius, self.window, domain, &free, None)
    }
}
