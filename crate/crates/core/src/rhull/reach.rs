use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::lens::Lens;
use crate::geom::point::Point;
use crate::scalar::Scalar;

use super::raster::RHullRaster;

pub const DEFAULT_REACH_SEED: u64 = 0x5eed_2001;

/// Outcome of [`reach_at_least`]: `witness` holds the first pair whose lens
/// intersection fell apart, as cell indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachCheck {
    pub ok: bool,
    pub pairs_tested: usize,
    pub witness: Option<((usize, usize), (usize, usize))>,
}

/// Lens-connectivity test on `pair_samples` random pairs of inside cells.
pub fn reach_at_least<T: Scalar>(region: &RHullRaster<T>, radius: T, pair_samples: usize) -> Result<ReachCheck> {
    reach_at_least_seeded(region, radius, pair_samples, DEFAULT_REACH_SEED)
}

pub fn reach_at_least_seeded<T: Scalar>(
    region: &RHullRaster<T>,
    radius: T,
    pair_samples: usize,
    seed: u64,
) -> Result<ReachCheck> {
    let cells = region.inside_cells();
    if cells.is_empty() {
        return Err(Error::Domain("reach check on an empty region".into()));
    }
    let frame = region.frame();
    let cell = frame.cell.as_f64();
    let r_cells = radius.as_f64() / cell;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut attempts = 0;
    let mut fill = FloodBuffer::default();
    while tested < pair_samples && attempts < 20 * pair_samples.max(1) {
        attempts += 1;
        let a = cells[rng.gen_range(0..cells.len())];
        let b = cells[rng.gen_range(0..cells.len())];
        let (dx, dy) = (b.0 as f64 - a.0 as f64, b.1 as f64 - a.1 as f64);
        let d = dx.hypot(dy);
        if d == 0.0 || d >= 2.0 * r_cells {
            continue;
        }
        tested += 1;
        if !fill.lens_connected(region, a, b, r_cells) {
            return Ok(ReachCheck {
                ok: false,
                pairs_tested: tested,
                witness: Some((a, b)),
            });
        }
    }
    Ok(ReachCheck {
        ok: true,
        pairs_tested: tested,
        witness: None,
    })
}

#[derive(Default)]
struct FloodBuffer {
    seen: Vec<bool>,
    stack: Vec<(usize, usize)>,
}

/// `x`-range of lattice columns on row `v` inside both disks grown by `grow`.
fn lens_row(lens: &Lens<f64>, v: f64, grow: f64) -> Option<(f64, f64)> {
    let r = lens.radius + grow;
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for c in [lens.center_left, lens.center_right] {
        let dy = v - c.y;
        if dy.abs() > r {
            return None;
        }
        let s = (r * r - dy * dy).sqrt();
        lo = lo.max(c.x - s);
        hi = hi.min(c.x + s);
    }
    (lo <= hi).then_some((lo, hi))
}

impl FloodBuffer {
    /// Works in lattice units: the region cells with centers in the lens
    /// must all be reachable from `a` through region cells whose centers lie
    /// in the lens grown by 1.5 cells (8-connectivity).
    fn lens_connected<T: Scalar>(&mut self, region: &RHullRaster<T>, a: (usize, usize), b: (usize, usize), r_cells: f64) -> bool {
        let pa = Point::new(a.0 as f64, a.1 as f64);
        let pb = Point::new(b.0 as f64, b.1 as f64);
        let Ok(lens) = Lens::new(pa, pb, r_cells) else {
            return true;
        };
        const GROW: f64 = 1.5;
        let win = region.window();
        let half = lens.width() * 0.5 + 2.0;
        let i0 = (pa.x.min(pb.x) - half).floor().max(win.i0 as f64) as usize;
        let i1 = ((pa.x.max(pb.x) + half).ceil() + 1.0).min(win.i1 as f64) as usize;
        let j0 = (pa.y.min(pb.y) - half).floor().max(win.j0 as f64) as usize;
        let j1 = ((pa.y.max(pb.y) + half).ceil() + 1.0).min(win.j1 as f64) as usize;
        let w = i1 - i0;
        let h = j1 - j0;
        // per-row allowed column ranges
        let mut grown = Vec::with_capacity(h);
        let mut exact = Vec::with_capacity(h);
        for j in j0..j1 {
            let clip = |iv: Option<(f64, f64)>| {
                iv.and_then(|(l, r)| {
                    let l = l.ceil().max(i0 as f64);
                    let r = r.floor().min(i1 as f64 - 1.0);
                    (l <= r).then_some((l as usize, r as usize))
                })
            };
            grown.push(clip(lens_row(&lens, j as f64, GROW)));
            exact.push(clip(lens_row(&lens, j as f64, 1e-9)));
        }
        let allowed = |i: usize, j: usize| {
            grown[j - j0].is_some_and(|(l, r)| i >= l && i <= r) && region.is_inside(i, j)
        };
        self.seen.clear();
        self.seen.resize(w * h, false);
        self.stack.clear();
        if !allowed(a.0, a.1) {
            return false;
        }
        self.seen[(a.1 - j0) * w + (a.0 - i0)] = true;
        self.stack.push(a);
        while let Some((i, j)) = self.stack.pop() {
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < i0 as i64 || nj < j0 as i64 || ni >= i1 as i64 || nj >= j1 as i64 {
                        continue;
                    }
                    let (ni, nj) = (ni as usize, nj as usize);
                    let k = (nj - j0) * w + (ni - i0);
                    if !self.seen[k] && allowed(ni, nj) {
                        self.seen[k] = true;
                        self.stack.push((ni, nj));
                    }
                }
            }
        }
        for j in j0..j1 {
            if let Some((l, r)) = exact[j - j0] {
                for i in l..=r {
                    if region.is_inside(i, j) && !self.seen[(j - j0) * w + (i - i0)] {
                        return false;
                    }
                }
            }
        }
        true
    }
}
