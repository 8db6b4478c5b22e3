use crate::error::{Error, Result};
use crate::geom::point::Point;
use crate::scalar::Scalar;

/// Square lattice of cells; cell `(i, j)` has its center at
/// `origin + (i, j) * cell` and `j` grows with `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterFrame<T> {
    pub origin: Point<T>,
    pub cell: T,
    pub nx: usize,
    pub ny: usize,
}

/// Inclusive-exclusive index box `[i0, i1) x [j0, j1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellBox {
    pub i0: usize,
    pub j0: usize,
    pub i1: usize,
    pub j1: usize,
}

impl CellBox {
    pub fn width(&self) -> usize {
        self.i1 - self.i0
    }

    pub fn height(&self) -> usize {
        self.j1 - self.j0
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= self.i0 && i < self.i1 && j >= self.j0 && j < self.j1
    }

    pub(crate) fn index(&self, i: usize, j: usize) -> usize {
        (j - self.j0) * self.width() + (i - self.i0)
    }
}

impl<T: Scalar> RasterFrame<T> {
    /// Frame covering `D(center, R)` padded by `R`, with `grid_n` cells per `R`.
    pub fn around(center: Point<T>, radius: T, grid_n: usize) -> Result<Self> {
        if grid_n < 64 {
            return Err(Error::Domain(format!("grid_n must be at least 64, got {grid_n}")));
        }
        if !(radius > T::zero()) {
            return Err(Error::Domain(format!("radius must be positive, got {radius}")));
        }
        let cell = radius / T::from_usize(grid_n).expect("grid size");
        let n = 4 * grid_n + 1;
        let half = T::from_usize(2 * grid_n).expect("grid size") * cell;
        Ok(RasterFrame {
            origin: Point::new(center.x - half, center.y - half),
            cell,
            nx: n,
            ny: n,
        })
    }

    pub fn center_of(&self, i: usize, j: usize) -> Point<T> {
        Point::new(
            self.origin.x + T::from_usize(i).expect("index") * self.cell,
            self.origin.y + T::from_usize(j).expect("index") * self.cell,
        )
    }

    /// Continuous lattice coordinates of `p` (cell centers are integers).
    pub fn lattice_coords(&self, p: Point<T>) -> (f64, f64) {
        (
            ((p.x - self.origin.x) / self.cell).as_f64(),
            ((p.y - self.origin.y) / self.cell).as_f64(),
        )
    }

    /// Cell whose square contains `p`, if inside the frame.
    pub fn cell_of(&self, p: Point<T>) -> Option<(usize, usize)> {
        let (u, v) = self.lattice_coords(p);
        let (i, j) = (u.round(), v.round());
        if i < 0.0 || j < 0.0 || i >= self.nx as f64 || j >= self.ny as f64 {
            None
        } else {
            Some((i as usize, j as usize))
        }
    }

    /// Cells whose centers lie within `margin` of the axis-aligned box spanned
    /// by `lo` and `hi`, clipped to the frame.
    pub fn box_around(&self, lo: Point<T>, hi: Point<T>, margin: T) -> CellBox {
        let (u0, v0) = self.lattice_coords(Point::new(lo.x - margin, lo.y - margin));
        let (u1, v1) = self.lattice_coords(Point::new(hi.x + margin, hi.y + margin));
        let clip = |t: f64, n: usize| t.max(0.0).min(n as f64) as usize;
        CellBox {
            i0: clip(u0.floor(), self.nx),
            j0: clip(v0.floor(), self.ny),
            i1: clip(u1.ceil() + 1.0, self.nx),
            j1: clip(v1.ceil() + 1.0, self.ny),
        }
    }

    pub fn full_box(&self) -> CellBox {
        CellBox {
            i0: 0,
            j0: 0,
            i1: self.nx,
            j1: self.ny,
        }
    }
}
