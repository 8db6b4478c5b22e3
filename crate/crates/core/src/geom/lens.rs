use crate::error::{Error, Result};
use crate::geom::point::Point;
use crate::scalar::Scalar;

/// Intersection of all closed radius-`r` disks containing two points.
///
/// For `0 < |p - q| < 2r` this is the intersection of the two disks whose
/// boundary circles pass through both points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lens<T> {
    pub p: Point<T>,
    pub q: Point<T>,
    pub radius: T,
    /// Center to the left of `p -> q`.
    pub center_left: Point<T>,
    /// Center to the right of `p -> q`.
    pub center_right: Point<T>,
}

impl<T: Scalar> Lens<T> {
    pub fn new(p: Point<T>, q: Point<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::Domain(format!("lens radius must be positive, got {radius}")));
        }
        let d = p.dist(q);
        if d == T::zero() {
            return Err(Error::Domain("lens of coincident points".into()));
        }
        if d >= radius + radius {
            return Err(Error::Domain(format!(
                "lens requires |p-q| < 2R, got {d} with R = {radius}"
            )));
        }
        let m = p.midpoint(q);
        let n = (q - p).perp() * (T::one() / d);
        let h = (radius * radius - d * d * T::lit(0.25)).max(T::zero()).sqrt();
        Ok(Lens {
            p,
            q,
            radius,
            center_left: m + n * h,
            center_right: m - n * h,
        })
    }

    /// Membership with absolute slack `tol`.
    pub fn contains(&self, z: Point<T>, tol: T) -> bool {
        z.dist(self.center_left) <= self.radius + tol && z.dist(self.center_right) <= self.radius + tol
    }

    /// Width across the segment `[p, q]`: `2 (R - sqrt(R² - |p-q|²/4))`.
    pub fn width(&self) -> T {
        let h = self.center_left.dist(self.center_right) * T::lit(0.5);
        (self.radius - h) * T::lit(2.0)
    }

    /// Points on the boundary: `n` per arc, tips included once.
    pub fn boundary(&self, n: usize) -> Vec<Point<T>> {
        let n = n.max(2);
        let mut out = Vec::with_capacity(2 * n);
        // The arc around `center_right` bulges to the left of p->q and vice versa.
        for (c, from, to) in [
            (self.center_right, self.q, self.p),
            (self.center_left, self.p, self.q),
        ] {
            let a0 = (from - c).angle();
            let mut a1 = (to - c).angle();
            if a1 < a0 {
                a1 += T::TAU();
            }
            for k in 0..n {
                let t = T::from_usize(k).unwrap() / T::from_usize(n).unwrap();
                let a = a0 + (a1 - a0) * t;
                out.push(c + Point::from_angle(a) * self.radius);
            }
        }
        out
    }
}
