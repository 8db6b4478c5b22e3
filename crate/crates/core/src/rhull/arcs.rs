use crate::error::{Error, Result};
use crate::geom::angular::canonical_angle;
use crate::geom::hull::{convex_hull, min_enclosing_circle};
use crate::geom::point::Point;
use crate::scalar::Scalar;

/// One boundary piece of an [`ArcPolygon`], traversed from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPiece<T> {
    Line { from: Point<T>, to: Point<T> },
    /// Arc of the circle `(center, radius)`; `ccw` gives the sense of travel.
    Arc {
        center: Point<T>,
        radius: T,
        from: Point<T>,
        to: Point<T>,
        ccw: bool,
    },
}

impl<T: Scalar> BoundaryPiece<T> {
    pub fn start(&self) -> Point<T> {
        match *self {
            BoundaryPiece::Line { from, .. } | BoundaryPiece::Arc { from, .. } => from,
        }
    }

    pub fn end(&self) -> Point<T> {
        match *self {
            BoundaryPiece::Line { to, .. } | BoundaryPiece::Arc { to, .. } => to,
        }
    }

    /// Swept angle of an arc in `[0, 2π)`, zero for lines.
    pub fn sweep(&self) -> T {
        match *self {
            BoundaryPiece::Line { .. } => T::zero(),
            BoundaryPiece::Arc { center, from, to, ccw, .. } => {
                let a = (from - center).angle();
                let b = (to - center).angle();
                canonical_angle(if ccw { b - a } else { a - b })
            }
        }
    }

    /// `n + 1` points from start to end.
    pub fn sample(&self, n: usize) -> Vec<Point<T>> {
        let n = n.max(1);
        let t = |k: usize| T::lit(k as f64 / n as f64);
        match *self {
            BoundaryPiece::Line { from, to } => (0..=n).map(|k| from.lerp(to, t(k))).collect(),
            BoundaryPiece::Arc { center, radius, from, ccw, .. } => {
                let a = (from - center).angle();
                let s = if ccw { self.sweep() } else { -self.sweep() };
                (0..=n).map(|k| center + Point::from_angle(a + s * t(k)) * radius).collect()
            }
        }
    }
}

/// Closed region bounded by line and circle-arc pieces, counterclockwise.
/// A single point is represented by an empty piece list and its anchor.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcPolygon<T> {
    anchor: Point<T>,
    pieces: Vec<BoundaryPiece<T>>,
}

impl<T: Scalar> ArcPolygon<T> {
    pub fn pieces(&self) -> &[BoundaryPiece<T>] {
        &self.pieces
    }

    /// A point of the region; the region itself when there are no pieces.
    pub fn anchor(&self) -> Point<T> {
        self.anchor
    }

    pub fn is_point(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Largest gap between the end of a piece and the start of the next.
    pub fn closure_gap(&self) -> T {
        let n = self.pieces.len();
        (0..n)
            .map(|k| self.pieces[k].end().dist(self.pieces[(k + 1) % n].start()))
            .fold(T::zero(), T::max)
    }

    /// Membership with slack `tol`. Valid for regions whose arcs all bulge
    /// outwards, such as the output of [`r_hull_arcs`].
    pub fn contains(&self, p: Point<T>, tol: T) -> bool {
        if self.pieces.is_empty() {
            return p.dist(self.anchor) <= tol;
        }
        self.pieces.iter().all(|piece| match *piece {
            BoundaryPiece::Arc { center, radius, .. } => p.dist(center) <= radius + tol,
            BoundaryPiece::Line { from, to } => {
                let d = to - from;
                d.cross(p - from) >= -tol * d.norm()
            }
        })
    }

    /// Boundary polygon with `n` points per piece.
    pub fn boundary(&self, n: usize) -> Vec<Point<T>> {
        if self.pieces.is_empty() {
            return vec![self.anchor];
        }
        let mut out = Vec::new();
        for piece in &self.pieces {
            let pts = piece.sample(n);
            out.extend_from_slice(&pts[..pts.len() - 1]);
        }
        out
    }
}

/// Intersection of all closed radius-`R` disks containing the points.
///
/// Gift wrapping: a disk of radius `R` containing every point is rotated
/// about the current boundary point until another point reaches its circle;
/// the traversed piece of that circle is one boundary arc.
pub fn r_hull_arcs<T: Scalar>(points: &[Point<T>], radius: T) -> Result<ArcPolygon<T>> {
    if !(radius > T::zero()) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    let mut pts = points.to_vec();
    let cmp = |a: T, b: T| a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal);
    pts.sort_by(|a, b| cmp(a.x, b.x).then(cmp(a.y, b.y)));
    pts.dedup();
    let (m, r) = min_enclosing_circle(&pts)?;
    if r >= radius {
        return Err(Error::precondition(
            "r_hull_arcs",
            format!("points are not inside an open disk of radius {radius} (enclosing radius {r})"),
            Vec::new(),
        ));
    }
    if pts.len() == 1 {
        return Ok(ArcPolygon {
            anchor: pts[0],
            pieces: Vec::new(),
        });
    }
    if convex_hull(&pts)?.len() != pts.len() {
        return Err(Error::precondition("r_hull_arcs", "points are not in convex position", Vec::new()));
    }
    // the point farthest from the enclosing center lies on the boundary
    let start = (0..pts.len())
        .max_by(|&a, &b| cmp(pts[a].dist(m), pts[b].dist(m)))
        .expect("non-empty");
    let mut cur = start;
    let mut phi = (m - pts[start]).angle();
    let mut pieces = Vec::new();
    for _ in 0..=pts.len() {
        let p = pts[cur];
        // ccw rotation from phi until some point leaves the disk
        let mut best: Option<(T, usize)> = None;
        for (k, &q) in pts.iter().enumerate() {
            if k == cur {
                continue;
            }
            let d = q - p;
            let half = (d.norm() / (radius + radius)).min(T::one()).acos();
            let turn = canonical_angle(d.angle() + half - phi);
            // a point already on the circle behind us sits at turn ≈ 2π
            let turn = if turn > T::TAU() - T::geom_eps() { T::zero() } else { turn };
            best = match best {
                Some((t, j)) if t < turn - T::geom_eps() => Some((t, j)),
                Some((t, j)) if (t - turn).abs() <= T::geom_eps() && p.dist(pts[j]) >= p.dist(q) => Some((t, j)),
                _ => Some((turn, k)),
            };
        }
        let (turn, next) = best.expect("at least two points");
        phi = phi + turn;
        let center = p + Point::from_angle(phi) * radius;
        pieces.push(BoundaryPiece::Arc {
            center,
            radius,
            from: p,
            to: pts[next],
            ccw: true,
        });
        // continue from the new point with the same disk
        phi = (center - pts[next]).angle();
        cur = next;
        if cur == start {
            return Ok(ArcPolygon { anchor: pts[start], pieces });
        }
    }
    Err(Error::Degenerate("ball hull wrapping did not close".into()))
}
