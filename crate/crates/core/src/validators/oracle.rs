//! Brute-force reference for the pairwise R-curve inequality.
//!
//! Deliberately shares no code with [`super::is_r_curve`]: samples and
//! tangents are rebuilt from raw vertices and the inequality is evaluated in
//! the disk form `|x1 - (x + R t)|² - R² >= 0`.

use crate::geom::point::Point;
use crate::scalar::Scalar;

/// Minimum of `|x1 - (x + R t)|² - R²` over all sample pairs `x1` strictly
/// before `x`, and all one-sided tangents `t` at `x`.
///
/// Vertices must be pairwise-consecutive distinct. Returns `+inf` when there
/// is no pair to check.
pub fn r_curve_margin<T: Scalar>(vertices: &[Point<T>], radius: T) -> T {
    let n = vertices.len();
    let half = T::lit(0.5);
    let mut pts = Vec::new();
    let mut tans: Vec<Vec<Point<T>>> = Vec::new();
    let unit = |a: Point<T>, b: Point<T>| {
        let dx = b.x - a.x;
        let dy = b.y - a.y;
        let l = (dx * dx + dy * dy).sqrt();
        Point::new(dx / l, dy / l)
    };
    for i in 0..n {
        let mut t = Vec::new();
        if i > 0 {
            t.push(unit(vertices[i - 1], vertices[i]));
        }
        if i + 1 < n {
            let out = unit(vertices[i], vertices[i + 1]);
            if t.first() != Some(&out) {
                t.push(out);
            }
        }
        pts.push(vertices[i]);
        tans.push(t);
        if i + 1 < n {
            let a = vertices[i];
            let b = vertices[i + 1];
            pts.push(Point::new((a.x + b.x) * half, (a.y + b.y) * half));
            tans.push(vec![unit(a, b)]);
        }
    }
    let r2 = radius * radius;
    let mut best = T::infinity();
    for s in 0..pts.len() {
        for t in &tans[s] {
            let cx = pts[s].x + radius * t.x;
            let cy = pts[s].y + radius * t.y;
            for p in &pts[..s] {
                let dx = p.x - cx;
                let dy = p.y - cy;
                let v = dx * dx + dy * dy - r2;
                if v < best {
                    best = v;
                }
            }
        }
    }
    best
}
