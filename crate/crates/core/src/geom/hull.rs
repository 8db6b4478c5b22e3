use crate::error::{Error, Result};
use crate::geom::angular::{canonical_angle, AngularSet};
use crate::geom::point::{dist_point_segment, Point};
use crate::scalar::Scalar;

/// Convex hull vertices in counterclockwise order.
///
/// One and two vertex hulls are valid (a point, a doubled segment).
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point<T>>,
}

/// Where a query point sits relative to a hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullLocation {
    Vertex(usize),
    /// Interior of the edge from vertex `i` to `i + 1`.
    Edge(usize),
    Interior,
}

/// Tangent cone of a hull at a boundary or interior point.
#[derive(Debug, Clone, PartialEq)]
pub struct HullCone<T> {
    pub cone: AngularSet<T>,
    pub location: HullLocation,
}

impl<T: Scalar> ConvexPolygon<T> {
    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Perimeter; a two-vertex hull counts its segment twice.
    pub fn perimeter(&self) -> T {
        let n = self.vertices.len();
        if n < 2 {
            return T::zero();
        }
        (0..n)
            .map(|i| self.vertices[i].dist(self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn signed_area(&self) -> T {
        let n = self.vertices.len();
        let mut a = T::zero();
        for i in 0..n {
            a += self.vertices[i].cross(self.vertices[(i + 1) % n]);
        }
        a * T::lit(0.5)
    }

    /// Euclidean distance from `z` to the hull (zero inside).
    pub fn distance(&self, z: Point<T>) -> T {
        let n = self.vertices.len();
        match n {
            0 => T::infinity(),
            1 => z.dist(self.vertices[0]),
            2 => dist_point_segment(z, self.vertices[0], self.vertices[1]),
            _ => {
                let inside = (0..n).all(|i| {
                    let a = self.vertices[i];
                    let b = self.vertices[(i + 1) % n];
                    (b - a).cross(z - a) >= T::zero()
                });
                if inside {
                    return T::zero();
                }
                (0..n)
                    .map(|i| dist_point_segment(z, self.vertices[i], self.vertices[(i + 1) % n]))
                    .fold(T::infinity(), T::min)
            }
        }
    }

    /// Classifies `x` as a vertex, edge point or interior point within `tol`.
    pub fn locate(&self, x: Point<T>, tol: T) -> Result<HullLocation> {
        if let Some(i) = self.vertices.iter().position(|v| v.dist(x) <= tol) {
            return Ok(HullLocation::Vertex(i));
        }
        let n = self.vertices.len();
        if n >= 2 {
            let edges = if n == 2 { 1 } else { n };
            for i in 0..edges {
                if dist_point_segment(x, self.vertices[i], self.vertices[(i + 1) % n]) <= tol {
                    return Ok(HullLocation::Edge(i));
                }
            }
        }
        if n >= 3 && self.distance(x) == T::zero() {
            return Ok(HullLocation::Interior);
        }
        Err(Error::Domain("point is not in the hull".into()))
    }
}

/// Convex hull by the monotone chain; collinear points are dropped.
pub fn convex_hull<T: Scalar>(points: &[Point<T>]) -> Result<ConvexPolygon<T>> {
    if points.is_empty() {
        return Err(Error::Degenerate("convex hull of an empty point set".into()));
    }
    let mut pts: Vec<Point<T>> = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .expect("finite coordinates")
            .then(a.y.partial_cmp(&b.y).expect("finite coordinates"))
    });
    pts.dedup();
    if pts.len() < 3 {
        return Ok(ConvexPolygon { vertices: pts });
    }
    let eps = T::merge_eps();
    // Left turn test with a relative collinearity tolerance.
    let turns_left = |o: Point<T>, a: Point<T>, b: Point<T>| {
        let u = a - o;
        let v = b - o;
        u.cross(v) > eps * u.norm() * v.norm()
    };
    let mut lower: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && !turns_left(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !turns_left(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(ConvexPolygon { vertices: lower })
}

/// Tangent cone `Tan(hull, x) ∩ S¹`.
///
/// At a vertex it is the arc spanned by the two incident edges; on an edge a
/// half circle; at an interior point the full circle. A single point hull has
/// an empty cone, and the endpoint of a segment hull a single direction.
pub fn tangent_cone_at_hull_vertex<T: Scalar>(hull: &ConvexPolygon<T>, x: Point<T>, tol: T) -> Result<HullCone<T>> {
    let location = hull.locate(x, tol)?;
    let v = hull.vertices();
    let n = v.len();
    let cone = match location {
        HullLocation::Vertex(i) => match n {
            1 => AngularSet::empty(),
            2 => AngularSet::point((v[1 - i] - v[i]).angle()),
            _ => {
                let next = (v[(i + 1) % n] - v[i]).angle();
                let prev = (v[(i + n - 1) % n] - v[i]).angle();
                AngularSet::arc(next, canonical_angle(prev - next))
            }
        },
        HullLocation::Edge(i) => {
            if n == 2 {
                let d = (v[1] - v[0]).angle();
                AngularSet::point(d).union(&AngularSet::point(d + T::PI()))
            } else {
                let d = (v[(i + 1) % n] - v[i]).angle();
                AngularSet::arc(d, T::PI())
            }
        }
        HullLocation::Interior => AngularSet::full(),
    };
    Ok(HullCone { cone, location })
}

/// Smallest disk enclosing all points, as `(center, radius)`.
pub fn min_enclosing_circle<T: Scalar>(points: &[Point<T>]) -> Result<(Point<T>, T)> {
    if points.is_empty() {
        return Err(Error::Degenerate("enclosing circle of an empty point set".into()));
    }
    let slack = T::lit(1.0) + T::merge_eps();
    let inside = |c: (Point<T>, T), p: Point<T>| p.dist(c.0) <= c.1 * slack + T::merge_eps();
    let two = |a: Point<T>, b: Point<T>| (a.midpoint(b), a.dist(b) * T::lit(0.5));
    let three = |a: Point<T>, b: Point<T>, c: Point<T>| {
        let bx = b - a;
        let cx = c - a;
        let d = (bx.cross(cx)) * T::lit(2.0);
        if d.abs() <= T::merge_eps() * bx.norm_sq().max(cx.norm_sq()) {
            // Collinear: the farthest pair decides.
            let cands = [two(a, b), two(a, c), two(b, c)];
            return cands
                .into_iter()
                .fold(cands[0], |best, cand| if cand.1 > best.1 { cand } else { best });
        }
        let ux = (cx.y * bx.norm_sq() - bx.y * cx.norm_sq()) / d;
        let uy = (bx.x * cx.norm_sq() - cx.x * bx.norm_sq()) / d;
        let center = a + Point::new(ux, uy);
        (center, center.dist(a))
    };
    let mut c = (points[0], T::zero());
    for i in 1..points.len() {
        if inside(c, points[i]) {
            continue;
        }
        c = (points[i], T::zero());
        for j in 0..i {
            if inside(c, points[j]) {
                continue;
            }
            c = two(points[i], points[j]);
            for k in 0..j {
                if !inside(c, points[k]) {
                    c = three(points[i], points[j], points[k]);
                }
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    #[test]
    fn square_perimeter() {
        let h = convex_hull(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.), p(0.5, 0.5)]).unwrap();
        assert_eq!(h.len(), 4);
        assert!((h.perimeter() - 4.0).abs() < 1e-12);
        assert!(h.signed_area() > 0.0);
    }

    #[test]
    fn collinear_is_doubled_segment() {
        let h = convex_hull(&[p(0., 0.), p(1., 0.), p(2., 0.)]).unwrap();
        assert_eq!(h.len(), 2);
        assert!((h.perimeter() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn empty_is_error() {
        assert!(convex_hull::<f64>(&[]).is_err());
    }

    #[test]
    fn random_disk_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<_> = (0..1000)
            .map(|_| {
                let r: f64 = rng.gen::<f64>().sqrt();
                let t: f64 = rng.gen::<f64>() * TAU;
                Point::from_angle(t) * r
            })
            .collect();
        let h = convex_hull(&pts).unwrap();
        assert!(h.perimeter() <= TAU + 1e-9);
        for q in &pts {
            assert!(h.distance(*q) <= 1e-12);
        }
    }

    #[test]
    fn cones() {
        let sq = convex_hull(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap();
        let c = tangent_cone_at_hull_vertex(&sq, p(1., 1.), 1e-9).unwrap();
        assert!((c.cone.measure() - FRAC_PI_2).abs() < 1e-12);
        assert!(c.cone.contains(1.25 * PI) && !c.cone.contains(0.25 * PI));
        let seg = convex_hull(&[p(0., 0.), p(2., 0.)]).unwrap();
        let c = tangent_cone_at_hull_vertex(&seg, p(0., 0.), 1e-9).unwrap();
        assert_eq!(c.cone.measure(), 0.0);
        assert!(c.cone.contains(0.0));
        let hex: Vec<_> = (0..6).map(|k| Point::from_angle(k as f64 * PI / 3.0)).collect();
        let h = convex_hull(&hex).unwrap();
        let c = tangent_cone_at_hull_vertex(&h, hex[2], 1e-9).unwrap();
        assert!((c.cone.measure() - 2.0 * PI / 3.0).abs() < 1e-12);
        let c = tangent_cone_at_hull_vertex(&sq, p(0.5, 0.5), 1e-9).unwrap();
        assert_eq!(c.location, HullLocation::Interior);
        assert!((c.cone.measure() - TAU).abs() < 1e-12);
        assert!(tangent_cone_at_hull_vertex(&sq, p(2.0, 0.5), 1e-9).is_err());
    }

    #[test]
    fn enclosing_circle() {
        let (c, r) = min_enclosing_circle(&[p(0., 0.), p(2., 0.), p(1., 0.5)]).unwrap();
        assert!((r - 1.0).abs() < 1e-12 && c.dist(p(1., 0.)) < 1e-12);
        let tri: Vec<_> = (0..3).map(|k| Point::from_angle(k as f64 * TAU / 3.0) * 0.7).collect();
        let (c, r) = min_enclosing_circle(&tri).unwrap();
        assert!((r - 0.7).abs() < 1e-12 && c.norm() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Point<f64>> = (0..300).map(|_| p(rng.gen(), rng.gen())).collect();
        let (c, r) = min_enclosing_circle(&pts).unwrap();
        assert!(pts.iter().all(|q| q.dist(c) <= r + 1e-9));
        assert!(pts.iter().filter(|q| (q.dist(c) - r).abs() < 1e-9).count() >= 2);
    }
}
