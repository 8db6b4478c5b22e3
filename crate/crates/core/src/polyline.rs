//! Parametrized polylines: the discrete stand-in for a continuous path
//! `g: [a, b] -> R²`.

use crate::error::{Error, Result};
use crate::geom::angular::{smallest_enclosing_arc, AngularSet};
use crate::geom::point::Point;
use crate::scalar::Scalar;

/// Ordered vertices with strictly increasing parameters.
///
/// Consecutive exact duplicates are merged on construction (the earlier
/// parameter is kept). A polyline whose first and last vertex coincide is only
/// accepted through [`Polyline::loop_candidate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline<T> {
    vertices: Vec<Point<T>>,
    params: Vec<T>,
    loop_candidate: bool,
}

/// Position of a sample along a polyline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SampleKind {
    Vertex(usize),
    /// Midpoint of the segment from vertex `i` to `i + 1`.
    Midpoint(usize),
}

/// A vertex or segment midpoint together with its one-sided unit tangents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    pub pos: Point<T>,
    pub kind: SampleKind,
    pub incoming: Option<Point<T>>,
    pub outgoing: Option<Point<T>>,
}

impl<T: Scalar> Sample<T> {
    /// The distinct one-sided tangents at this sample.
    pub fn tangents(&self) -> impl Iterator<Item = Point<T>> {
        let dup = matches!((self.incoming, self.outgoing), (Some(a), Some(b)) if a == b);
        self.incoming
            .into_iter()
            .chain(if dup { None } else { self.outgoing })
    }
}

/// Discrete chord cones at a vertex: smallest arcs enclosing the backward
/// chord directions (`minus`) and forward chord directions (`plus`).
#[derive(Debug, Clone, PartialEq)]
pub struct ChordCone<T> {
    pub at_index: usize,
    pub minus: AngularSet<T>,
    pub plus: AngularSet<T>,
}

impl<T: Scalar> ChordCone<T> {
    pub fn union(&self) -> AngularSet<T> {
        self.minus.union(&self.plus)
    }
}

fn chord_lengths<T: Scalar>(vertices: &[Point<T>]) -> Vec<T> {
    let mut acc = T::zero();
    let mut out = Vec::with_capacity(vertices.len());
    out.push(T::zero());
    for w in vertices.windows(2) {
        acc += w[0].dist(w[1]);
        out.push(acc);
    }
    out
}

impl<T: Scalar> Polyline<T> {
    /// Polyline parametrized by cumulative chord length.
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        Self::build(vertices, None, false)
    }

    pub fn with_params(vertices: Vec<Point<T>>, params: Vec<T>) -> Result<Self> {
        Self::build(vertices, Some(params), false)
    }

    /// Like [`Polyline::with_params`] but allows the first vertex to equal the last.
    pub fn loop_candidate(vertices: Vec<Point<T>>, params: Option<Vec<T>>) -> Result<Self> {
        Self::build(vertices, params, true)
    }

    fn build(vertices: Vec<Point<T>>, params: Option<Vec<T>>, loop_candidate: bool) -> Result<Self> {
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidPolyline(format!("vertex {i} is not finite")));
        }
        let params = match params {
            Some(p) => {
                if p.len() != vertices.len() {
                    return Err(Error::InvalidPolyline(format!(
                        "{} params for {} vertices",
                        p.len(),
                        vertices.len()
                    )));
                }
                p
            }
            None => chord_lengths(&vertices),
        };
        let mut vs: Vec<Point<T>> = Vec::with_capacity(vertices.len());
        let mut ps: Vec<T> = Vec::with_capacity(vertices.len());
        for (v, t) in vertices.into_iter().zip(params) {
            if !t.is_finite() {
                return Err(Error::InvalidPolyline("parameter is not finite".into()));
            }
            if let (Some(&last), Some(&last_t)) = (vs.last(), ps.last()) {
                if last == v && t >= last_t {
                    continue;
                }
                if !(t > last_t) {
                    return Err(Error::InvalidPolyline("parameters must be strictly increasing".into()));
                }
            }
            vs.push(v);
            ps.push(t);
        }
        if vs.len() < 2 {
            return Err(Error::InvalidPolyline("need at least two distinct vertices".into()));
        }
        if !loop_candidate && vs[0] == vs[vs.len() - 1] {
            return Err(Error::InvalidPolyline("first vertex equals last vertex".into()));
        }
        Ok(Polyline {
            vertices: vs,
            params: ps,
            loop_candidate,
        })
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    pub fn is_loop_candidate(&self) -> bool {
        self.loop_candidate
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn first(&self) -> Point<T> {
        self.vertices[0]
    }

    pub fn last(&self) -> Point<T> {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn is_closed(&self) -> bool {
        self.first() == self.last()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.vertices.len(),
            })
        }
    }

    pub fn segment_length(&self, i: usize) -> T {
        self.vertices[i].dist(self.vertices[i + 1])
    }

    /// Unit direction of segment `i`.
    pub fn segment_dir(&self, i: usize) -> Point<T> {
        (self.vertices[i + 1] - self.vertices[i])
            .normalized()
            .expect("consecutive vertices are distinct")
    }

    pub fn length(&self) -> T {
        (0..self.segment_count()).map(|i| self.segment_length(i)).sum()
    }

    /// Arc length from the first vertex to each vertex.
    pub fn cumulative_lengths(&self) -> Vec<T> {
        chord_lengths(&self.vertices)
    }

    /// Same geometry, parameters replaced by cumulative arc length from zero.
    pub fn arc_length_parametrize(&self) -> Self {
        Polyline {
            vertices: self.vertices.clone(),
            params: chord_lengths(&self.vertices),
            loop_candidate: self.loop_candidate,
        }
    }

    /// Applies a strictly increasing map to the parameters; geometry is untouched.
    pub fn reparametrize<F: Fn(T) -> T>(&self, f: F) -> Result<Self> {
        let params = self.params.iter().map(|&t| f(t)).collect();
        Self::build(self.vertices.clone(), Some(params), self.loop_candidate)
    }

    /// Reversed orientation `h(t) = g(-t)`.
    pub fn reverse(&self) -> Self {
        Polyline {
            vertices: self.vertices.iter().rev().copied().collect(),
            params: self.params.iter().rev().map(|&t| -t).collect(),
            loop_candidate: self.loop_candidate,
        }
    }

    /// Arc length between vertices `i < j` divided by their distance.
    pub fn detour(&self, i: usize, j: usize) -> Result<T> {
        self.check_index(j)?;
        if i >= j {
            return Err(Error::Domain(format!("detour needs i < j, got {i} >= {j}")));
        }
        let chord = self.vertices[i].dist(self.vertices[j]);
        if chord == T::zero() {
            return Err(Error::UndefinedDetour(i, j));
        }
        let arc: T = (i..j).map(|k| self.segment_length(k)).sum();
        Ok(arc / chord)
    }

    /// Vertices and segment midpoints in parameter order.
    pub fn samples(&self) -> Vec<Sample<T>> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(2 * n - 1);
        for i in 0..n {
            let incoming = (i > 0).then(|| self.segment_dir(i - 1));
            let outgoing = (i + 1 < n).then(|| self.segment_dir(i));
            out.push(Sample {
                pos: self.vertices[i],
                kind: SampleKind::Vertex(i),
                incoming,
                outgoing,
            });
            if let Some(d) = outgoing {
                out.push(Sample {
                    pos: self.vertices[i].midpoint(self.vertices[i + 1]),
                    kind: SampleKind::Midpoint(i),
                    incoming: Some(d),
                    outgoing: Some(d),
                });
            }
        }
        out
    }

    /// Three times the median segment length.
    pub fn default_radius_eps(&self) -> T {
        let mut lens: Vec<T> = (0..self.segment_count()).map(|i| self.segment_length(i)).collect();
        lens.sort_by(|a, b| a.partial_cmp(b).expect("finite lengths"));
        let m = lens.len();
        let median = if m % 2 == 1 {
            lens[m / 2]
        } else {
            (lens[m / 2 - 1] + lens[m / 2]) * T::lit(0.5)
        };
        median * T::lit(3.0)
    }

    /// Chord cones at vertex `i` using chords to vertices within `radius_eps`.
    ///
    /// The incoming (outgoing) segment direction is always part of `minus`
    /// (`plus`), so only the start vertex has an empty `minus` and only the end
    /// vertex an empty `plus`.
    pub fn chord_cones(&self, i: usize, radius_eps: T) -> Result<ChordCone<T>> {
        self.check_index(i)?;
        if !(radius_eps > T::zero()) {
            return Err(Error::Domain("radius_eps must be positive".into()));
        }
        let x = self.vertices[i];
        let mut back = Vec::new();
        if i > 0 {
            back.push(self.segment_dir(i - 1).angle());
            for j in (0..i - 1).rev() {
                let v = x - self.vertices[j];
                let d = v.norm();
                if d <= radius_eps && d > T::zero() {
                    back.push(v.angle());
                }
            }
        }
        let mut fwd = Vec::new();
        if i + 1 < self.vertices.len() {
            fwd.push(self.segment_dir(i).angle());
            for j in i + 2..self.vertices.len() {
                let v = self.vertices[j] - x;
                let d = v.norm();
                if d <= radius_eps && d > T::zero() {
                    fwd.push(v.angle());
                }
            }
        }
        let to_set = |dirs: &[T]| {
            smallest_enclosing_arc(dirs)
                .map(AngularSet::from_interval)
                .unwrap_or_else(AngularSet::empty)
        };
        Ok(ChordCone {
            at_index: i,
            minus: to_set(&back),
            plus: to_set(&fwd),
        })
    }

    /// Vertices `0..=i` with their parameters.
    pub fn prefix(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        if i == 0 {
            return Err(Error::InvalidPolyline("prefix needs at least two vertices".into()));
        }
        Self::build(self.vertices[..=i].to_vec(), Some(self.params[..=i].to_vec()), true)
    }

    /// Sub-polyline covering arc length `[0, s]`, cutting inside a segment if needed.
    pub fn prefix_by_length(&self, s: T) -> Result<Self> {
        if !(s > T::zero()) {
            return Err(Error::Domain("prefix length must be positive".into()));
        }
        let mut vs = vec![self.vertices[0]];
        let mut ps = vec![self.params[0]];
        let mut acc = T::zero();
        for k in 0..self.segment_count() {
            let len = self.segment_length(k);
            if acc + len >= s {
                let t = (s - acc) / len;
                if t > T::zero() {
                    vs.push(self.vertices[k].lerp(self.vertices[k + 1], t));
                    ps.push(self.params[k] + (self.params[k + 1] - self.params[k]) * t);
                }
                return Self::build(vs, Some(ps), true);
            }
            acc += len;
            vs.push(self.vertices[k + 1]);
            ps.push(self.params[k + 1]);
        }
        Self::build(vs, Some(ps), true)
    }

    /// Inserts the midpoint of every segment, halving the vertex spacing.
    pub fn refine(&self) -> Self {
        let n = self.vertices.len();
        let mut vs = Vec::with_capacity(2 * n - 1);
        let mut ps = Vec::with_capacity(2 * n - 1);
        for i in 0..n {
            vs.push(self.vertices[i]);
            ps.push(self.params[i]);
            if i + 1 < n {
                vs.push(self.vertices[i].midpoint(self.vertices[i + 1]));
                ps.push((self.params[i] + self.params[i + 1]) * T::lit(0.5));
            }
        }
        Polyline {
            vertices: vs,
            params: ps,
            loop_candidate: self.loop_candidate,
        }
    }

    /// Point at parameter `t` (clamped to the parameter range).
    pub fn point_at(&self, t: T) -> Point<T> {
        let n = self.params.len();
        if t <= self.params[0] {
            return self.vertices[0];
        }
        if t >= self.params[n - 1] {
            return self.vertices[n - 1];
        }
        let k = self.params.partition_point(|&p| p <= t) - 1;
        let u = (t - self.params[k]) / (self.params[k + 1] - self.params[k]);
        self.vertices[k].lerp(self.vertices[k + 1], u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pl(pts: &[(f64, f64)]) -> Polyline<f64> {
        Polyline::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn arc_length_345() {
        let c = Polyline::with_params(
            vec![Point::new(0.0, 0.0), Point::new(3.0, 0.0), Point::new(3.0, 4.0)],
            vec![0.0, 0.5, 2.0],
        )
        .unwrap();
        assert_eq!(c.arc_length_parametrize().params(), &[0.0, 3.0, 7.0]);
        let a = c.arc_length_parametrize();
        assert_eq!(a.arc_length_parametrize(), a);
    }

    #[test]
    fn arc_length_random_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vs: Vec<Point<f64>> = (0..50).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        let c = Polyline::new(vs.clone()).unwrap().arc_length_parametrize();
        let mut sum = 0.0;
        for w in vs.windows(2) {
            sum += ((w[1].x - w[0].x).powi(2) + (w[1].y - w[0].y).powi(2)).sqrt();
        }
        assert!((c.params()[49] - sum).abs() < 1e-12);
        assert!((c.length() - sum).abs() < 1e-12);
    }

    #[test]
    fn construction_rules() {
        let c = pl(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert_eq!(c.len(), 3);
        assert!(Polyline::new(vec![Point::new(0.0, 0.0), Point::new(0.0, 0.0)]).is_err());
        assert!(Polyline::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 0.0)]).is_err());
        assert!(Polyline::loop_candidate(
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 0.0)],
            None
        )
        .is_ok());
        assert!(Polyline::with_params(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)], vec![1.0, 1.0]).is_err());
        assert!(Polyline::new(vec![Point::new(f64::NAN, 0.0), Point::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn straight_chain_cones() {
        let c = pl(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        let k = c.chord_cones(1, 10.0).unwrap();
        assert_eq!(k.minus.measure(), 0.0);
        assert!(k.minus.contains(0.0) && k.plus.contains(0.0));
        assert_eq!(k.plus.measure(), 0.0);
        let start = c.chord_cones(0, 1.0).unwrap();
        assert!(start.minus.is_empty() && !start.plus.is_empty());
        let end = c.chord_cones(3, 1.0).unwrap();
        assert!(end.plus.is_empty() && !end.minus.is_empty());
        assert!(c.chord_cones(4, 1.0).is_err());
    }

    #[test]
    fn corner_cones() {
        let c = pl(&[(-1.0, 0.0), (0.0, 0.0), (0.0, 1.0)]);
        let k = c.chord_cones(1, 5.0).unwrap();
        assert!(k.minus.contains(0.0) && k.minus.measure() == 0.0);
        assert!(k.plus.contains(std::f64::consts::FRAC_PI_2) && k.plus.measure() == 0.0);
    }

    #[test]
    fn fine_arc_cones_near_tangent() {
        for &n in &[64usize, 256, 1024] {
            let pts: Vec<Point<f64>> = (0..=n)
                .map(|k| Point::from_angle(std::f64::consts::PI * k as f64 / n as f64))
                .collect();
            let c = Polyline::new(pts).unwrap();
            let i = n / 2;
            let k = c.chord_cones(i, c.default_radius_eps()).unwrap();
            let tangent = std::f64::consts::PI * i as f64 / n as f64 + std::f64::consts::FRAC_PI_2;
            let bound = 4.0 * std::f64::consts::PI / n as f64;
            assert!(k.minus.excess_over(&AngularSet::point(tangent)) <= bound);
            assert!(k.plus.excess_over(&AngularSet::point(tangent)) <= bound);
        }
    }

    #[test]
    fn detour_examples() {
        let c = pl(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!((c.detour(0, 3).unwrap() - 3.0).abs() < 1e-12);
        let s = pl(&[(0.0, 0.0), (0.5, 0.0), (2.0, 0.0)]);
        assert!((s.detour(0, 2).unwrap() - 1.0).abs() < 1e-12);
        let back = Polyline::loop_candidate(
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 0.0), Point::new(0.0, 1.0)],
            None,
        )
        .unwrap();
        assert_eq!(back.detour(0, 2), Err(Error::UndefinedDetour(0, 2)));
    }

    #[test]
    fn reverse_rules() {
        let c = pl(&[(0.0, 0.0), (2.0, 1.0)]);
        let r = c.reverse();
        assert_eq!(r.first(), c.last());
        assert_eq!(r.last(), c.first());
        assert!(r.params()[0] < r.params()[1]);
    }

    #[test]
    fn prefix_by_length_cuts() {
        let c = pl(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        let p = c.prefix_by_length(1.5).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.last().dist(Point::new(1.0, 0.5)) < 1e-12);
        assert!((c.point_at(1.5).y - 0.5).abs() < 1e-12);
        assert_eq!(c.refine().len(), 5);
    }

    fn arb_polyline() -> impl Strategy<Value = Polyline<f64>> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..40)
            .prop_filter_map("degenerate", |pts| Polyline::new(pts.into_iter().map(|(x, y)| Point::new(x, y)).collect()).ok())
    }

    proptest! {
        #[test]
        fn length_at_least_chord(c in arb_polyline()) {
            prop_assert!(c.length() >= c.first().dist(c.last()) - 1e-12);
        }

        #[test]
        fn reverse_involution(c in arb_polyline()) {
            prop_assert_eq!(c.reverse().reverse(), c.clone());
            prop_assert!((c.reverse().length() - c.length()).abs() < 1e-12);
        }

        #[test]
        fn detour_at_least_one(c in arb_polyline(), a in 0usize..40, b in 0usize..40) {
            let (i, j) = (a.min(b) % c.len(), a.max(b) % c.len());
            if i < j {
                if let Ok(d) = c.detour(i, j) {
                    prop_assert!(d >= 1.0 - 1e-12);
                }
            }
        }

        #[test]
        fn chord_cones_grow_with_radius(c in arb_polyline(), i in 0usize..40, r in 0.01..0.5f64) {
            let i = i % c.len();
            let small = c.chord_cones(i, r).unwrap();
            let big = c.chord_cones(i, 100.0).unwrap();
            prop_assert!(small.minus.measure() <= big.minus.measure() + 1e-12);
            prop_assert!(small.plus.measure() <= big.plus.measure() + 1e-12);
        }
    }
}
