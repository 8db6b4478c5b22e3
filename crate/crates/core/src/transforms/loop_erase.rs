use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::point::Point;
use crate::polyline::Polyline;
use crate::scalar::Scalar;

pub const DEFAULT_SNAP_TOL: f64 = 1e-9;
pub const DEFAULT_ITERATION_CAP: usize = 10_000;

/// One step of the erasure: the removed parameter interval and its `M` value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Removal<T> {
    pub interval: (T, T),
    pub m: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopDecomposition<T> {
    /// Removed intervals `[α, β]` sorted by start; interiors are disjoint.
    pub intervals: Vec<(T, T)>,
    /// Injective remainder, carrying the input parameters of its vertices.
    pub simple: Polyline<T>,
    /// Removals in the order performed.
    pub removal_trace: Vec<Removal<T>>,
    /// Input after intersection insertion and snapping.
    pub prepared: Polyline<T>,
}

pub fn loop_erase<T: Scalar>(c: &Polyline<T>, snap_tol: T) -> Result<LoopDecomposition<T>> {
    loop_erase_capped(c, snap_tol, DEFAULT_ITERATION_CAP)
}

/// Repeatedly cuts out the leftmost longest loop `[t, φ(t)]`, where `φ(t)` is
/// the last parameter still present that maps to the same point as `t`.
pub fn loop_erase_capped<T: Scalar>(c: &Polyline<T>, snap_tol: T, cap: usize) -> Result<LoopDecomposition<T>> {
    if c.first() == c.last() {
        return Err(Error::precondition("loop_erase", "first vertex equals last vertex", vec![0, c.len() - 1]));
    }
    if !(snap_tol >= T::zero()) {
        return Err(Error::Domain(format!("snap tolerance must be non-negative, got {snap_tol}")));
    }
    let (verts, params) = insert_intersections(c, snap_tol);
    let verts = snap(&verts, snap_tol);
    let mut vs: Vec<Point<T>> = Vec::with_capacity(verts.len());
    let mut ps: Vec<T> = Vec::with_capacity(verts.len());
    for (v, t) in verts.into_iter().zip(params) {
        if vs.last() != Some(&v) {
            vs.push(v);
            ps.push(t);
        }
    }
    if vs.len() < 2 || vs[0] == vs[vs.len() - 1] {
        return Err(Error::Degenerate(format!("snapping at {snap_tol} collapses the curve ends")));
    }
    let prepared = Polyline::loop_candidate(vs.clone(), Some(ps.clone()))?;
    let key = |p: Point<T>| (p.x.as_f64().to_bits(), p.y.as_f64().to_bits());
    let range = ps[ps.len() - 1] - ps[0];
    let tie = T::merge_eps() * range;
    let mut alive: Vec<usize> = (0..vs.len()).collect();
    let mut trace = Vec::new();
    loop {
        // last alive index of every point
        let mut last: HashMap<(u64, u64), usize> = HashMap::with_capacity(alive.len());
        for (pos, &i) in alive.iter().enumerate() {
            last.insert(key(vs[i]), pos);
        }
        let mut best: Option<(T, usize, usize)> = None;
        for (pos, &i) in alive.iter().enumerate() {
            let end = last[&key(vs[i])];
            if end == pos {
                continue;
            }
            let m = ps[alive[end]] - ps[i];
            // scanning left to right keeps the leftmost of tied maxima; each
            // start has a single farthest end, which is the longest interval
            if best.map_or(true, |(bm, _, _)| m > bm + tie) {
                best = Some((m, pos, end));
            }
        }
        let Some((m, pos, end)) = best else {
            break;
        };
        if trace.len() >= cap {
            return Err(Error::IterationCap(cap));
        }
        trace.push(Removal {
            interval: (ps[alive[pos]], ps[alive[end]]),
            m,
        });
        alive.drain(pos + 1..=end);
    }
    let mut intervals: Vec<(T, T)> = trace.iter().map(|r| r.interval).collect();
    intervals.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite parameters"));
    let simple = Polyline::with_params(alive.iter().map(|&i| vs[i]).collect(), alive.iter().map(|&i| ps[i]).collect())?;
    Ok(LoopDecomposition {
        intervals,
        simple,
        removal_trace: trace,
        prepared,
    })
}

/// Splits every segment at its intersections with the other segments.
/// Returns the refined vertices with interpolated parameters.
fn insert_intersections<T: Scalar>(c: &Polyline<T>, tol: T) -> (Vec<Point<T>>, Vec<T>) {
    let v = c.vertices();
    let n = c.segment_count();
    let mut cuts: Vec<Vec<(T, Point<T>)>> = vec![Vec::new(); n];
    let lens: Vec<T> = (0..n).map(|k| c.segment_length(k)).collect();
    for i in 0..n {
        for j in i + 1..n {
            for (ti, tj, p) in segment_meets(v[i], v[i + 1], v[j], v[j + 1], tol) {
                // points within tol of a segment end are that end
                for (k, t) in [(i, ti), (j, tj)] {
                    if t * lens[k] > tol && (T::one() - t) * lens[k] > tol {
                        cuts[k].push((t, p));
                    }
                }
            }
        }
    }
    let params = c.params();
    let mut out_v = vec![v[0]];
    let mut out_p = vec![params[0]];
    for (k, list) in cuts.iter_mut().enumerate() {
        list.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite cut"));
        for &(t, p) in list.iter() {
            out_v.push(p);
            out_p.push(params[k] + (params[k + 1] - params[k]) * t);
        }
        out_v.push(v[k + 1]);
        out_p.push(params[k + 1]);
    }
    // snapped duplicates may later collapse; params must stay increasing
    let mut vs = Vec::with_capacity(out_v.len());
    let mut ps: Vec<T> = Vec::with_capacity(out_p.len());
    for (p, t) in out_v.into_iter().zip(out_p) {
        if ps.last().is_some_and(|&l| t <= l) {
            continue;
        }
        vs.push(p);
        ps.push(t);
    }
    (vs, ps)
}

/// Common points of segments `ab` and `cd` as `(t on ab, t on cd, point)`:
/// one crossing point, or the two ends of a collinear overlap.
fn segment_meets<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>, d: Point<T>, tol: T) -> Vec<(T, T, Point<T>)> {
    let (u, w) = (b - a, d - c);
    let (lu, lw) = (u.norm(), w.norm());
    if lu == T::zero() || lw == T::zero() {
        return Vec::new();
    }
    let lo = |t: T, l: T| t >= -tol / l && t <= T::one() + tol / l;
    let clamp = |t: T| t.max(T::zero()).min(T::one());
    let denom = u.cross(w);
    if denom.abs() > T::merge_eps() * lu * lw {
        let ac = c - a;
        let t = ac.cross(w) / denom;
        let s = ac.cross(u) / denom;
        if lo(t, lu) && lo(s, lw) {
            let t = clamp(t);
            return vec![(t, clamp(s), a.lerp(b, t))];
        }
        return Vec::new();
    }
    // parallel: overlap only if c lies on the line through ab
    if ((c - a).cross(u) / lu).abs() > tol {
        return Vec::new();
    }
    let proj = |p: Point<T>| (p - a).dot(u) / u.dot(u);
    let (s0, s1) = (proj(c), proj(d));
    let t0 = s0.min(s1).max(T::zero());
    let t1 = s0.max(s1).min(T::one());
    if t0 > t1 + tol / lu {
        return Vec::new();
    }
    let back = |t: T| (a.lerp(b, t) - c).dot(w) / w.dot(w);
    let mut out = vec![(t0, clamp(back(t0)), a.lerp(b, t0))];
    if t1 > t0 {
        out.push((t1, clamp(back(t1)), a.lerp(b, t1)));
    }
    out
}

/// Replaces every cluster of points chained within `tol` by its first member.
fn snap<T: Scalar>(points: &[Point<T>], tol: T) -> Vec<Point<T>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| points[a].x.partial_cmp(&points[b].x).expect("finite coordinates"));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if points[j].x - points[i].x > tol {
                break;
            }
            if points[i].dist(points[j]) <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                // the smaller index becomes the root so the earliest point wins
                if ri != rj {
                    let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                    parent[hi] = lo;
                }
            }
        }
    }
    (0..n).map(|i| points[find(&mut parent, i)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validators::self_intersects;
    use proptest::prelude::*;

    fn with_params(pts: &[(f64, f64)]) -> Polyline<f64> {
        Polyline::with_params(
            pts.iter().map(|&(x, y)| Point::new(x, y)).collect(),
            (0..pts.len()).map(|k| k as f64).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_backtrack() {
        let c = with_params(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 1.0)]);
        let d = loop_erase(&c, 1e-9).unwrap();
        assert_eq!(d.intervals, vec![(0.0, 2.0)]);
        assert_eq!(d.simple.vertices(), &[Point::new(0.0, 0.0), Point::new(0.0, 1.0)]);
        assert_eq!(d.removal_trace.len(), 1);
        assert_eq!(d.removal_trace[0].m, 2.0);
    }

    #[test]
    fn injective_input_unchanged() {
        let c = with_params(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (2.0, 1.5)]);
        let d = loop_erase(&c, 1e-9).unwrap();
        assert!(d.intervals.is_empty());
        assert_eq!(d.simple, c);
    }

    #[test]
    fn two_loops_leftmost_first() {
        // A B A C D C E
        let (a, b, cc, dd, e) = ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0), (2.0, 0.0));
        let c = with_params(&[a, b, a, cc, dd, cc, e]);
        let d = loop_erase(&c, 1e-9).unwrap();
        let order: Vec<(f64, f64)> = d.removal_trace.iter().map(|r| r.interval).collect();
        assert_eq!(order, vec![(0.0, 2.0), (3.0, 5.0)]);
        let pts: Vec<Point<f64>> = [a, cc, e].iter().map(|&(x, y)| Point::new(x, y)).collect();
        assert_eq!(d.simple.vertices(), &pts[..]);
    }

    #[test]
    fn crossing_loop_is_cut_at_the_crossing() {
        // figure with one transversal crossing at (1, 0)
        let c = with_params(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, -1.0)]);
        let d = loop_erase(&c, 1e-9).unwrap();
        assert_eq!(d.intervals.len(), 1);
        let (al, be) = d.intervals[0];
        assert!((c.point_at(al).dist(Point::new(1.0, 0.0))) < 1e-12);
        assert!((c.point_at(be).dist(Point::new(1.0, 0.0))) < 1e-12);
        assert!(!self_intersects(&d.simple));
        assert_eq!(d.simple.first(), c.first());
        assert_eq!(d.simple.last(), c.last());
    }

    #[test]
    fn collinear_overlap() {
        // runs out along x, comes back part way on the same line, then leaves
        let c = with_params(&[(0.0, 0.0), (2.0, 0.0), (0.5, 0.0), (0.5, 1.0)]);
        let d = loop_erase(&c, 1e-9).unwrap();
        assert_eq!(d.simple.vertices(), &[Point::new(0.0, 0.0), Point::new(0.5, 0.0), Point::new(0.5, 1.0)]);
        assert!(!self_intersects(&d.simple));
    }

    #[test]
    fn errors() {
        let closed = Polyline::loop_candidate(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 0.0)], None).unwrap();
        assert!(matches!(loop_erase(&closed, 1e-9), Err(Error::Precondition { .. })));
        let tiny = with_params(&[(0.0, 0.0), (1e-6, 0.0)]);
        assert!(matches!(loop_erase(&tiny, 1e-3), Err(Error::Degenerate(_))));
        let c = with_params(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 1.0)]);
        assert!(matches!(loop_erase_capped(&c, 1e-9, 0), Err(Error::IterationCap(0))));
    }

    proptest! {
        #[test]
        fn random_walks_become_simple(steps in prop::collection::vec((-1i32..=1, -1i32..=1), 3..40)) {
            // lattice walks revisit points exactly
            let mut pts = vec![Point::new(0.0, 0.0)];
            for (dx, dy) in steps {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let p = *pts.last().unwrap() + Point::new(dx as f64, dy as f64);
                pts.push(p);
            }
            prop_assume!(pts.len() >= 2 && pts[0] != pts[pts.len() - 1]);
            let c = Polyline::new(pts).unwrap();
            let d = loop_erase(&c, 1e-9).unwrap();
            prop_assert!(!self_intersects(&d.simple));
            prop_assert_eq!(d.simple.first(), c.first());
            prop_assert_eq!(d.simple.last(), c.last());
            let ms: Vec<f64> = d.removal_trace.iter().map(|r| r.m).collect();
            for w in ms.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-9);
            }
            prop_assert!(ms.iter().sum::<f64>() <= c.params()[c.len() - 1] - c.params()[0] + 1e-9);
            for &(a, b) in &d.intervals {
                prop_assert!(c.point_at(a).dist(c.point_at(b)) < 1e-9);
            }
            let again = loop_erase(&d.simple, 1e-9).unwrap();
            prop_assert!(again.intervals.is_empty());
            prop_assert_eq!(&again.simple, &d.simple);
        }
    }
}
