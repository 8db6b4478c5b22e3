use crate::error::{Error, Result};
use crate::geom::angular::{smallest_enclosing_arc, AngularSet};
use crate::geom::constraints::halfcircle_constraint;
use crate::geom::point::Point;
use crate::polyline::{Polyline, Sample};
use crate::scalar::Scalar;

use super::{CheckOptions, MarginTracker, ValidationReport};

fn positive_radius<T: Scalar>(radius: T) -> Result<()> {
    if radius > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must be positive, got {radius}")))
    }
}

/// Pairwise R-curve inequality `|x1 - x|² - 2R <x1 - x, t> >= 0` over all
/// sample pairs `x1` strictly before `x`, at every one-sided tangent `t` of `x`.
///
/// Margin is in length² units; tolerance is `opts.tol`.
pub fn is_r_curve<T: Scalar>(c: &Polyline<T>, radius: T, opts: &CheckOptions<T>) -> Result<ValidationReport<T>> {
    positive_radius(radius)?;
    let samples = c.samples();
    let two_r = radius + radius;
    let mut track = MarginTracker::new(opts.tol);
    for (s, x) in samples.iter().enumerate() {
        for t in x.tangents() {
            for (s1, p) in samples[..s].iter().enumerate() {
                let d = p.pos - x.pos;
                let v = d.norm_sq() - two_r * d.dot(t);
                track.observe(v, || vec![s1, s], "prior sample inside tangent disk");
            }
        }
    }
    Ok(track.finish("r_curve").with_param("R", radius).with_param("tolerance", opts.tol))
}

pub(crate) fn prior_samples<T: Scalar>(samples: &[Sample<T>], i: usize) -> &[Sample<T>] {
    // vertex i is sample 2i; everything before it is prior
    &samples[..2 * i]
}

pub(crate) fn normals_from<T: Scalar>(prior: &[Sample<T>], x: Point<T>, radius: T) -> AngularSet<T> {
    let mut w = AngularSet::full();
    for p in prior {
        if p.pos == x {
            continue;
        }
        let h = halfcircle_constraint(p.pos, x, radius).expect("distinct points and positive radius");
        w = w.intersection(&h);
        if w.is_empty() {
            break;
        }
    }
    w
}

/// Unit normals `u` whose open disk `B(v_i + R u, R)` misses every sample
/// before vertex `i` (vertices and midpoints, including the midpoint of the
/// incoming segment). Vertex 0 gets the full circle.
pub fn admissible_normals<T: Scalar>(c: &Polyline<T>, i: usize, radius: T) -> Result<AngularSet<T>> {
    positive_radius(radius)?;
    if i >= c.len() {
        return Err(Error::IndexOutOfRange { index: i, len: c.len() });
    }
    let samples = c.samples();
    Ok(normals_from(prior_samples(&samples, i), c.vertices()[i], radius))
}

/// Signed containment slack of `cone` in `w`: minus the excess when it sticks
/// out, otherwise the angular depth of the cone inside `w`.
pub(crate) fn containment_slack<T: Scalar>(cone: &AngularSet<T>, w: &AngularSet<T>) -> T {
    if cone.is_empty() {
        return T::PI();
    }
    let excess = cone.excess_over(w);
    if excess > T::zero() {
        return -excess;
    }
    let outside = w.complement();
    if outside.is_empty() {
        return T::PI();
    }
    cone.pieces()
        .iter()
        .flat_map(|&(lo, hi)| [lo, hi])
        .map(|t| outside.distance_to(t))
        .fold(T::PI(), T::min)
}

/// Containment slack of the chord cones at vertex `i` and the number of
/// components of the admissible normals there.
pub(crate) fn r_path_slack_at<T: Scalar>(
    c: &Polyline<T>,
    samples: &[Sample<T>],
    i: usize,
    radius: T,
    radius_eps: T,
) -> Result<(T, usize)> {
    let w = normals_from(prior_samples(samples, i), c.vertices()[i], radius);
    let cones = c.chord_cones(i, radius_eps)?.union();
    Ok((containment_slack(&cones, &w), w.component_count()))
}

/// Discrete R-path condition: at every vertex both chord cones lie in the
/// admissible normals, up to `opts.ang_slack`. Margin is in radians.
pub fn is_r_path<T: Scalar>(c: &Polyline<T>, radius: T, opts: &CheckOptions<T>) -> Result<ValidationReport<T>> {
    positive_radius(radius)?;
    if c.is_closed() {
        return Err(Error::precondition(
            "r_path",
            "first vertex equals last vertex",
            vec![0, c.len() - 1],
        ));
    }
    let radius_eps = opts.radius_eps.unwrap_or_else(|| c.default_radius_eps());
    let samples = c.samples();
    let mut track = MarginTracker::new(opts.ang_slack);
    let mut disconnected = 0usize;
    for i in 0..c.len() {
        let (slack, parts) = r_path_slack_at(c, &samples, i, radius, radius_eps)?;
        if parts > 1 {
            disconnected += 1;
        }
        track.observe(slack, || vec![i], "chord cone outside admissible normals");
    }
    let mut r = track
        .finish("r_path")
        .with_param("R", radius)
        .with_param("ang_slack", opts.ang_slack)
        .with_param("radius_eps", radius_eps);
    if disconnected > 0 {
        r = r.with_note(format!("admissible normals disconnected at {disconnected} vertices"));
    }
    Ok(r)
}

fn orient<T: Scalar>(a: Point<T>, b: Point<T>, p: Point<T>, eps: T) -> i8 {
    let o = (b - a).cross(p - a);
    if o > eps {
        1
    } else if o < -eps {
        -1
    } else {
        0
    }
}

fn in_box<T: Scalar>(a: Point<T>, b: Point<T>, p: Point<T>, eps: T) -> bool {
    p.x >= a.x.min(b.x) - eps && p.x <= a.x.max(b.x) + eps && p.y >= a.y.min(b.y) - eps && p.y <= a.y.max(b.y) + eps
}

/// Closed segment intersection with collinearity tolerance `eps`.
pub(crate) fn segments_intersect<T: Scalar>(p1: Point<T>, p2: Point<T>, q1: Point<T>, q2: Point<T>, eps: T) -> bool {
    let d1 = orient(q1, q2, p1, eps);
    let d2 = orient(q1, q2, p2, eps);
    let d3 = orient(p1, p2, q1, eps);
    let d4 = orient(p1, p2, q2, eps);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && in_box(q1, q2, p1, eps))
        || (d2 == 0 && in_box(q1, q2, p2, eps))
        || (d3 == 0 && in_box(p1, p2, q1, eps))
        || (d4 == 0 && in_box(p1, p2, q2, eps))
}

/// First pair of segments `(i, j)`, `i < j`, that meet outside a shared vertex.
pub fn find_self_intersection<T: Scalar>(c: &Polyline<T>) -> Option<(usize, usize)> {
    let eps = T::merge_eps();
    let v = c.vertices();
    let m = c.segment_count();
    for i in 0..m {
        for j in i + 1..m {
            if j == i + 1 {
                let a = v[i + 1] - v[i];
                let b = v[i + 2] - v[i + 1];
                if a.cross(b).abs() <= eps * a.norm() * b.norm() && a.dot(b) < T::zero() {
                    return Some((i, j));
                }
            } else if segments_intersect(v[i], v[i + 1], v[j], v[j + 1], eps) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn self_intersects<T: Scalar>(c: &Polyline<T>) -> bool {
    find_self_intersection(c).is_some()
}

/// Every vertex sees all later samples within a wedge of opening `phi`
/// (plus `opts.ang_slack`). Margin is `phi` minus the widest wedge, in radians.
pub fn is_phi_self_approaching<T: Scalar>(c: &Polyline<T>, phi: T, opts: &CheckOptions<T>) -> Result<ValidationReport<T>> {
    if !(phi >= T::zero() && phi < T::PI()) {
        return Err(Error::Domain(format!("phi must lie in [0, pi), got {phi}")));
    }
    let samples = c.samples();
    let mut track = MarginTracker::new(opts.ang_slack);
    let mut dirs = Vec::with_capacity(samples.len());
    for i in 0..c.len() {
        let x = c.vertices()[i];
        dirs.clear();
        dirs.extend(samples[2 * i + 1..].iter().filter(|s| s.pos != x).map(|s| (s.pos - x).angle()));
        if let Some(arc) = smallest_enclosing_arc(&dirs) {
            track.observe(phi - arc.width, || vec![i], "future outside wedge");
        }
    }
    Ok(track
        .finish("phi_self_approaching")
        .with_param("phi", phi)
        .with_param("ang_slack", opts.ang_slack))
}

/// `<g'(t), g(u) - g(t)> <= lambda |g(u) - g(t)|` for all prior samples `u`,
/// with `g'` the outgoing segment direction (incoming at the last vertex).
pub fn is_lambda_eel<T: Scalar>(c: &Polyline<T>, lambda: T, opts: &CheckOptions<T>) -> Result<ValidationReport<T>> {
    if !(lambda >= -T::one() && lambda < T::one()) {
        return Err(Error::Domain(format!("lambda must lie in [-1, 1), got {lambda}")));
    }
    let samples = c.samples();
    let mut track = MarginTracker::new(opts.tol);
    for i in 0..c.len() {
        let x = c.vertices()[i];
        let g = if i + 1 < c.len() { c.segment_dir(i) } else { c.segment_dir(i - 1) };
        for (s, p) in prior_samples(&samples, i).iter().enumerate() {
            let d = p.pos - x;
            track.observe(lambda * d.norm() - g.dot(d), || vec![s, 2 * i], "prior sample inside forward cone");
        }
    }
    Ok(track.finish("lambda_eel").with_param("lambda", lambda).with_param("tolerance", opts.tol))
}
