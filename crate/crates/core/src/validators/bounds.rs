use crate::error::{Error, Result};
use crate::geom::hull::{convex_hull, min_enclosing_circle, tangent_cone_at_hull_vertex, HullLocation};
use crate::geom::point::Point;
use crate::polyline::Polyline;
use crate::scalar::Scalar;

use super::curve::{admissible_normals, find_self_intersection, is_r_path};
use super::{CheckOptions, MarginTracker, ValidationReport};

/// Parameters of the angle and length bounds for curves of small diameter
/// relative to `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundContext<T> {
    pub n: T,
    pub radius: T,
    pub center: Point<T>,
}

impl<T: Scalar> BoundContext<T> {
    pub fn new(n: T, center: Point<T>, radius: T) -> Result<Self> {
        if !(n > T::one()) {
            return Err(Error::Domain(format!("N must exceed 1, got {n}")));
        }
        if !(radius > T::zero()) {
            return Err(Error::Domain(format!("radius must be positive, got {radius}")));
        }
        Ok(BoundContext { n, radius, center })
    }

    /// Context centered at the smallest enclosing circle of the vertices.
    pub fn around(c: &Polyline<T>, n: T, radius: T) -> Result<Self> {
        let (center, _) = min_enclosing_circle(c.vertices())?;
        Self::new(n, center, radius)
    }

    /// `π/2 + 2 asin(1/(2N))`.
    pub fn phi(&self) -> T {
        T::FRAC_PI_2() + T::lit(2.0) * (T::one() / (T::lit(2.0) * self.n)).asin()
    }

    /// `R / (2N)`.
    pub fn containment_radius(&self) -> T {
        self.radius / (T::lit(2.0) * self.n)
    }
}

pub(crate) fn require_r_path<T: Scalar>(check: &'static str, c: &Polyline<T>, radius: T, opts: &CheckOptions<T>) -> Result<()> {
    let r = is_r_path(c, radius, opts)?;
    if r.passed() {
        Ok(())
    } else {
        let witness = r.witnesses.first().map(|w| w.indices.clone()).unwrap_or_default();
        Err(Error::precondition(check, format!("not an R-path (margin {})", r.margin), witness))
    }
}

/// Checks that every sample before vertex `i` lies within `limit` of it.
fn require_local_past<T: Scalar>(check: &'static str, c: &Polyline<T>, limit: T, slack: T) -> Result<()> {
    let samples = c.samples();
    for i in 1..c.len() {
        let x = c.vertices()[i];
        for (s, p) in samples[..2 * i].iter().enumerate() {
            let d = p.pos.dist(x);
            if d > limit + slack {
                return Err(Error::precondition(
                    check,
                    format!("sample {s} lies at distance {d} from vertex {i}, limit {limit}"),
                    vec![i, s],
                ));
            }
        }
    }
    Ok(())
}

/// Every vertex has admissible normals of measure at least `π/2` (minus
/// `opts.ang_slack`). Requires an R-path whose past stays in the closed
/// `R`-ball around each vertex (up to `opts.tol`).
pub fn check_normal_measure<T: Scalar>(c: &Polyline<T>, radius: T, opts: &CheckOptions<T>) -> Result<ValidationReport<T>> {
    const CHECK: &str = "normal_measure";
    require_local_past(CHECK, c, radius, opts.tol)?;
    require_r_path(CHECK, c, radius, opts)?;
    let mut track = MarginTracker::new(opts.ang_slack);
    let mut disconnected = Vec::new();
    for i in 1..c.len() {
        let w = admissible_normals(c, i, radius)?;
        if w.component_count() > 1 {
            disconnected.push(i);
        }
        track.observe(w.measure() - T::FRAC_PI_2(), || vec![i], "normal set below a quarter circle");
    }
    let mut r = track
        .finish(CHECK)
        .with_param("R", radius)
        .with_param("ang_slack", opts.ang_slack);
    if !disconnected.is_empty() {
        r = r.with_note(format!(
            "admissible normals disconnected at vertices {disconnected:?}; total measure used"
        ));
    }
    Ok(r)
}

/// Tangent cones of the prefix hulls at their newest vertex are no wider than
/// `ctx.phi()` (plus `opts.ang_slack`). Requires an R-path whose past stays
/// within `R/N` of each vertex.
pub fn check_hull_tangent_bound<T: Scalar>(c: &Polyline<T>, ctx: &BoundContext<T>, opts: &CheckOptions<T>) -> Result<ValidationReport<T>> {
    const CHECK: &str = "hull_tangent_bound";
    require_local_past(CHECK, c, ctx.radius / ctx.n, opts.tol)?;
    require_r_path(CHECK, c, ctx.radius, opts)?;
    let phi = ctx.phi();
    let mut track = MarginTracker::new(opts.ang_slack);
    let mut interior = 0usize;
    for i in 1..c.len() {
        let hull = convex_hull(&c.vertices()[..=i])?;
        let cone = tangent_cone_at_hull_vertex(&hull, c.vertices()[i], opts.tol)?;
        if cone.location == HullLocation::Interior {
            interior += 1;
            continue;
        }
        track.observe(phi - cone.cone.measure(), || vec![i], "hull tangent cone wider than phi");
    }
    let mut r = track
        .finish(CHECK)
        .with_param("N", ctx.n)
        .with_param("R", ctx.radius)
        .with_param("phi", phi)
        .with_param("ang_slack", opts.ang_slack);
    if interior > 0 {
        r = r.with_note(format!("{interior} vertices interior to their prefix hull skipped"));
    }
    Ok(r)
}

/// `(1 + cos φ) length <= per(co(c))`, reported with margin `per - (1 + cos φ) length`.
/// Requires an injective R-path inside `D(ctx.center, R/(2N))`.
pub fn check_length_bound<T: Scalar>(c: &Polyline<T>, ctx: &BoundContext<T>, opts: &CheckOptions<T>) -> Result<ValidationReport<T>> {
    const CHECK: &str = "length_bound";
    if let Some((i, j)) = find_self_intersection(c) {
        return Err(Error::precondition(CHECK, format!("segments {i} and {j} intersect"), vec![i, j]));
    }
    let limit = ctx.containment_radius();
    if let Some(i) = c.vertices().iter().position(|v| v.dist(ctx.center) > limit + opts.tol) {
        return Err(Error::precondition(
            CHECK,
            format!("vertex {i} lies outside D(center, {limit})"),
            vec![i],
        ));
    }
    require_r_path(CHECK, c, ctx.radius, opts)?;
    let phi = ctx.phi();
    let length = c.length();
    let per = convex_hull(c.vertices())?.perimeter();
    let lhs = (T::one() + phi.cos()) * length;
    let mut track = MarginTracker::new(opts.tol);
    track.observe(per - lhs, || (0..c.len()).collect(), "length exceeds perimeter bound");
    Ok(track
        .finish(CHECK)
        .with_param("N", ctx.n)
        .with_param("phi", phi)
        .with_param("length", length)
        .with_param("perimeter", per)
        .with_param("ratio", lhs / per))
}

/// Largest detour over all vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detour<T> {
    pub value: T,
    pub i: usize,
    pub j: usize,
}

/// Maximum of `length(c[i..=j]) / |v_i - v_j|` over vertex pairs `i < j`.
pub fn max_detour<T: Scalar>(c: &Polyline<T>) -> Result<Detour<T>> {
    let v = c.vertices();
    let cum = c.cumulative_lengths();
    let mut best = Detour {
        value: T::one(),
        i: 0,
        j: 1,
    };
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let chord = v[i].dist(v[j]);
            if chord == T::zero() {
                return Err(Error::UndefinedDetour(i, j));
            }
            let d = (cum[j] - cum[i]) / chord;
            if d > best.value {
                best = Detour { value: d, i, j };
            }
        }
    }
    Ok(best)
}
