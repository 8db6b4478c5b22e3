use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::angular::AngularSet;
use crate::geom::point::Point;
use crate::polyline::Polyline;
use crate::scalar::Scalar;
use crate::validators::curve::{normals_from, prior_samples, r_path_slack_at, segments_intersect};
use crate::validators::{is_r_path, self_intersects, CheckOptions};

/// Curve family and its shape parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorKind<T> {
    /// Straight chain from the origin along `+x`.
    Segment { length: T, vertices: usize },
    /// Circle arc around the origin starting at angle 0, counterclockwise.
    Arc { radius: T, angle: T, vertices: usize },
    /// Involute of the circle of radius `base_radius`, unwound through `angle`.
    Involute { base_radius: T, angle: T, vertices: usize },
    /// Random walk kept an R-path by incremental validation.
    RandomRPath(RandomPathSpec<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomPathSpec<T> {
    pub seed: u64,
    pub step: T,
    pub steps: usize,
    pub start: Point<T>,
    /// Keep every vertex in the closed disk of this radius around `start`.
    pub containment: Option<T>,
    /// Admissible normals are shrunk by this angle before sampling.
    pub margin: T,
    /// Largest turn between consecutive segments; turns go one way only,
    /// chosen from the seed, so the walk winds instead of hitting the
    /// containment circle head-on.
    pub max_turn: T,
    /// Rejected candidates at one vertex before backtracking.
    pub tries_per_vertex: usize,
    pub max_attempts: usize,
}

impl<T: Scalar> RandomPathSpec<T> {
    /// Corpus defaults: 60 steps of length 0.01 inside `D(0, 0.2)`.
    pub fn corpus(seed: u64) -> Self {
        RandomPathSpec {
            seed,
            step: T::lit(0.01),
            steps: 60,
            start: Point::new(T::zero(), T::zero()),
            containment: Some(T::lit(0.2)),
            margin: T::lit(0.1),
            max_turn: T::lit(0.4),
            tries_per_vertex: 8,
            max_attempts: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec<T> {
    pub kind: GeneratorKind<T>,
    /// R used by validating generators.
    pub radius: T,
}

impl<T: Scalar> GeneratorSpec<T> {
    /// Random corpus curve with `R = 1`.
    pub fn corpus(seed: u64) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::RandomRPath(RandomPathSpec::corpus(seed)),
            radius: T::one(),
        }
    }
}

fn count<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("vertex count")
}

fn need_vertices(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 vertices, got {n}")));
    }
    Ok(())
}

pub fn generate<T: Scalar>(spec: &GeneratorSpec<T>) -> Result<Polyline<T>> {
    match &spec.kind {
        GeneratorKind::Segment { length, vertices } => {
            need_vertices(*vertices)?;
            let n = count::<T>(*vertices - 1);
            Polyline::new((0..*vertices).map(|k| Point::new(*length * count::<T>(k) / n, T::zero())).collect())
        }
        GeneratorKind::Arc { radius, angle, vertices } => {
            need_vertices(*vertices)?;
            if !(*angle > T::zero() && *angle < T::TAU()) {
                return Err(Error::Domain(format!("arc angle must be in (0, 2π), got {angle}")));
            }
            let n = count::<T>(*vertices - 1);
            Polyline::new(
                (0..*vertices)
                    .map(|k| Point::from_angle(*angle * count::<T>(k) / n) * *radius)
                    .collect(),
            )
        }
        GeneratorKind::Involute { base_radius, angle, vertices } => {
            need_vertices(*vertices)?;
            let n = count::<T>(*vertices - 1);
            Polyline::new(
                (0..*vertices)
                    .map(|k| {
                        let t = *angle * count::<T>(k) / n;
                        let (s, c) = t.sin_cos();
                        Point::new(c + t * s, s - t * c) * *base_radius
                    })
                    .collect(),
            )
        }
        GeneratorKind::RandomRPath(p) => random_r_path(p, spec.radius),
    }
}

fn random_r_path<T: Scalar>(p: &RandomPathSpec<T>, radius: T) -> Result<Polyline<T>> {
    if !(p.step > T::zero()) || p.steps == 0 {
        return Err(Error::Domain("random path needs a positive step and at least one step".into()));
    }
    if !(radius > T::zero()) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let sense = if rng.gen::<bool>() { T::one() } else { -T::one() };
    let radius_eps = p.step * T::lit(3.0);
    let mut verts = vec![p.start];
    let mut fails = vec![0usize];
    let mut longest = 1;
    let mut attempts = 0;
    while verts.len() <= p.steps {
        attempts += 1;
        if attempts > p.max_attempts {
            return Err(Error::GenerationFailed { attempts, longest });
        }
        let x = *verts.last().expect("non-empty");
        let mut allowed = if verts.len() == 1 {
            AngularSet::full()
        } else {
            let c = Polyline::new(verts.clone())?;
            let samples = c.samples();
            let prev = c.segment_dir(c.segment_count() - 1).angle();
            normals_from(prior_samples(&samples, verts.len() - 1), x, radius)
                .shrink(p.margin)
                .intersection(&turn_window(prev, p.max_turn, sense))
        };
        if let Some(rho) = p.containment {
            let off = x - p.start;
            let d = off.norm();
            if d > T::zero() {
                let k = (rho * rho - p.step * p.step - d * d) / (p.step + p.step) / d;
                allowed = allowed.intersection(&AngularSet::dot_at_most(off * (T::one() / d), k));
            }
        }
        let depth = verts.len() - 1;
        if allowed.is_empty() || fails[depth] >= p.tries_per_vertex {
            if verts.len() > 1 {
                verts.pop();
                fails.pop();
            }
            *fails.last_mut().expect("start vertex") += 1;
            continue;
        }
        let u: f64 = rng.gen();
        let theta = allowed.sample_uniform(T::lit(u)).expect("non-empty set");
        let v = x + Point::from_angle(theta) * p.step;
        verts.push(v);
        if accept(&verts, radius, radius_eps)? {
            fails.push(0);
            longest = longest.max(verts.len());
        } else {
            verts.pop();
            fails[depth] += 1;
        }
    }
    let c = Polyline::new(verts)?;
    let report = is_r_path(&c, radius, &CheckOptions::exact())?;
    if !report.passed() || self_intersects(&c) {
        return Err(Error::GenerationFailed { attempts, longest });
    }
    Ok(c)
}

/// Directions turning from `prev` by at most `max_turn` in rotation sense `sense`.
fn turn_window<T: Scalar>(prev: T, max_turn: T, sense: T) -> AngularSet<T> {
    if sense > T::zero() {
        AngularSet::arc(prev, max_turn)
    } else {
        AngularSet::arc(prev - max_turn, max_turn)
    }
}

/// New last vertex keeps the curve simple and the R-path slack non-negative
/// at every vertex whose chord cones can see it.
fn accept<T: Scalar>(verts: &[Point<T>], radius: T, radius_eps: T) -> Result<bool> {
    let n = verts.len() - 1;
    let (a, b) = (verts[n - 1], verts[n]);
    let eps = T::merge_eps();
    for k in 0..n.saturating_sub(2) {
        if segments_intersect(verts[k], verts[k + 1], a, b, eps) {
            return Ok(false);
        }
    }
    if n >= 2 {
        let d1 = verts[n - 1] - verts[n - 2];
        let d2 = b - a;
        if d1.cross(d2).abs() <= eps * d1.norm() * d2.norm() && d1.dot(d2) < T::zero() {
            return Ok(false);
        }
    }
    let c = Polyline::new(verts.to_vec())?;
    let samples = c.samples();
    let reach = radius_eps * T::lit(1.0 + 1e-9) + T::geom_eps();
    for j in 0..=n {
        if j + 1 < n && verts[j].dist(b) > reach {
            continue;
        }
        let (slack, _) = r_path_slack_at(&c, &samples, j, radius, radius_eps)?;
        if slack < T::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validators::{check_length_bound, is_r_curve, BoundContext};

    #[test]
    fn segment_spacing() {
        let c = generate(&GeneratorSpec {
            kind: GeneratorKind::Segment { length: 1.0f64, vertices: 11 },
            radius: 1.0,
        })
        .unwrap();
        assert_eq!(c.len(), 11);
        for i in 0..10 {
            assert!((c.segment_length(i) - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn half_arc_is_r_curve() {
        let c = generate(&GeneratorSpec {
            kind: GeneratorKind::Arc {
                radius: 0.5,
                angle: std::f64::consts::PI,
                vertices: 41,
            },
            radius: 1.0,
        })
        .unwrap();
        assert!(is_r_curve(&c, 1.0, &CheckOptions::default()).unwrap().passed());
    }

    #[test]
    fn involute_starts_on_base_circle() {
        let c = generate(&GeneratorSpec {
            kind: GeneratorKind::Involute {
                base_radius: 0.1,
                angle: 3.0,
                vertices: 30,
            },
            radius: 1.0,
        })
        .unwrap();
        assert!((c.first().dist(Point::new(0.1, 0.0))) < 1e-12);
        assert!(!self_intersects(&c));
    }

    #[test]
    fn random_seed_42_pipeline() {
        let c = generate(&GeneratorSpec::<f64>::corpus(42)).unwrap();
        assert_eq!(c.len(), 61);
        assert!(is_r_path(&c, 1.0, &CheckOptions::default()).unwrap().passed());
        assert!(!self_intersects(&c));
        for v in c.vertices() {
            assert!(v.norm() <= 0.2 + 1e-12);
        }
        let ctx = BoundContext::around(&c, 2.0, 1.0).unwrap();
        assert!(check_length_bound(&c, &ctx, &CheckOptions::default()).unwrap().passed());
    }

    #[test]
    fn deterministic_under_seed() {
        let a = generate(&GeneratorSpec::<f64>::corpus(7)).unwrap();
        let b = generate(&GeneratorSpec::<f64>::corpus(7)).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        let c = generate(&GeneratorSpec::<f64>::corpus(8)).unwrap();
        assert_ne!(a.vertices(), c.vertices());
    }
}
