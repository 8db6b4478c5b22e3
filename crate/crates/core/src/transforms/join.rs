use crate::error::{Error, Result};
use crate::polyline::Polyline;
use crate::scalar::Scalar;
use crate::validators::{is_r_curve, self_intersects, CheckOptions, MarginTracker, ValidationReport};

#[derive(Debug, Clone, PartialEq)]
pub struct Joined<T> {
    pub curve: Polyline<T>,
    /// Hypothesis check: every sample of the first curve stays out of the
    /// open disk `B(q + R t, R)` for every sample `q` of the second curve and
    /// tangent `t` there. Margin in length² units, witnesses are
    /// `[second-curve sample, first-curve sample]`.
    pub hypothesis: ValidationReport<T>,
}

/// Concatenates two R-curves sharing an end point, after checking the
/// separation hypothesis; the result is re-validated.
pub fn join<T: Scalar>(c1: &Polyline<T>, c2: &Polyline<T>, radius: T, opts: &CheckOptions<T>) -> Result<Joined<T>> {
    let gap = c1.last().dist(c2.first());
    if gap > opts.tol {
        return Err(Error::precondition(
            "join",
            format!("first curve ends {gap} away from the start of the second"),
            vec![c1.len() - 1, 0],
        ));
    }
    for (k, c) in [c1, c2].into_iter().enumerate() {
        let r = is_r_curve(c, radius, opts)?;
        if !r.passed() {
            return Err(Error::precondition(
                "join",
                format!("curve {} is not an R-curve (margin {})", k + 1, r.margin),
                r.witnesses.first().map(|w| w.indices.clone()).unwrap_or_default(),
            ));
        }
    }
    let s1 = c1.samples();
    let s2 = c2.samples();
    let two_r = radius + radius;
    let mut track = MarginTracker::new(opts.tol);
    for (j, q) in s2.iter().enumerate() {
        for t in q.tangents() {
            for (i, p) in s1.iter().enumerate() {
                let d = p.pos - q.pos;
                track.observe(d.norm_sq() - two_r * d.dot(t), || vec![j, i], "first curve inside tangent disk of second");
            }
        }
    }
    let hypothesis = track.finish("join_hypothesis").with_param("R", radius);
    if !hypothesis.passed() {
        let witness = hypothesis.witnesses.first().map(|w| w.indices.clone()).unwrap_or_default();
        return Err(Error::precondition(
            "join",
            format!("separation hypothesis violated (margin {})", hypothesis.margin),
            witness,
        ));
    }
    let shift = c1.params()[c1.len() - 1] - c2.params()[0];
    let mut vs = c1.vertices().to_vec();
    let mut ps = c1.params().to_vec();
    vs.extend_from_slice(&c2.vertices()[1..]);
    ps.extend(c2.params()[1..].iter().map(|&t| t + shift));
    let curve = Polyline::with_params(vs, ps)?;
    let post = is_r_curve(&curve, radius, opts)?;
    if !post.passed() {
        return Err(Error::Join(format!("joined curve fails the R-curve check (margin {})", post.margin)));
    }
    if self_intersects(&curve) {
        return Err(Error::Join("joined curve intersects itself".into()));
    }
    Ok(Joined { curve, hypothesis })
}
