use crate::error::{Error, Result};
use crate::geom::angular::AngularSet;
use crate::geom::point::Point;
use crate::scalar::Scalar;

/// Unit directions `l` for which the point `p` stays outside the open disk
/// `B(x + R l, R)`, i.e. `<p - x, l> <= |p - x|² / (2R)`.
///
/// The result is the closed complement of the open arc centered at the
/// direction of `p - x` with half-width `arccos(min(1, |p - x| / (2R)))`.
pub fn halfcircle_constraint<T: Scalar>(p: Point<T>, x: Point<T>, radius: T) -> Result<AngularSet<T>> {
    if !(radius > T::zero()) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    let v = p - x;
    let d = v.norm();
    if d == T::zero() {
        return Err(Error::Degenerate("constraint point coincides with the base point".into()));
    }
    let ratio = (d / (radius + radius)).min(T::one()).max(T::zero());
    Ok(AngularSet::dot_at_most(v * (T::one() / d), ratio))
}

/// Measure of the curved angle at `x` cut out by the exteriors of the two
/// radius-`R` disks centered at `b` and `c`.
///
/// `x` must lie on both boundary circles. The tangent cone at `x` is the
/// intersection of the two closed half-planes `<v, x - b> >= 0` and
/// `<v, x - c> >= 0`; the half-plane bounded by the line `bc` does not cut it
/// because `x` lies strictly off that line.
pub fn curved_angle_measure<T: Scalar>(b: Point<T>, c: Point<T>, x: Point<T>, radius: T, tol: T) -> Result<T> {
    if !(radius > T::zero()) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    if b == c {
        return Err(Error::Domain("curved angle needs two distinct centers".into()));
    }
    if b.dist(c) >= radius + radius {
        return Err(Error::Domain("curved angle needs |b - c| < 2R".into()));
    }
    let slack = tol * radius.max(T::one());
    if (x.dist(b) - radius).abs() > slack || (x.dist(c) - radius).abs() > slack {
        return Err(Error::Domain("x is not on both circles".into()));
    }
    let cone = AngularSet::half_circle_towards(x - b).intersection(&AngularSet::half_circle_towards(x - c));
    Ok(cone.measure())
}
