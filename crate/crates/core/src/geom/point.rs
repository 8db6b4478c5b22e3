use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// A point (or free vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    /// Unit vector at angle `theta` (radians, counterclockwise from +x).
    #[inline]
    pub fn from_angle(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Point::new(c, s)
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    #[inline]
    pub fn dist_sq(self, o: Self) -> T {
        (self - o).norm_sq()
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(Point::new(self.x / n, self.y / n))
        } else {
            None
        }
    }

    /// Angle of the vector in `[0, 2π)`.
    #[inline]
    pub fn angle(self) -> T {
        crate::geom::angular::canonical_angle(self.y.atan2(self.x))
    }

    /// Counterclockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Self {
        Point::new(-self.y, self.x)
    }

    #[inline]
    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }

    #[inline]
    pub fn midpoint(self, o: Self) -> Self {
        self.lerp(o, T::lit(0.5))
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Point::new(self.x * s, self.y * s)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn dist_point_segment<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> T {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == T::zero() {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len_sq).max(T::zero()).min(T::one());
    p.dist(a + ab * t)
}
