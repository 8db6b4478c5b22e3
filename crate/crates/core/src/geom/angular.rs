//! Arithmetic on closed subsets of the unit circle.
//!
//! An [`AngularSet`] is a finite union of disjoint closed arcs. Internally the
//! arcs are kept as sorted, merged pieces of `[0, 2π]`; an arc crossing angle
//! zero is stored as two pieces touching `0` and `2π` and re-joined by
//! [`AngularSet::intervals`].

use crate::geom::point::Point;
use crate::scalar::Scalar;

/// Reduces an angle to `[0, 2π)`.
pub fn canonical_angle<T: Scalar>(theta: T) -> T {
    let tau = T::TAU();
    let mut r = theta % tau;
    if r < T::zero() {
        r += tau;
    }
    if r >= tau {
        r -= tau;
    }
    r
}

/// Shortest distance between two angles along the circle, in `[0, π]`.
pub fn circular_distance<T: Scalar>(a: T, b: T) -> T {
    let d = canonical_angle(a - b);
    d.min(T::TAU() - d)
}

/// A unit direction stored by its canonical angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T> {
    theta: T,
}

impl<T: Scalar> Direction<T> {
    pub fn new(theta: T) -> Self {
        Direction {
            theta: canonical_angle(theta),
        }
    }

    /// Direction of a nonzero vector.
    pub fn from_vector(v: Point<T>) -> Option<Self> {
        if v.x == T::zero() && v.y == T::zero() {
            None
        } else {
            Some(Direction { theta: v.angle() })
        }
    }

    #[inline]
    pub fn theta(&self) -> T {
        self.theta
    }

    #[inline]
    pub fn to_vector(&self) -> Point<T> {
        Point::from_angle(self.theta)
    }
}

/// A closed arc `[start, start + width]` traversed counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularInterval<T> {
    pub start: T,
    pub width: T,
}

impl<T: Scalar> AngularInterval<T> {
    pub fn new(start: T, width: T) -> Self {
        AngularInterval {
            start: canonical_angle(start),
            width: width.max(T::zero()).min(T::TAU()),
        }
    }

    pub fn end(&self) -> T {
        self.start + self.width
    }

    pub fn is_full(&self) -> bool {
        self.width >= T::TAU()
    }

    /// Membership, consistent under `2π` shifts of `theta`.
    pub fn contains(&self, theta: T, eps: T) -> bool {
        if self.is_full() {
            return true;
        }
        let off = canonical_angle(theta - self.start);
        off <= self.width + eps || off >= T::TAU() - eps
    }

    pub fn midpoint(&self) -> T {
        canonical_angle(self.start + self.width * T::lit(0.5))
    }
}

/// Finite union of disjoint closed arcs of the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSet<T> {
    pieces: Vec<(T, T)>,
    eps: T,
}

impl<T: Scalar> AngularSet<T> {
    pub fn empty() -> Self {
        AngularSet {
            pieces: Vec::new(),
            eps: T::merge_eps(),
        }
    }

    pub fn full() -> Self {
        AngularSet {
            pieces: vec![(T::zero(), T::TAU())],
            eps: T::merge_eps(),
        }
    }

    /// The single arc `[start, start + width]`; `width >= 2π` gives the full circle.
    pub fn arc(start: T, width: T) -> Self {
        Self::from_raw(vec![(start, start + width.max(T::zero()))], T::merge_eps())
    }

    /// The single direction `theta` (a zero-width arc).
    pub fn point(theta: T) -> Self {
        Self::arc(theta, T::zero())
    }

    pub fn from_interval(iv: AngularInterval<T>) -> Self {
        Self::arc(iv.start, iv.width)
    }

    /// Closed half circle of directions `u` with `<u, v> >= 0`.
    pub fn half_circle_towards(v: Point<T>) -> Self {
        match Direction::from_vector(v) {
            Some(d) => Self::arc(d.theta() - T::FRAC_PI_2(), T::PI()),
            None => Self::full(),
        }
    }

    /// Directions `u` with `<u, w> <= k` for a unit vector `w`.
    ///
    /// This is the closed complement of the open arc centered at `w` with
    /// half-width `arccos(k)`; `k >= 1` gives the full circle, `k < -1` the empty set.
    pub fn dot_at_most(w: Point<T>, k: T) -> Self {
        if k >= T::one() {
            return Self::full();
        }
        if k < -T::one() {
            return Self::empty();
        }
        let half = k.acos();
        let center = w.angle();
        Self::arc(center + half, T::TAU() - half - half)
    }

    /// Builds a canonical set from arbitrary `(lo, hi)` pairs with `hi >= lo`.
    fn from_raw(raw: Vec<(T, T)>, eps: T) -> Self {
        let tau = T::TAU();
        let mut pieces: Vec<(T, T)> = Vec::with_capacity(raw.len() + 1);
        for (lo, hi) in raw {
            let w = hi - lo;
            if w < T::zero() || !w.is_finite() {
                continue;
            }
            if w >= tau - eps {
                return AngularSet {
                    pieces: vec![(T::zero(), tau)],
                    eps,
                };
            }
            let l = canonical_angle(lo);
            let h = l + w;
            if h > tau {
                pieces.push((l, tau));
                pieces.push((T::zero(), h - tau));
            } else {
                pieces.push((l, h));
            }
        }
        pieces.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
        let mut merged: Vec<(T, T)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            if let Some(last) = merged.last_mut() {
                if lo <= last.1 + eps {
                    last.1 = last.1.max(hi);
                    continue;
                }
            }
            merged.push((lo, hi));
        }
        // A set that wraps all the way round is the full circle.
        if merged.len() == 1 && merged[0].0 <= eps && merged[0].1 >= tau - eps {
            merged[0] = (T::zero(), tau);
        } else if merged.len() >= 2 {
            let first = merged[0];
            let last = merged[merged.len() - 1];
            if first.0 <= eps && last.1 >= tau - eps {
                let gaps_closed = merged.windows(2).all(|w| w[1].0 <= w[0].1 + eps);
                if gaps_closed {
                    merged = vec![(T::zero(), tau)];
                }
            }
        }
        AngularSet { pieces: merged, eps }
    }

    /// Uses `eps` instead of the scalar default for subsequent merging.
    pub fn with_eps(mut self, eps: T) -> Self {
        self.eps = eps;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].0 <= T::zero() && self.pieces[0].1 >= T::TAU()
    }

    /// Total angular measure in `[0, 2π]`.
    pub fn measure(&self) -> T {
        self.pieces.iter().map(|&(lo, hi)| hi - lo).sum()
    }

    /// Raw pieces in `[0, 2π]`, sorted; a wrapping arc appears as two pieces.
    pub fn pieces(&self) -> &[(T, T)] {
        &self.pieces
    }

    /// Maximal arcs, sorted by start, with the wrap-around arc re-joined.
    pub fn intervals(&self) -> Vec<AngularInterval<T>> {
        if self.is_empty() {
            return Vec::new();
        }
        if self.is_full() {
            return vec![AngularInterval {
                start: T::zero(),
                width: T::TAU(),
            }];
        }
        let tau = T::TAU();
        let n = self.pieces.len();
        let wraps = n >= 2 && self.pieces[0].0 <= self.eps && self.pieces[n - 1].1 >= tau - self.eps;
        let mut out = Vec::with_capacity(n);
        let (skip_first, skip_last) = if wraps { (1, n - 1) } else { (0, n) };
        for &(lo, hi) in &self.pieces[skip_first..skip_last] {
            out.push(AngularInterval { start: lo, width: hi - lo });
        }
        if wraps {
            let (lo, hi) = self.pieces[n - 1];
            let (_, h0) = self.pieces[0];
            out.push(AngularInterval {
                start: lo,
                width: hi - lo + h0,
            });
        }
        out.sort_by(|a, b| a.start.partial_cmp(&b.start).expect("finite angles"));
        out
    }

    /// Number of maximal arcs.
    pub fn component_count(&self) -> usize {
        self.intervals().len()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut raw = self.pieces.clone();
        raw.extend_from_slice(&other.pieces);
        Self::from_raw(raw, self.eps)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (&self.pieces, &other.pieces);
        let (mut i, mut j) = (0, 0);
        let mut raw = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = a[i].0.max(b[j].0);
            let hi = a[i].1.min(b[j].1);
            if lo <= hi {
                raw.push((lo, hi));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_raw(raw, self.eps)
    }

    /// Closure of the complement. Gaps no wider than the merge tolerance vanish.
    pub fn complement(&self) -> Self {
        if self.is_empty() {
            return Self::full().with_eps(self.eps);
        }
        if self.is_full() {
            return Self::empty().with_eps(self.eps);
        }
        let tau = T::TAU();
        let n = self.pieces.len();
        let mut raw = Vec::with_capacity(n);
        for k in 0..n {
            let hi = self.pieces[k].1;
            let next_lo = if k + 1 < n {
                self.pieces[k + 1].0
            } else {
                self.pieces[0].0 + tau
            };
            if next_lo - hi > self.eps {
                raw.push((hi, next_lo));
            }
        }
        Self::from_raw(raw, self.eps)
    }

    /// Grows every arc by `delta` on both sides.
    pub fn dilate(&self, delta: T) -> Self {
        if self.is_empty() || delta <= T::zero() {
            return self.clone();
        }
        let raw = self.pieces.iter().map(|&(lo, hi)| (lo - delta, hi + delta)).collect();
        Self::from_raw(raw, self.eps)
    }

    /// Shrinks every arc by `delta` on both sides; arcs narrower than `2 delta` vanish.
    pub fn shrink(&self, delta: T) -> Self {
        if delta <= T::zero() {
            return self.clone();
        }
        self.complement().dilate(delta).complement()
    }

    /// Angular distance from `theta` to the set (`π` for the empty set).
    pub fn distance_to(&self, theta: T) -> T {
        if self.is_empty() {
            return T::PI();
        }
        let t = canonical_angle(theta);
        let mut best = T::PI();
        for &(lo, hi) in &self.pieces {
            if lo <= t && t <= hi {
                return T::zero();
            }
            best = best.min(circular_distance(t, lo)).min(circular_distance(t, hi));
        }
        best
    }

    pub fn contains(&self, theta: T) -> bool {
        self.distance_to(theta) <= self.eps
    }

    /// Largest angular distance from a point of `self` to `other`.
    ///
    /// Zero iff `self ⊆ other` (up to the merge tolerance); `π` when `other`
    /// is empty and `self` is not.
    pub fn excess_over(&self, other: &Self) -> T {
        if self.is_empty() {
            return T::zero();
        }
        if other.is_empty() {
            return T::PI();
        }
        let mut worst = T::zero();
        for &(lo, hi) in &self.pieces {
            worst = worst.max(other.distance_to(lo)).max(other.distance_to(hi));
        }
        // The distance to `other` peaks at the middle of its gaps.
        for gap in other.complement().intervals() {
            let mid = gap.midpoint();
            if self.distance_to(mid) <= self.eps {
                worst = worst.max(other.distance_to(mid));
            }
        }
        worst
    }

    pub fn is_subset_of(&self, other: &Self, slack: T) -> bool {
        self.excess_over(other) <= slack + self.eps
    }

    /// Maps a uniform variate in `[0, 1)` to an angle, uniformly by measure.
    pub fn sample_uniform(&self, u: T) -> Option<T> {
        let total = self.measure();
        if self.is_empty() {
            return None;
        }
        if total <= T::zero() {
            return Some(self.pieces[0].0);
        }
        let mut target = u.max(T::zero()).min(T::one()) * total;
        for &(lo, hi) in &self.pieces {
            let w = hi - lo;
            if target <= w {
                return Some(canonical_angle(lo + target));
            }
            target -= w;
        }
        self.pieces.last().map(|&(_, hi)| canonical_angle(hi))
    }
}

/// Smallest closed arc containing all the given directions.
///
/// Returns `None` for an empty input; a single direction yields a zero-width arc.
pub fn smallest_enclosing_arc<T: Scalar>(angles: &[T]) -> Option<AngularInterval<T>> {
    if angles.is_empty() {
        return None;
    }
    let mut a: Vec<T> = angles.iter().map(|&t| canonical_angle(t)).collect();
    a.sort_by(|x, y| x.partial_cmp(y).expect("finite angles"));
    let n = a.len();
    let mut best_gap = a[0] + T::TAU() - a[n - 1];
    let mut start = a[0];
    for k in 1..n {
        let gap = a[k] - a[k - 1];
        if gap > best_gap {
            best_gap = gap;
            start = a[k];
        }
    }
    Some(AngularInterval {
        start,
        width: (T::TAU() - best_gap).max(T::zero()),
    })
}
