use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use rpath_core::geom::{AngularSet, Point};
use rpath_core::rhull::{ArcPolygon, BoundaryPiece, RHullRaster};

type P = Point<f64>;

const WIDTH: f64 = 800.0;

/// World-to-page mapping: `x' = (x - x0) * scale`, `y' = (y1 - y) * scale`.
pub struct Canvas {
    x0: f64,
    y1: f64,
    scale: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    /// Canvas covering `points` plus a margin of `pad` world units.
    pub fn covering(points: &[P], pad: f64) -> Self {
        let (mut lo, mut hi) = (P::new(f64::INFINITY, f64::INFINITY), P::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = P::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = P::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9) + 2.0 * pad;
        let scale = WIDTH / span;
        Canvas {
            x0: lo.x - pad,
            y1: hi.y + pad,
            scale,
            width: (hi.x - lo.x + 2.0 * pad) * scale,
            height: (hi.y - lo.y + 2.0 * pad) * scale,
            body: String::new(),
        }
    }

    fn map(&self, p: P) -> (f64, f64) {
        ((p.x - self.x0) * self.scale, (self.y1 - p.y) * self.scale)
    }

    fn pt(&self, p: P) -> String {
        let (x, y) = self.map(p);
        format!("{x:.3},{y:.3}")
    }

    pub fn curve(&mut self, vertices: &[P]) {
        let pts: Vec<String> = vertices.iter().map(|&p| self.pt(p)).collect();
        let _ = writeln!(
            self.body,
            r#"<polyline class="curve" fill="none" stroke="black" stroke-width="1.2" points="{}"/>"#,
            pts.join(" ")
        );
        if let (Some(&a), Some(&b)) = (vertices.first(), vertices.last()) {
            for (p, colour) in [(a, "green"), (b, "red")] {
                let (x, y) = self.map(p);
                let _ = writeln!(self.body, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{colour}"/>"#);
            }
        }
    }

    /// Inside cells drawn as one rectangle per horizontal run.
    pub fn raster(&mut self, hull: &RHullRaster<f64>) {
        let frame = hull.frame();
        let w = hull.window();
        let half = frame.cell * 0.5;
        let mut d = String::new();
        for j in w.j0..w.j1 {
            let mut i = w.i0;
            while i < w.i1 {
                if !hull.is_inside(i, j) {
                    i += 1;
                    continue;
                }
                let start = i;
                while i < w.i1 && hull.is_inside(i, j) {
                    i += 1;
                }
                let a = frame.center_of(start, j) - P::new(half, -half);
                let b = frame.center_of(i - 1, j) + P::new(half, -half);
                let (ax, ay) = self.map(a);
                let (bx, by) = self.map(b);
                let _ = write!(d, "M{ax:.3},{ay:.3}H{bx:.3}V{by:.3}H{ax:.3}Z");
            }
        }
        let _ = writeln!(self.body, r##"<path class="hull" fill="#9ecae1" fill-opacity="0.6" stroke="none" d="{d}"/>"##);
    }

    pub fn arc_polygon(&mut self, poly: &ArcPolygon<f64>) {
        if poly.is_point() {
            let (x, y) = self.map(poly.anchor());
            let _ = writeln!(self.body, r#"<circle class="ball-hull" cx="{x:.3}" cy="{y:.3}" r="2" fill="purple"/>"#);
            return;
        }
        let mut d = format!("M{}", self.pt(poly.pieces()[0].start()));
        for piece in poly.pieces() {
            match *piece {
                BoundaryPiece::Line { to, .. } => {
                    let _ = write!(d, "L{}", self.pt(to));
                }
                BoundaryPiece::Arc { radius, to, ccw, .. } => {
                    let large = (piece.sweep() > PI) as u8;
                    let r = radius * self.scale;
                    let _ = write!(d, "A{r:.3},{r:.3} 0 {large} {} {}", (!ccw) as u8, self.pt(to));
                }
            }
        }
        let _ = writeln!(
            self.body,
            r#"<path class="ball-hull" fill="none" stroke="purple" stroke-dasharray="4 3" d="{d}Z"/>"#
        );
    }

    /// Annular sectors at `x` for every piece of `set`.
    pub fn sectors(&mut self, x: P, set: &AngularSet<f64>, inner: f64, outer: f64, class: &str, colour: &str) {
        for &(lo, hi) in set.pieces() {
            // full turns are drawn as two halves
            let mut cuts = vec![lo];
            if hi - lo > PI {
                cuts.push(0.5 * (lo + hi));
            }
            cuts.push(hi);
            for w in cuts.windows(2) {
                self.sector(x, w[0], w[1], inner, outer, class, colour);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn sector(&mut self, x: P, a: f64, b: f64, inner: f64, outer: f64, class: &str, colour: &str) {
        let at = |r: f64, t: f64| x + P::from_angle(t) * r;
        let large = (b - a > PI) as u8;
        let (ro, ri) = (outer * self.scale, inner * self.scale);
        if b - a >= TAU - 1e-12 {
            return;
        }
        let _ = writeln!(
            self.body,
            r#"<path class="{class}" fill="{colour}" fill-opacity="0.5" stroke="{colour}" stroke-width="0.5" d="M{}A{ro:.3},{ro:.3} 0 {large} 0 {}L{}A{ri:.3},{ri:.3} 0 {large} 1 {}Z"/>"#,
            self.pt(at(outer, a)),
            self.pt(at(outer, b)),
            self.pt(at(inner, b)),
            self.pt(at(inner, a)),
        );
    }

    pub fn finish(self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
            w = self.width,
            h = self.height
        );
        let _ = writeln!(
            s,
            r#"<metadata>{{"x0": {}, "y1": {}, "scale": {}, "map": "x' = (x - x0) * scale, y' = (y1 - y) * scale"}}</metadata>"#,
            self.x0, self.y1, self.scale
        );
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}
