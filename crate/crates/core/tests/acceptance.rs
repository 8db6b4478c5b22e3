//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p rpath-core --test acceptance`.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rpath_core::geom::{convex_hull, dist_point_segment, min_enclosing_circle, Point};
use rpath_core::polyline::Polyline;
use rpath_core::rhull::{normal_set_raster, r_hull_raster, r_hull_raster_in, reach_at_least, RasterFrame};
use rpath_core::transforms::{generate, loop_erase, GeneratorSpec, DEFAULT_SNAP_TOL};
use rpath_core::validators::{
    admissible_normals, check_hull_tangent_bound, check_length_bound, check_normal_measure, is_phi_self_approaching,
    is_r_curve, is_r_path, max_detour, self_intersects, BoundContext, CheckOptions,
};

type P = Point<f64>;

const R: f64 = 1.0;
const N: f64 = 2.0;
/// Criterion 1: verdict tolerance and allowed margin difference.
const ORACLE_TOL: f64 = 1e-9;
const ORACLE_MARGIN_DIFF: f64 = 1e-12;
/// Criterion 2: margin threshold for the non-intersection claim.
const STRICT_MARGIN: f64 = 1e-6;
/// Criteria 3, 4: angular slack; criterion 3 refinement drop.
const ANG_SLACK: f64 = 0.02;
const REFINE_DROP: f64 = 0.01;
/// Criterion 4: the bound for N = 2 as printed.
const PHI_PRINTED: f64 = 2.0762;
/// Criterion 5: length-bound slack.
const LENGTH_TOL: f64 = 1e-9;
/// Criterion 6: measure agreement and grid.
const MEASURE_AGREEMENT: f64 = 0.05;
const ACCEPT_GRID: usize = 1024;
/// Criterion 7: reach pairs.
const REACH_PAIRS: usize = 2000;
/// Criterion 8: image containment tolerance.
const IMAGE_TOL: f64 = 1e-9;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

struct Corpus {
    curves: Vec<Polyline<f64>>,
}

impl Corpus {
    /// Seeds 1..=count of the default random R-path generator.
    fn build(count: u64) -> Self {
        let curves = (1..=count)
            .map(|s| generate(&GeneratorSpec::<f64>::corpus(s)).expect("corpus generation"))
            .collect();
        Corpus { curves }
    }

    fn first(&self, n: usize) -> &[Polyline<f64>] {
        &self.curves[..n]
    }
}

/// Brute-force pairwise form of the R-curve inequality on raw coordinates:
/// `|x1 - (x + R t)|² - R²` over sample pairs `x1` before `x` and one-sided
/// tangents `t` at `x`.
fn oracle_margin(v: &[(f64, f64)], r: f64) -> f64 {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut tans: Vec<Vec<(f64, f64)>> = Vec::new();
    let dir = |a: (f64, f64), b: (f64, f64)| {
        let l = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
        ((b.0 - a.0) / l, (b.1 - a.1) / l)
    };
    for i in 0..v.len() {
        let mut t = Vec::new();
        if i > 0 {
            t.push(dir(v[i - 1], v[i]));
        }
        if i + 1 < v.len() {
            let d = dir(v[i], v[i + 1]);
            if t.first() != Some(&d) {
                t.push(d);
            }
        }
        pts.push(v[i]);
        tans.push(t);
        if i + 1 < v.len() {
            pts.push(((v[i].0 + v[i + 1].0) / 2.0, (v[i].1 + v[i + 1].1) / 2.0));
            tans.push(vec![dir(v[i], v[i + 1])]);
        }
    }
    let mut m = f64::INFINITY;
    for s in 0..pts.len() {
        for t in &tans[s] {
            let c = (pts[s].0 + r * t.0, pts[s].1 + r * t.1);
            for p in &pts[..s] {
                m = m.min((p.0 - c.0).powi(2) + (p.1 - c.1).powi(2) - r * r);
            }
        }
    }
    m
}

/// Random polylines of three flavours: gently turning walks (mostly R-curves),
/// sharp walks and scattered points (mostly not).
fn random_polyline(seed: u64) -> Polyline<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=50);
    let mut v: Vec<P> = vec![P::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))];
    let mut heading: f64 = rng.gen_range(0.0..TAU);
    let max_turn = match seed % 3 {
        0 => 0.05,
        1 => 0.6,
        _ => TAU,
    };
    while v.len() < n {
        heading += rng.gen_range(-max_turn..=max_turn);
        let step = rng.gen_range(0.005..0.05);
        let p = *v.last().unwrap() + P::from_angle(heading) * step;
        v.push(p);
    }
    Polyline::new(v).expect("random polyline")
}

fn criterion_1() -> Outcome {
    let opts = CheckOptions {
        tol: ORACLE_TOL,
        ..CheckOptions::default()
    };
    let (mut agree, mut worst, mut passes) = (0, 0.0f64, 0);
    for seed in 1..=1000u64 {
        let c = random_polyline(seed);
        let raw: Vec<(f64, f64)> = c.vertices().iter().map(|p| (p.x, p.y)).collect();
        let rep = is_r_curve(&c, R, &opts).unwrap();
        let m = oracle_margin(&raw, R);
        if rep.passed() == (m >= -ORACLE_TOL) {
            agree += 1;
        }
        passes += rep.passed() as usize;
        worst = worst.max((rep.margin - m).abs());
    }
    outcome(
        agree == 1000 && worst < ORACLE_MARGIN_DIFF,
        format!("agreement {agree}/1000 ({passes} pass), max margin diff {worst:.2e}"),
    )
}

fn criterion_2(corpus: &Corpus) -> Outcome {
    let opts = CheckOptions::default();
    let mut checked = 0;
    let mut qualifying = 0;
    let mut exceptions = 0;
    let randoms: Vec<Polyline<f64>> = (1..=1000u64).map(random_polyline).collect();
    for c in corpus.curves.iter().chain(randoms.iter()) {
        checked += 1;
        let rep = is_r_curve(c, R, &opts).unwrap();
        if rep.passed() && rep.margin > STRICT_MARGIN {
            qualifying += 1;
            if self_intersects(c) {
                exceptions += 1;
            }
        }
    }
    outcome(
        exceptions == 0 && qualifying >= 500,
        format!("{qualifying} of {checked} curves with margin > {STRICT_MARGIN:e}, {exceptions} self-intersecting"),
    )
}

/// Minimum measure of the admissible normals over vertices `step·k`, k ≥ 1.
fn min_measure(c: &Polyline<f64>, step: usize) -> f64 {
    (step..c.len())
        .step_by(step)
        .map(|i| admissible_normals(c, i, R).unwrap().measure())
        .fold(f64::INFINITY, f64::min)
}

fn criterion_3(corpus: &Corpus) -> Outcome {
    let opts = CheckOptions {
        ang_slack: ANG_SLACK,
        ..CheckOptions::default()
    };
    let mut failures = 0;
    let mut lowest = f64::INFINITY;
    let mut worst_drop = f64::NEG_INFINITY;
    let mut midpoint_drop = f64::NEG_INFINITY;
    for c in corpus.first(50) {
        let rep = check_normal_measure(c, R, &opts).unwrap();
        failures += !rep.passed() as usize;
        let fine = c.refine();
        let m0 = min_measure(c, 1);
        lowest = lowest.min(m0);
        // original vertices are the even vertices of the refined curve
        worst_drop = worst_drop.max(m0 - min_measure(&fine, 2));
        midpoint_drop = midpoint_drop.max(m0 - min_measure(&fine, 1));
    }
    outcome(
        failures == 0 && lowest >= FRAC_PI_2 - ANG_SLACK && worst_drop <= REFINE_DROP,
        format!(
            "min meas(W) {lowest:.4} (π/2 = {FRAC_PI_2:.4}), {failures} failing curves, \
             worst refinement drop {worst_drop:.2e} at shared vertices ({midpoint_drop:.2e} incl. new midpoints)"
        ),
    )
}

fn criterion_4(corpus: &Corpus) -> Outcome {
    let opts = CheckOptions {
        ang_slack: ANG_SLACK,
        ..CheckOptions::default()
    };
    let mut failures = 0;
    let mut margin = f64::INFINITY;
    let mut phi = 0.0;
    for c in corpus.first(50) {
        let ctx = BoundContext::around(c, N, R).unwrap();
        phi = ctx.phi();
        let rep = check_hull_tangent_bound(c, &ctx, &opts).unwrap();
        failures += !rep.passed() as usize;
        margin = margin.min(rep.margin);
    }
    let printed = (phi - PHI_PRINTED).abs() < 5e-5;
    outcome(
        failures == 0 && printed,
        format!("phi {phi:.6} (printed {PHI_PRINTED}), min slack {margin:.4} rad, {failures} failing curves"),
    )
}

fn criterion_5(corpus: &Corpus) -> Outcome {
    let opts = CheckOptions {
        tol: LENGTH_TOL,
        ang_slack: 0.0,
        ..CheckOptions::default()
    };
    let mut failures = 0;
    let mut outside = 0;
    let mut worst_ratio = 0.0f64;
    let ctx = BoundContext::new(N, P::origin(), R).unwrap();
    for c in corpus.first(200) {
        if c.vertices().iter().any(|v| v.norm() > ctx.containment_radius()) {
            outside += 1;
            continue;
        }
        let rep = check_length_bound(c, &ctx, &opts).unwrap();
        failures += !rep.passed() as usize;
        worst_ratio = worst_ratio.max(rep.parameters["ratio"]);
    }
    outcome(
        failures == 0 && outside == 0,
        format!("200 curves in D(x0, {}), {failures} failures, max (1+cos φ)·length/per {worst_ratio:.4}", ctx.containment_radius()),
    )
}

fn criterion_6(corpus: &Corpus) -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_at = (0, 0);
    let mut count = 0;
    for (k, c) in corpus.first(20).iter().enumerate() {
        for j in 0..10 {
            let i = 2 + j * (c.len() - 3) / 10;
            let w = admissible_normals(c, i, R).unwrap().measure();
            let hull = r_hull_raster(&c.prefix(i).unwrap(), R, ACCEPT_GRID).unwrap();
            let n = normal_set_raster(&hull, c.vertices()[i]).unwrap().measure();
            count += 1;
            if (w - n).abs() > worst {
                worst = (w - n).abs();
                worst_at = (k + 1, i);
            }
        }
    }
    outcome(
        worst <= MEASURE_AGREEMENT,
        format!("{count} vertices, max |meas W - meas nor| {worst:.4} rad (seed {}, vertex {})", worst_at.0, worst_at.1),
    )
}

fn criterion_7(corpus: &Corpus) -> Outcome {
    let mut violations = Vec::new();
    let mut hulls = 0;
    for (k, c) in corpus.first(6).iter().enumerate() {
        let (center, _) = min_enclosing_circle(c.vertices()).unwrap();
        let frame = RasterFrame::around(center, R, ACCEPT_GRID).unwrap();
        let cuts = [c.len() / 3, 2 * c.len() / 3, c.len() - 1];
        let mut prev = None;
        for &i in &cuts {
            let prefix = c.prefix(i).unwrap();
            let hull = r_hull_raster_in(&prefix, R, &frame).unwrap();
            hulls += 1;
            if let Some(p) = &prev {
                if let Err(cell) = rpath_core::rhull::RHullRaster::is_subset_of(p, &hull, 0) {
                    violations.push(format!("seed {} prefix {i}: monotonicity at {cell:?}", k + 1));
                }
            }
            // curve samples inside, up to one cell
            for s in prefix.samples() {
                let (ci, cj) = frame.cell_of(s.pos).unwrap();
                let near = (ci - 1..=ci + 1).any(|a| (cj - 1..=cj + 1).any(|b| hull.is_inside(a, b)));
                if !near {
                    violations.push(format!("seed {} prefix {i}: sample outside hull", k + 1));
                    break;
                }
            }
            // hull inside the convex hull dilated by one cell
            let co = convex_hull(prefix.vertices()).unwrap();
            let halo = frame.cell * std::f64::consts::SQRT_2;
            if let Some(cell) = hull.inside_cells().into_iter().find(|&(a, b)| co.distance(frame.center_of(a, b)) > halo) {
                violations.push(format!("seed {} prefix {i}: cell {cell:?} outside co(A)", k + 1));
            }
            let reach = reach_at_least(&hull, R, REACH_PAIRS).unwrap();
            if !reach.ok {
                violations.push(format!("seed {} prefix {i}: reach witness {:?}", k + 1, reach.witness));
            }
            prev = Some(hull);
        }
    }
    outcome(
        violations.is_empty(),
        format!("{hulls} hulls at grid {ACCEPT_GRID}, {} violations {}", violations.len(), violations.join("; ")),
    )
}

/// Inserts one to three closed excursions at random interior vertices.
fn with_loops(c: &Polyline<f64>, seed: u64) -> Polyline<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x100f);
    let mut v = c.vertices().to_vec();
    let h = c.segment_length(0);
    for _ in 0..rng.gen_range(1..=3) {
        let m = rng.gen_range(1..v.len() - 1);
        let rho = h * rng.gen_range(0.5..6.0);
        let a0: f64 = rng.gen_range(0.0..TAU);
        let sides = rng.gen_range(3..=8);
        let center = v[m] - P::from_angle(a0) * rho;
        let mut excursion: Vec<P> = (1..sides).map(|j| center + P::from_angle(a0 + TAU * j as f64 / sides as f64) * rho).collect();
        excursion.push(v[m]);
        v.splice(m + 1..m + 1, excursion);
    }
    Polyline::new(v).expect("looped polyline")
}

fn on_image(c: &Polyline<f64>, p: P) -> bool {
    c.vertices().windows(2).any(|s| dist_point_segment(p, s[0], s[1]) <= IMAGE_TOL)
}

fn hand_table() -> Vec<String> {
    let mk = |pts: &[(f64, f64)]| {
        Polyline::loop_candidate(
            pts.iter().map(|&(x, y)| P::new(x, y)).collect(),
            Some((0..pts.len()).map(|k| k as f64).collect()),
        )
        .unwrap()
    };
    let pts = |xs: &[(f64, f64)]| xs.iter().map(|&(x, y)| P::new(x, y)).collect::<Vec<_>>();
    let mut errors = Vec::new();
    let d = loop_erase(&mk(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 1.0)]), DEFAULT_SNAP_TOL).unwrap();
    if d.intervals != vec![(0.0, 2.0)] || d.simple.vertices() != pts(&[(0.0, 0.0), (0.0, 1.0)]) {
        errors.push("back-track case".to_string());
    }
    let straight = mk(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (2.0, 1.0)]);
    let d = loop_erase(&straight, DEFAULT_SNAP_TOL).unwrap();
    if !d.intervals.is_empty() || d.simple.vertices() != straight.vertices() {
        errors.push("injective case".to_string());
    }
    let (a, b, c, dd, e) = ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0), (2.0, 0.0));
    let d = loop_erase(&mk(&[a, b, a, c, dd, c, e]), DEFAULT_SNAP_TOL).unwrap();
    let order: Vec<(f64, f64)> = d.removal_trace.iter().map(|r| r.interval).collect();
    if order != vec![(0.0, 2.0), (3.0, 5.0)] || d.simple.vertices() != pts(&[a, c, e]) {
        errors.push("two-loop case".to_string());
    }
    errors
}

fn criterion_8(corpus: &Corpus) -> Outcome {
    let opts = CheckOptions::default();
    let mut problems = Vec::new();
    let mut r_path_inputs = 0;
    let mut removed = 0;
    let inputs: Vec<(u64, Polyline<f64>)> = corpus
        .first(100)
        .iter()
        .enumerate()
        .map(|(k, c)| (k as u64 + 1, with_loops(c, k as u64 + 1)))
        .collect();
    let plain: Vec<(u64, Polyline<f64>)> = corpus.first(20).iter().enumerate().map(|(k, c)| (k as u64 + 1, c.clone())).collect();
    for (seed, c) in inputs.iter().chain(plain.iter()) {
        let d = match loop_erase(c, DEFAULT_SNAP_TOL) {
            Ok(d) => d,
            Err(e) => {
                problems.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        removed += d.removal_trace.len();
        let s = &d.simple;
        let mut dup = s.vertices().to_vec();
        dup.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
        dup.dedup();
        if self_intersects(s) || dup.len() != s.len() {
            problems.push(format!("seed {seed}: not injective"));
        }
        if s.vertices().iter().any(|&p| !on_image(c, p)) || s.vertices().windows(2).any(|w| !on_image(c, w[0].midpoint(w[1]))) {
            problems.push(format!("seed {seed}: image not contained"));
        }
        if s.first() != c.first() || s.last() != c.last() {
            problems.push(format!("seed {seed}: endpoints moved"));
        }
        let ms: Vec<f64> = d.removal_trace.iter().map(|r| r.m).collect();
        let range = c.params()[c.len() - 1] - c.params()[0];
        if ms.windows(2).any(|w| w[1] > w[0] + 1e-12) || ms.iter().sum::<f64>() > range + 1e-12 {
            problems.push(format!("seed {seed}: M trace"));
        }
        if d.intervals.iter().any(|&(a, b)| c.point_at(a).dist(c.point_at(b)) > DEFAULT_SNAP_TOL) {
            problems.push(format!("seed {seed}: interval ends differ"));
        }
        if is_r_path(c, R, &opts).unwrap().passed() {
            r_path_inputs += 1;
            if !is_r_curve(s, R, &opts).unwrap().passed() {
                problems.push(format!("seed {seed}: R-path input, output not an R-curve"));
            }
        }
    }
    problems.extend(hand_table());
    outcome(
        problems.is_empty(),
        format!(
            "100 looped + 20 plain inputs, {removed} loops removed, {r_path_inputs} R-path inputs, hand table {}; {}",
            if hand_table().is_empty() { "exact" } else { "mismatch" },
            if problems.is_empty() { "no violations".to_string() } else { problems.join("; ") }
        ),
    )
}

fn criterion_9(corpus: &Corpus) -> Outcome {
    let opts = CheckOptions {
        ang_slack: 0.0,
        ..CheckOptions::default()
    };
    let phi = FRAC_PI_2 + 2.0 * (1.0 / (2.0 * N)).asin() + ANG_SLACK;
    let mut failures = 0;
    let mut margin = f64::INFINITY;
    for c in corpus.first(200) {
        let rep = is_phi_self_approaching(&c.reverse(), phi, &opts).unwrap();
        failures += !rep.passed() as usize;
        margin = margin.min(rep.margin);
    }
    outcome(failures == 0, format!("200 reversed curves at φ = {phi:.4}, {failures} failures, min margin {margin:.4} rad"))
}

fn criterion_10(corpus: &Corpus) -> Outcome {
    let mut worst = 0.0f64;
    let mut at = 0;
    let mut infinite = 0;
    for (k, c) in corpus.first(200).iter().enumerate() {
        match max_detour(c) {
            Ok(d) if d.value.is_finite() => {
                if d.value > worst {
                    worst = d.value;
                    at = k + 1;
                }
            }
            _ => infinite += 1,
        }
    }
    outcome(infinite == 0, format!("max detour over 200 curves {worst:.4} (seed {at}), {infinite} undefined"))
}

fn main() {
    let t = Instant::now();
    let corpus = Corpus::build(500);
    println!("corpus: 500 random R-paths (60 steps of 0.01 in D(0, 0.2), R = 1) in {:.1?}", t.elapsed());
    type Run<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, u64, Run)> = vec![
        ("oracle equivalence", 30, Box::new(criterion_1)),
        ("non-self-intersection", 30, Box::new(|| criterion_2(&corpus))),
        ("normal-measure bound", 60, Box::new(|| criterion_3(&corpus))),
        ("hull tangent bound", 60, Box::new(|| criterion_4(&corpus))),
        ("length bound", 30, Box::new(|| criterion_5(&corpus))),
        ("normal set of the hull", 120, Box::new(|| criterion_6(&corpus))),
        ("R-hull laws", 120, Box::new(|| criterion_7(&corpus))),
        ("loop erasure", 30, Box::new(|| criterion_8(&corpus))),
        ("reversal", 30, Box::new(|| criterion_9(&corpus))),
        ("detour data", 30, Box::new(|| criterion_10(&corpus))),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let took = t.elapsed();
        let ok = out.ok && took <= Duration::from_secs(*budget);
        failed += !ok as usize;
        println!(
            "criterion {:>2} {:<24} {}  [{:.1?} / {}s]  {}",
            k + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            took,
            budget,
            out.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
