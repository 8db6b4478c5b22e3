use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rpath_core::geom::{dist_point_segment, Point};
use rpath_core::polyline::Polyline;
use rpath_core::validators::admissible_normals;
use serde_json::{json, Value};
use tempfile::TempDir;

fn rpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpath")).args(args).output().expect("run rpath")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_curve(dir: &TempDir, name: &str, r: f64, pts: &[(f64, f64)]) -> PathBuf {
    let p = dir.path().join(name);
    let v: Vec<[f64; 2]> = pts.iter().map(|&(x, y)| [x, y]).collect();
    fs::write(&p, json!({ "R": r, "vertices": v }).to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["check"] == name).unwrap()
}

fn segment(n: usize, x0: f64, x1: f64) -> Vec<(f64, f64)> {
    (0..n).map(|k| (x0 + (x1 - x0) * k as f64 / (n - 1) as f64, 0.0)).collect()
}

#[test]
fn validate_segment_passes() {
    let dir = TempDir::new().unwrap();
    let f = write_curve(&dir, "seg.json", 1.0, &segment(101, -1.0, 0.0));
    let out = dir.path().join("report.json");
    let o = rpath(&["validate", s(&f), "--output", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_json(&out);
    assert_eq!(r["schema"], "rpath-report/1");
    assert_eq!(r["passed"], true);
    assert_eq!(check(&r, "r_curve")["status"], "pass");
    // too long for the small-diameter bounds; skipped under the default selection
    assert_eq!(check(&r, "length_bound")["status"], "skipped");
}

#[test]
fn validate_tight_arc_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let arc: Vec<(f64, f64)> = (0..=60)
        .map(|k| {
            let t = 1.5 * PI * k as f64 / 60.0;
            (0.5 * t.cos(), 0.5 * t.sin())
        })
        .collect();
    let f = write_curve(&dir, "arc.json", 1.0, &arc);
    let out = dir.path().join("report.json");
    let o = rpath(&["validate", s(&f), "--checks", "r_curve", "--output", s(&out)]);
    assert_eq!(code(&o), 1);
    let r = read_json(&out);
    let c = check(&r, "r_curve");
    assert_eq!(c["status"], "fail");
    assert!(c["margin"].as_f64().unwrap() < 0.0);
    assert_eq!(c["witnesses"][0]["indices"].as_array().unwrap().len(), 2);
}

#[test]
fn explicit_check_with_unmet_precondition_exits_1() {
    let dir = TempDir::new().unwrap();
    let f = write_curve(&dir, "seg.json", 1.0, &segment(11, 0.0, 1.0));
    let o = rpath(&["validate", s(&f), "--checks", "length_bound"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(check(&r, "length_bound")["status"], "precondition");
}

#[test]
fn missing_and_malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&rpath(&["validate", s(&dir.path().join("nope.json"))])), 2);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"R": 1, "vertices": [[0, 0]]}"#).unwrap();
    assert_eq!(code(&rpath(&["validate", s(&bad)])), 2);
    let csv = dir.path().join("c.csv");
    fs::write(&csv, "x,y\n0,0\n0.1,0\n").unwrap();
    assert_eq!(code(&rpath(&["validate", s(&csv)])), 2);
    assert_eq!(code(&rpath(&["validate", s(&csv), "--R", "1"])), 0);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("g.json");
    assert_eq!(code(&rpath(&["generate", "--seed", "3", "--output", s(&f)])), 0);
    let a = rpath(&["validate", s(&f)]);
    let b = rpath(&["validate", s(&f)]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

/// Inside cell centers of a PGM written by `hull`.
fn pgm_cells(bytes: &[u8]) -> Vec<Point<f64>> {
    let text_end = bytes.windows(4).position(|w| w == b"255\n").unwrap() + 4;
    let header = String::from_utf8_lossy(&bytes[..text_end]).to_string();
    let lines: Vec<&str> = header.lines().collect();
    let meta: Vec<f64> = lines[1].split_whitespace().filter_map(|t| t.parse().ok()).collect();
    let (x0, y0, cell) = (meta[0], meta[1], meta[2]);
    let dims: Vec<usize> = lines[2].split_whitespace().map(|t| t.parse().unwrap()).collect();
    let (w, h) = (dims[0], dims[1]);
    let body = &bytes[text_end..];
    assert_eq!(body.len(), w * h);
    let mut out = Vec::new();
    for row in 0..h {
        for col in 0..w {
            if body[row * w + col] == 255 {
                out.push(Point::new(x0 + col as f64 * cell, y0 + (h - 1 - row) as f64 * cell));
            }
        }
    }
    out
}

#[test]
fn hull_of_segment_is_a_thin_band() {
    let dir = TempDir::new().unwrap();
    let f = write_curve(&dir, "seg.json", 1.0, &segment(21, -0.4, 0.4));
    let pgm = dir.path().join("h.pgm");
    let svg = dir.path().join("h.svg");
    let o = rpath(&["hull", s(&f), "--grid", "128", "--pgm", s(&pgm), "--svg", s(&svg)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let cells = pgm_cells(&fs::read(&pgm).unwrap());
    let cell = 1.0 / 128.0;
    assert!(cells.len() >= 100);
    for p in &cells {
        assert!(dist_point_segment(*p, Point::new(-0.4, 0.0), Point::new(0.4, 0.0)) <= 1.5 * cell);
    }
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.contains("class=\"hull\"") && text.contains("class=\"curve\""));
}

#[test]
fn hull_fills_the_notch_of_a_v() {
    let dir = TempDir::new().unwrap();
    let v = [(-0.3, 0.3), (-0.15, 0.15), (0.0, 0.0), (0.15, 0.15), (0.3, 0.3)];
    let f = write_curve(&dir, "v.json", 1.0, &v);
    let pgm = dir.path().join("v.pgm");
    assert_eq!(code(&rpath(&["hull", s(&f), "--grid", "128", "--pgm", s(&pgm)])), 0);
    let cells = pgm_cells(&fs::read(&pgm).unwrap());
    let cell = 1.0 / 128.0;
    // a point on the axis between the arms is covered
    assert!(cells.iter().any(|p| p.dist(Point::new(0.0, 0.1)) < cell));
    // nothing below the apex
    assert!(cells.iter().all(|p| p.y > -1.5 * cell));
}

#[test]
fn hull_of_wide_curve_exits_1() {
    let dir = TempDir::new().unwrap();
    let f = write_curve(&dir, "wide.json", 1.0, &segment(11, -1.2, 1.2));
    let o = rpath(&["hull", s(&f), "--grid", "64"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("precondition"));
}

#[test]
fn erase_loops_backtrack_file() {
    let dir = TempDir::new().unwrap();
    let (a, b, c) = ((0.0, 0.0), (0.1, 0.0), (0.0, 0.1));
    let f = write_curve(&dir, "abac.json", 1.0, &[a, b, a, c]);
    let out = dir.path().join("ac.json");
    assert_eq!(code(&rpath(&["erase-loops", s(&f), "--output", s(&out)])), 0);
    let r = read_json(&out);
    assert_eq!(r["vertices"], json!([[0.0, 0.0], [0.0, 0.1]]));
    assert_eq!(r["metadata"]["loops_removed"], 1);
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(code(&rpath(&["generate", "--kind", "random", "--seed", "42", "--output", s(&a)])), 0);
    assert_eq!(code(&rpath(&["generate", "--kind", "random", "--seed", "42", "--output", s(&b)])), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let g = read_json(&a);
    assert_eq!(g["vertices"].as_array().unwrap().len(), 61);
    assert_eq!(g["metadata"]["seed"], 42);
    let seg = rpath(&["generate", "--kind", "segment", "--vertices", "11", "--length", "1"]);
    let g: Value = serde_json::from_slice(&seg.stdout).unwrap();
    assert_eq!(g["vertices"][1], json!([0.1, 0.0]));
}

#[test]
fn plot_draws_wx_sectors_at_every_tenth_vertex() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("g.json");
    assert_eq!(code(&rpath(&["generate", "--seed", "5", "--output", s(&f)])), 0);
    let svg = dir.path().join("p.svg");
    let o = rpath(&["plot", s(&f), "--svg", s(&svg), "--show-wx", "--ball-hull"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&svg).unwrap();
    let g = read_json(&f);
    let pts: Vec<Point<f64>> = g["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| Point::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap()))
        .collect();
    let c = Polyline::new(pts).unwrap();
    // one sector per piece, two for pieces longer than a half turn
    let expected: usize = (0..c.len())
        .step_by(10)
        .map(|i| {
            admissible_normals(&c, i, 1.0)
                .unwrap()
                .pieces()
                .iter()
                .map(|&(lo, hi)| if hi - lo > PI { 2 } else { 1 })
                .sum::<usize>()
        })
        .sum();
    assert!(expected > 0);
    assert_eq!(text.matches("class=\"wx\"").count(), expected);
    assert!(text.contains("class=\"ball-hull\""));
    assert!(text.contains("<metadata>"));
}
