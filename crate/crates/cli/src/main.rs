//! `rpath`: validate curve files, render R-hulls, erase loops and generate
//! test curves.
//!
//! Exit codes: 0 when every selected check passes, 1 when a check fails or a
//! precondition does not hold, 2 on I/O or format errors.

mod curve_file;
mod report;
mod svg;
mod validate;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rpath_core::geom::{min_enclosing_circle, Point};
use rpath_core::rhull::{normal_set_raster, r_hull_arcs, r_hull_raster};
use rpath_core::transforms::{generate, loop_erase, GeneratorKind, GeneratorSpec, RandomPathSpec, DEFAULT_SNAP_TOL};
use rpath_core::validators::{admissible_normals, CheckOptions};
use rpath_core::Error;
use serde_json::Value;

use curve_file::{load, CurveFile};
use report::{Input, ReportFile};
use svg::Canvas;
use validate::{Check, Settings};

/// Error carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: a check failed or a precondition is unmet.
    Check(String),
    /// Exit 2: unreadable input, bad format or bad flags.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPolyline(_) => Failure::Input(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "rpath", version, about = "Checks and pictures for planar R-curves and R-paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the curve checks and write a JSON report.
    Validate(ValidateArgs),
    /// Rasterize the R-hull; write PGM and/or SVG.
    Hull(HullArgs),
    /// Remove loops and write the simple curve.
    EraseLoops(EraseArgs),
    /// Write a generated test curve.
    Generate(GenerateArgs),
    /// Draw a curve with optional overlays.
    Plot(PlotArgs),
}

#[derive(Args)]
struct Common {
    /// Curve file (JSON, or CSV with `x,y` rows).
    input: PathBuf,
    /// Radius R; overrides the file, required for CSV.
    #[arg(long = "R", value_name = "R")]
    radius: Option<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated checks; default is every applicable check.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Option<Vec<Check>>,
    /// Angular slack in radians.
    #[arg(long, default_value_t = 0.02)]
    ang_slack: f64,
    /// Absolute slack for length and length² inequalities.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Chord-cone radius; default three times the median segment length.
    #[arg(long)]
    radius_eps: Option<f64>,
    /// N of the small-diameter bounds (containment radius R/(2N)).
    #[arg(long = "N", value_name = "N", default_value_t = 2.0)]
    n: f64,
    /// Report path; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct HullArgs {
    #[command(flatten)]
    common: Common,
    /// Cells per R.
    #[arg(long, default_value_t = 512)]
    grid: usize,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    pgm: Option<PathBuf>,
}

#[derive(Args)]
struct EraseArgs {
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SNAP_TOL)]
    snap_tol: f64,
    /// Output curve; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Segment,
    Arc,
    Involute,
    Random,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "random")]
    kind: Kind,
    /// Radius R recorded in the file and used by the random generator.
    #[arg(long = "R", value_name = "R", default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Vertex count for segment, arc and involute.
    #[arg(long, default_value_t = 61)]
    vertices: usize,
    /// Segment length.
    #[arg(long, default_value_t = 0.6)]
    length: f64,
    /// Arc radius or involute base radius.
    #[arg(long, default_value_t = 0.5)]
    curve_radius: f64,
    /// Arc angle or involute unwinding angle, radians.
    #[arg(long, default_value_t = 1.0)]
    angle: f64,
    /// Random walk: step length.
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    /// Random walk: number of steps.
    #[arg(long, default_value_t = 60)]
    steps: usize,
    /// Random walk: containment radius around the start; 0 disables it.
    #[arg(long, default_value_t = 0.2)]
    containment: f64,
    /// Output curve; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    svg: PathBuf,
    /// Draw the admissible normals as annular sectors.
    #[arg(long)]
    show_wx: bool,
    /// Vertex stride for `--show-wx`.
    #[arg(long, default_value_t = 10)]
    every: usize,
    /// Overlay the rasterized R-hull.
    #[arg(long)]
    hull: bool,
    /// Overlay the intersection of all R-disks containing the convex-hull vertices.
    #[arg(long)]
    ball_hull: bool,
    #[arg(long, default_value_t = 512)]
    grid: usize,
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn positive(name: &str, x: f64) -> Result<(), Failure> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Failure::Input(format!("{name} must be a positive number, got {x}")))
    }
}

fn cmd_validate(a: ValidateArgs) -> Result<bool, Failure> {
    let loaded = load(&a.common.input, a.common.radius)?;
    let c = loaded.file.polyline()?;
    if !(a.n > 1.0) {
        return Err(Failure::Input(format!("N must exceed 1, got {}", a.n)));
    }
    if !(a.ang_slack >= 0.0 && a.tol >= 0.0) {
        return Err(Failure::Input("slacks must be non-negative".into()));
    }
    let opts = CheckOptions {
        ang_slack: a.ang_slack,
        radius_eps: a.radius_eps,
        tol: a.tol,
    };
    let s = Settings {
        radius: loaded.file.radius,
        n: a.n,
        opts,
    };
    let checks = validate::run(&c, &s, a.checks.as_deref())?;
    let report = ReportFile::new(
        Input {
            path: a.common.input.display().to_string(),
            sha256: loaded.digest,
            vertices: c.len(),
        },
        s.radius,
        s.record(),
        checks,
    );
    write_out(a.output.as_deref(), &report.to_text())?;
    for e in &report.checks {
        eprintln!("{:<18} {:?}", e.check, e.status);
    }
    Ok(report.passed)
}

fn cmd_hull(a: HullArgs) -> Result<bool, Failure> {
    let loaded = load(&a.common.input, a.common.radius)?;
    let c = loaded.file.polyline()?;
    let r = loaded.file.radius;
    if a.grid < 8 {
        return Err(Failure::Input(format!("grid must be at least 8, got {}", a.grid)));
    }
    let hull = r_hull_raster(&c, r, a.grid)?;
    if let Some(p) = &a.pgm {
        write_bytes(p, &hull.to_pgm())?;
    }
    if let Some(p) = &a.svg {
        let mut pts = c.vertices().to_vec();
        pts.extend(hull.inside_cells().iter().map(|&(i, j)| hull.frame().center_of(i, j)));
        let pad = 0.1 * r;
        let mut canvas = Canvas::covering(&pts, pad);
        canvas.raster(&hull);
        canvas.curve(c.vertices());
        let end = c.last();
        if let Ok(n) = normal_set_raster(&hull, end) {
            canvas.sectors(end, &n, 0.02 * r, 0.06 * r, "normals", "#d95f02");
        }
        write_bytes(p, canvas.finish().as_bytes())?;
    }
    println!(
        "{} inside cells of size {} ({} per R)",
        hull.inside_cells().len(),
        hull.cell(),
        a.grid
    );
    Ok(true)
}

fn cmd_erase(a: EraseArgs) -> Result<bool, Failure> {
    let loaded = load(&a.input, None)?;
    if !(a.snap_tol >= 0.0) {
        return Err(Failure::Input(format!("snap tolerance must be non-negative, got {}", a.snap_tol)));
    }
    let c = loaded.file.polyline()?;
    let d = loop_erase(&c, a.snap_tol)?;
    let mut out = CurveFile::from_polyline(&d.simple, loaded.file.radius, loaded.file.params.is_some());
    out.metadata = loaded.file.metadata.clone();
    out.metadata.insert("loops_removed".into(), Value::from(d.intervals.len()));
    out.metadata.insert(
        "removed_intervals".into(),
        Value::from(d.intervals.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>()),
    );
    write_out(a.output.as_deref(), &out.to_text())?;
    Ok(true)
}

fn cmd_generate(a: GenerateArgs) -> Result<bool, Failure> {
    positive("R", a.radius)?;
    let kind = match a.kind {
        Kind::Segment => GeneratorKind::Segment {
            length: a.length,
            vertices: a.vertices,
        },
        Kind::Arc => GeneratorKind::Arc {
            radius: a.curve_radius,
            angle: a.angle,
            vertices: a.vertices,
        },
        Kind::Involute => GeneratorKind::Involute {
            base_radius: a.curve_radius,
            angle: a.angle,
            vertices: a.vertices,
        },
        Kind::Random => {
            positive("step", a.step)?;
            let mut spec = RandomPathSpec::corpus(a.seed);
            spec.step = a.step;
            spec.steps = a.steps;
            spec.containment = (a.containment > 0.0).then_some(a.containment);
            GeneratorKind::RandomRPath(spec)
        }
    };
    let c = generate(&GeneratorSpec { kind, radius: a.radius })?;
    let mut f = CurveFile::from_polyline(&c, a.radius, false);
    let (name, extra): (&str, Vec<(&str, Value)>) = match a.kind {
        Kind::Segment => ("segment", vec![("length", a.length.into()), ("vertices", a.vertices.into())]),
        Kind::Arc => ("arc", vec![("radius", a.curve_radius.into()), ("angle", a.angle.into()), ("vertices", a.vertices.into())]),
        Kind::Involute => (
            "involute",
            vec![("base_radius", a.curve_radius.into()), ("angle", a.angle.into()), ("vertices", a.vertices.into())],
        ),
        Kind::Random => (
            "random",
            vec![
                ("seed", a.seed.into()),
                ("step", a.step.into()),
                ("steps", a.steps.into()),
                ("containment", a.containment.into()),
            ],
        ),
    };
    f.metadata.insert("generator".into(), Value::from(name));
    for (k, v) in extra {
        f.metadata.insert(k.into(), v);
    }
    write_out(a.output.as_deref(), &f.to_text())?;
    Ok(true)
}

fn cmd_plot(a: PlotArgs) -> Result<bool, Failure> {
    let loaded = load(&a.common.input, a.common.radius)?;
    let c = loaded.file.polyline()?;
    let r = loaded.file.radius;
    let (_, spread) = min_enclosing_circle(c.vertices())?;
    let ring = spread.max(1e-3 * r);
    let mut pts: Vec<Point<f64>> = c.vertices().to_vec();
    let hull = if a.hull { Some(r_hull_raster(&c, r, a.grid)?) } else { None };
    if let Some(h) = &hull {
        pts.extend(h.inside_cells().iter().map(|&(i, j)| h.frame().center_of(i, j)));
    }
    let ball = if a.ball_hull {
        let corners = rpath_core::geom::convex_hull(c.vertices())?;
        let arcs = r_hull_arcs(corners.vertices(), r)?;
        pts.extend(arcs.boundary(16));
        Some(arcs)
    } else {
        None
    };
    let mut canvas = Canvas::covering(&pts, 0.25 * ring);
    if let Some(h) = &hull {
        canvas.raster(h);
    }
    if let Some(b) = &ball {
        canvas.arc_polygon(b);
    }
    canvas.curve(c.vertices());
    if a.show_wx {
        let every = a.every.max(1);
        for i in (0..c.len()).step_by(every) {
            let w = admissible_normals(&c, i, r)?;
            canvas.sectors(c.vertices()[i], &w, 0.04 * ring, 0.12 * ring, "wx", "#e6550d");
        }
    }
    write_bytes(&a.svg, canvas.finish().as_bytes())?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Hull(a) => cmd_hull(a),
        Command::EraseLoops(a) => cmd_erase(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Plot(a) => cmd_plot(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("rpath: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("rpath: {m}");
            ExitCode::from(2)
        }
    }
}
