use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rpath_core::geom::Point;
use rpath_core::polyline::Polyline;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::Failure;

/// On-disk curve: JSON with an explicit radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    #[serde(rename = "R")]
    pub radius: f64,
    pub vertices: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, Value>,
}

/// A loaded input with the SHA-256 of its bytes.
pub struct Loaded {
    pub file: CurveFile,
    pub digest: String,
}

impl CurveFile {
    pub fn from_polyline(c: &Polyline<f64>, radius: f64, with_params: bool) -> Self {
        CurveFile {
            radius,
            vertices: c.vertices().iter().map(|p| [p.x, p.y]).collect(),
            params: with_params.then(|| c.params().to_vec()),
            metadata: BTreeMap::new(),
        }
    }

    pub fn polyline(&self) -> Result<Polyline<f64>, Failure> {
        let vs: Vec<Point<f64>> = self.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect();
        let c = match &self.params {
            Some(ps) => Polyline::loop_candidate(vs, Some(ps.clone())),
            None => Polyline::loop_candidate(vs, None),
        };
        c.map_err(|e| Failure::Input(format!("invalid curve: {e}")))
    }

    /// Canonical text form: pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("curve serializes");
        s.push('\n');
        s
    }
}

/// Reads a curve file; `.csv` inputs are `x,y` rows and need `radius`.
/// A given `radius` overrides the one stored in a JSON file.
pub fn load(path: &Path, radius: Option<f64>) -> Result<Loaded, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let digest = format!("{:x}", Sha256::digest(&bytes));
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let mut file = if is_csv {
        let r = radius.ok_or_else(|| Failure::Input("CSV input needs --R".into()))?;
        CurveFile {
            radius: r,
            vertices: parse_csv(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
            params: None,
            metadata: BTreeMap::new(),
        }
    } else {
        serde_json::from_slice(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    if let Some(r) = radius {
        file.radius = r;
    }
    if !(file.radius > 0.0 && file.radius.is_finite()) {
        return Err(Failure::Input(format!("R must be a positive number, got {}", file.radius)));
    }
    file.polyline()?;
    Ok(Loaded { file, digest })
}

fn parse_csv(bytes: &[u8]) -> Result<Vec<[f64; 2]>, String> {
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(bytes);
    let mut out = Vec::new();
    for (line, rec) in rd.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        if rec.len() != 2 {
            return Err(format!("row {}: expected 2 fields, got {}", line + 1, rec.len()));
        }
        match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => out.push([x, y]),
            // header row
            _ if line == 0 => {}
            _ => return Err(format!("row {}: not a number pair", line + 1)),
        }
    }
    Ok(out)
}
