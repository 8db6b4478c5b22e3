use std::collections::BTreeMap;

use rpath_core::validators::ValidationReport;
use serde::Serialize;

pub const SCHEMA: &str = "rpath-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Selected explicitly but its precondition does not hold.
    Precondition,
    /// Not applicable under the default selection.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEntry {
    pub indices: Vec<usize>,
    pub value: Option<f64>,
    pub label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub check: String,
    pub status: Status,
    /// `null` when not finite or not computed.
    pub margin: Option<f64>,
    pub tolerance: Option<f64>,
    pub witnesses: Vec<WitnessEntry>,
    pub parameters: BTreeMap<String, Option<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl CheckEntry {
    pub fn from_report(name: &str, r: &ValidationReport<f64>) -> Self {
        CheckEntry {
            check: name.to_string(),
            status: if r.passed() { Status::Pass } else { Status::Fail },
            margin: finite(r.margin),
            tolerance: finite(r.tolerance),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessEntry {
                    indices: w.indices.clone(),
                    value: finite(w.value),
                    label: w.label.clone(),
                })
                .collect(),
            parameters: r.parameters.iter().map(|(k, &v)| (k.clone(), finite(v))).collect(),
            message: (!r.notes.is_empty()).then(|| r.notes.join("; ")),
        }
    }

    pub fn bare(name: &str, status: Status, message: String) -> Self {
        CheckEntry {
            check: name.to_string(),
            status,
            margin: None,
            tolerance: None,
            witnesses: Vec::new(),
            parameters: BTreeMap::new(),
            message: Some(message),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
    pub vertices: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportFile {
    pub schema: &'static str,
    pub tool: Tool,
    pub input: Input,
    #[serde(rename = "R")]
    pub radius: f64,
    pub settings: BTreeMap<String, Option<f64>>,
    pub checks: Vec<CheckEntry>,
    pub passed: bool,
}

impl ReportFile {
    pub fn new(input: Input, radius: f64, settings: BTreeMap<String, Option<f64>>, checks: Vec<CheckEntry>) -> Self {
        let passed = checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skipped));
        ReportFile {
            schema: SCHEMA,
            tool: Tool {
                name: "rpath",
                version: env!("CARGO_PKG_VERSION"),
            },
            input,
            radius,
            settings,
            checks,
            passed,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
