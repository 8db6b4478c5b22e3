use std::collections::BTreeMap;

use clap::ValueEnum;
use rpath_core::polyline::Polyline;
use rpath_core::validators::{
    check_hull_tangent_bound, check_length_bound, check_normal_measure, find_self_intersection, is_phi_self_approaching,
    is_r_curve, is_r_path, max_detour, BoundContext, CheckOptions, ValidationReport,
};
use rpath_core::Error;

use crate::report::{CheckEntry, Status, WitnessEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Check {
    RCurve,
    RPath,
    Simple,
    NormalMeasure,
    HullTangent,
    LengthBound,
    SelfApproaching,
    Detour,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::RCurve,
        Check::RPath,
        Check::Simple,
        Check::NormalMeasure,
        Check::HullTangent,
        Check::LengthBound,
        Check::SelfApproaching,
        Check::Detour,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::RCurve => "r_curve",
            Check::RPath => "r_path",
            Check::Simple => "simple",
            Check::NormalMeasure => "normal_measure",
            Check::HullTangent => "hull_tangent",
            Check::LengthBound => "length_bound",
            Check::SelfApproaching => "self_approaching",
            Check::Detour => "detour",
        }
    }
}

pub struct Settings {
    pub radius: f64,
    pub n: f64,
    pub opts: CheckOptions<f64>,
}

impl Settings {
    pub fn record(&self) -> BTreeMap<String, Option<f64>> {
        BTreeMap::from([
            ("N".to_string(), Some(self.n)),
            ("ang_slack".to_string(), Some(self.opts.ang_slack)),
            ("tol".to_string(), Some(self.opts.tol)),
            ("radius_eps".to_string(), self.opts.radius_eps),
        ])
    }
}

/// Runs `selected` (all checks when `None`). Under the default selection a
/// check whose precondition fails is skipped; an explicit one records it.
pub fn run(c: &Polyline<f64>, s: &Settings, selected: Option<&[Check]>) -> Result<Vec<CheckEntry>, Error> {
    let explicit = selected.is_some();
    let mut list: Vec<Check> = selected.map_or_else(|| Check::ALL.to_vec(), <[Check]>::to_vec);
    list.sort();
    list.dedup();
    let ctx = BoundContext::around(c, s.n, s.radius)?;
    let mut out = Vec::new();
    for check in list {
        let name = check.name();
        let result = match check {
            Check::RCurve => is_r_curve(c, s.radius, &s.opts).map(|r| CheckEntry::from_report(name, &r)),
            Check::RPath => is_r_path(c, s.radius, &s.opts).map(|r| CheckEntry::from_report(name, &r)),
            Check::Simple => Ok(simple(c)),
            Check::NormalMeasure => check_normal_measure(c, s.radius, &s.opts).map(|r| CheckEntry::from_report(name, &r)),
            Check::HullTangent => check_hull_tangent_bound(c, &ctx, &s.opts).map(|r| CheckEntry::from_report(name, &r)),
            Check::LengthBound => check_length_bound(c, &ctx, &s.opts).map(|r| CheckEntry::from_report(name, &r)),
            Check::SelfApproaching => self_approaching(c, &ctx, &s.opts).map(|r| CheckEntry::from_report(name, &r)),
            Check::Detour => max_detour(c).map(|d| {
                let mut e = CheckEntry::bare(name, Status::Pass, format!("largest between vertices {} and {}", d.i, d.j));
                e.margin = Some(d.value);
                e.parameters.insert("max_detour".into(), Some(d.value));
                e.witnesses.push(WitnessEntry {
                    indices: vec![d.i, d.j],
                    value: Some(d.value),
                    label: "largest detour".into(),
                });
                e
            }),
        };
        out.push(match result {
            Ok(e) => e,
            Err(e) => {
                let status = if explicit { Status::Precondition } else { Status::Skipped };
                let mut entry = CheckEntry::bare(name, status, e.to_string());
                if let Error::Precondition { witness, .. } = &e {
                    if !witness.is_empty() {
                        entry.witnesses.push(WitnessEntry {
                            indices: witness.clone(),
                            value: None,
                            label: "precondition".into(),
                        });
                    }
                }
                entry
            }
        });
    }
    Ok(out)
}

fn simple(c: &Polyline<f64>) -> CheckEntry {
    match find_self_intersection(c) {
        None => CheckEntry::bare("simple", Status::Pass, "no two segments meet apart from neighbours".into()),
        Some((i, j)) => {
            let mut e = CheckEntry::bare("simple", Status::Fail, format!("segments {i} and {j} intersect"));
            e.witnesses.push(WitnessEntry {
                indices: vec![i, j],
                value: None,
                label: "segment pair".into(),
            });
            e
        }
    }
}

fn pre(message: String, witness: Vec<usize>) -> Error {
    Error::Precondition {
        check: "self_approaching",
        message,
        witness,
    }
}

/// The reversed curve against `ctx.phi()`, under the same hypotheses as the
/// length bound.
fn self_approaching(c: &Polyline<f64>, ctx: &BoundContext<f64>, opts: &CheckOptions<f64>) -> Result<ValidationReport<f64>, Error> {
    if let Some((i, j)) = find_self_intersection(c) {
        return Err(pre(format!("segments {i} and {j} intersect"), vec![i, j]));
    }
    let limit = ctx.containment_radius();
    if let Some(i) = c.vertices().iter().position(|v| v.dist(ctx.center) > limit + opts.tol) {
        return Err(pre(format!("vertex {i} lies outside D(center, {limit})"), vec![i]));
    }
    let rp = is_r_path(c, ctx.radius, opts)?;
    if !rp.passed() {
        return Err(pre(format!("not an R-path (margin {})", rp.margin), Vec::new()));
    }
    is_phi_self_approaching(&c.reverse(), ctx.phi(), opts)
}
