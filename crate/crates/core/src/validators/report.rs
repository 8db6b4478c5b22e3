use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Cap on stored failure witnesses; the worst one is always kept.
const MAX_WITNESSES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Location of a checked inequality and its slack there.
///
/// Indices are sample indices: sample `2i` is vertex `i`, sample `2i + 1` the
/// midpoint of segment `i`. Per-vertex checks use plain vertex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    pub indices: Vec<usize>,
    pub value: T,
    pub label: String,
}

/// Outcome of one check.
///
/// `margin` is the smallest slack seen (length² for pairwise distance checks,
/// radians for angle checks); the verdict is pass iff `margin >= -tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport<T> {
    pub check: String,
    pub verdict: Verdict,
    pub margin: T,
    pub tolerance: T,
    pub witnesses: Vec<Witness<T>>,
    pub parameters: BTreeMap<String, T>,
    pub notes: Vec<String>,
}

impl<T: Scalar> ValidationReport<T> {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_param(mut self, key: &str, value: T) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Running minimum of slacks that keeps failures as witnesses.
#[derive(Debug, Clone)]
pub(crate) struct MarginTracker<T> {
    tolerance: T,
    min: T,
    worst: Option<Witness<T>>,
    failures: Vec<Witness<T>>,
}

impl<T: Scalar> MarginTracker<T> {
    pub fn new(tolerance: T) -> Self {
        MarginTracker {
            tolerance,
            min: T::infinity(),
            worst: None,
            failures: Vec::new(),
        }
    }

    pub fn observe(&mut self, value: T, indices: impl FnOnce() -> Vec<usize>, label: &str) {
        let failing = value < -self.tolerance;
        if value >= self.min && !failing {
            return;
        }
        let w = Witness {
            indices: indices(),
            value,
            label: label.to_string(),
        };
        if value < self.min {
            self.min = value;
            self.worst = Some(w.clone());
        }
        if failing && self.failures.len() < MAX_WITNESSES {
            self.failures.push(w);
        }
    }

    pub fn finish(self, check: &str) -> ValidationReport<T> {
        let verdict = if self.min >= -self.tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let mut witnesses = self.failures;
        if let Some(w) = self.worst {
            if verdict == Verdict::Fail && !witnesses.contains(&w) {
                witnesses.insert(0, w);
            }
        }
        witnesses.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap_or(std::cmp::Ordering::Equal));
        ValidationReport {
            check: check.to_string(),
            verdict,
            margin: self.min,
            tolerance: self.tolerance,
            witnesses,
            parameters: BTreeMap::new(),
            notes: Vec::new(),
        }
    }
}
