//! Checks of the defining inequalities and of the derived angle, length and
//! detour bounds on discretized curves.
//!
//! Pairwise checks run over the sample set of vertices plus segment midpoints.

mod bounds;
pub(crate) mod curve;
pub mod oracle;
mod report;

pub use bounds::{check_hull_tangent_bound, check_length_bound, check_normal_measure, max_detour, BoundContext, Detour};
pub use curve::{
    admissible_normals, find_self_intersection, is_lambda_eel, is_phi_self_approaching, is_r_curve, is_r_path,
    self_intersects,
};
pub use report::{ValidationReport, Verdict, Witness};

pub(crate) use bounds::require_r_path;
pub(crate) use report::MarginTracker;

use crate::scalar::Scalar;

/// Tolerances shared by the checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions<T> {
    /// Angular slack for cone containment and angle bounds, in radians.
    pub ang_slack: T,
    /// Chord-cone radius; `None` means three times the median segment length.
    pub radius_eps: Option<T>,
    /// Absolute slack for length and length² inequalities.
    pub tol: T,
}

impl<T: Scalar> Default for CheckOptions<T> {
    fn default() -> Self {
        CheckOptions {
            ang_slack: T::lit(0.02),
            radius_eps: None,
            tol: T::geom_eps(),
        }
    }
}

impl<T: Scalar> CheckOptions<T> {
    /// Zero angular slack, for exact constructions.
    pub fn exact() -> Self {
        CheckOptions {
            ang_slack: T::zero(),
            ..Self::default()
        }
    }

    pub fn with_ang_slack(mut self, slack: T) -> Self {
        self.ang_slack = slack;
        self
    }

    pub fn with_radius_eps(mut self, radius_eps: T) -> Self {
        self.radius_eps = Some(radius_eps);
        self
    }
}
