use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violated its domain. `field` names the offending input.
    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },

    #[error("empty network")]
    EmptyNetwork,

    #[error("unknown platform id `{0}`")]
    UnknownPlatform(String),

    #[error("infeasible at T_max = {t_max}: network is not connected throughout the window")]
    InfeasibleAtMaxRange { t_max: f64 },

    #[error("no feasible velocity on grid [{omega_min}, {omega_max}] rad/s")]
    NoFeasibleVelocity { omega_min: f64, omega_max: f64 },

    #[error("coverage gap at time {0}")]
    CoverageGap(f64),

    #[error("path enumeration exceeded the ceiling of {0} paths")]
    TooManyPaths(usize),

    #[error("no invariant cylinder: orbit radius {r_o} exceeds sphere radius {r_s}")]
    NoInvariantCylinder { r_o: f64, r_s: f64 },

    #[error("infeasible: r_s = {r_s} <= H_ac = {height}")]
    CoverageInfeasible { r_s: f64, height: f64 },
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// True for errors that describe an analysed but infeasible instance, as
    /// opposed to malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::InfeasibleAtMaxRange { .. }
                | Error::NoFeasibleVelocity { .. }
                | Error::CoverageGap(_)
                | Error::NoInvariantCylinder { .. }
                | Error::CoverageInfeasible { .. }
        )
    }
}
