use thiserror::Error;

/// Every failure a kinematic operation can report.
///
/// The variant names are part of the command-line contract: the CLI prints
/// [`VelocityError::name`] on its diagnostic stream.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum VelocityError {
    #[error("velocity {value} is at or beyond the light cone |v| >= c = {c}")]
    AtLightCone { value: f64, c: f64 },
    #[error(
        "bounded velocity rounds onto the light cone (c = {c}) and saturation mode is `error`"
    )]
    Saturation { c: f64 },
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },
    #[error("invalid light speed {0}: must be positive and finite")]
    InvalidLightSpeed(f64),
    #[error("invalid numeric policy: {0}")]
    InvalidPolicy(&'static str),
    #[error("relative-velocity denominator {0} is not positive")]
    DegenerateDenominator(f64),
    #[error("|x| = {x} is not below c*T = {limit}; the finite-T bounded operator is undefined")]
    OutsideOperatorDomain { x: f64, limit: f64 },
    #[error("inner argument s = {s} of the finite-T unbounded operator is outside (-1, 1)")]
    BeyondLightCone { s: f64 },
    #[error("invalid observation: {0}")]
    InvalidObservation(&'static str),
    #[error(
        "convergence errors vanished on {zero_rows} of {rows} grid points; no slope can be fitted"
    )]
    DegenerateFit { zero_rows: usize, rows: usize },
    #[error("value {value} cannot be read as a bounded velocity for c = {c}")]
    RepresentationMismatch { value: f64, c: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl VelocityError {
    /// Stable identifier of the variant, e.g. `"AtLightCone"`.
    pub fn name(&self) -> &'static str {
        match self {
            VelocityError::AtLightCone { .. } => "AtLightCone",
            VelocityError::Saturation { .. } => "Saturation",
            VelocityError::NonFinite { .. } => "NonFinite",
            VelocityError::InvalidLightSpeed(_) => "InvalidLightSpeed",
            VelocityError::InvalidPolicy(_) => "InvalidPolicy",
            VelocityError::DegenerateDenominator(_) => "DegenerateDenominator",
            VelocityError::OutsideOperatorDomain { .. } => "OutsideOperatorDomain",
            VelocityError::BeyondLightCone { .. } => "BeyondLightCone",
            VelocityError::InvalidObservation(_) => "InvalidObservation",
            VelocityError::DegenerateFit { .. } => "DegenerateFit",
            VelocityError::RepresentationMismatch { .. } => "RepresentationMismatch",
            VelocityError::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, VelocityError>;
