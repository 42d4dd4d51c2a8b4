//! One-dimensional velocities in two representations: bounded by the light
//! speed `c` (composing by Einstein's rule) and unbounded (composing by
//! subtraction), joined by the map `v -> (c/2) ln((c+v)/(c-v))`.
//!
//! * [`velocity`]: value types and the two maps.
//! * [`composition`]: the relative-velocity laws.
//! * [`definitions`]: three operational definitions of velocity from a
//!   measured displacement, their finite-`T` operators and limits.
//! * [`equivalence`]: body/observer scenarios and the cross-representation
//!   checks.
//! * [`verify`]: the seeded property suite.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod composition;
pub mod definitions;
pub mod equivalence;
pub mod error;
pub mod velocity;
pub mod verify;

pub use composition::{
    cross_representation_check, einstein_compose, einstein_compose_with, einstein_relative,
    einstein_relative_with, galilean_relative, CrossCheckReport,
};
pub use definitions::{
    convergence_scan, def1_velocity, def2_limit, def2_limit_with, def2_velocity,
    def2_velocity_with, def3_limit, def3_velocity, evaluate, evaluate_with, ConvergenceRow,
    ConvergenceScan, DefinitionTag, FiniteDefinition, FittedOrder, ObservationRecord,
    Representation, Velocity,
};
pub use equivalence::{
    galilean_in_lorentz_check, light_cone_divergence_scan, relative_velocity,
    relativistic_in_galilean_check, CompositionTag, EquivalenceReport, LightConeRow, LightConeScan,
    Scenario,
};
pub use error::{Result, VelocityError};
pub use velocity::{
    round_trip_residual, round_trip_residual_with, to_bounded, to_bounded_with, to_unbounded,
    to_unbounded_with, BoundedVelocity, LightSpeed, NumericPolicy, SaturationMode,
    UnboundedVelocity, SI_LIGHT_SPEED,
};
