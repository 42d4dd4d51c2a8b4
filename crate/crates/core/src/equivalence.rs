//! Relative velocities of a body seen by an observer under every pairing of
//! definition and composition law, and executable checks that the bounded and
//! unbounded descriptions of one motion agree.
//!
//! Measuring with Definition 1 and subtracting is ordinary Galilean
//! kinematics. The same motion described by Definition 2 composes by
//! Einstein's rule. Conversely, Definition 1 values composed by Einstein's
//! rule (relativistic kinematics) turn into plain differences once velocity is
//! measured with Definition 3. The checks below state those two facts as
//! residuals.

use std::str::FromStr;

use crate::composition::{einstein_relative_with, galilean_relative};
use crate::definitions::{
    def2_limit, def3_limit, evaluate_with, DefinitionTag, ObservationRecord, Velocity,
};
use crate::error::{Result, VelocityError};
use crate::velocity::{
    to_bounded, to_unbounded, BoundedVelocity, LightSpeed, SaturationMode, UnboundedVelocity,
};

/// Claim: subtraction seen through the bounded map is Einstein's rule.
pub const GALILEAN_AS_LORENTZ: &str = "S3-galilean-as-lorentz";
/// Claim: Einstein's rule seen through the unbounded map is subtraction.
pub const LORENTZ_AS_GALILEAN: &str = "S3-lorentz-as-galilean";

/// Unbounded inputs up to this multiple of `c` are certified for
/// [`galilean_in_lorentz_check`].
pub const CERTIFIED_UNBOUNDED_RANGE: f64 = 7.0;
/// Bounded inputs up to this fraction of `c` are certified for
/// [`relativistic_in_galilean_check`].
pub const CERTIFIED_BOUNDED_FRACTION: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionTag {
    GalileanAdditive,
    EinsteinRelative,
}

impl CompositionTag {
    pub fn name(&self) -> &'static str {
        match self {
            CompositionTag::GalileanAdditive => "galilean",
            CompositionTag::EinsteinRelative => "einstein",
        }
    }
}

impl FromStr for CompositionTag {
    type Err = VelocityError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "galilean" => Ok(CompositionTag::GalileanAdditive),
            "einstein" => Ok(CompositionTag::EinsteinRelative),
            other => Err(VelocityError::InvalidArgument(format!(
                "unknown composition law `{other}` (expected galilean or einstein)"
            ))),
        }
    }
}

/// A body and an observer, both measured with the same definition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub obs_body: ObservationRecord,
    pub obs_observer: ObservationRecord,
    pub definition: DefinitionTag,
    pub law: CompositionTag,
}

impl Scenario {
    /// Name of the kinematic situation this pairing describes, if it is one of
    /// the four the isomorphism relates.
    pub fn claim_id(&self) -> Option<&'static str> {
        use CompositionTag::*;
        use DefinitionTag::*;
        match (self.definition, self.law) {
            (Def1, GalileanAdditive) => Some("galilean-kinematics-def1"),
            (Def2(_) | Def2Limit, EinsteinRelative) => Some("galilean-kinematics-def2"),
            (Def1, EinsteinRelative) => Some("relativistic-kinematics-def1"),
            (Def3(_) | Def3Limit, GalileanAdditive) => Some("relativistic-kinematics-def3"),
            _ => None,
        }
    }
}

/// Velocity of the body relative to the observer.
///
/// Galilean composition subtracts the measured values and yields an unbounded
/// velocity. Einstein composition needs bounded operands: values from
/// Definitions 2 are used as they are, values from Definitions 1 and 3 are
/// read as bounded velocities and must lie strictly inside `(-c, c)`.
pub fn relative_velocity(s: &Scenario, c: LightSpeed, mode: SaturationMode) -> Result<Velocity> {
    let body = evaluate_with(s.definition, &s.obs_body, c, mode)?;
    let observer = evaluate_with(s.definition, &s.obs_observer, c, mode)?;
    match s.law {
        CompositionTag::GalileanAdditive => Ok(Velocity::Unbounded(UnboundedVelocity::new(
            body.value() - observer.value(),
        )?)),
        CompositionTag::EinsteinRelative => {
            let u = as_bounded(body, c)?;
            let v = as_bounded(observer, c)?;
            Ok(Velocity::Bounded(einstein_relative_with(u, v, c, mode)?))
        }
    }
}

fn as_bounded(v: Velocity, c: LightSpeed) -> Result<BoundedVelocity> {
    match v {
        Velocity::Bounded(b) => Ok(b),
        Velocity::Unbounded(a) => {
            BoundedVelocity::new(a.value(), c).map_err(|_| VelocityError::RepresentationMismatch {
                value: a.value(),
                c: c.get(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub claim_id: String,
    /// Inputs lie inside the range where passing is guaranteed.
    pub certified: bool,
}

impl EquivalenceReport {
    fn new(claim_id: &str, lhs: f64, rhs: f64, tolerance: f64, certified: bool) -> Self {
        let residual = (lhs - rhs).abs();
        EquivalenceReport {
            lhs,
            rhs,
            residual,
            tolerance,
            pass: residual <= tolerance,
            claim_id: claim_id.to_owned(),
            certified,
        }
    }
}

/// `to_bounded(a - b)` against `einstein_relative(to_bounded(a), to_bounded(b))`,
/// with tolerance `tol * c`.
pub fn galilean_in_lorentz_check(
    a: UnboundedVelocity,
    b: UnboundedVelocity,
    c: LightSpeed,
    tol: f64,
) -> Result<EquivalenceReport> {
    let cv = c.get();
    let lhs = to_bounded(galilean_relative(a, b)?, c)?;
    let rhs = einstein_relative_with(
        to_bounded(a, c)?,
        to_bounded(b, c)?,
        c,
        SaturationMode::Clamp,
    )?;
    let range = CERTIFIED_UNBOUNDED_RANGE * cv;
    Ok(EquivalenceReport::new(
        GALILEAN_AS_LORENTZ,
        lhs.value(),
        rhs.value(),
        tol * cv,
        a.value().abs() <= range && b.value().abs() <= range,
    ))
}

/// `to_unbounded(einstein_relative(u, v))` against
/// `to_unbounded(u) - to_unbounded(v)`, with tolerance
/// `tol * max(c, |to_unbounded(u)|, |to_unbounded(v)|)`.
pub fn relativistic_in_galilean_check(
    u: BoundedVelocity,
    v: BoundedVelocity,
    c: LightSpeed,
    tol: f64,
) -> Result<EquivalenceReport> {
    let cv = c.get();
    let lhs = to_unbounded(einstein_relative_with(u, v, c, SaturationMode::Clamp)?, c)?;
    let (ru, rv) = (to_unbounded(u, c)?, to_unbounded(v, c)?);
    let rhs = galilean_relative(ru, rv)?;
    let scale = cv.max(ru.value().abs()).max(rv.value().abs());
    let range = CERTIFIED_BOUNDED_FRACTION * cv;
    Ok(EquivalenceReport::new(
        LORENTZ_AS_GALILEAN,
        lhs.value(),
        rhs.value(),
        tol * scale,
        u.value().abs() <= range && v.value().abs() <= range,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightConeRow {
    pub epsilon: f64,
    pub x: f64,
    pub def2_limit: BoundedVelocity,
    pub def3_limit: UnboundedVelocity,
    /// Bounded limit at `x = ct/ε`, the `x/ct -> ∞` reading of the approach to `c`.
    pub beyond_def2_limit: BoundedVelocity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LightConeScan {
    pub rows: Vec<LightConeRow>,
    /// Bounded column strictly increasing, and every entry below `c` or
    /// flagged as clamped.
    pub def2_monotone: bool,
    /// Unbounded column strictly increasing.
    pub def3_monotone: bool,
    /// `beyond_def2_limit` nondecreasing and below `c` or flagged.
    pub beyond_def2_bounded: bool,
}

impl LightConeScan {
    pub fn monotone(&self) -> bool {
        self.def2_monotone && self.def3_monotone
    }
}

/// Evaluates both limit definitions at `x = ct(1 - ε)` for a descending list
/// of `ε` in `(0, 1)`, and the bounded limit at `x = ct/ε`.
pub fn light_cone_divergence_scan(
    t: f64,
    c: LightSpeed,
    epsilons: &[f64],
) -> Result<LightConeScan> {
    if !(t.is_finite() && t > 0.0) {
        return Err(VelocityError::InvalidArgument(format!(
            "light-cone scan needs a positive finite t, got {t}"
        )));
    }
    if epsilons.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
        return Err(VelocityError::InvalidArgument(
            "every epsilon must lie in (0, 1)".into(),
        ));
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(VelocityError::InvalidArgument(
            "epsilons must be strictly descending".into(),
        ));
    }
    let cv = c.get();
    let rows = epsilons
        .iter()
        .map(|&epsilon| {
            let x = cv * t * (1.0 - epsilon);
            let obs = ObservationRecord::new(x, t, t)?;
            let beyond = ObservationRecord::new(cv * t / epsilon, t, t)?;
            Ok(LightConeRow {
                epsilon,
                x,
                def2_limit: def2_limit(&obs, c)?,
                def3_limit: def3_limit(&obs, c)?,
                beyond_def2_limit: def2_limit(&beyond, c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let def2_monotone = rows
        .windows(2)
        .all(|w| w[1].def2_limit.value() > w[0].def2_limit.value())
        && rows
            .iter()
            .all(|r| r.def2_limit.value().abs() < cv || r.def2_limit.is_saturated());
    let def3_monotone = rows
        .windows(2)
        .all(|w| w[1].def3_limit.value() > w[0].def3_limit.value());
    let beyond_def2_bounded = rows
        .windows(2)
        .all(|w| w[1].beyond_def2_limit.value() >= w[0].beyond_def2_limit.value())
        && rows
            .iter()
            .all(|r| r.beyond_def2_limit.value() < cv || r.beyond_def2_limit.is_saturated());
    Ok(LightConeScan {
        rows,
        def2_monotone,
        def3_monotone,
        beyond_def2_bounded,
    })
}
