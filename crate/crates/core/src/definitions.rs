//! Three operational definitions of velocity from a displacement `x` measured
//! over a duration `t`.
//!
//! * Definition 1 is the plain quotient `x/t`.
//! * Definition 2 is a bounded operator with regularization scale `T`:
//!   `a'/c = ((1+y)^n - (1-y)^n) / ((1+y)^n + (1-y)^n)` with `y = x/(cT)` and
//!   `n = T/t`. As `T` grows it tends to `c tanh(x/(ct))`.
//! * Definition 3 is the unbounded counterpart,
//!   `a''/c = artanh(n tanh(x/(cT)))`, tending to `c artanh(x/(ct))`.
//!
//! The finite-`T` operators are evaluated in log space: the power ratio of
//! Definition 2 is `tanh(n artanh y)`, so no power of `1 ± y` is ever formed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, VelocityError};
use crate::velocity::{
    artanh_with_complement, bounded_from_ratio, stable_tanh, BoundedVelocity, LightSpeed,
    SaturationMode, UnboundedVelocity,
};

/// `T` used when an observation does not name one: `1000 t`.
pub const DEFAULT_REGULARIZATION_FACTOR: f64 = 1000.0;

/// One measured displacement `x` over a duration `t`, with the regularization
/// scale `T` used by the finite operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservationRecord {
    x: f64,
    t: f64,
    regularization: f64,
}

impl ObservationRecord {
    pub fn new(x: f64, t: f64, regularization: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(VelocityError::InvalidObservation("x must be finite"));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(VelocityError::InvalidObservation(
                "t must be positive and finite",
            ));
        }
        if !(regularization.is_finite() && regularization > 0.0) {
            return Err(VelocityError::InvalidObservation(
                "T must be positive and finite",
            ));
        }
        Ok(ObservationRecord {
            x,
            t,
            regularization,
        })
    }

    /// Observation with `T = 1000 t`.
    pub fn with_default_regularization(x: f64, t: f64) -> Result<Self> {
        ObservationRecord::new(x, t, DEFAULT_REGULARIZATION_FACTOR * t)
    }

    /// Same displacement and duration under a different `T`.
    pub fn with_regularization(self, regularization: f64) -> Result<Self> {
        ObservationRecord::new(self.x, self.t, regularization)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn regularization(&self) -> f64 {
        self.regularization
    }
}

/// Which definition to apply. `Def2`/`Def3` may pin their own `T`; `None`
/// defers to the observation's.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DefinitionTag {
    Def1,
    Def2(Option<f64>),
    Def2Limit,
    Def3(Option<f64>),
    Def3Limit,
}

impl DefinitionTag {
    pub fn name(&self) -> &'static str {
        match self {
            DefinitionTag::Def1 => "def1",
            DefinitionTag::Def2(_) => "def2",
            DefinitionTag::Def2Limit => "def2-limit",
            DefinitionTag::Def3(_) => "def3",
            DefinitionTag::Def3Limit => "def3-limit",
        }
    }

    /// Representation the definition produces.
    pub fn representation(&self) -> Representation {
        match self {
            DefinitionTag::Def2(_) | DefinitionTag::Def2Limit => Representation::Bounded,
            _ => Representation::Unbounded,
        }
    }
}

impl FromStr for DefinitionTag {
    type Err = VelocityError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "def1" => Ok(DefinitionTag::Def1),
            "def2" => Ok(DefinitionTag::Def2(None)),
            "def2-limit" => Ok(DefinitionTag::Def2Limit),
            "def3" => Ok(DefinitionTag::Def3(None)),
            "def3-limit" => Ok(DefinitionTag::Def3Limit),
            other => Err(VelocityError::InvalidArgument(format!(
                "unknown definition `{other}` (expected def1, def2, def2-limit, def3, def3-limit)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Bounded,
    Unbounded,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Representation::Bounded => "bounded",
            Representation::Unbounded => "unbounded",
        })
    }
}

/// A velocity tagged with its representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Velocity {
    Bounded(BoundedVelocity),
    Unbounded(UnboundedVelocity),
}

impl Velocity {
    pub fn value(&self) -> f64 {
        match self {
            Velocity::Bounded(v) => v.value(),
            Velocity::Unbounded(a) => a.value(),
        }
    }

    pub fn representation(&self) -> Representation {
        match self {
            Velocity::Bounded(_) => Representation::Bounded,
            Velocity::Unbounded(_) => Representation::Unbounded,
        }
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self, Velocity::Bounded(v) if v.is_saturated())
    }
}

/// Definition 1: `x / t`. May exceed `c`.
pub fn def1_velocity(obs: &ObservationRecord) -> Result<UnboundedVelocity> {
    UnboundedVelocity::new(obs.x / obs.t)
}

/// Definition 2 at the observation's finite `T`.
pub fn def2_velocity(obs: &ObservationRecord, c: LightSpeed) -> Result<BoundedVelocity> {
    def2_velocity_with(obs, c, SaturationMode::Clamp)
}

pub fn def2_velocity_with(
    obs: &ObservationRecord,
    c: LightSpeed,
    mode: SaturationMode,
) -> Result<BoundedVelocity> {
    let limit = c.get() * obs.regularization;
    let y = obs.x / limit;
    if !(y.abs() < 1.0) {
        return Err(VelocityError::OutsideOperatorDomain { x: obs.x, limit });
    }
    let exponent = obs.regularization / obs.t;
    if exponent == 1.0 {
        // ((1+y) - (1-y)) / ((1+y) + (1-y)) = y, so the operator is x/t
        let q = obs.x / obs.t;
        let cv = c.get();
        return BoundedVelocity::from_magnitude(
            q.is_sign_negative(),
            q.abs(),
            cv - q.abs(),
            c,
            mode,
        );
    }
    // n * (ln(1+y) - ln(1-y)) / 2, the half log-ratio of the two powers
    let half_log_ratio = exponent * artanh_with_complement(y.abs(), 1.0 - y.abs());
    let signed = if y.is_sign_negative() {
        -half_log_ratio
    } else {
        half_log_ratio
    };
    bounded_from_ratio(signed, c, mode)
}

/// `T -> ∞` limit of Definition 2: `c tanh(x/(ct))`.
pub fn def2_limit(obs: &ObservationRecord, c: LightSpeed) -> Result<BoundedVelocity> {
    def2_limit_with(obs, c, SaturationMode::Clamp)
}

pub fn def2_limit_with(
    obs: &ObservationRecord,
    c: LightSpeed,
    mode: SaturationMode,
) -> Result<BoundedVelocity> {
    bounded_from_ratio(obs.x / (c.get() * obs.t), c, mode)
}

/// Definition 3 at the observation's finite `T`.
pub fn def3_velocity(obs: &ObservationRecord, c: LightSpeed) -> Result<UnboundedVelocity> {
    let cv = c.get();
    let exponent = obs.regularization / obs.t;
    if exponent == 1.0 {
        // artanh(tanh(x/ct)) = x/ct
        return UnboundedVelocity::new(obs.x / obs.t);
    }
    let s = exponent * stable_tanh(obs.x / (cv * obs.regularization));
    if !(s.abs() < 1.0) {
        return Err(VelocityError::BeyondLightCone { s });
    }
    let magnitude = cv * artanh_with_complement(s.abs(), 1.0 - s.abs());
    UnboundedVelocity::new(if s.is_sign_negative() {
        -magnitude
    } else {
        magnitude
    })
}

/// `T -> ∞` limit of Definition 3: `(c/2) ln((1 + x/ct)/(1 - x/ct))`.
/// Diverges as `|x| -> ct`.
pub fn def3_limit(obs: &ObservationRecord, c: LightSpeed) -> Result<UnboundedVelocity> {
    let cv = c.get();
    let r = obs.x / (cv * obs.t);
    if !(r.abs() < 1.0) {
        return Err(VelocityError::AtLightCone {
            value: obs.x / obs.t,
            c: cv,
        });
    }
    let magnitude = cv * artanh_with_complement(r.abs(), 1.0 - r.abs());
    UnboundedVelocity::new(if r.is_sign_negative() {
        -magnitude
    } else {
        magnitude
    })
}

/// Applies `tag` to `obs`.
pub fn evaluate(tag: DefinitionTag, obs: &ObservationRecord, c: LightSpeed) -> Result<Velocity> {
    evaluate_with(tag, obs, c, SaturationMode::Clamp)
}

pub fn evaluate_with(
    tag: DefinitionTag,
    obs: &ObservationRecord,
    c: LightSpeed,
    mode: SaturationMode,
) -> Result<Velocity> {
    let pinned = |regularization: Option<f64>| match regularization {
        Some(t_reg) => obs.with_regularization(t_reg),
        None => Ok(*obs),
    };
    Ok(match tag {
        DefinitionTag::Def1 => Velocity::Unbounded(def1_velocity(obs)?),
        DefinitionTag::Def2(reg) => Velocity::Bounded(def2_velocity_with(&pinned(reg)?, c, mode)?),
        DefinitionTag::Def2Limit => Velocity::Bounded(def2_limit_with(obs, c, mode)?),
        DefinitionTag::Def3(reg) => Velocity::Unbounded(def3_velocity(&pinned(reg)?, c)?),
        DefinitionTag::Def3Limit => Velocity::Unbounded(def3_limit(obs, c)?),
    })
}

/// Definitions with a finite regularization scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteDefinition {
    Def2,
    Def3,
}

impl FromStr for FiniteDefinition {
    type Err = VelocityError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "def2" => Ok(FiniteDefinition::Def2),
            "def3" => Ok(FiniteDefinition::Def3),
            other => Err(VelocityError::InvalidArgument(format!(
                "convergence scans take def2 or def3, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub regularization: f64,
    pub value: f64,
    pub abs_error_vs_limit: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FittedOrder {
    /// Negated log-log slope of error against `T`.
    Order(f64),
    /// Too many errors were exactly zero to fit a slope.
    Degenerate { zero_rows: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceScan {
    pub rows: Vec<ConvergenceRow>,
    pub fit: FittedOrder,
}

impl ConvergenceScan {
    pub fn order(&self) -> Result<f64> {
        match self.fit {
            FittedOrder::Order(order) => Ok(order),
            FittedOrder::Degenerate { zero_rows } => Err(VelocityError::DegenerateFit {
                zero_rows,
                rows: self.rows.len(),
            }),
        }
    }
}

/// Least-squares slope of `ln y` against `ln x`. `None` for fewer than two
/// points or a degenerate abscissa.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxy, sxx) = logs.iter().fold((0.0, 0.0), |(sxy, sxx), &(x, y)| {
        let dx = x - mean_x;
        (sxy + dx * (y - mean_y), sxx + dx * dx)
    });
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Evaluates a finite definition over an ascending grid of `T` and fits the
/// rate at which it approaches its limit.
///
/// The grid must hold at least four strictly ascending positive points that
/// span at least three decades.
pub fn convergence_scan(
    kind: FiniteDefinition,
    obs: &ObservationRecord,
    c: LightSpeed,
    grid: &[f64],
) -> Result<ConvergenceScan> {
    validate_grid(grid)?;
    let limit = match kind {
        FiniteDefinition::Def2 => def2_limit(obs, c)?.value(),
        FiniteDefinition::Def3 => def3_limit(obs, c)?.value(),
    };
    let rows = grid
        .iter()
        .map(|&t_reg| {
            let at = obs.with_regularization(t_reg)?;
            let value = match kind {
                FiniteDefinition::Def2 => def2_velocity(&at, c)?.value(),
                FiniteDefinition::Def3 => def3_velocity(&at, c)?.value(),
            };
            Ok(ConvergenceRow {
                regularization: t_reg,
                value,
                abs_error_vs_limit: (value - limit).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let nonzero: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.abs_error_vs_limit > 0.0)
        .map(|r| (r.regularization, r.abs_error_vs_limit))
        .collect();
    let zero_rows = rows.len() - nonzero.len();
    let fit = if 2 * zero_rows >= rows.len() {
        FittedOrder::Degenerate { zero_rows }
    } else {
        match loglog_slope(&nonzero) {
            Some(slope) => FittedOrder::Order(-slope),
            None => FittedOrder::Degenerate { zero_rows },
        }
    };
    Ok(ConvergenceScan { rows, fit })
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 4 {
        return Err(VelocityError::InvalidArgument(format!(
            "convergence grid needs at least 4 points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(VelocityError::InvalidArgument(
            "convergence grid points must be positive and finite".into(),
        ));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(VelocityError::InvalidArgument(
            "convergence grid must be strictly ascending".into(),
        ));
    }
    if grid[grid.len() - 1] / grid[0] < 1e3 {
        return Err(VelocityError::InvalidArgument(
            "convergence grid must span at least three decades".into(),
        ));
    }
    Ok(())
}
