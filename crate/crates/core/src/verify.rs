//! Seeded property suite over the maps, laws and definitions.
//!
//! Every property draws its samples from its own ChaCha stream derived from
//! the seed, so the suite is reproducible and properties do not perturb one
//! another. Residuals are normalized by the scale named in each property's
//! description; `max_residual` and `tolerance` are in those units.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::definitions::{
    def1_velocity, def2_limit, def2_velocity, def3_limit, def3_velocity, DefinitionTag,
    ObservationRecord, Velocity,
};
use crate::equivalence::{
    galilean_in_lorentz_check, light_cone_divergence_scan, relative_velocity,
    relativistic_in_galilean_check, CompositionTag, Scenario, CERTIFIED_BOUNDED_FRACTION,
    CERTIFIED_UNBOUNDED_RANGE,
};
use crate::error::Result;
use crate::velocity::{
    round_trip_residual, to_bounded, to_unbounded, BoundedVelocity, LightSpeed, SaturationMode,
    UnboundedVelocity,
};

/// Largest `|a|/c` sampled by the round-trip property.
pub const ROUND_TRIP_RANGE: f64 = 15.0;
/// Units in the last place allowed by the `T = t` collapse.
pub const COLLAPSE_MAX_ULPS: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub c: LightSpeed,
    pub rel_tol: f64,
    pub seed: u64,
    pub cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            c: LightSpeed::NATURAL,
            rel_tol: 1e-12,
            seed: 42,
            cases: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub property: &'static str,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Names of the properties in the order [`run_suite`] reports them.
pub const PROPERTIES: [&str; 9] = [
    "round_trip",
    "homomorphism",
    "dual_homomorphism",
    "collapse_def2",
    "collapse_def3",
    "limit_consistency_def2",
    "limit_consistency_def3",
    "four_quadrant",
    "divergence_monotonicity",
];

pub fn run_suite(config: &SuiteConfig) -> Vec<PropertyOutcome> {
    PROPERTIES
        .iter()
        .map(|name| run_property(name, config).expect("name comes from PROPERTIES"))
        .collect()
}

/// Runs one named property; `None` for an unknown name.
pub fn run_property(name: &str, config: &SuiteConfig) -> Option<PropertyOutcome> {
    let stream = PROPERTIES.iter().position(|p| *p == name)? as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    let property = PROPERTIES[stream as usize];
    let (c, tol, n) = (config.c, config.rel_tol, config.cases);
    let rng = &mut rng;
    Some(match property {
        "round_trip" => sweep(property, n, tol, rng, |r| round_trip_case(r, c)),
        "homomorphism" => sweep(property, n, tol, rng, |r| homomorphism_case(r, c)),
        "dual_homomorphism" => sweep(property, n, tol, rng, |r| dual_homomorphism_case(r, c)),
        "collapse_def2" => sweep(property, n, COLLAPSE_MAX_ULPS, rng, |r| {
            collapse_case(r, c, false)
        }),
        "collapse_def3" => sweep(property, n, COLLAPSE_MAX_ULPS, rng, |r| {
            collapse_case(r, c, true)
        }),
        "limit_consistency_def2" => sweep(property, n, tol, rng, |r| limit_case(r, c, false)),
        "limit_consistency_def3" => sweep(property, n, tol, rng, |r| limit_case(r, c, true)),
        "four_quadrant" => sweep(property, n, tol, rng, |r| four_quadrant_case(r, c)),
        "divergence_monotonicity" => sweep(property, n, 0.0, rng, |r| divergence_case(r, c)),
        _ => unreachable!("every name in PROPERTIES has a case"),
    })
}

fn sweep(
    property: &'static str,
    cases: usize,
    tolerance: f64,
    rng: &mut ChaCha8Rng,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Result<f64>,
) -> PropertyOutcome {
    // an error inside the sampled range counts as an infinite residual
    let max_residual = (0..cases)
        .map(|_| case(rng).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    PropertyOutcome {
        property,
        cases,
        max_residual,
        tolerance,
        pass: max_residual <= tolerance,
    }
}

/// Duration drawn log-uniformly from `[0.01, 100]`.
fn duration(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.gen_range(-2.0..=2.0))
}

/// Observation with `|x| < fraction * c t`.
fn observation(
    rng: &mut ChaCha8Rng,
    c: LightSpeed,
    fraction: f64,
    regularization_ratio: f64,
) -> Result<ObservationRecord> {
    let t = duration(rng);
    let x = rng.gen_range(-fraction..fraction) * c.get() * t;
    ObservationRecord::new(x, t, regularization_ratio * t)
}

/// `|to_unbounded(to_bounded(a)) - a| / max(c, |a|)`, `|a| <= 15c`.
fn round_trip_case(rng: &mut ChaCha8Rng, c: LightSpeed) -> Result<f64> {
    let cv = c.get();
    let a = rng.gen_range(-ROUND_TRIP_RANGE..=ROUND_TRIP_RANGE) * cv;
    Ok(round_trip_residual(UnboundedVelocity::new(a)?, c)? / cv.max(a.abs()))
}

/// Bounded-space residual of the homomorphism over `c`, `|a|, |b| <= 7c`.
fn homomorphism_case(rng: &mut ChaCha8Rng, c: LightSpeed) -> Result<f64> {
    let cv = c.get();
    let range = CERTIFIED_UNBOUNDED_RANGE;
    let a = UnboundedVelocity::new(rng.gen_range(-range..=range) * cv)?;
    let b = UnboundedVelocity::new(rng.gen_range(-range..=range) * cv)?;
    let report = galilean_in_lorentz_check(a, b, c, 1.0)?;
    Ok(report.residual / cv)
}

/// Unbounded-space residual of the dual homomorphism over
/// `max(c, |to_unbounded(u)|, |to_unbounded(v)|)`, `|u|, |v| <= (1 - 1e-6) c`.
fn dual_homomorphism_case(rng: &mut ChaCha8Rng, c: LightSpeed) -> Result<f64> {
    let range = CERTIFIED_BOUNDED_FRACTION * c.get();
    let u = BoundedVelocity::new(rng.gen_range(-range..=range), c)?;
    let v = BoundedVelocity::new(rng.gen_range(-range..=range), c)?;
    let report = relativistic_in_galilean_check(u, v, c, 1.0)?;
    // tol = 1 makes the report's tolerance the normalization scale itself
    Ok(report.residual / report.tolerance)
}

/// Distance, in ulps of `x/t`, between a finite-`T` definition at `T = t`
/// and `x/t`, `|x| < 0.99 c t`.
fn collapse_case(rng: &mut ChaCha8Rng, c: LightSpeed, def3: bool) -> Result<f64> {
    let obs = observation(rng, c, 0.99, 1.0)?;
    let expected = obs.x() / obs.t();
    let got = if def3 {
        def3_velocity(&obs, c)?.value()
    } else {
        def2_velocity(&obs, c)?.value()
    };
    Ok(ulp_distance(got, expected))
}

/// Limit definitions against the maps applied to `x/t`, over `c`,
/// `|x| < 0.999 c t`.
fn limit_case(rng: &mut ChaCha8Rng, c: LightSpeed, def3: bool) -> Result<f64> {
    let obs = observation(rng, c, 0.999, 1.0)?;
    let (lhs, rhs) = if def3 {
        let direct = BoundedVelocity::new(obs.x() / obs.t(), c)?;
        (
            def3_limit(&obs, c)?.value(),
            to_unbounded(direct, c)?.value(),
        )
    } else {
        (
            def2_limit(&obs, c)?.value(),
            to_bounded(def1_velocity(&obs)?, c)?.value(),
        )
    };
    Ok((lhs - rhs).abs() / c.get())
}

/// The two cross-representation pairings of body/observer scenarios:
/// Definition 2 with Einstein composition is the bounded image of
/// Definition 1 with subtraction, and Definition 3 with subtraction is the
/// unbounded image of Definition 1 with Einstein composition. Returns the
/// larger normalized residual.
fn four_quadrant_case(rng: &mut ChaCha8Rng, c: LightSpeed) -> Result<f64> {
    use CompositionTag::*;
    use DefinitionTag::*;
    let cv = c.get();
    let body = observation(rng, c, 0.99, 1000.0)?;
    let observer = observation(rng, c, 0.99, 1000.0)?;
    let run = |definition, law| {
        relative_velocity(
            &Scenario {
                obs_body: body,
                obs_observer: observer,
                definition,
                law,
            },
            c,
            SaturationMode::Clamp,
        )
    };

    let galilean_def1 = UnboundedVelocity::new(run(Def1, GalileanAdditive)?.value())?;
    let bounded_side = run(Def2Limit, EinsteinRelative)?.value();
    let galilean_residual = (bounded_side - to_bounded(galilean_def1, c)?.value()).abs() / cv;

    let Velocity::Bounded(einstein_def1) = run(Def1, EinsteinRelative)? else {
        unreachable!("einstein composition yields bounded velocities")
    };
    let unbounded_side = run(Def3Limit, GalileanAdditive)?.value();
    let image = to_unbounded(einstein_def1, c)?.value();
    let scale = cv.max(unbounded_side.abs()).max(image.abs());
    let relativistic_residual = (unbounded_side - image).abs() / scale;

    Ok(galilean_residual.max(relativistic_residual))
}

/// 0 when a light-cone scan over eight well-separated decades of `ε` is
/// monotone in both columns and the Definition-3 column exceeds
/// `(c/2) ln(1/ε)`; 1 otherwise.
fn divergence_case(rng: &mut ChaCha8Rng, c: LightSpeed) -> Result<f64> {
    let t = duration(rng);
    let eps: Vec<f64> = (1..=8)
        .map(|k| 10f64.powf(-(k as f64) - rng.gen_range(0.0..0.5)))
        .collect();
    let scan = light_cone_divergence_scan(t, c, &eps)?;
    let above_log = scan
        .rows
        .iter()
        .all(|r| r.def3_limit.value() > 0.5 * c.get() * (1.0 / r.epsilon).ln());
    Ok(if scan.monotone() && above_log {
        0.0
    } else {
        1.0
    })
}

/// Number of representable doubles between `a` and `b` (same sign assumed
/// or both near zero).
pub fn ulp_distance(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if a.is_sign_negative() != b.is_sign_negative() {
        return ulp_distance(a.abs(), 0.0) + ulp_distance(b.abs(), 0.0);
    }
    (a.abs().to_bits() as i64 - b.abs().to_bits() as i64).unsigned_abs() as f64
}
