//! Velocity value types and the bijection between the bounded (Lorentz) and
//! unbounded (Galilean) representations.
//!
//! The unbounded image of a bounded velocity `v` is `(c/2) ln((c+v)/(c-v))` and
//! the inverse is `c (e^{2a/c} - 1)/(e^{2a/c} + 1)`. Neither is evaluated in
//! that textbook form: the first cancels near `v = 0`, the second overflows
//! once `|a|/c` passes a few hundred.
//!
//! A [`BoundedVelocity`] keeps its distance to the light cone, `c - |v|`, next
//! to the value itself. Close to the cone the value has lost almost all of its
//! significant digits (`1 - tanh(15)` is about `1.9e-13`, a thousand ulps of 1),
//! while the deficit is still known to full relative precision. Every map and
//! composition law reads and produces that deficit, which keeps the inverse
//! pair and the homomorphism accurate to machine precision right up to the
//! point where the deficit itself underflows.

use std::fmt;
use std::ops::Neg;

use crate::error::{Result, VelocityError};

/// Speed of light in metres per second.
pub const SI_LIGHT_SPEED: f64 = 299_792_458.0;

/// The invariant speed `c`; every velocity is interpreted relative to it.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LightSpeed(f64);

impl LightSpeed {
    /// Natural units, `c = 1`.
    pub const NATURAL: LightSpeed = LightSpeed(1.0);
    /// `c = 299 792 458 m/s`.
    pub const SI: LightSpeed = LightSpeed(SI_LIGHT_SPEED);

    pub fn new(c: f64) -> Result<Self> {
        if c.is_finite() && c > 0.0 {
            Ok(LightSpeed(c))
        } else {
            Err(VelocityError::InvalidLightSpeed(c))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for LightSpeed {
    fn default() -> Self {
        LightSpeed::NATURAL
    }
}

impl fmt::Display for LightSpeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// What a producing operation does when a bounded result rounds onto `±c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SaturationMode {
    /// Replace the value by the largest representable magnitude below `c`
    /// and set the `saturated` flag.
    #[default]
    Clamp,
    /// Fail with [`VelocityError::Saturation`].
    Error,
}

/// Tolerances and saturation behaviour shared by the checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub saturation_mode: SaturationMode,
}

impl NumericPolicy {
    pub fn new(rel_tol: f64, abs_tol: f64, saturation_mode: SaturationMode) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(VelocityError::InvalidPolicy(
                "rel_tol must be positive and finite",
            ));
        }
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(VelocityError::InvalidPolicy(
                "abs_tol must be positive and finite",
            ));
        }
        Ok(NumericPolicy {
            rel_tol,
            abs_tol,
            saturation_mode,
        })
    }

    /// Defaults scaled to `c`: `rel_tol = 1e-12`, `abs_tol = 1e-15 c`, clamping.
    pub fn for_light_speed(c: LightSpeed) -> Self {
        NumericPolicy {
            rel_tol: 1e-12,
            abs_tol: 1e-15 * c.get(),
            saturation_mode: SaturationMode::Clamp,
        }
    }

    /// Admissible residual for a quantity of magnitude `scale`.
    pub fn tolerance(&self, scale: f64) -> f64 {
        (self.rel_tol * scale.abs()).max(self.abs_tol)
    }
}

impl Default for NumericPolicy {
    fn default() -> Self {
        NumericPolicy::for_light_speed(LightSpeed::NATURAL)
    }
}

/// A velocity in the bounded representation, `|value| < c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundedVelocity {
    value: f64,
    /// `c - |value|`, carried at full relative precision.
    deficit: f64,
    saturated: bool,
}

impl BoundedVelocity {
    /// Reads a measured value as a bounded velocity.
    pub fn new(value: f64, c: LightSpeed) -> Result<Self> {
        if !value.is_finite() {
            return Err(VelocityError::NonFinite {
                context: "bounded velocity",
            });
        }
        let c = c.get();
        if value.abs() >= c {
            return Err(VelocityError::AtLightCone { value, c });
        }
        Ok(BoundedVelocity {
            value,
            // exact whenever |value| >= c/2
            deficit: c - value.abs(),
            saturated: false,
        })
    }

    pub fn zero(c: LightSpeed) -> Self {
        BoundedVelocity {
            value: 0.0,
            deficit: c.get(),
            saturated: false,
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    /// Distance to the light cone, `c - |v|`.
    #[inline]
    pub fn deficit(&self) -> f64 {
        self.deficit
    }

    /// True when a producing operation clamped the value below `c`.
    #[inline]
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Assembles a result from its magnitude and deficit, applying the
    /// saturation policy when the magnitude rounded onto `c`.
    pub(crate) fn from_magnitude(
        negative: bool,
        magnitude: f64,
        deficit: f64,
        c: LightSpeed,
        mode: SaturationMode,
    ) -> Result<Self> {
        if magnitude.is_nan() || deficit.is_nan() {
            return Err(VelocityError::NonFinite {
                context: "bounded velocity",
            });
        }
        let c = c.get();
        let (magnitude, deficit, saturated) = if magnitude < c && deficit > 0.0 {
            (magnitude, deficit, false)
        } else {
            match mode {
                SaturationMode::Error => return Err(VelocityError::Saturation { c }),
                SaturationMode::Clamp => {
                    let below = c.next_down();
                    let deficit = if deficit > 0.0 { deficit } else { c - below };
                    (below, deficit, true)
                }
            }
        };
        Ok(BoundedVelocity {
            value: if negative { -magnitude } else { magnitude },
            deficit,
            saturated,
        })
    }
}

impl Neg for BoundedVelocity {
    type Output = BoundedVelocity;

    fn neg(self) -> Self::Output {
        BoundedVelocity {
            value: -self.value,
            ..self
        }
    }
}

/// A velocity in the unbounded representation: any finite real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnboundedVelocity(f64);

impl UnboundedVelocity {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(UnboundedVelocity(value))
        } else {
            Err(VelocityError::NonFinite {
                context: "unbounded velocity",
            })
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }
}

impl Neg for UnboundedVelocity {
    type Output = UnboundedVelocity;

    fn neg(self) -> Self::Output {
        UnboundedVelocity(-self.0)
    }
}

/// `(tanh w, 1 - tanh w)` for `w >= 0`, both with full relative precision.
#[inline]
fn tanh_and_complement(w: f64) -> (f64, f64) {
    let m = (-2.0 * w).exp_m1();
    let e = (-2.0 * w).exp();
    (-m / (2.0 + m), 2.0 * e / (1.0 + e))
}

/// `tanh w` alone, odd by construction.
#[inline]
pub(crate) fn stable_tanh(w: f64) -> f64 {
    let t = tanh_and_complement(w.abs()).0;
    if w.is_sign_negative() {
        -t
    } else {
        t
    }
}

/// `artanh r` for `0 <= r < 1`, given `complement = 1 - r`.
///
/// Below one half the logarithms are taken of `r` directly; above it the
/// complement is exact (or carried) and `ln(1 - r)` is taken from it.
#[inline]
pub(crate) fn artanh_with_complement(r: f64, complement: f64) -> f64 {
    if r <= 0.5 {
        0.5 * (r.ln_1p() - (-r).ln_1p())
    } else {
        0.5 * (r.ln_1p() - complement.ln())
    }
}

/// Bounded velocity `c tanh(w)` for a signed dimensionless `w`.
pub(crate) fn bounded_from_ratio(
    w: f64,
    c: LightSpeed,
    mode: SaturationMode,
) -> Result<BoundedVelocity> {
    if w.is_nan() {
        return Err(VelocityError::NonFinite {
            context: "bounded map argument",
        });
    }
    let (t, complement) = tanh_and_complement(w.abs());
    let cv = c.get();
    BoundedVelocity::from_magnitude(w.is_sign_negative(), cv * t, cv * complement, c, mode)
}

/// Unbounded image of a bounded velocity, `(c/2) ln((c+v)/(c-v))`.
pub fn to_unbounded(v: BoundedVelocity, c: LightSpeed) -> Result<UnboundedVelocity> {
    to_unbounded_with(v, c, SaturationMode::Clamp)
}

/// As [`to_unbounded`]; under [`SaturationMode::Error`] a clamped input is
/// treated as sitting on the light cone.
pub fn to_unbounded_with(
    v: BoundedVelocity,
    c: LightSpeed,
    mode: SaturationMode,
) -> Result<UnboundedVelocity> {
    let cv = c.get();
    let magnitude = v.value.abs();
    if (v.saturated && mode == SaturationMode::Error) || !(magnitude < cv && v.deficit > 0.0) {
        return Err(VelocityError::AtLightCone {
            value: v.value,
            c: cv,
        });
    }
    let rapidity = cv * artanh_with_complement(magnitude / cv, v.deficit / cv);
    UnboundedVelocity::new(if v.value.is_sign_negative() {
        -rapidity
    } else {
        rapidity
    })
}

/// Bounded image of an unbounded velocity, `c (e^{2a/c} - 1)/(e^{2a/c} + 1)`,
/// clamping at the light cone.
pub fn to_bounded(a: UnboundedVelocity, c: LightSpeed) -> Result<BoundedVelocity> {
    to_bounded_with(a, c, SaturationMode::Clamp)
}

pub fn to_bounded_with(
    a: UnboundedVelocity,
    c: LightSpeed,
    mode: SaturationMode,
) -> Result<BoundedVelocity> {
    bounded_from_ratio(a.value() / c.get(), c, mode)
}

/// `|to_unbounded(to_bounded(a)) - a|`.
pub fn round_trip_residual(a: UnboundedVelocity, c: LightSpeed) -> Result<f64> {
    round_trip_residual_with(a, c, SaturationMode::Clamp)
}

pub fn round_trip_residual_with(
    a: UnboundedVelocity,
    c: LightSpeed,
    mode: SaturationMode,
) -> Result<f64> {
    let back = to_unbounded_with(to_bounded_with(a, c, mode)?, c, mode)?;
    Ok((back.value() - a.value()).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_ulps_eq;

    const C: LightSpeed = LightSpeed::NATURAL;

    fn bv(v: f64) -> BoundedVelocity {
        BoundedVelocity::new(v, C).unwrap()
    }

    fn uv(a: f64) -> UnboundedVelocity {
        UnboundedVelocity::new(a).unwrap()
    }

    #[test]
    fn light_speed_rejects_non_positive() {
        assert!(LightSpeed::new(0.0).is_err());
        assert!(LightSpeed::new(-1.0).is_err());
        assert!(LightSpeed::new(f64::INFINITY).is_err());
        assert!(LightSpeed::new(f64::NAN).is_err());
        assert_eq!(LightSpeed::new(2.5).unwrap().get(), 2.5);
    }

    #[test]
    fn policy_validation() {
        assert!(NumericPolicy::new(0.0, 1e-15, SaturationMode::Clamp).is_err());
        assert!(NumericPolicy::new(1e-12, -1.0, SaturationMode::Clamp).is_err());
        let p = NumericPolicy::for_light_speed(LightSpeed::SI);
        assert_eq!(p.abs_tol, 1e-15 * SI_LIGHT_SPEED);
        assert_eq!(p.tolerance(0.0), p.abs_tol);
    }

    #[test]
    fn bounded_construction() {
        assert!(matches!(
            BoundedVelocity::new(1.0, C),
            Err(VelocityError::AtLightCone { .. })
        ));
        assert!(matches!(
            BoundedVelocity::new(-1.5, C),
            Err(VelocityError::AtLightCone { .. })
        ));
        assert!(matches!(
            BoundedVelocity::new(f64::NAN, C),
            Err(VelocityError::NonFinite { .. })
        ));
        let v = bv(0.75);
        assert_eq!(v.deficit(), 0.25);
        assert!(!v.is_saturated());
        assert!(UnboundedVelocity::new(f64::INFINITY).is_err());
    }

    #[test]
    fn to_unbounded_examples() {
        assert_eq!(to_unbounded(bv(0.0), C).unwrap().value(), 0.0);
        // 60-digit reference: 0.54930614433405484569762261846126...
        assert_ulps_eq!(
            to_unbounded(bv(0.5), C).unwrap().value(),
            0.5493061443340549,
            max_ulps = 1
        );
        let almost = 1.0f64.next_down();
        assert!(to_unbounded(bv(almost), C).unwrap().value() > 18.0);
    }

    #[test]
    fn to_unbounded_rejects_saturated_under_error_mode() {
        let clamped = to_bounded(uv(1e6), C).unwrap();
        assert!(clamped.is_saturated());
        assert!(matches!(
            to_unbounded_with(clamped, C, SaturationMode::Error),
            Err(VelocityError::AtLightCone { .. })
        ));
        // clamp mode stays total
        assert!(to_unbounded(clamped, C).unwrap().value().is_finite());
    }

    #[test]
    fn to_bounded_examples() {
        assert_eq!(to_bounded(uv(0.0), C).unwrap().value(), 0.0);
        assert_ulps_eq!(
            to_bounded(uv(0.5493061443340549), C).unwrap().value(),
            0.5,
            max_ulps = 1
        );
        let far = to_bounded(uv(1e6), C).unwrap();
        assert!(far.is_saturated());
        assert_eq!(far.value(), 1.0f64.next_down());
        assert!(far.value() < 1.0);
        let far_neg = to_bounded(uv(-1e6), C).unwrap();
        assert_eq!(far_neg.value(), -far.value());
    }

    #[test]
    fn saturation_error_mode() {
        assert!(matches!(
            to_bounded_with(uv(1e6), C, SaturationMode::Error),
            Err(VelocityError::Saturation { .. })
        ));
        assert!(matches!(
            round_trip_residual_with(uv(40.0), C, SaturationMode::Error),
            Err(VelocityError::Saturation { .. })
        ));
        assert!(to_bounded_with(uv(15.0), C, SaturationMode::Error).is_ok());
    }

    #[test]
    fn deficit_survives_value_saturation() {
        // 1 - tanh(25) = 3.8574996959278356e-22 is far below the spacing of
        // doubles at 1, yet the deficit keeps it.
        let v = to_bounded(uv(25.0), C).unwrap();
        assert!(v.is_saturated());
        assert!((v.deficit() - 3.8574996959278356e-22).abs() <= 1e-36);
        assert!(round_trip_residual(uv(25.0), C).unwrap() < 1e-13);
    }

    #[test]
    fn round_trip_examples() {
        assert_eq!(round_trip_residual(uv(0.0), C).unwrap(), 0.0);
        assert!(round_trip_residual(uv(0.7), C).unwrap() <= 1e-12 * 0.7);
        assert!(round_trip_residual(uv(15.0), C).unwrap() <= 1e-12 * 15.0);
    }

    #[test]
    fn light_speed_scaling() {
        let c = LightSpeed::SI;
        let v = to_bounded(uv(0.5 * SI_LIGHT_SPEED), c).unwrap();
        let unit = to_bounded(uv(0.5), C).unwrap();
        assert!((v.value() / SI_LIGHT_SPEED - unit.value()).abs() < 1e-15);
    }
}
