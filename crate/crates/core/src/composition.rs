//! Relative-velocity laws: plain subtraction in the unbounded representation,
//! Einstein's rule in the bounded one, and the identity linking them.

use crate::error::{Result, VelocityError};
use crate::velocity::{
    to_bounded, to_unbounded, BoundedVelocity, LightSpeed, SaturationMode, UnboundedVelocity,
};

/// Galilean relative velocity `a - b`.
pub fn galilean_relative(a: UnboundedVelocity, b: UnboundedVelocity) -> Result<UnboundedVelocity> {
    UnboundedVelocity::new(a.value() - b.value())
}

/// Einstein relative velocity `(u - v) / (1 - u v / c^2)`, clamping at the cone.
pub fn einstein_relative(
    u: BoundedVelocity,
    v: BoundedVelocity,
    c: LightSpeed,
) -> Result<BoundedVelocity> {
    einstein_relative_with(u, v, c, SaturationMode::Clamp)
}

/// Einstein relative velocity with an explicit saturation mode.
///
/// The numerator and denominator are evaluated as `(u - v)` and
/// `1 - (u*v)/c^2` unless both inputs sit in the same half of the interval
/// and at least `c/2` from the origin. There both expressions cancel, so they
/// are rebuilt from the deficits `du = c - |u|`, `dv = c - |v|`:
///
/// ```text
/// u - v         = ±(dv - du)
/// 1 - u v / c^2 = (du + dv)/c - du dv / c^2
/// ```
///
/// The result's own deficit is always taken from the closed forms
/// `du dv / (c D)` (opposite signs) or `d_near (1 + |v_far|/c) / D` (same sign,
/// `d_near` belonging to the input closer to the cone). Every expression is
/// symmetric in its operands, so swapping `u` and `v` negates the value bit
/// for bit.
pub fn einstein_relative_with(
    u: BoundedVelocity,
    v: BoundedVelocity,
    c: LightSpeed,
    mode: SaturationMode,
) -> Result<BoundedVelocity> {
    let cv = c.get();
    let (uv, vv) = (u.value(), v.value());
    let (du, dv) = (u.deficit(), v.deficit());
    let (mu, mv) = (uv.abs(), vv.abs());
    let same_sign = uv != 0.0 && vv != 0.0 && uv.is_sign_negative() == vv.is_sign_negative();
    let half = 0.5 * cv;

    let (num, den) = if same_sign && mu >= half && mv >= half {
        let num = if uv > 0.0 { dv - du } else { du - dv };
        (num, (du + dv) / cv - (du * dv) / (cv * cv))
    } else {
        (uv - vv, 1.0 - (uv * vv) / (cv * cv))
    };
    if !(den > 0.0) {
        return Err(VelocityError::DegenerateDenominator(den));
    }

    let deficit = if same_sign {
        let (near, far) = if du < dv {
            (du, mv)
        } else if dv < du {
            (dv, mu)
        } else {
            (du, mu.min(mv))
        };
        near * (1.0 + far / cv) / den
    } else {
        (du * dv) / (cv * den)
    };
    let value = num / den;
    BoundedVelocity::from_magnitude(value.is_sign_negative(), value.abs(), deficit, c, mode)
}

/// Forward composition `(u + v) / (1 + u v / c^2)`.
pub fn einstein_compose(
    u: BoundedVelocity,
    v: BoundedVelocity,
    c: LightSpeed,
) -> Result<BoundedVelocity> {
    einstein_compose_with(u, v, c, SaturationMode::Clamp)
}

pub fn einstein_compose_with(
    u: BoundedVelocity,
    v: BoundedVelocity,
    c: LightSpeed,
    mode: SaturationMode,
) -> Result<BoundedVelocity> {
    einstein_relative_with(u, -v, c, mode)
}

/// The two relative velocities of one pair and how far apart they land.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheckReport {
    pub d_galilean: UnboundedVelocity,
    pub d_einstein: BoundedVelocity,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares `a - b` with the unbounded image of
/// `einstein_relative(to_bounded(a), to_bounded(b))`.
///
/// Passes when the residual is at most `tol * max(c, |a - b|)`.
pub fn cross_representation_check(
    a: UnboundedVelocity,
    b: UnboundedVelocity,
    c: LightSpeed,
    tol: f64,
) -> Result<CrossCheckReport> {
    if !(tol > 0.0) {
        return Err(VelocityError::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let d_galilean = galilean_relative(a, b)?;
    let d_einstein = einstein_relative(to_bounded(a, c)?, to_bounded(b, c)?, c)?;
    let residual = (d_galilean.value() - to_unbounded(d_einstein, c)?.value()).abs();
    let tolerance = tol * c.get().max(d_galilean.value().abs());
    Ok(CrossCheckReport {
        d_galilean,
        d_einstein,
        residual,
        tolerance,
        pass: residual <= tolerance,
    })
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
    fn galilean_examples() {
        assert_eq!(galilean_relative(uv(0.7), uv(0.7)).unwrap().value(), 0.0);
        assert_eq!(galilean_relative(uv(1.5), uv(-2.5)).unwrap().value(), 4.0);
        assert_eq!(
            galilean_relative(uv(0.5493061443340549), uv(0.0))
                .unwrap()
                .value(),
            0.5493061443340549
        );
        assert!(matches!(
            galilean_relative(uv(f64::MAX), uv(-f64::MAX)),
            Err(VelocityError::NonFinite { .. })
        ));
    }

    #[test]
    fn einstein_relative_examples() {
        assert_eq!(einstein_relative(bv(0.3), bv(0.3), C).unwrap().value(), 0.0);
        // (0.5 + 0.5) / (1 + 0.25) = 4/5 exactly
        assert_ulps_eq!(
            einstein_relative(bv(0.5), bv(-0.5), C).unwrap().value(),
            0.8,
            max_ulps = 1
        );
        assert_eq!(einstein_relative(bv(0.9), bv(0.0), C).unwrap().value(), 0.9);
    }

    #[test]
    fn einstein_compose_examples() {
        assert_eq!(einstein_compose(bv(0.8), bv(-0.8), C).unwrap().value(), 0.0);
        assert_ulps_eq!(
            einstein_compose(bv(0.5), bv(0.5), C).unwrap().value(),
            0.8,
            max_ulps = 1
        );
        assert_eq!(einstein_compose(bv(0.0), bv(0.3), C).unwrap().value(), 0.3);
    }

    #[test]
    fn result_deficit_matches_exact_rationals() {
        // c - 0.8 = 0.2; the deficit path is independent of the value path
        let d = einstein_relative(bv(0.5), bv(-0.5), C).unwrap();
        assert_ulps_eq!(d.deficit(), 0.2, max_ulps = 2);
        // 0.75 and 0.5: (0.25)/(1 - 0.375) = 0.4, deficit 0.6
        let d = einstein_relative(bv(0.75), bv(0.5), C).unwrap();
        assert_ulps_eq!(d.value(), 0.4, max_ulps = 1);
        assert_ulps_eq!(d.deficit(), 0.6, max_ulps = 2);
    }

    #[test]
    fn near_cone_same_sign_pair_keeps_precision() {
        // to_bounded(7) and to_bounded(6.9): the relative velocity is
        // tanh(0.1) = 0.099667994624955817... although the inputs differ only
        // in their seventh significant digit.
        let u = to_bounded(uv(7.0), C).unwrap();
        let v = to_bounded(uv(6.9), C).unwrap();
        let d = einstein_relative(u, v, C).unwrap();
        assert!((d.value() - 0.099_667_994_624_955_82).abs() < 1e-15);
    }

    #[test]
    fn antisymmetry_is_bitwise() {
        for &(a, b) in &[
            (0.3, 0.7),
            (0.9, 0.95),
            (-0.99, 0.2),
            (-0.6, -0.8),
            (0.1, 0.0),
        ] {
            let x = einstein_relative(bv(a), bv(b), C).unwrap().value();
            let y = einstein_relative(bv(b), bv(a), C).unwrap().value();
            assert_eq!(x.to_bits(), (-y).to_bits(), "({a}, {b})");
        }
    }

    #[test]
    fn clamps_when_result_rounds_onto_cone() {
        let u = to_bounded(uv(10.0), C).unwrap();
        assert!(!u.is_saturated());
        let d = einstein_relative(u, -u, C).unwrap();
        assert!(d.is_saturated());
        assert!(d.value() < 1.0);
        // 1 - tanh(20) = 8.496708510583178e-18
        assert!((d.deficit() - 8.496708510583178e-18).abs() < 1e-30);
        assert!(matches!(
            einstein_relative_with(u, -u, C, SaturationMode::Error),
            Err(VelocityError::Saturation { .. })
        ));
    }

    #[test]
    fn cross_check_examples() {
        let r = cross_representation_check(uv(0.0), uv(0.0), C, 1e-12).unwrap();
        assert_eq!(r.residual, 0.0);
        assert!(r.pass);

        let r = cross_representation_check(uv(0.2), uv(-0.3), C, 1e-12).unwrap();
        assert!(r.pass, "{r:?}");
        // 60-digit reference: tanh(0.5) = 0.46211715726000975850...
        assert_ulps_eq!(r.d_einstein.value(), 0.46211715726000976, max_ulps = 2);

        // a - b = 20 saturates the bounded value, but the carried deficit
        // still maps back to 20.
        let r = cross_representation_check(uv(10.0), uv(-10.0), C, 1e-12).unwrap();
        assert!(r.d_einstein.is_saturated());
        assert!(r.pass, "{r:?}");

        assert!(cross_representation_check(uv(0.0), uv(0.0), C, 0.0).is_err());
    }
}
