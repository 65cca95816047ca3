//! Rotors: even unit multivectors implementing Lorentz rotations and boosts
//! through the two-sided sandwich R M ~R, plus the one-sided left action
//! used for projection columns.

use std::fmt;

use thiserror::Error;

use crate::algebra::Multivector;

/// Unit-normalization tolerance applied when a rotor is used or composed.
pub const ROTOR_UNIT_TOL: f64 = 1e-9;

/// Construction-side tolerance for unit planes and directions.
const CONSTRUCT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RotorError {
    #[error("rotation plane is not a unit spacelike bivector (deviation {0:.3e})")]
    InvalidPlane(f64),
    #[error("boost direction is not a unit spatial vector (|n| - 1 = {0:.3e})")]
    InvalidDirection(f64),
    #[error("rotor has odd-grade terms")]
    NotEven,
    #[error("rotor normalization deviates from 1 by {0:.3e}")]
    NotUnit(f64),
}

/// How a rotor was built; carried for diagnostics only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotorKind {
    Identity,
    Rotation { half_angle: f64 },
    Boost { half_rapidity: f64 },
    Composite,
}

impl fmt::Display for RotorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotorKind::Identity => write!(f, "identity"),
            RotorKind::Rotation { half_angle } => write!(f, "rotation(half_angle={half_angle})"),
            RotorKind::Boost { half_rapidity } => {
                write!(f, "boost(half_rapidity={half_rapidity})")
            }
            RotorKind::Composite => write!(f, "composite"),
        }
    }
}

/// An even, unit-normalized multivector. Normalization is validated, never
/// silently repaired.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotor {
    value: Multivector,
    kind: RotorKind,
}

impl Rotor {
    /// The identity rotor.
    pub fn identity() -> Rotor {
        Rotor {
            value: Multivector::scalar(1.0),
            kind: RotorKind::Identity,
        }
    }

    /// Wrap an even multivector after checking ~R R = 1.
    pub fn try_new(value: Multivector) -> Result<Rotor, RotorError> {
        if !value.is_even() {
            return Err(RotorError::NotEven);
        }
        let dev = unit_deviation(&value);
        if dev > ROTOR_UNIT_TOL {
            return Err(RotorError::NotUnit(dev));
        }
        Ok(Rotor {
            value,
            kind: RotorKind::Composite,
        })
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn kind(&self) -> RotorKind {
        self.kind
    }

    /// The reversed rotor ~R, which undoes this one.
    pub fn reverse(&self) -> Rotor {
        let kind = match self.kind {
            RotorKind::Identity => RotorKind::Identity,
            RotorKind::Rotation { half_angle } => RotorKind::Rotation {
                half_angle: -half_angle,
            },
            RotorKind::Boost { half_rapidity } => RotorKind::Boost {
                half_rapidity: -half_rapidity,
            },
            RotorKind::Composite => RotorKind::Composite,
        };
        Rotor {
            value: self.value.reverse(),
            kind,
        }
    }

    /// Max-abs deviation of ~R R from the unit scalar.
    pub fn unit_deviation(&self) -> f64 {
        unit_deviation(&self.value)
    }

    /// Two-sided transformation R M ~R. Grade-preserving and distributive
    /// over geometric products.
    pub fn sandwich(&self, m: &Multivector) -> Result<Multivector, RotorError> {
        let dev = self.unit_deviation();
        if dev > ROTOR_UNIT_TOL {
            return Err(RotorError::NotUnit(dev));
        }
        Ok(self.value * *m * self.value.reverse())
    }

    /// One-sided left action R M.
    pub fn one_sided(&self, m: &Multivector) -> Multivector {
        self.value * *m
    }

    /// Geometric product of two rotors; the result is checked against the
    /// unit tolerance and reported if it drifted.
    pub fn compose(&self, other: &Rotor) -> Result<Rotor, RotorError> {
        let value = self.value * other.value;
        let dev = unit_deviation(&value);
        if dev > ROTOR_UNIT_TOL {
            return Err(RotorError::NotUnit(dev));
        }
        let kind = match (self.kind, other.kind) {
            (RotorKind::Identity, k) | (k, RotorKind::Identity) => k,
            _ => RotorKind::Composite,
        };
        Ok(Rotor { value, kind })
    }
}

fn unit_deviation(value: &Multivector) -> f64 {
    (value.reverse() * *value).max_abs_diff(&Multivector::scalar(1.0))
}

/// Rotation rotor cos(half_angle) + sin(half_angle) * plane for a unit
/// spacelike bivector plane (square -1).
pub fn rotation_rotor(half_angle: f64, plane: &Multivector) -> Result<Rotor, RotorError> {
    let square = *plane * *plane;
    let dev = square.max_abs_diff(&Multivector::scalar(-1.0));
    if plane.grade_part(2).ok().as_ref() != Some(plane) || dev > CONSTRUCT_TOL {
        return Err(RotorError::InvalidPlane(dev));
    }
    Ok(Rotor {
        value: Multivector::scalar(half_angle.cos()) + *plane * half_angle.sin(),
        kind: RotorKind::Rotation { half_angle },
    })
}

/// The unit spacelike bivector dual to a unit spatial normal:
/// -n_i (I e_i e0), which for n = z-hat is e1^e2.
pub fn rotation_plane(normal: [f64; 3]) -> Multivector {
    let i = Multivector::pseudoscalar();
    let e0 = Multivector::basis_vector(0);
    let mut plane = Multivector::zero();
    for (k, nk) in normal.iter().enumerate() {
        plane = plane - i * Multivector::basis_vector(k + 1) * e0 * *nk;
    }
    plane
}

/// Boost rotor cosh(half_rapidity) + sinh(half_rapidity) * n'_k (e_k e0)
/// along a unit spatial direction.
pub fn boost_rotor(half_rapidity: f64, direction: [f64; 3]) -> Result<Rotor, RotorError> {
    let norm = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > CONSTRUCT_TOL {
        return Err(RotorError::InvalidDirection(norm - 1.0));
    }
    let e0 = Multivector::basis_vector(0);
    let mut generator = Multivector::zero();
    for (k, nk) in direction.iter().enumerate() {
        generator = generator + Multivector::basis_vector(k + 1) * e0 * *nk;
    }
    Ok(Rotor {
        value: Multivector::scalar(half_rapidity.cosh()) + generator * half_rapidity.sinh(),
        kind: RotorKind::Boost { half_rapidity },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BladeIndex;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    fn e(mu: usize) -> Multivector {
        Multivector::basis_vector(mu)
    }

    #[test]
    fn rotation_moves_e1_toward_e2() {
        for phi in [0.3, 1.0, 2.5, -0.7] {
            let plane = e(1) * e(2);
            let r = rotation_rotor(phi / 2.0, &plane).unwrap();
            let rotated = r.sandwich(&e(1)).unwrap();
            let expected = e(1) * phi.cos() + e(2) * phi.sin();
            assert!(rotated.max_abs_diff(&expected) < TOL, "phi = {phi}");
        }
    }

    #[test]
    fn zero_angle_gives_identity() {
        let r = rotation_rotor(0.0, &(e(1) * e(2))).unwrap();
        assert_eq!(*r.value(), Multivector::scalar(1.0));
        let b = boost_rotor(0.0, [0.0, 0.0, 1.0]).unwrap();
        assert_eq!(*b.value(), Multivector::scalar(1.0));
    }

    #[test]
    fn full_turn_rotor_is_minus_one() {
        let r = rotation_rotor(PI, &(e(1) * e(2))).unwrap();
        assert!(r.value().max_abs_diff(&Multivector::scalar(-1.0)) < TOL);
        let m = Multivector::from_coeffs(std::array::from_fn(|i| 0.1 * i as f64));
        assert!(r.sandwich(&m).unwrap().max_abs_diff(&m) < TOL);
    }

    #[test]
    fn boost_of_e0_gives_cosh_sinh() {
        for alpha in [0.5, 1.3, -0.8] {
            let b = boost_rotor(alpha / 2.0, [0.0, 0.0, 1.0]).unwrap();
            let boosted = b.sandwich(&e(0)).unwrap();
            let expected = e(0) * alpha.cosh() + e(3) * alpha.sinh();
            assert!(boosted.max_abs_diff(&expected) < TOL, "alpha = {alpha}");
            // cosh^2 - sinh^2 = 1 keeps the rotor unit.
            assert!(b.unit_deviation() < TOL);
            // Minkowski norm of the boosted vector stays +1.
            let norm = (boosted * boosted).scalar_part();
            assert!((norm - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn rotation_plane_duality() {
        // n = z-hat duals to e1^e2.
        let plane = rotation_plane([0.0, 0.0, 1.0]);
        assert!(plane.max_abs_diff(&(e(1) * e(2))) < TOL);
    }

    #[test]
    fn invalid_planes_and_directions_are_rejected() {
        // Timelike bivector squares to +1.
        assert!(matches!(
            rotation_rotor(0.5, &(e(1) * e(0))),
            Err(RotorError::InvalidPlane(_))
        ));
        // Non-unit plane.
        assert!(matches!(
            rotation_rotor(0.5, &(e(1) * e(2) * 2.0)),
            Err(RotorError::InvalidPlane(_))
        ));
        // Mixed-grade "plane".
        assert!(matches!(
            rotation_rotor(0.5, &(e(1) * e(2) + Multivector::scalar(1.0))),
            Err(RotorError::InvalidPlane(_))
        ));
        assert!(matches!(
            boost_rotor(0.5, [0.0, 0.0, 2.0]),
            Err(RotorError::InvalidDirection(_))
        ));
    }

    #[test]
    fn try_new_validates_parity_and_norm() {
        assert_eq!(
            Rotor::try_new(Multivector::basis_vector(1)),
            Err(RotorError::NotEven)
        );
        assert!(matches!(
            Rotor::try_new(Multivector::scalar(2.0)),
            Err(RotorError::NotUnit(_))
        ));
        assert!(Rotor::try_new(Multivector::scalar(-1.0)).is_ok());
    }

    #[test]
    fn sandwich_rejects_non_unit_rotor() {
        let bad = Rotor {
            value: Multivector::scalar(2.0),
            kind: RotorKind::Composite,
        };
        assert!(matches!(
            bad.sandwich(&Multivector::scalar(1.0)),
            Err(RotorError::NotUnit(_))
        ));
    }

    #[test]
    fn one_sided_actions() {
        let m = Multivector::from_coeffs(std::array::from_fn(|i| (i % 5) as f64 - 2.0));
        assert_eq!(Rotor::identity().one_sided(&m), m);

        // A full-turn rotor negates one-sided but fixes two-sided, exactly
        // for the exact scalar -1 rotor.
        let full_turn = Rotor::try_new(Multivector::scalar(-1.0)).unwrap();
        assert_eq!(full_turn.one_sided(&m), -m);
        assert_eq!(full_turn.sandwich(&m).unwrap(), m);

        // Composition associates with the one-sided action.
        let r1 = rotation_rotor(0.4, &(e(1) * e(2))).unwrap();
        let r2 = boost_rotor(0.3, [1.0, 0.0, 0.0]).unwrap();
        let composed = r1.compose(&r2).unwrap();
        let lhs = r1.one_sided(&r2.one_sided(&m));
        assert!(lhs.max_abs_diff(&composed.one_sided(&m)) < TOL);
    }

    #[test]
    fn compose_cases() {
        let r = rotation_rotor(0.7, &(e(2) * e(3))).unwrap();
        let id = Rotor::identity();
        assert_eq!(*r.compose(&id).unwrap().value(), *r.value());
        let round_trip = r.compose(&r.reverse()).unwrap();
        assert!(round_trip.value().max_abs_diff(&Multivector::scalar(1.0)) < TOL);

        // General form: rotation about n times boost along n'.
        let phi = 1.1;
        let alpha = 0.6;
        let n = [0.0, 0.0, 1.0];
        let rot = rotation_rotor(phi / 2.0, &rotation_plane(n)).unwrap();
        let boost = boost_rotor(alpha / 2.0, [1.0, 0.0, 0.0]).unwrap();
        let general = rot.compose(&boost).unwrap();
        let expected = (Multivector::scalar((phi / 2.0).cos())
            + (e(1) * e(2)) * (phi / 2.0).sin())
            * (Multivector::scalar((alpha / 2.0).cosh())
                + (e(1) * e(0)) * (alpha / 2.0).sinh());
        assert!(general.value().max_abs_diff(&expected) < TOL);
        assert!(general.unit_deviation() < TOL);
    }

    fn arb_rotor() -> impl Strategy<Value = Rotor> {
        (
            -3.0f64..3.0,
            -1.0f64..1.0,
            prop::array::uniform3(-1.0f64..1.0),
            prop::array::uniform3(-1.0f64..1.0),
        )
            .prop_filter_map("degenerate axis", |(half_angle, half_rapidity, n, np)| {
                let norm = |v: [f64; 3]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
                let (na, nb) = (norm(n), norm(np));
                if na < 0.1 || nb < 0.1 {
                    return None;
                }
                let unit = |v: [f64; 3], l: f64| [v[0] / l, v[1] / l, v[2] / l];
                let rot = rotation_rotor(half_angle, &rotation_plane(unit(n, na))).ok()?;
                let boost = boost_rotor(half_rapidity, unit(np, nb)).ok()?;
                rot.compose(&boost).ok()
            })
    }

    fn random_multivector() -> impl Strategy<Value = Multivector> {
        prop::array::uniform16(-1.0f64..1.0).prop_map(Multivector::from_coeffs)
    }

    proptest! {
        #[test]
        fn sandwich_preserves_scalar_part(r in arb_rotor(), m in random_multivector()) {
            let out = r.sandwich(&m).unwrap();
            prop_assert!((out.scalar_part() - m.scalar_part()).abs() < 1e-9);
        }

        #[test]
        fn sandwich_distributes_over_products(r in arb_rotor(), a in random_multivector(), b in random_multivector()) {
            let lhs = r.sandwich(&(a * b)).unwrap();
            let rhs = r.sandwich(&a).unwrap() * r.sandwich(&b).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9);
        }

        #[test]
        fn sandwich_preserves_reversal_norm(r in arb_rotor(), m in random_multivector()) {
            let out = r.sandwich(&m).unwrap();
            let before = (m * m.reverse()).scalar_part();
            let after = (out * out.reverse()).scalar_part();
            prop_assert!((before - after).abs() < 1e-8);
        }

        #[test]
        fn sandwich_maps_even_to_even(r in arb_rotor(), m in random_multivector()) {
            let out = r.sandwich(&m.even_part()).unwrap();
            prop_assert!(out.is_even());
        }

        #[test]
        fn sandwich_preserves_grade_of_blades(r in arb_rotor(), mask in 0u8..16) {
            let blade = Multivector::basis(BladeIndex::from_mask(mask));
            let out = r.sandwich(&blade).unwrap();
            for grade in 0..=4 {
                if grade != BladeIndex::from_mask(mask).grade() {
                    prop_assert!(out.grade_part(grade).unwrap().max_abs() < 1e-9);
                }
            }
        }

        #[test]
        fn two_pi_two_sided_is_identity_one_sided_negates(m in random_multivector(), axis in prop::array::uniform3(-1.0f64..1.0)) {
            let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assume!(norm > 0.1);
            let n = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
            let full = rotation_rotor(PI, &rotation_plane(n)).unwrap();
            prop_assert!(full.sandwich(&m).unwrap().max_abs_diff(&m) < 1e-12);
            prop_assert!(full.one_sided(&m).max_abs_diff(&-m) < 1e-12);
            // Two full turns restore the one-sided action.
            let double = full.compose(&full).unwrap();
            prop_assert!(double.one_sided(&m).max_abs_diff(&m) < 1e-12);
        }
    }
}
