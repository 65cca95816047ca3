//! Closed-form field-component formulas for the bilinears.
//!
//! Every formula here is an independent code path from the matrix oracle in
//! [`crate::oracle`]; the two are cross-checked against each other but never
//! call into each other.

use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::{AlgebraError, Multivector};

/// Number of dynamical field components (f, E, B, g).
pub const COMPONENT_COUNT: usize = 8;

/// Component names in storage order.
pub const COMPONENT_NAMES: [&str; COMPONENT_COUNT] =
    ["f", "E1", "E2", "E3", "B1", "B2", "B3", "g"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BilinearError {
    #[error("plane indices must be distinct and in 1..=3 (got {i}, {j})")]
    InvalidPlane { i: usize, j: usize },
    #[error("multivector has odd-grade terms; not an even field multivector")]
    NotEven,
}

/// The eight dynamical components of the even field multivector at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldPoint {
    pub f: f64,
    pub e: [f64; 3],
    pub b: [f64; 3],
    pub g: f64,
}

/// (blade mask, sign) of each component's basis multivector, in storage
/// order f, E1..E3, B1..B3, g. E_i sits on e_i e0 and B_i on I e_i e0.
fn component_blades() -> &'static [(usize, f64); COMPONENT_COUNT] {
    static TABLE: OnceLock<[(usize, f64); COMPONENT_COUNT]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let single_blade = |m: &Multivector| {
            let mut found = None;
            for (mask, &c) in m.coeffs().iter().enumerate() {
                if c != 0.0 {
                    assert!(found.is_none(), "expected a single blade");
                    found = Some((mask, c));
                }
            }
            found.expect("expected a nonzero blade")
        };
        let e0 = Multivector::basis_vector(0);
        let i = Multivector::pseudoscalar();
        let mut table = [(0usize, 1.0f64); COMPONENT_COUNT];
        table[0] = (0, 1.0);
        table[7] = (0b1111, 1.0);
        for k in 0..3 {
            table[1 + k] = single_blade(&(Multivector::basis_vector(k + 1) * e0));
            table[4 + k] = single_blade(&(i * Multivector::basis_vector(k + 1) * e0));
        }
        table
    })
}

impl FieldPoint {
    pub fn new(f: f64, e: [f64; 3], b: [f64; 3], g: f64) -> Self {
        FieldPoint { f, e, b, g }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Components in storage order.
    pub fn components(&self) -> [f64; COMPONENT_COUNT] {
        [
            self.f, self.e[0], self.e[1], self.e[2], self.b[0], self.b[1], self.b[2], self.g,
        ]
    }

    pub fn from_components(c: [f64; COMPONENT_COUNT]) -> Self {
        FieldPoint {
            f: c[0],
            e: [c[1], c[2], c[3]],
            b: [c[4], c[5], c[6]],
            g: c[7],
        }
    }

    /// The induced even multivector f 1 + E_i e_i e0 + B_i I e_i e0 + g I.
    pub fn to_multivector(&self) -> Multivector {
        let mut m = Multivector::zero();
        let comps = self.components();
        for (value, (mask, sign)) in comps.iter().zip(component_blades().iter()) {
            *m.coeff_mut(crate::algebra::BladeIndex::from_mask(*mask as u8)) = value * sign;
        }
        m
    }

    /// Inverse of `to_multivector`. Rejects multivectors with any odd-grade
    /// coefficient (products of even inputs never produce them).
    pub fn from_multivector(m: &Multivector) -> Result<Self, BilinearError> {
        if !m.is_even() {
            return Err(BilinearError::NotEven);
        }
        let mut comps = [0.0; COMPONENT_COUNT];
        for (value, (mask, sign)) in comps.iter_mut().zip(component_blades().iter()) {
            *value = m.coeffs()[*mask] / sign;
        }
        Ok(Self::from_components(comps))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_components(self.components().map(|c| c * factor))
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().fold(0.0, |acc, c| acc.max(c.abs()))
    }
}

/// A field point together with all first partial derivatives:
/// `d[mu][c]` holds the coordinate derivative of component `c` along x^mu.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldJet {
    pub point: FieldPoint,
    pub d: [[f64; COMPONENT_COUNT]; 4],
}

impl FieldJet {
    /// All components differentiated along coordinate mu (the lowered
    /// derivative, plain d/dx^mu).
    pub fn derivative_point(&self, mu: usize) -> FieldPoint {
        FieldPoint::from_components(self.d[mu])
    }

    /// The raised spatial derivative: each component under -d/dx^i.
    pub fn raised_derivative_point(&self, i: usize) -> FieldPoint {
        assert!((1..=3).contains(&i), "spatial index {i} out of range");
        FieldPoint::from_components(self.d[i].map(|v| -v))
    }

    /// Components under l^{ij} = x^i d^j - x^j d^i at spatial position x.
    pub fn orbital_derivative_point(&self, x: [f64; 3], i: usize, j: usize) -> FieldPoint {
        let di = self.raised_derivative_point(i).components();
        let dj = self.raised_derivative_point(j).components();
        let mut out = [0.0; COMPONENT_COUNT];
        for c in 0..COMPONENT_COUNT {
            out[c] = x[i - 1] * dj[c] - x[j - 1] * di[c];
        }
        FieldPoint::from_components(out)
    }

    fn grad(&self, comp: usize) -> [f64; 3] {
        [self.d[1][comp], self.d[2][comp], self.d[3][comp]]
    }

    fn div_e(&self) -> f64 {
        self.d[1][1] + self.d[2][2] + self.d[3][3]
    }

    fn div_b(&self) -> f64 {
        self.d[1][4] + self.d[2][5] + self.d[3][6]
    }

    fn curl_e(&self) -> [f64; 3] {
        [
            self.d[2][3] - self.d[3][2],
            self.d[3][1] - self.d[1][3],
            self.d[1][2] - self.d[2][1],
        ]
    }

    fn curl_b(&self) -> [f64; 3] {
        [
            self.d[2][6] - self.d[3][5],
            self.d[3][4] - self.d[1][6],
            self.d[1][5] - self.d[2][4],
        ]
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// All point bilinears evaluated together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearSet {
    pub scalar: f64,
    pub pseudoscalar: f64,
    pub j: [f64; 4],
    pub j5: [f64; 4],
}

/// Lorentz scalar: f^2 - g^2 + B^2 - E^2.
pub fn scalar_bilinear(p: &FieldPoint) -> f64 {
    p.f * p.f - p.g * p.g + dot(p.b, p.b) - dot(p.e, p.e)
}

/// Pseudoscalar: 2 (f g - E . B).
pub fn pseudoscalar_bilinear(p: &FieldPoint) -> f64 {
    2.0 * (p.f * p.g - dot(p.e, p.b))
}

/// Vector current: j^0 = f^2 + g^2 + E^2 + B^2 and
/// j^i = 2 (f E + g B + E x B)_i.
pub fn vector_current(p: &FieldPoint) -> [f64; 4] {
    let exb = cross(p.e, p.b);
    let j0 = p.f * p.f + p.g * p.g + dot(p.e, p.e) + dot(p.b, p.b);
    [
        j0,
        2.0 * (p.f * p.e[0] + p.g * p.b[0] + exb[0]),
        2.0 * (p.f * p.e[1] + p.g * p.b[1] + exb[1]),
        2.0 * (p.f * p.e[2] + p.g * p.b[2] + exb[2]),
    ]
}

/// Pseudovector current, component by component.
pub fn pseudovector_current(p: &FieldPoint) -> [f64; 4] {
    let (e1, e2, e3) = (p.e[0], p.e[1], p.e[2]);
    let (b1, b2, b3) = (p.b[0], p.b[1], p.b[2]);
    let (f, g) = (p.f, p.g);
    [
        2.0 * (-f * e3 - g * b3 + e1 * b2 - e2 * b1),
        -2.0 * (g * e2 - f * b2 + b3 * b1 + e3 * e1),
        -2.0 * (-g * e1 + f * b1 + b3 * b2 + e3 * e2),
        -(f * f + g * g + b3 * b3 - b1 * b1 - b2 * b2 + e3 * e3 - e1 * e1 - e2 * e2),
    ]
}

/// Evaluate the full point-bilinear set.
pub fn bilinear_set(p: &FieldPoint) -> BilinearSet {
    BilinearSet {
        scalar: scalar_bilinear(p),
        pseudoscalar: pseudoscalar_bilinear(p),
        j: vector_current(p),
        j5: pseudovector_current(p),
    }
}

/// Lagrangian density of the massless free field, term by term.
pub fn lagrangian_density(jet: &FieldJet) -> f64 {
    let p = &jet.point;
    let e = p.e;
    let b = p.b;
    let dt = jet.d[0];
    let dt_e = [dt[1], dt[2], dt[3]];
    let dt_b = [dt[4], dt[5], dt[6]];
    let grad_f = jet.grad(0);
    let grad_g = jet.grad(7);
    let curl_e = jet.curl_e();
    let curl_b = jet.curl_b();

    b[2] * dt[0] - p.f * dt_b[2] - cross(b, dt_b)[2]
        - e[2] * dt[7] + p.g * dt_e[2] - cross(e, dt_e)[2]
        - p.f * grad_g[2] + p.g * grad_f[2] + b[2] * jet.div_e() - e[2] * jet.div_b()
        - cross(b, grad_g)[2] - p.f * curl_e[2]
        - cross(b, curl_e)[2] + cross(e, curl_b)[2]
        - cross(e, grad_f)[2] - p.g * curl_b[2]
}

/// Shared eight-term pattern behind the momentum and orbital angular
/// momentum densities: the derivative operator D applied through `d`.
fn derivative_bilinear(p: &FieldPoint, d: &FieldPoint) -> f64 {
    d.b[2] * p.f - d.f * p.b[2] - d.b[0] * p.b[1] + d.b[1] * p.b[0] - d.e[2] * p.g
        + d.g * p.e[2]
        - d.e[0] * p.e[1]
        + d.e[1] * p.e[0]
}

/// Momentum density P^i = T^{0i} for i in 1..=3.
pub fn momentum_density(jet: &FieldJet, i: usize) -> f64 {
    let d = jet.raised_derivative_point(i);
    derivative_bilinear(&jet.point, &d)
}

/// Angular momentum density M^{0ij} in the e_i - e_j plane about the
/// caller-supplied origin: orbital terms through l^{ij} plus the spin term
/// -1/2 eps^{ijk} j5^k.
pub fn angular_momentum_density(
    jet: &FieldJet,
    x: [f64; 3],
    i: usize,
    j: usize,
) -> Result<f64, BilinearError> {
    if i == j || !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(BilinearError::InvalidPlane { i, j });
    }
    let orbital = derivative_bilinear(&jet.point, &jet.orbital_derivative_point(x, i, j));
    Ok(orbital + spin_term(&jet.point, i, j))
}

/// The spin contribution to M^{0ij}: -1/2 eps^{ijk} j5^k.
pub fn spin_term(p: &FieldPoint, i: usize, j: usize) -> f64 {
    let (k, eps) = match (i, j) {
        (1, 2) => (3, 1.0),
        (2, 1) => (3, -1.0),
        (2, 3) => (1, 1.0),
        (3, 2) => (1, -1.0),
        (3, 1) => (2, 1.0),
        (1, 3) => (2, -1.0),
        _ => panic!("invalid plane indices ({i}, {j})"),
    };
    -0.5 * eps * pseudovector_current(p)[k]
}

/// Closed-form projection column of the even field multivector:
/// (f + i B3, i B1 - B2, i g + E3, E1 + i E2).
pub fn projection_column(p: &FieldPoint) -> [num_complex::Complex64; 4] {
    use num_complex::Complex64;
    [
        Complex64::new(p.f, p.b[2]),
        Complex64::new(-p.b[1], p.b[0]),
        Complex64::new(p.e[2], p.g),
        Complex64::new(p.e[0], p.e[1]),
    ]
}

/// Grade-projection route to the matrix (1,1) entry: <M> for even M,
/// <M e0> for odd M. Mixed-parity input is rejected.
pub fn bilinear_via_grade_projection(m: &Multivector) -> Result<f64, AlgebraError> {
    if m.is_even() {
        Ok(m.scalar_part())
    } else if m.is_odd() {
        Ok((*m * Multivector::basis_vector(0)).scalar_part())
    } else {
        Err(AlgebraError::MixedParity)
    }
}
