//! Seeded sampling of multivectors, field points, rotors, and analytic
//! test fields, shared by the check suites and the test targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Multivector;
use crate::bilinear::{FieldJet, FieldPoint, COMPONENT_COUNT};
use crate::rotor::{boost_rotor, rotation_plane, rotation_rotor, Rotor};

/// Reproducible RNG for a given seed; the same stream on every platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Multivector with coefficients uniform in [-1, 1).
pub fn multivector<R: Rng>(rng: &mut R) -> Multivector {
    Multivector::from_coeffs(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

/// Even multivector with coefficients uniform in [-1, 1).
pub fn even_multivector<R: Rng>(rng: &mut R) -> Multivector {
    multivector(rng).even_part()
}

/// Field point with components uniform in [-1, 1).
pub fn field_point<R: Rng>(rng: &mut R) -> FieldPoint {
    FieldPoint::from_components(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

/// Uniformly random unit 3-vector (rejection sampled).
pub fn unit_vector3<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.2 {
            return v.map(|x| x / norm);
        }
    }
}

/// A random proper Lorentz rotor: rotation about a random axis composed
/// with a boost along a random direction, rapidity in [-2, 2].
pub fn rotor<R: Rng>(rng: &mut R) -> Rotor {
    let half_angle = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let half_rapidity = rng.random_range(-1.0..1.0);
    let rotation = rotation_rotor(half_angle, &rotation_plane(unit_vector3(rng)))
        .expect("plane from a unit normal is unit spacelike");
    let boost = boost_rotor(half_rapidity, unit_vector3(rng))
        .expect("sampled direction is unit");
    rotation
        .compose(&boost)
        .expect("composition of exact rotors stays unit")
}

/// Degree-2 polynomial field over spacetime: exact values and exact jets.
#[derive(Debug, Clone)]
pub struct QuadraticField {
    constant: [f64; COMPONENT_COUNT],
    linear: [[f64; 4]; COMPONENT_COUNT],
    quadratic: [[[f64; 4]; 4]; COMPONENT_COUNT],
}

impl QuadraticField {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        QuadraticField {
            constant: std::array::from_fn(|_| rng.random_range(-1.0..1.0)),
            linear: std::array::from_fn(|_| {
                std::array::from_fn(|_| rng.random_range(-1.0..1.0))
            }),
            quadratic: std::array::from_fn(|_| {
                std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-0.5..0.5)))
            }),
        }
    }

    pub fn point(&self, x: [f64; 4]) -> FieldPoint {
        let mut comps = [0.0; COMPONENT_COUNT];
        for (c, slot) in comps.iter_mut().enumerate() {
            let mut v = self.constant[c];
            for mu in 0..4 {
                v += self.linear[c][mu] * x[mu];
                for nu in 0..4 {
                    v += self.quadratic[c][mu][nu] * x[mu] * x[nu];
                }
            }
            *slot = v;
        }
        FieldPoint::from_components(comps)
    }

    pub fn jet(&self, x: [f64; 4]) -> FieldJet {
        let mut d = [[0.0; COMPONENT_COUNT]; 4];
        for c in 0..COMPONENT_COUNT {
            for mu in 0..4 {
                let mut v = self.linear[c][mu];
                for nu in 0..4 {
                    v += (self.quadratic[c][mu][nu] + self.quadratic[c][nu][mu]) * x[nu];
                }
                d[mu][c] = v;
            }
        }
        FieldJet {
            point: self.point(x),
            d,
        }
    }
}

/// Superposition of plane-wave components with random wavevectors and
/// phases: exact jets with non-vanishing third derivatives, so it
/// exercises the O(h^2) finite-difference bound honestly.
#[derive(Debug, Clone)]
pub struct HarmonicField {
    amplitude: [f64; COMPONENT_COUNT],
    wavevector: [[f64; 4]; COMPONENT_COUNT],
    phase: [f64; COMPONENT_COUNT],
}

impl HarmonicField {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        HarmonicField {
            amplitude: std::array::from_fn(|_| rng.random_range(-1.0..1.0)),
            wavevector: std::array::from_fn(|_| {
                std::array::from_fn(|_| rng.random_range(-1.5..1.5))
            }),
            phase: std::array::from_fn(|_| rng.random_range(0.0..std::f64::consts::TAU)),
        }
    }

    pub fn point(&self, x: [f64; 4]) -> FieldPoint {
        let mut comps = [0.0; COMPONENT_COUNT];
        for (c, slot) in comps.iter_mut().enumerate() {
            *slot = self.amplitude[c] * (self.arg(c, x)).cos();
        }
        FieldPoint::from_components(comps)
    }

    pub fn jet(&self, x: [f64; 4]) -> FieldJet {
        let mut d = [[0.0; COMPONENT_COUNT]; 4];
        for c in 0..COMPONENT_COUNT {
            let s = (self.arg(c, x)).sin();
            for mu in 0..4 {
                d[mu][c] = -self.amplitude[c] * self.wavevector[c][mu] * s;
            }
        }
        FieldJet {
            point: self.point(x),
            d,
        }
    }

    fn arg(&self, c: usize, x: [f64; 4]) -> f64 {
        let mut arg = self.phase[c];
        for mu in 0..4 {
            arg += self.wavevector[c][mu] * x[mu];
        }
        arg
    }
}
