//! Matrix-route evaluation of every bilinear, used to cross-check the
//! component formulas in [`crate::bilinear`]. This path goes through
//! `project` and explicit gamma-matrix products only; it never calls the
//! component formulas.

use num_complex::Complex64;

use crate::bilinear::{FieldJet, FieldPoint};
use crate::dirac::{gamma, gamma5, matrix_bilinear, project, Bispinor, ComplexMat4};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn psi(p: &FieldPoint) -> Bispinor {
    project(&p.to_multivector())
}

/// psi-bar psi.
pub fn scalar(p: &FieldPoint) -> Complex64 {
    matrix_bilinear(&psi(p), &ComplexMat4::identity())
}

/// -i psi-bar gamma^5 psi.
pub fn pseudoscalar(p: &FieldPoint) -> Complex64 {
    matrix_bilinear(&psi(p), &gamma5()) * c(0.0, -1.0)
}

/// psi-bar gamma^mu psi for mu = 0..3.
pub fn vector_current(p: &FieldPoint) -> [Complex64; 4] {
    let psi = psi(p);
    std::array::from_fn(|mu| matrix_bilinear(&psi, &gamma(mu)))
}

/// psi-bar gamma^5 gamma^mu psi for mu = 0..3.
pub fn pseudovector_current(p: &FieldPoint) -> [Complex64; 4] {
    let psi = psi(p);
    let g5 = gamma5();
    std::array::from_fn(|mu| matrix_bilinear(&psi, &g5.matmul(&gamma(mu))))
}

/// General bilinear with a derivative bispinor in the ket slot:
/// adjoint(psi) * Gamma * chi.
fn bilinear_with_ket(bra: &FieldPoint, gamma_op: &ComplexMat4, ket: &Bispinor) -> Complex64 {
    let row = crate::dirac::dirac_adjoint(&psi(bra));
    let col = gamma_op.mul_bispinor(ket);
    row.iter().zip(col.0.iter()).map(|(a, b)| a * b).sum()
}

/// Re(i psi-bar gamma^mu d_mu psi) with the derivative bispinors taken
/// from an exact jet.
pub fn lagrangian(jet: &FieldJet) -> f64 {
    let mut total = c(0.0, 0.0);
    for mu in 0..4 {
        let dpsi = psi(&jet.derivative_point(mu));
        total += bilinear_with_ket(&jet.point, &gamma(mu), &dpsi);
    }
    (total * c(0.0, 1.0)).re
}

/// Re(-i psi-bar gamma^0 d^i psi) from an exact jet.
pub fn momentum(jet: &FieldJet, i: usize) -> f64 {
    let dpsi = psi(&jet.raised_derivative_point(i));
    (bilinear_with_ket(&jet.point, &gamma(0), &dpsi) * c(0.0, -1.0)).re
}

/// Re(-i psi-bar gamma^0 l^{ij} psi + i/4 psi-bar gamma^0 [gamma^i, gamma^j] psi).
pub fn angular_momentum(jet: &FieldJet, x: [f64; 3], i: usize, j: usize) -> f64 {
    let lpsi = psi(&jet.orbital_derivative_point(x, i, j));
    let orbital = bilinear_with_ket(&jet.point, &gamma(0), &lpsi) * c(0.0, -1.0);
    let commutator = gamma(i).matmul(&gamma(j)).sub(&gamma(j).matmul(&gamma(i)));
    let spin_op = gamma(0).matmul(&commutator).scale(c(0.0, 0.25));
    let spin = matrix_bilinear(&psi(&jet.point), &spin_op);
    (orbital + spin).re
}

/// Central-difference derivative bispinor of an analytic field along
/// coordinate mu (lowered index).
fn fd_derivative_bispinor<F>(field: &F, x: [f64; 4], mu: usize, h: f64) -> Bispinor
where
    F: Fn([f64; 4]) -> FieldPoint,
{
    let mut fwd = x;
    let mut bwd = x;
    fwd[mu] += h;
    bwd[mu] -= h;
    psi(&field(fwd))
        .sub(&psi(&field(bwd)))
        .scale(c(1.0 / (2.0 * h), 0.0))
}

/// Lagrangian oracle with finite-difference derivative bispinors of step h.
pub fn lagrangian_fd<F>(field: &F, x: [f64; 4], h: f64) -> f64
where
    F: Fn([f64; 4]) -> FieldPoint,
{
    let p = field(x);
    let mut total = c(0.0, 0.0);
    for mu in 0..4 {
        let dpsi = fd_derivative_bispinor(field, x, mu, h);
        total += bilinear_with_ket(&p, &gamma(mu), &dpsi);
    }
    (total * c(0.0, 1.0)).re
}

/// Momentum oracle with a finite-difference derivative bispinor.
pub fn momentum_fd<F>(field: &F, x: [f64; 4], i: usize, h: f64) -> f64
where
    F: Fn([f64; 4]) -> FieldPoint,
{
    let p = field(x);
    // d^i = -d_i.
    let dpsi = fd_derivative_bispinor(field, x, i, h).scale(c(-1.0, 0.0));
    (bilinear_with_ket(&p, &gamma(0), &dpsi) * c(0.0, -1.0)).re
}

/// Angular momentum oracle with finite-difference l^{ij} psi.
pub fn angular_momentum_fd<F>(field: &F, x: [f64; 4], i: usize, j: usize, h: f64) -> f64
where
    F: Fn([f64; 4]) -> FieldPoint,
{
    let p = field(x);
    let di = fd_derivative_bispinor(field, x, i, h).scale(c(-1.0, 0.0));
    let dj = fd_derivative_bispinor(field, x, j, h).scale(c(-1.0, 0.0));
    let lpsi = dj.scale(c(x[i], 0.0)).sub(&di.scale(c(x[j], 0.0)));
    let orbital = bilinear_with_ket(&p, &gamma(0), &lpsi) * c(0.0, -1.0);
    let commutator = gamma(i).matmul(&gamma(j)).sub(&gamma(j).matmul(&gamma(i)));
    let spin_op = gamma(0).matmul(&commutator).scale(c(0.0, 0.25));
    let spin = matrix_bilinear(&psi(&p), &spin_op);
    (orbital + spin).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear;

    const TOL: f64 = 1e-12;

    #[test]
    fn oracle_matches_formulas_on_a_fixed_point() {
        let p = FieldPoint::new(0.9, [0.2, -1.1, 0.4], [-0.3, 0.8, 1.6], -0.5);
        let s = scalar(&p);
        assert!((s.re - bilinear::scalar_bilinear(&p)).abs() < TOL);
        assert!(s.im.abs() < TOL);

        let ps = pseudoscalar(&p);
        assert!((ps.re - bilinear::pseudoscalar_bilinear(&p)).abs() < TOL);
        assert!(ps.im.abs() < TOL);

        let j = vector_current(&p);
        let j_formula = bilinear::vector_current(&p);
        let j5 = pseudovector_current(&p);
        let j5_formula = bilinear::pseudovector_current(&p);
        for mu in 0..4 {
            assert!((j[mu].re - j_formula[mu]).abs() < TOL);
            assert!(j[mu].im.abs() < TOL);
            assert!((j5[mu].re - j5_formula[mu]).abs() < TOL);
            assert!(j5[mu].im.abs() < TOL);
        }
    }

    #[test]
    fn gamma0_bilinear_is_j0() {
        let p = FieldPoint::new(0.7, [0.2, 0.1, -0.4], [0.5, -0.6, 0.3], 1.1);
        let val = matrix_bilinear(&psi(&p), &gamma(0));
        let expected = p.f * p.f
            + p.g * p.g
            + p.e.iter().map(|x| x * x).sum::<f64>()
            + p.b.iter().map(|x| x * x).sum::<f64>();
        assert!((val.re - expected).abs() < TOL);
        assert!(val.im.abs() < TOL);
    }
}
