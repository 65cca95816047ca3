//! The check suites behind check-algebra, check-bilinears and check-lorentz.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{blade_mul, BladeIndex, Multivector};
use crate::bilinear::{
    angular_momentum_density, bilinear_via_grade_projection, lagrangian_density,
    momentum_density, projection_column, pseudoscalar_bilinear, pseudovector_current,
    scalar_bilinear, spin_term, vector_current, FieldPoint,
};
use crate::dirac::{
    gamma, gamma5, matrix_bilinear, project, projection_bispinor, represent, ComplexMat4,
};
use crate::oracle;
use crate::rotor::{rotation_plane, rotation_rotor, Rotor};
use crate::sample::{self, HarmonicField, QuadraticField};

use super::config::{Mode, RunConfig};
use super::report::Report;

/// Basis blades squaring to +1: the scalar, e0, the timelike bivectors,
/// and e1e2e3.
const ROOTS_OF_PLUS_ONE: [u8; 6] = [0b0000, 0b0001, 0b0011, 0b0101, 0b1001, 0b1110];

/// Basis blades squaring to -1: the spatial vectors, spacelike bivectors,
/// pseudovectors containing e0, and I.
const ROOTS_OF_MINUS_ONE: [u8; 10] = [
    0b0010, 0b0100, 0b1000, 0b0110, 0b1100, 0b1010, 0b0111, 0b1101, 0b1011, 0b1111,
];

/// Compare a blade product rule against the matrix oracle, entry by entry;
/// the returned failures name the offending blade pairs.
pub(crate) fn product_table_failures<F>(mul: F) -> Vec<String>
where
    F: Fn(BladeIndex, BladeIndex) -> (i32, BladeIndex),
{
    let mut failures = Vec::new();
    for a in BladeIndex::all() {
        for b in BladeIndex::all() {
            let (sign, result) = mul(a, b);
            let lhs = represent(&Multivector::basis(a))
                .matmul(&represent(&Multivector::basis(b)));
            let rhs = represent(&(Multivector::basis(result) * f64::from(sign)));
            if lhs != rhs {
                failures.push(format!("{a} * {b}"));
            }
        }
    }
    failures
}

/// Product table, root lists, involution parities, duality, and the random
/// exact identities.
pub fn run_check_algebra(cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let mut report = Report::new(Mode::CheckAlgebra);

    report.push_exact(
        "product-table-vs-matrix-oracle",
        product_table_failures(blade_mul),
    );
    report.count("product-table entries", 256);

    let mut failures = Vec::new();
    for &mask in &ROOTS_OF_PLUS_ONE {
        let b = BladeIndex::from_mask(mask);
        if blade_mul(b, b) != (1, BladeIndex::SCALAR) {
            failures.push(format!("{b}^2 != +1"));
        }
    }
    report.push_exact("six-square-roots-of-plus-one", failures);

    let mut failures = Vec::new();
    for &mask in &ROOTS_OF_MINUS_ONE {
        let b = BladeIndex::from_mask(mask);
        if blade_mul(b, b) != (-1, BladeIndex::SCALAR) {
            failures.push(format!("{b}^2 != -1"));
        }
    }
    report.push_exact("ten-square-roots-of-minus-one", failures);

    let mut failures = Vec::new();
    for index in BladeIndex::all() {
        let b = Multivector::basis(index);
        let expected = if matches!(index.grade(), 2 | 3) { -b } else { b };
        if b.reverse() != expected {
            failures.push(format!("reverse({index})"));
        }
    }
    report.push_exact("reversal-parity-by-grade", failures);

    // Hermitian conjugation fixes exactly the roots of +1 and negates the
    // roots of -1.
    let mut failures = Vec::new();
    for index in BladeIndex::all() {
        let b = Multivector::basis(index);
        let expected = if ROOTS_OF_PLUS_ONE.contains(&index.mask()) {
            b
        } else {
            -b
        };
        if b.hermitian_adjoint() != expected {
            failures.push(format!("adjoint({index})"));
        }
    }
    report.push_exact("hermitian-adjoint-parity", failures);

    let i = Multivector::pseudoscalar();
    let mut failures = Vec::new();
    for index in BladeIndex::all() {
        let b = Multivector::basis(index);
        let holds = if index.grade() % 2 == 0 {
            i * b == b * i
        } else {
            i * b == -(b * i)
        };
        if !holds {
            failures.push(format!("I vs {index}"));
        }
    }
    report.push_exact("pseudoscalar-commutation-parity", failures);

    let e = Multivector::basis_vector;
    let mut failures = Vec::new();
    for (ii, jj, kk) in [(1usize, 2, 3), (2, 3, 1), (3, 1, 2)] {
        // e_i ^ e_j = -eps_{ijk} I e_k e0 and e0 ^ e_i ^ e_j = -eps_{ijk} I e_k.
        if e(ii).outer_product(&e(jj)).unwrap() != -(i * e(kk) * e(0)) {
            failures.push(format!("e{ii}^e{jj} duality"));
        }
        if e(0) * e(ii) * e(jj) != -(i * e(kk)) {
            failures.push(format!("e0 e{ii} e{jj} duality"));
        }
    }
    if e(1) * e(2) * e(3) != -(i * e(0)) {
        failures.push("e1 e2 e3 duality".to_string());
    }
    report.push_exact("duality-identities", failures);

    // Random exact identities with integer coefficients.
    let mut rng = sample::seeded_rng(cfg.seed);
    let int_mv = |rng: &mut rand_chacha::ChaCha8Rng| {
        Multivector::from_coeffs(std::array::from_fn(|_| {
            f64::from(rng.random_range(-3i32..=3))
        }))
    };
    let mut failures = Vec::new();
    for trial in 0..cfg.samples {
        let (a, b, c) = (int_mv(&mut rng), int_mv(&mut rng), int_mv(&mut rng));
        if (a * b) * c != a * (b * c) {
            failures.push(format!("triple #{trial}"));
        }
    }
    report.push_exact("associativity-random-triples", failures);
    report.count("random associativity triples", cfg.samples as u64);

    let mut failures = Vec::new();
    for trial in 0..cfg.samples {
        let (a, b) = (int_mv(&mut rng), int_mv(&mut rng));
        let even_even = a.even_part() * b.even_part();
        let odd_odd = a.odd_part() * b.odd_part();
        let even_odd = a.even_part() * b.odd_part();
        if !even_even.is_even() || !odd_odd.is_even() || !even_odd.is_odd() {
            failures.push(format!("pair #{trial}"));
        }
    }
    report.push_exact("grade-parity-closure", failures);

    // Representation homomorphism on real coefficients.
    let mut max_err = 0.0f64;
    for _ in 0..cfg.samples {
        let a = sample::multivector(&mut rng);
        let b = sample::multivector(&mut rng);
        let lhs = represent(&(a * b));
        let rhs = represent(&a).matmul(&represent(&b));
        max_err = max_err.max(lhs.max_abs_diff(&rhs));
    }
    report.push_threshold("representation-homomorphism", max_err, 1e-12);

    report.runtime_s = start.elapsed().as_secs_f64();
    report
}

fn max_complex_vs_real(value: Complex64, expected: f64, max_re: &mut f64, max_im: &mut f64) {
    *max_re = max_re.max((value.re - expected).abs());
    *max_im = max_im.max(value.im.abs());
}

/// Formula-vs-oracle sweeps for every bilinear, on random points and jets.
pub fn run_check_bilinears(cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let mut report = Report::new(Mode::CheckBilinears);
    let tol = &cfg.tolerances;
    let mut rng = sample::seeded_rng(cfg.seed);

    // Point bilinears against the matrix oracle.
    let mut max_proj = 0.0f64;
    let (mut max_scalar, mut max_pseudo, mut max_j, mut max_j5) = (0.0f64, 0.0, 0.0, 0.0);
    let mut max_imag = 0.0f64;
    for _ in 0..cfg.samples {
        let p = sample::field_point(&mut rng);
        let psi = project(&p.to_multivector());
        for (a, b) in psi.components().iter().zip(projection_column(&p).iter()) {
            max_proj = max_proj.max((a - b).norm());
        }
        max_complex_vs_real(
            oracle::scalar(&p),
            scalar_bilinear(&p),
            &mut max_scalar,
            &mut max_imag,
        );
        max_complex_vs_real(
            oracle::pseudoscalar(&p),
            pseudoscalar_bilinear(&p),
            &mut max_pseudo,
            &mut max_imag,
        );
        let j = vector_current(&p);
        let j5 = pseudovector_current(&p);
        let j_oracle = oracle::vector_current(&p);
        let j5_oracle = oracle::pseudovector_current(&p);
        for mu in 0..4 {
            max_complex_vs_real(j_oracle[mu], j[mu], &mut max_j, &mut max_imag);
            max_complex_vs_real(j5_oracle[mu], j5[mu], &mut max_j5, &mut max_imag);
        }
    }
    report.count("random field points", cfg.samples as u64);
    report.push_threshold("projection-column", max_proj, tol.point_bilinear);
    report.push_threshold("scalar-bilinear", max_scalar, tol.point_bilinear);
    report.push_threshold("pseudoscalar-bilinear", max_pseudo, tol.point_bilinear);
    report.push_threshold("vector-current", max_j, tol.point_bilinear);
    report.push_threshold("pseudovector-current", max_j5, tol.point_bilinear);
    report.push_threshold("oracle-imaginary-parts", max_imag, tol.point_bilinear);

    // Grade-projection route against the matrix (1,1) entry.
    let mut max_m11 = 0.0f64;
    for _ in 0..cfg.samples {
        let m = sample::multivector(&mut rng);
        for part in [m.even_part(), m.odd_part()] {
            let formula = bilinear_via_grade_projection(&part).expect("pure parity");
            let entry = represent(&part).entry(0, 0).re;
            max_m11 = max_m11.max((formula - entry).abs());
        }
    }
    report.push_threshold("grade-projection-entry", max_m11, tol.point_bilinear);

    // Spin term of a uniform B3 = 1 field is exactly 1/2.
    let uniform_b3 = FieldPoint::new(0.0, [0.0; 3], [0.0, 0.0, 1.0], 0.0);
    let spin = spin_term(&uniform_b3, 1, 2);
    let failures = if spin == 0.5 {
        vec![]
    } else {
        vec![format!("spin term = {spin}, expected exactly 0.5")]
    };
    report.push_exact("uniform-b3-spin-term", failures);

    // Jet-based bilinears with exact analytic jets.
    let jet_samples = (cfg.samples / 5).max(50);
    let (mut max_lag, mut max_mom, mut max_ang) = (0.0f64, 0.0f64, 0.0f64);
    for trial in 0..jet_samples {
        let quad = QuadraticField::random(&mut rng);
        let wave = HarmonicField::random(&mut rng);
        let x: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let origin: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let jet = if trial % 2 == 0 {
            quad.jet(x)
        } else {
            wave.jet(x)
        };
        max_lag = max_lag.max((lagrangian_density(&jet) - oracle::lagrangian(&jet)).abs());
        for i in 1..=3 {
            max_mom =
                max_mom.max((momentum_density(&jet, i) - oracle::momentum(&jet, i)).abs());
        }
        for (i, j) in [(1usize, 2usize), (2, 3), (3, 1)] {
            let formula = angular_momentum_density(&jet, origin, i, j).expect("valid plane");
            let reference = oracle::angular_momentum(&jet, origin, i, j);
            max_ang = max_ang.max((formula - reference).abs());
        }
    }
    report.count("analytic jets", jet_samples as u64);
    report.push_threshold("lagrangian-analytic-jet", max_lag, tol.jet_bilinear);
    report.push_threshold("momentum-density-analytic-jet", max_mom, tol.jet_bilinear);
    report.push_threshold("angular-momentum-analytic-jet", max_ang, tol.jet_bilinear);

    // Same quantities with finite-difference oracle derivatives.
    let h = tol.fd_step;
    let (mut max_lag_fd, mut max_mom_fd, mut max_ang_fd) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..jet_samples {
        let wave = HarmonicField::random(&mut rng);
        let x: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let field = |y: [f64; 4]| wave.point(y);
        let jet = wave.jet(x);
        max_lag_fd =
            max_lag_fd.max((lagrangian_density(&jet) - oracle::lagrangian_fd(&field, x, h)).abs());
        for i in 1..=3 {
            max_mom_fd = max_mom_fd
                .max((momentum_density(&jet, i) - oracle::momentum_fd(&field, x, i, h)).abs());
        }
        let origin = [x[1], x[2], x[3]];
        for (i, j) in [(1usize, 2usize), (2, 3), (3, 1)] {
            let formula = angular_momentum_density(&jet, origin, i, j).expect("valid plane");
            let reference = oracle::angular_momentum_fd(&field, x, i, j, h);
            max_ang_fd = max_ang_fd.max((formula - reference).abs());
        }
    }
    report.push_threshold("lagrangian-fd-oracle", max_lag_fd, tol.fd_bilinear);
    report.push_threshold("momentum-density-fd-oracle", max_mom_fd, tol.fd_bilinear);
    report.push_threshold("angular-momentum-fd-oracle", max_ang_fd, tol.fd_bilinear);

    report.runtime_s = start.elapsed().as_secs_f64();
    report
}

/// Covariance of the currents under random rotors, invariance of the
/// scalars, and the full-turn sign checks.
pub fn run_check_lorentz(cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let mut report = Report::new(Mode::CheckLorentz);
    let tol = &cfg.tolerances;
    let mut rng = sample::seeded_rng(cfg.seed);
    let trials = (cfg.samples / 10).max(100);

    let i_g3 = Multivector::pseudoscalar() * Multivector::contravariant_vector(3);
    let g5 = gamma5();

    let mut consistency = 0.0f64; // formula-built vectors vs geometric products
    let mut max_j = 0.0f64;
    let mut max_j5 = 0.0f64;
    let mut max_scalar = 0.0f64;
    let mut max_pseudo = 0.0f64;
    for _ in 0..trials {
        let rotor = sample::rotor(&mut rng);
        let p = sample::field_point(&mut rng);
        let psi_m = p.to_multivector();

        // Current vectors assembled from the component formulas...
        let mut j_vec = Multivector::zero();
        let mut j5_vec = Multivector::zero();
        for mu in 0..4 {
            j_vec = j_vec + Multivector::basis_vector(mu) * vector_current(&p)[mu];
            j5_vec = j5_vec
                + Multivector::pseudoscalar()
                    * Multivector::basis_vector(mu)
                    * pseudovector_current(&p)[mu];
        }
        // ...match the geometric products behind them.
        consistency = consistency
            .max(j_vec.max_abs_diff(&(psi_m * Multivector::basis_vector(0) * psi_m.reverse())));
        consistency =
            consistency.max(j5_vec.max_abs_diff(&(psi_m * i_g3 * psi_m.reverse())));

        // One-sided matrix route: psi -> rep(S) psi.
        let s_mat = represent(rotor.value());
        let psi = s_mat.mul_bispinor(&project(&psi_m));

        // Two-sided geometric route on the current vectors.
        let j_sand = rotor.sandwich(&j_vec).expect("unit rotor");
        let j5_sand = rotor.sandwich(&j5_vec).expect("unit rotor");
        for mu in 0..4 {
            let from_matrix = matrix_bilinear(&psi, &gamma(mu));
            let from_sandwich =
                (Multivector::contravariant_vector(mu) * j_sand).scalar_part();
            max_j = max_j.max((from_matrix - Complex64::new(from_sandwich, 0.0)).norm());

            let from_matrix5 = matrix_bilinear(&psi, &g5.matmul(&gamma(mu)));
            let from_sandwich5 = (Multivector::pseudoscalar()
                * Multivector::contravariant_vector(mu)
                * j5_sand)
                .scalar_part();
            max_j5 = max_j5.max((from_matrix5 - Complex64::new(from_sandwich5, 0.0)).norm());
        }

        // Scalar and pseudoscalar stay put under the two-sided transform of
        // the field components.
        let transformed =
            FieldPoint::from_multivector(&rotor.sandwich(&psi_m).expect("unit rotor"))
                .expect("sandwich preserves the even subalgebra");
        max_scalar =
            max_scalar.max((scalar_bilinear(&transformed) - scalar_bilinear(&p)).abs());
        max_pseudo = max_pseudo
            .max((pseudoscalar_bilinear(&transformed) - pseudoscalar_bilinear(&p)).abs());
        // The one-sided matrix route agrees.
        max_scalar = max_scalar
            .max((matrix_bilinear(&psi, &ComplexMat4::identity())
                - Complex64::new(scalar_bilinear(&p), 0.0))
            .norm());
        max_pseudo = max_pseudo
            .max((matrix_bilinear(&psi, &g5) * Complex64::new(0.0, -1.0)
                - Complex64::new(pseudoscalar_bilinear(&p), 0.0))
            .norm());
    }
    report.count("random rotors", trials as u64);
    report.push_threshold("current-vector-consistency", consistency, tol.point_bilinear);
    report.push_threshold("vector-current-covariance", max_j, tol.lorentz);
    report.push_threshold("pseudovector-current-covariance", max_j5, tol.lorentz);
    report.push_threshold("scalar-invariance", max_scalar, tol.lorentz);
    report.push_threshold("pseudoscalar-invariance", max_pseudo, tol.lorentz);

    // Full-turn rotors: the exact scalar -1 rotor flips the projection
    // column and fixes every multivector, sign-exactly.
    let w = projection_bispinor();
    let mut failures = Vec::new();
    let full_turn = Rotor::try_new(Multivector::scalar(-1.0)).expect("-1 is a unit rotor");
    let flipped = represent(full_turn.value()).mul_bispinor(&w);
    if flipped != w.scale(Complex64::new(-1.0, 0.0)) {
        failures.push("rep(-1) w != -w".to_string());
    }
    let probe = sample::multivector(&mut rng);
    if full_turn.sandwich(&probe).expect("unit") != probe {
        failures.push("(-1) M (-1) != M".to_string());
    }
    if full_turn.one_sided(&probe) != -probe {
        failures.push("(-1) M != -M".to_string());
    }
    report.push_exact("full-turn-exact-signs", failures);

    // The same statement through trig-built rotors, to rounding.
    let mut max_one_sided = 0.0f64;
    let mut max_two_sided = 0.0f64;
    for _ in 0..trials.min(20) {
        let plane = rotation_plane(sample::unit_vector3(&mut rng));
        let turn = rotation_rotor(std::f64::consts::PI, &plane).expect("unit plane");
        let m = sample::multivector(&mut rng);
        max_two_sided = max_two_sided.max(turn.sandwich(&m).expect("unit").max_abs_diff(&m));
        let w_turned = represent(turn.value()).mul_bispinor(&w);
        max_one_sided =
            max_one_sided.max(w_turned.max_abs_diff(&w.scale(Complex64::new(-1.0, 0.0))));
    }
    report.push_threshold("full-turn-one-sided-negation", max_one_sided, 1e-12);
    report.push_threshold("full-turn-two-sided-identity", max_two_sided, 1e-12);

    // Identity rotor changes nothing.
    let mut failures = Vec::new();
    let id = Rotor::identity();
    let m = sample::multivector(&mut rng);
    if id.sandwich(&m).expect("unit") != m || id.one_sided(&m) != m {
        failures.push("identity rotor moved a multivector".to_string());
    }
    let p = sample::field_point(&mut rng);
    let psi = represent(id.value()).mul_bispinor(&project(&p.to_multivector()));
    if psi != project(&p.to_multivector()) {
        failures.push("identity rotor moved the projection column".to_string());
    }
    report.push_exact("identity-rotor-fixes-everything", failures);

    report.runtime_s = start.elapsed().as_secs_f64();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_cfg(samples: usize) -> RunConfig {
        RunConfig {
            samples,
            ..RunConfig::default()
        }
    }

    #[test]
    fn all_three_check_suites_pass_on_defaults() {
        let cfg = default_cfg(100);
        for report in [
            run_check_algebra(&cfg),
            run_check_bilinears(&cfg),
            run_check_lorentz(&cfg),
        ] {
            assert!(report.passed(), "failing report:\n{}", report.render());
        }
    }

    #[test]
    fn injected_sign_fault_names_the_corrupted_pair() {
        let corrupted = |a: BladeIndex, b: BladeIndex| {
            let (sign, result) = blade_mul(a, b);
            if a.mask() == 0b0011 && b.mask() == 0b0110 {
                (-sign, result)
            } else {
                (sign, result)
            }
        };
        let failures = product_table_failures(corrupted);
        assert_eq!(failures, vec!["e0e1 * e1e2".to_string()]);
    }

    #[test]
    fn root_lists_partition_the_basis() {
        let mut all: Vec<u8> = ROOTS_OF_PLUS_ONE
            .iter()
            .chain(ROOTS_OF_MINUS_ONE.iter())
            .copied()
            .collect();
        all.sort_unstable();
        assert_eq!(all, (0..16).collect::<Vec<u8>>());
    }
}
