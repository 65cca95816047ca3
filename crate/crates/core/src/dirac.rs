//! Complex 4x4 Dirac-basis representation of the algebra.
//!
//! `represent` maps multivectors to matrices by sending each covariant
//! basis vector e_mu to g_mumu * gamma^mu; the map is checked (not assumed)
//! to be linear and multiplicative, which makes it the independent oracle
//! for the blade product table and for every bilinear formula.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::algebra::{metric_sign, BladeIndex, Multivector, BLADE_COUNT};

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense 4x4 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMat4 {
    rows: [[Complex64; 4]; 4],
}

impl ComplexMat4 {
    pub fn zero() -> Self {
        ComplexMat4 {
            rows: [[c(0.0, 0.0); 4]; 4],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.rows[i][i] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: [[Complex64; 4]; 4]) -> Self {
        ComplexMat4 { rows }
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.rows[row][col]
    }

    pub fn matmul(&self, other: &ComplexMat4) -> ComplexMat4 {
        let mut out = Self::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.rows[i][k];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..4 {
                    out.rows[i][j] += a * other.rows[k][j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMat4) -> ComplexMat4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.rows[i][j] += other.rows[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &ComplexMat4) -> ComplexMat4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.rows[i][j] -= other.rows[i][j];
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMat4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.rows[i][j] *= factor;
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> ComplexMat4 {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.rows[i][j] = self.rows[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.rows[i][i]).sum()
    }

    pub fn mul_bispinor(&self, psi: &Bispinor) -> Bispinor {
        let mut out = [c(0.0, 0.0); 4];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *slot += self.rows[i][j] * psi.0[j];
            }
        }
        Bispinor(out)
    }

    pub fn max_abs_diff(&self, other: &ComplexMat4) -> f64 {
        let mut max = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                max = max.max((self.rows[i][j] - other.rows[i][j]).norm());
            }
        }
        max
    }
}

/// Four-component complex column vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bispinor(pub [Complex64; 4]);

impl Bispinor {
    pub fn components(&self) -> &[Complex64; 4] {
        &self.0
    }

    pub fn scale(&self, factor: Complex64) -> Bispinor {
        Bispinor(self.0.map(|x| x * factor))
    }

    pub fn add(&self, other: &Bispinor) -> Bispinor {
        let mut out = self.0;
        for i in 0..4 {
            out[i] += other.0[i];
        }
        Bispinor(out)
    }

    pub fn sub(&self, other: &Bispinor) -> Bispinor {
        let mut out = self.0;
        for i in 0..4 {
            out[i] -= other.0[i];
        }
        Bispinor(out)
    }

    pub fn max_abs_diff(&self, other: &Bispinor) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).norm()))
    }
}

/// The contravariant Dirac-basis matrix gamma^mu.
///
/// gamma^0 = diag(1, 1, -1, -1); gamma^i has off-diagonal Pauli blocks
/// (0, sigma^i; -sigma^i, 0). Panics on mu > 3.
pub fn gamma(mu: usize) -> ComplexMat4 {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match mu {
        0 => ComplexMat4::from_rows([
            [one, o, o, o],
            [o, one, o, o],
            [o, o, -one, o],
            [o, o, o, -one],
        ]),
        1 => ComplexMat4::from_rows([
            [o, o, o, one],
            [o, o, one, o],
            [o, -one, o, o],
            [-one, o, o, o],
        ]),
        2 => ComplexMat4::from_rows([
            [o, o, o, -i],
            [o, o, i, o],
            [o, i, o, o],
            [-i, o, o, o],
        ]),
        3 => ComplexMat4::from_rows([
            [o, o, one, o],
            [o, o, o, -one],
            [-one, o, o, o],
            [o, one, o, o],
        ]),
        _ => panic!("gamma index {mu} out of range 0..=3"),
    }
}

/// gamma^5 = i gamma^0 gamma^1 gamma^2 gamma^3.
pub fn gamma5() -> ComplexMat4 {
    gamma(0)
        .matmul(&gamma(1))
        .matmul(&gamma(2))
        .matmul(&gamma(3))
        .scale(c(0.0, 1.0))
}

/// Matrix image of the pseudoscalar: I = -gamma^0 gamma^1 gamma^2 gamma^3.
pub fn pseudoscalar_matrix() -> ComplexMat4 {
    represent(&Multivector::pseudoscalar())
}

fn blade_matrices() -> &'static [ComplexMat4; BLADE_COUNT] {
    static TABLE: OnceLock<[ComplexMat4; BLADE_COUNT]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|mask| {
            let mut acc = ComplexMat4::identity();
            for mu in 0..4 {
                if mask & (1 << mu) != 0 {
                    // Covariant e_mu maps to g_mumu gamma^mu.
                    acc = acc.matmul(&gamma(mu).scale(c(f64::from(metric_sign(mu)), 0.0)));
                }
            }
            acc
        })
    })
}

/// Linear, multiplicative image of a multivector in the Dirac basis.
pub fn represent(m: &Multivector) -> ComplexMat4 {
    let table = blade_matrices();
    let mut out = ComplexMat4::zero();
    for index in BladeIndex::all() {
        let coeff = m.coeff(index);
        if coeff != 0.0 {
            out = out.add(&table[index.mask() as usize].scale(c(coeff, 0.0)));
        }
    }
    out
}

/// The constant projection column w = (1, 0, 0, 0): the gamma^0 eigenvector
/// singled out so that psi = represent(psi_M) w.
pub fn projection_bispinor() -> Bispinor {
    Bispinor([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
}

/// Project a multivector onto the bispinor space: represent(M) w.
pub fn project(m: &Multivector) -> Bispinor {
    represent(m).mul_bispinor(&projection_bispinor())
}

/// The multivector whose matrix image right-multiplies the projection
/// column by i: -I e^3 e^0 (equivalently -gamma^1 gamma^2).
pub fn imaginary_shift() -> Multivector {
    -(Multivector::pseudoscalar()
        * Multivector::contravariant_vector(3)
        * Multivector::contravariant_vector(0))
}

/// Dirac adjoint row: conjugate transpose of psi times gamma^0.
pub fn dirac_adjoint(psi: &Bispinor) -> [Complex64; 4] {
    let g0 = gamma(0);
    let mut row = [c(0.0, 0.0); 4];
    for (j, slot) in row.iter_mut().enumerate() {
        for k in 0..4 {
            *slot += psi.0[k].conj() * g0.entry(k, j);
        }
    }
    row
}

/// The bilinear adjoint(psi) * Gamma * psi; the oracle every component
/// formula is checked against.
pub fn matrix_bilinear(psi: &Bispinor, gamma_op: &ComplexMat4) -> Complex64 {
    let row = dirac_adjoint(psi);
    let col = gamma_op.mul_bispinor(psi);
    row.iter().zip(col.0.iter()).map(|(a, b)| a * b).sum()
}
