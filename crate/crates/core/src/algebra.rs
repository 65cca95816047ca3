//! Exact arithmetic for the 16-dimensional spacetime algebra Cl(1,3).
//!
//! Basis blades are indexed by a 4-bit mask over {e0, e1, e2, e3} with
//! metric signature (+, -, -, -). Products reduce to `blade_mul`, which
//! counts anticommutation swaps and metric contractions, so integer-valued
//! coefficients stay exact through every product.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use thiserror::Error;

/// Number of basis blades in Cl(1,3).
pub const BLADE_COUNT: usize = 16;

/// Metric signature diag(+1, -1, -1, -1): e0^2 = +1, ei^2 = -1.
pub const METRIC_SIGNATURE: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Sign of e_mu^2 under the metric.
#[inline]
pub fn metric_sign(mu: usize) -> i32 {
    if mu == 0 {
        1
    } else {
        -1
    }
}

/// Errors from grade-sensitive algebra operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("grade {0} out of range 0..=4")]
    GradeOutOfRange(usize),
    #[error("operand is not of a single grade")]
    MixedGrade,
    #[error("inner product requires operands of grade >= 1")]
    ScalarOperand,
    #[error("operand mixes even and odd grades")]
    MixedParity,
}

/// A basis blade of Cl(1,3), encoded as a bitmask: bit mu set iff the blade
/// contains e_mu. The canonical blade is the product of its vectors in
/// ascending index order, so mask 0b0011 denotes e0e1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex(u8);

impl BladeIndex {
    /// The scalar unit 1.
    pub const SCALAR: BladeIndex = BladeIndex(0b0000);
    /// The pseudoscalar I = e0e1e2e3.
    pub const PSEUDOSCALAR: BladeIndex = BladeIndex(0b1111);

    /// Blade from a raw 4-bit mask. Panics if the mask has bits above bit 3.
    pub fn from_mask(mask: u8) -> Self {
        assert!(mask < 16, "blade mask {mask} out of range");
        BladeIndex(mask)
    }

    /// The basis vector e_mu.
    pub fn vector(mu: usize) -> Self {
        assert!(mu < 4, "vector index {mu} out of range");
        BladeIndex(1 << mu)
    }

    /// Underlying mask, usable as a coefficient-array index.
    #[inline]
    pub fn mask(self) -> u8 {
        self.0
    }

    /// Grade = number of constituent vectors.
    #[inline]
    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Whether the blade contains e_mu.
    #[inline]
    pub fn contains(self, mu: usize) -> bool {
        self.0 & (1 << mu) != 0
    }

    /// All 16 blades in mask order.
    pub fn all() -> impl Iterator<Item = BladeIndex> {
        (0u8..16).map(BladeIndex)
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for mu in 0..4 {
            if self.contains(mu) {
                write!(f, "e{mu}")?;
            }
        }
        Ok(())
    }
}

/// Product of two canonical basis blades.
///
/// The result mask is the symmetric difference of the operands; the sign
/// counts the transpositions needed to sort the concatenated vector list
/// into canonical order, times one metric factor per contracted index.
pub fn blade_mul(a: BladeIndex, b: BladeIndex) -> (i32, BladeIndex) {
    let result = BladeIndex(a.0 ^ b.0);

    // Swaps moving each vector of b past the higher-index vectors of a.
    let mut swaps = 0u32;
    let mut rest = a.0 >> 1;
    while rest != 0 {
        swaps += (rest & b.0).count_ones();
        rest >>= 1;
    }
    let mut sign = if swaps % 2 == 0 { 1 } else { -1 };

    // Contracted pairs e_mu e_mu pick up g_mumu.
    let shared = a.0 & b.0;
    for mu in 0..4 {
        if shared & (1 << mu) != 0 {
            sign *= metric_sign(mu);
        }
    }
    (sign, result)
}

/// A general element of Cl(1,3): 16 real coefficients over the canonical
/// blade basis, stored against covariant basis blades.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multivector {
    coeffs: [f64; BLADE_COUNT],
}

impl Multivector {
    /// The zero multivector.
    pub fn zero() -> Self {
        Multivector {
            coeffs: [0.0; BLADE_COUNT],
        }
    }

    /// A pure scalar.
    pub fn scalar(value: f64) -> Self {
        let mut m = Self::zero();
        m.coeffs[0] = value;
        m
    }

    /// The unit canonical blade for `index`.
    pub fn basis(index: BladeIndex) -> Self {
        let mut m = Self::zero();
        m.coeffs[index.mask() as usize] = 1.0;
        m
    }

    /// The covariant basis vector e_mu.
    pub fn basis_vector(mu: usize) -> Self {
        Self::basis(BladeIndex::vector(mu))
    }

    /// The contravariant basis vector e^mu = g^{mumu} e_mu.
    pub fn contravariant_vector(mu: usize) -> Self {
        Self::basis_vector(mu) * f64::from(metric_sign(mu))
    }

    /// The pseudoscalar I = e0e1e2e3.
    pub fn pseudoscalar() -> Self {
        Self::basis(BladeIndex::PSEUDOSCALAR)
    }

    /// Build from all 16 coefficients in mask order.
    pub fn from_coeffs(coeffs: [f64; BLADE_COUNT]) -> Self {
        Multivector { coeffs }
    }

    /// Coefficient of a single blade.
    #[inline]
    pub fn coeff(&self, index: BladeIndex) -> f64 {
        self.coeffs[index.mask() as usize]
    }

    /// Mutable coefficient access.
    #[inline]
    pub fn coeff_mut(&mut self, index: BladeIndex) -> &mut f64 {
        &mut self.coeffs[index.mask() as usize]
    }

    /// All 16 coefficients in mask order.
    pub fn coeffs(&self) -> &[f64; BLADE_COUNT] {
        &self.coeffs
    }

    /// Full associative geometric product.
    pub fn geometric_product(&self, other: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for a in 0..BLADE_COUNT {
            let ca = self.coeffs[a];
            if ca == 0.0 {
                continue;
            }
            for b in 0..BLADE_COUNT {
                let cb = other.coeffs[b];
                if cb == 0.0 {
                    continue;
                }
                let (sign, result) =
                    blade_mul(BladeIndex(a as u8), BladeIndex(b as u8));
                out.coeffs[result.mask() as usize] += f64::from(sign) * ca * cb;
            }
        }
        out
    }

    /// Terms of grade `r`; grades outside 0..=4 are rejected.
    pub fn grade_part(&self, r: usize) -> Result<Multivector, AlgebraError> {
        if r > 4 {
            return Err(AlgebraError::GradeOutOfRange(r));
        }
        let mut m = Multivector::zero();
        for i in 0..BLADE_COUNT {
            if BladeIndex(i as u8).grade() == r {
                m.coeffs[i] = self.coeffs[i];
            }
        }
        Ok(m)
    }

    /// The grade-0 coefficient. Cyclic: <AB> = <BA>.
    #[inline]
    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Terms of even grade (0, 2, 4).
    pub fn even_part(&self) -> Multivector {
        let mut m = Multivector::zero();
        for i in 0..BLADE_COUNT {
            if BladeIndex(i as u8).grade() % 2 == 0 {
                m.coeffs[i] = self.coeffs[i];
            }
        }
        m
    }

    /// Terms of odd grade (1, 3).
    pub fn odd_part(&self) -> Multivector {
        *self - self.even_part()
    }

    /// True when all nonzero coefficients sit on even blades.
    pub fn is_even(&self) -> bool {
        self.odd_part() == Multivector::zero()
    }

    /// True when all nonzero coefficients sit on odd blades.
    pub fn is_odd(&self) -> bool {
        self.even_part() == Multivector::zero()
    }

    /// The single grade carrying all nonzero coefficients, if any.
    /// The zero multivector reports grade 0.
    pub fn pure_grade(&self) -> Option<usize> {
        let mut grade = None;
        for i in 0..BLADE_COUNT {
            if self.coeffs[i] != 0.0 {
                let g = BladeIndex(i as u8).grade();
                match grade {
                    None => grade = Some(g),
                    Some(prev) if prev != g => return None,
                    _ => {}
                }
            }
        }
        Some(grade.unwrap_or(0))
    }

    /// Inner product A_r . B_s = <A_r B_s>_{|r-s|} for pure nonzero grades.
    pub fn inner_product(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        if *self == Multivector::zero() || *other == Multivector::zero() {
            return Ok(Multivector::zero());
        }
        let r = self.pure_grade().ok_or(AlgebraError::MixedGrade)?;
        let s = other.pure_grade().ok_or(AlgebraError::MixedGrade)?;
        if r == 0 || s == 0 {
            return Err(AlgebraError::ScalarOperand);
        }
        self.geometric_product(other).grade_part(r.abs_diff(s))
    }

    /// Outer product A_r ^ B_s = <A_r B_s>_{r+s} for pure grades.
    pub fn outer_product(&self, other: &Multivector) -> Result<Multivector, AlgebraError> {
        if *self == Multivector::zero() || *other == Multivector::zero() {
            return Ok(Multivector::zero());
        }
        let r = self.pure_grade().ok_or(AlgebraError::MixedGrade)?;
        let s = other.pure_grade().ok_or(AlgebraError::MixedGrade)?;
        if r + s > 4 {
            return Ok(Multivector::zero());
        }
        self.geometric_product(other).grade_part(r + s)
    }

    /// Reversal: grade-r terms pick up (-1)^{r(r-1)/2}, so grades 0, 1, 4
    /// are fixed and grades 2, 3 are negated.
    pub fn reverse(&self) -> Multivector {
        let mut m = *self;
        for i in 0..BLADE_COUNT {
            let r = BladeIndex(i as u8).grade();
            if (r * (r.max(1) - 1) / 2) % 2 == 1 {
                m.coeffs[i] = -m.coeffs[i];
            }
        }
        m
    }

    /// Hermitian adjoint: e0 * reverse(M) * e0, a spatial reflection of the
    /// reversed multivector. Fixes the basis roots of +1 and negates the
    /// roots of -1.
    pub fn hermitian_adjoint(&self) -> Multivector {
        let e0 = Multivector::basis_vector(0);
        e0.geometric_product(&self.reverse()).geometric_product(&e0)
    }

    /// Duality: I * M. Applied twice yields -M.
    pub fn dual(&self) -> Multivector {
        Multivector::pseudoscalar().geometric_product(self)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc.max(c.abs()))
    }

    /// Largest coefficient difference against another multivector.
    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Default for Multivector {
    fn default() -> Self {
        Self::zero()
    }
}

impl Index<BladeIndex> for Multivector {
    type Output = f64;

    fn index(&self, index: BladeIndex) -> &f64 {
        &self.coeffs[index.mask() as usize]
    }
}

impl Add for Multivector {
    type Output = Multivector;

    fn add(self, rhs: Multivector) -> Multivector {
        let mut out = self;
        for i in 0..BLADE_COUNT {
            out.coeffs[i] += rhs.coeffs[i];
        }
        out
    }
}

impl Sub for Multivector {
    type Output = Multivector;

    fn sub(self, rhs: Multivector) -> Multivector {
        let mut out = self;
        for i in 0..BLADE_COUNT {
            out.coeffs[i] -= rhs.coeffs[i];
        }
        out
    }
}

impl Neg for Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        let mut out = self;
        for c in &mut out.coeffs {
            *c *= rhs;
        }
        out
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;

    fn mul(self, rhs: Multivector) -> Multivector {
        rhs * self
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for index in BladeIndex::all() {
            let c = self.coeff(index);
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { "-" } else { "+" })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            if index == BladeIndex::SCALAR {
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{} {}", c.abs(), index)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
