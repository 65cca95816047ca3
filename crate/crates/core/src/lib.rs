//! Spacetime algebra Cl(1,3) with a Dirac-matrix cross-check oracle and a
//! periodic-grid solver for the generalized first-order Maxwell system.
//!
//! The crate is organized as two independent evaluation routes plus the
//! machinery that drives them against each other:
//!
//! - [`algebra`]: exact blade arithmetic for the 16-dimensional algebra.
//! - [`rotor`]: Lorentz rotations and boosts, one- and two-sided.
//! - [`dirac`]: the complex 4x4 representation, projection column, and
//!   matrix bilinears - the oracle route.
//! - [`bilinear`]: closed-form field-component bilinears - the formula
//!   route, never allowed to call the oracle.
//! - [`oracle`]: the matrix-route evaluation of every bilinear.
//! - [`solver`]: RK4 evolution of the eight field components on a periodic
//!   grid with conserved-total monitoring.
//! - [`harness`]: the CLI modes (check-algebra, check-bilinears,
//!   check-lorentz, simulate) with JSON config and CSV/JSON outputs.

pub mod algebra;
pub mod bilinear;
pub mod dirac;
pub mod harness;
pub mod oracle;
pub mod rotor;
pub mod sample;
pub mod solver;

pub use algebra::{blade_mul, AlgebraError, BladeIndex, Multivector};
pub use bilinear::{BilinearSet, FieldJet, FieldPoint};
pub use dirac::{Bispinor, ComplexMat4};
pub use rotor::{Rotor, RotorError};
pub use solver::{ConservedTotals, FieldState, GridSpec, Scenario, SolverError};
