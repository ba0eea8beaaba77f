//! Orthogonal basic hypergeometric functions on the q-quadratic lattice.
//!
//! The crate evaluates and verifies the nonterminating very-well-poised
//! 8phi7 functions that extend the Askey-Wilson polynomials to arbitrary
//! degree, together with everything needed to check their continuous
//! orthogonality numerically:
//!
//! * [`qcore`] — q-shifted factorials and generic basic hypergeometric
//!   series with error-bounded truncation,
//! * [`lattice`] — the q-quadratic grid, difference-equation coefficients
//!   and Pearson weight solutions,
//! * [`aw`] — Askey-Wilson polynomials, weight and closed-form norms,
//! * [`u8phi7`] — the central function u_nu in four equivalent
//!   representations, its entire regularization v_nu, boundary functions and
//!   large-degree asymptotics,
//! * [`quad`] — deterministic Gauss-Legendre quadrature of the
//!   orthogonality integrals,
//! * [`norms`] — closed-form squared norms and the Wronskian / main
//!   identities tying integrals to boundary data,
//! * [`zerofind`] — bracketing and bisection for the real nu-zeros of the
//!   boundary function, interlacing and disk-count checks,
//! * [`special`] — the limiting families: continuous dual q-Hahn, Al-Salam
//!   Chihara, continuous (big) q-Hermite, q-Bessel and q-trigonometric
//!   functions,
//! * [`verify`] — the end-to-end verification suite driven by the CLI and
//!   the acceptance tests,
//! * [`xprec`] — double-double scalars used by oracle cross-checks.

// Negated comparisons like !(tol > 0.0) are deliberate: they reject NaN
// together with the domain violation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aw;
pub mod error;
pub mod lattice;
pub mod norms;
pub mod qcore;
pub mod quad;
pub mod special;
pub mod u8phi7;
pub mod verify;
pub mod xprec;
pub mod zerofind;

pub use error::{Error, Result};
pub use lattice::{LatticePoint, QParams};
pub use qcore::{QBase, SeriesSpec, SeriesValue};

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;
