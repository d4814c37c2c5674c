//! Exact Weyl-algebra kernel and special-function identities.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: exact Gaussian rationals and sparse polynomials,
//! * [`weyl`]: normal-ordered `x`/`p` operators, commutators, conjugation,
//! * [`polyfam`]: Hermite and associated Laguerre polynomials by several
//!   independent routes, oscillator functions and generating functions,
//! * [`bessel`]: integer-order Bessel `J_n` by series, quadrature and
//!   Miller recurrence, plus the classical Bessel identities,
//! * [`disentangle`]: factoring `exp{t(αx² + β(xp+px) + γp²)}` into an
//!   ordered product of exponentials,
//! * [`harness`]: the named identity checks and the JSON report.

pub mod algebra;
pub mod bessel;
pub mod disentangle;
pub mod error;
pub mod harness;
pub mod polyfam;
pub mod weyl;

pub use algebra::{ComplexF, GaussRational, Rational, ShiftedPoly, UniPoly};
pub use error::{Error, Result};
pub use weyl::{ConjugationResult, WeylOp};
