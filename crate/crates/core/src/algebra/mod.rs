//! Exact scalar and polynomial arithmetic.

mod gauss;
mod poly;
mod rational;
mod shifted;
mod sqrt2;

pub use gauss::GaussRational;
pub use poly::{real_poly, UniPoly};
pub use rational::{
    binomial, factorial, fmt_rational, from_f64, int, parse_rational, rat, to_f64, Rational,
};
pub use shifted::{binom_shifted, ShiftedPoly};
pub use sqrt2::QuadSqrt2;

/// Complex double used at every numeric evaluation boundary.
pub type ComplexF = num_complex::Complex64;
