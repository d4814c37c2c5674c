//! Hermite and associated Laguerre polynomial families.
//!
//! Each family is generated by independent routes (three-term recurrence,
//! Rodrigues-type iteration, and the operator form acting on `1`) so the
//! routes can be compared exactly.

mod hermite;
mod laguerre;
mod oscillator;

pub use hermite::{
    even_hermite_closed, even_hermite_partial, hermite_addition_check, hermite_genfun_closed,
    hermite_genfun_partial, hermite_ode_residual, hermite_operator, hermite_recurrence,
    hermite_rodrigues, hermite_values, HermiteSet,
};
pub use laguerre::{
    laguerre_explicit, laguerre_genfun_closed, laguerre_genfun_partial, laguerre_operator,
    laguerre_recurrence, laguerre_recurrence_residual, laguerre_values, LaguerreSet,
};
pub use oscillator::{
    hermite_expand, psi_derivative, psi_eval, psi_normalizer, DEFAULT_EXPAND_HALF_WIDTH,
    DEFAULT_EXPAND_NODES,
};
