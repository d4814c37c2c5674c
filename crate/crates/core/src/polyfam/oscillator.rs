//! Oscillator functions `ψ_n(x) = π^{-1/4} (2^n n!)^{-1/2} e^{-x²/2} H_n(x)`
//! and expansion of functions in that orthonormal basis.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::hermite::hermite_values;
use crate::error::{Error, Result};

pub const DEFAULT_EXPAND_HALF_WIDTH: f64 = 10.0;
pub const DEFAULT_EXPAND_NODES: usize = 400;

/// `π^{-1/4} / sqrt(2^n n!)`, evaluated in log space.
pub fn psi_normalizer(n: usize) -> f64 {
    let ln_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    (-0.25 * PI.ln() - 0.5 * (n as f64 * LN_2 + ln_fact)).exp()
}

pub fn psi_eval(n: usize, x: Complex64) -> Complex64 {
    let h = hermite_values(n, x);
    psi_normalizer(n) * (-x * x / 2.0).exp() * h[n]
}

/// `ψ_n'` from `H_n' = 2n H_{n-1}`:
/// `ψ_n' = N_n e^{-x²/2} (2n H_{n-1} - x H_n)`.
pub fn psi_derivative(n: usize, x: Complex64) -> Complex64 {
    let h = hermite_values(n, x);
    let lower = if n == 0 { Complex64::new(0.0, 0.0) } else { 2.0 * n as f64 * h[n - 1] };
    psi_normalizer(n) * (-x * x / 2.0).exp() * (lower - x * h[n])
}

/// Coefficients `c_n = ∫ f ψ_n dx`, `n = 0..=n_max`, by the trapezoidal rule
/// with `nodes` equally spaced points on `[-half_width, half_width]`.
pub fn hermite_expand<F>(f: F, n_max: usize, half_width: f64, nodes: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(Error::arg("L", format!("half width {half_width} must be positive")));
    }
    if nodes < 2 {
        return Err(Error::arg("M", format!("need at least 2 nodes, got {nodes}")));
    }
    let norms: Vec<f64> = (0..=n_max).map(psi_normalizer).collect();
    let h = 2.0 * half_width / (nodes - 1) as f64;
    let mut coeffs = vec![0.0; n_max + 1];
    for j in 0..nodes {
        let x = -half_width + j as f64 * h;
        let w = if j == 0 || j == nodes - 1 { 0.5 * h } else { h };
        let fx = f(x);
        if fx == 0.0 {
            continue;
        }
        let gauss = (-x * x / 2.0).exp();
        let hv = hermite_values(n_max, Complex64::new(x, 0.0));
        for (n, c) in coeffs.iter_mut().enumerate() {
            *c += w * fx * norms[n] * gauss * hv[n].re;
        }
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn point_values() {
        assert!((psi_eval(0, re(0.0)).re - 0.751_125_544_5).abs() < 1e-10);
        assert_eq!(psi_eval(1, re(0.0)).re, 0.0);
        assert_eq!(psi_derivative(0, re(0.0)).re, 0.0);
    }

    #[test]
    fn normalizer_matches_direct_formula() {
        for n in 0..12usize {
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let direct = PI.powf(-0.25) / (2f64.powi(n as i32) * fact).sqrt();
            assert!((psi_normalizer(n) / direct - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn expansion_examples() {
        let c = hermite_expand(|x| psi_eval(3, re(x)).re, 8, 10.0, 400).unwrap();
        for (n, cn) in c.iter().enumerate() {
            let want = if n == 3 { 1.0 } else { 0.0 };
            assert!((cn - want).abs() < 1e-8, "c_{n} = {cn}");
        }
        let c = hermite_expand(|x| (-x * x / 2.0).exp(), 2, 10.0, 400).unwrap();
        assert!((c[0] - 1.331_335_363_8).abs() < 1e-9);
        let c = hermite_expand(|_| 0.0, 4, 10.0, 400).unwrap();
        assert!(c.iter().all(|&v| v == 0.0));
        assert!(hermite_expand(|_| 0.0, 4, -1.0, 400).is_err());
        assert!(hermite_expand(|_| 0.0, 4, 1.0, 1).is_err());
    }
}
