//! Integer-order Bessel functions of the first kind.
//!
//! Three independent evaluators are provided so they can be checked against
//! each other: the power series, the trapezoidal rule on the periodic
//! integral representation, and Miller's downward recurrence normalized by
//! `J_0 + 2 Σ J_{2k} = 1`. On top of these sit the classical identities:
//! the generating function, Jacobi–Anger expansions, the addition formula,
//! Taylor translation and the Bessel ODE.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Numeric knobs for Bessel evaluation and truncated identity sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselEvalConfig {
    /// Relative stopping threshold for the power series.
    pub series_tol: f64,
    /// Initial node count for the adaptive quadrature.
    pub quad_nodes: usize,
    /// Node cap for the adaptive quadrature.
    pub quad_max_nodes: usize,
    /// Extra orders added to the start of Miller's recurrence.
    pub miller_pad: usize,
    /// Truncation `|k| ≤ K` in the addition formula.
    pub addition_terms: usize,
    /// Truncation `|n| ≤ N` in the Jacobi–Anger sums.
    pub jacobi_anger_terms: usize,
    /// Truncation `m ≤ M` in the Taylor translation.
    pub translation_terms: usize,
}

impl Default for BesselEvalConfig {
    fn default() -> Self {
        Self {
            series_tol: 1e-17,
            quad_nodes: 64,
            quad_max_nodes: 4096,
            miller_pad: 20,
            addition_terms: 30,
            jacobi_anger_terms: 40,
            translation_terms: 30,
        }
    }
}

impl BesselEvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_tol > 0.0) {
            return Err(Error::arg("series_tol", "must be positive"));
        }
        if self.quad_nodes < 8 || !self.quad_nodes.is_multiple_of(2) {
            return Err(Error::arg("quad_nodes", "must be even and at least 8"));
        }
        if self.quad_max_nodes < self.quad_nodes {
            return Err(Error::arg("quad_max_nodes", "must not be below quad_nodes"));
        }
        if self.miller_pad < 10 {
            return Err(Error::arg("miller_pad", "must be at least 10"));
        }
        Ok(())
    }
}

/// Above this `|x|` the default evaluator switches from the series to
/// Miller's recurrence; the alternating series loses roughly `e^{|x|}` ulps.
const SERIES_CUTOFF: f64 = 8.0;
const MAX_SERIES_TERMS: usize = 1000;
const RESCALE_AT: f64 = 1e250;

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("x = {x} is not finite")))
    }
}

fn parity(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Power series `Σ_m (-1)^m (x/2)^{2m+n} / (m! (m+n)!)` for `n ≥ 0`.
pub fn j_series(n: u32, x: f64, tol: f64) -> Result<f64> {
    check_finite(x)?;
    if x < 0.0 {
        return Ok(parity(n as i64) * j_series(n, -x, tol)?);
    }
    let half = x / 2.0;
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    // Neumaier-compensated sum of the alternating terms
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let q = -half * half;
    for m in 0..MAX_SERIES_TERMS {
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        let next = term * q / ((m + 1) as f64 * (m + 1 + n as usize) as f64);
        if next.abs() < tol * (1.0 + (sum + comp).abs()) {
            return Ok(sum + comp);
        }
        term = next;
    }
    Err(Error::Accuracy(format!("series for J_{n}({x}) did not settle")))
}

/// Periodic trapezoidal rule with `nodes` points on
/// `J_n(x) = (1/2π) ∫_{-π}^{π} e^{-i(nτ - x sin τ)} dτ`.
pub fn j_integral(n: i64, x: f64, nodes: usize) -> Result<f64> {
    check_finite(x)?;
    if nodes < 8 || !nodes.is_multiple_of(2) {
        return Err(Error::arg("M", format!("node count {nodes} must be even and >= 8")));
    }
    let step = 2.0 * PI / nodes as f64;
    let (mut re, mut im) = (0.0, 0.0);
    for j in 0..nodes {
        let tau = -PI + j as f64 * step;
        let phase = n as f64 * tau - x * tau.sin();
        re += phase.cos();
        im -= phase.sin();
    }
    re /= nodes as f64;
    im /= nodes as f64;
    if im.abs() > 1e-12 * (1.0 + re.abs()) {
        return Err(Error::Accuracy(format!(
            "imaginary residue {im:e} for J_{n}({x}) with {nodes} nodes"
        )));
    }
    Ok(re)
}

/// [`j_integral`] with node doubling until successive results differ by
/// less than `1e-14`.
pub fn j_integral_adaptive(n: i64, x: f64, cfg: &BesselEvalConfig) -> Result<f64> {
    let mut nodes = cfg.quad_nodes;
    let mut prev = j_integral(n, x, nodes)?;
    while nodes < cfg.quad_max_nodes {
        nodes *= 2;
        let cur = j_integral(n, x, nodes)?;
        if (cur - prev).abs() < 1e-14 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Accuracy(format!(
        "quadrature for J_{n}({x}) not converged at {nodes} nodes"
    )))
}

/// `J_0(x) … J_{n_max}(x)` by downward recurrence
/// `J_{k-1} = (2k/x) J_k - J_{k+1}` from order `m + pad + ceil(sqrt(60 m))`,
/// `m = max(n_max, ceil(x))`.
pub fn j_miller(n_max: usize, x: f64, pad: usize) -> Result<Vec<f64>> {
    check_finite(x)?;
    if x == 0.0 {
        let mut out = vec![0.0; n_max + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    if x < 0.0 {
        let mut out = j_miller(n_max, -x, pad)?;
        for (k, v) in out.iter_mut().enumerate() {
            *v *= parity(k as i64);
        }
        return Ok(out);
    }
    let m = n_max.max(x.ceil() as usize);
    let start = m + pad + (60.0 * m as f64).sqrt().ceil() as usize;
    let mut values = vec![0.0; n_max + 1];
    let mut above = 0.0;
    let mut cur = 1.0;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        if k <= n_max {
            values[k] = cur;
        }
        let below = (2.0 * k as f64 / x) * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE_AT {
            let s = 1.0 / RESCALE_AT;
            cur *= s;
            above *= s;
            norm *= s;
            for v in values.iter_mut() {
                *v *= s;
            }
        }
    }
    values[0] = cur;
    norm += cur;
    Ok(values.into_iter().map(|v| v / norm).collect())
}

/// `J_n(x)` for any integer order, using `J_{-n} = (-1)^n J_n`.
pub fn j_signed(n: i64, x: f64) -> Result<f64> {
    j_signed_with(n, x, &BesselEvalConfig::default())
}

pub fn j_signed_with(n: i64, x: f64, cfg: &BesselEvalConfig) -> Result<f64> {
    let order = n.unsigned_abs() as usize;
    let sign = if n < 0 { parity(n) } else { 1.0 };
    let value = if x.abs() <= SERIES_CUTOFF {
        j_series(order as u32, x, cfg.series_tol)?
    } else {
        j_miller(order, x, cfg.miller_pad)?[order]
    };
    Ok(sign * value)
}

fn binomial_f64(m: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (m - j) as f64 / (j + 1) as f64)
}

/// `d^m/dx^m J_n(x) = 2^{-m} Σ_k (-1)^k C(m,k) J_{n-m+2k}(x)`.
pub fn j_derivative_m(n: i64, m: u32, x: f64) -> Result<f64> {
    let mut sum = 0.0;
    for k in 0..=m {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial_f64(m, k) * j_signed(n - m as i64 + 2 * k as i64, x)?;
    }
    Ok(sum * 0.5f64.powi(m as i32))
}

/// Truncated addition formula `Σ_{|k| ≤ K} J_{n-k}(x) J_k(y)`.
pub fn j_addition(n: i64, x: f64, y: f64, terms: usize) -> Result<f64> {
    let k_max = terms as i64;
    let mut sum = 0.0;
    for k in -k_max..=k_max {
        sum += j_signed(n - k, x)? * j_signed(k, y)?;
    }
    Ok(sum)
}

/// Partial sums `(Σ i^n J_n(x) e^{iny}, Σ J_n(x) e^{iny})` over `|n| ≤ N`,
/// approximating `e^{ix cos y}` and `e^{ix sin y}`.
pub fn jacobi_anger_partial(x: f64, y: f64, terms: usize) -> Result<(Complex64, Complex64)> {
    let n_max = terms as i64;
    let mut cos_sum = Complex64::new(0.0, 0.0);
    let mut sin_sum = Complex64::new(0.0, 0.0);
    for n in -n_max..=n_max {
        let jn = j_signed(n, x)?;
        let wave = Complex64::from_polar(1.0, n as f64 * y);
        let i_pow = Complex64::i().powi(n.rem_euclid(4) as i32);
        cos_sum += i_pow * jn * wave;
        sin_sum += jn * wave;
    }
    Ok((cos_sum, sin_sum))
}

/// Taylor translation `Σ_{m ≤ M} y^m/m! J_n^{(m)}(x)`.
pub fn j_translate_partial(n: i64, x: f64, y: f64, terms: usize) -> Result<f64> {
    let mut sum = 0.0;
    let mut weight = 1.0;
    for m in 0..=terms {
        if m > 0 {
            weight *= y / m as f64;
        }
        if weight == 0.0 {
            break;
        }
        sum += weight * j_derivative_m(n, m as u32, x)?;
    }
    Ok(sum)
}

/// `x² J_n'' + x J_n' + (x² - n²) J_n` for `x > 0`.
pub fn j_ode_residual(n: i64, x: f64) -> Result<f64> {
    check_finite(x)?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("ODE residual needs x > 0, got {x}")));
    }
    let y = j_signed(n, x)?;
    let d1 = j_derivative_m(n, 1, x)?;
    let d2 = j_derivative_m(n, 2, x)?;
    Ok(x * x * d2 + x * d1 + (x * x - (n * n) as f64) * y)
}

/// Generating-function partial sum `Σ_{|n| ≤ N} t^n J_n(x)`.
pub fn bessel_genfun_partial(x: f64, t: f64, terms: usize) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::Singularity("generating function needs t != 0".into()));
    }
    let n_max = terms as i64;
    let mut sum = 0.0;
    for n in -n_max..=n_max {
        sum += t.powi(n as i32) * j_signed(n, x)?;
    }
    Ok(sum)
}

/// `exp(x(t - 1/t)/2)`.
pub fn bessel_genfun_closed(x: f64, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::Singularity("generating function needs t != 0".into()));
    }
    Ok((x * (t - 1.0 / t) / 2.0).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath besselj at 30 digits
    const J0_1: f64 = 0.765_197_686_557_966_6;
    const J1_1: f64 = 0.440_050_585_744_933_5;

    /// Independent oracle: exact rational partial sum of the series at x = 1.
    fn series_oracle_at_one(n: u32, terms: u32) -> f64 {
        use crate::algebra::{factorial, to_f64, Rational};
        use num_bigint::BigInt;
        let mut sum = Rational::from_integer(0.into());
        for m in 0..terms {
            let den = BigInt::from(2).pow(2 * m + n) * factorial(m) * factorial(m + n);
            let term = Rational::new(BigInt::from(if m % 2 == 0 { 1 } else { -1 }), den);
            sum += term;
        }
        to_f64(&sum)
    }

    #[test]
    fn series_examples() {
        assert_eq!(j_series(0, 0.0, 1e-17).unwrap(), 1.0);
        assert_eq!(j_series(2, 0.0, 1e-17).unwrap(), 0.0);
        let oracle = series_oracle_at_one(0, 20);
        assert!((oracle - J0_1).abs() < 1e-16);
        assert!((j_series(0, 1.0, 1e-17).unwrap() - oracle).abs() < 1e-15);
        assert!((j_series(1, 1.0, 1e-17).unwrap() - series_oracle_at_one(1, 20)).abs() < 1e-15);
        assert!(j_series(0, f64::NAN, 1e-17).is_err());
        assert!((j_series(1, -1.0, 1e-17).unwrap() + J1_1).abs() < 1e-15);
    }

    #[test]
    fn integral_examples() {
        assert!((j_integral(0, 0.0, 8).unwrap() - 1.0).abs() < 1e-15);
        assert!(j_integral(1, 0.0, 8).unwrap().abs() < 1e-15);
        let s = j_series(0, 1.0, 1e-17).unwrap();
        assert!((j_integral(0, 1.0, 64).unwrap() - s).abs() < 1e-13);
        assert!(j_integral(0, 1.0, 7).is_err());
        assert!(j_integral(0, 1.0, 6).is_err());
        let cfg = BesselEvalConfig::default();
        assert!((j_integral_adaptive(10, 10.0, &cfg).unwrap() - 0.207_486_106_633_358_86).abs() < 1e-14);
    }

    #[test]
    fn miller_examples() {
        let m = j_miller(5, 1.0, 20).unwrap();
        for (n, v) in m.iter().enumerate() {
            let s = j_series(n as u32, 1.0, 1e-17).unwrap();
            assert!((v - s).abs() < 1e-12, "n = {n}");
        }
        assert_eq!(j_miller(3, 0.0, 20).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        let m = j_miller(10, 10.0, 20).unwrap();
        for (n, v) in m.iter().enumerate() {
            let s = j_series(n as u32, 10.0, 1e-17).unwrap();
            assert!((v - s).abs() < 1e-12, "n = {n}: {v} vs {s}");
        }
        // large dynamic range; compare relative to a fully converged series
        let m = j_miller(30, 0.01, 20).unwrap();
        assert!((m[0] - j_series(0, 0.01, 1e-17).unwrap()).abs() < 1e-15);
        assert!((m[30] / j_series(30, 0.01, 1e-300).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn miller_rescales_without_overflow() {
        let m = j_miller(150, 0.5, 20).unwrap();
        assert!(m.iter().all(|v| v.is_finite()));
        assert!((m[0] - j_series(0, 0.5, 1e-17).unwrap()).abs() < 1e-15);
        assert!((m[5] / 8.053_627_241_357_474e-6 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_orders() {
        assert_eq!(j_signed(-1, 1.0).unwrap(), -j_signed(1, 1.0).unwrap());
        assert_eq!(j_signed(-2, 3.3).unwrap(), j_signed(2, 3.3).unwrap());
        assert!((j_signed(0, 1.0).unwrap() - J0_1).abs() < 1e-15);
    }

    fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64, order: u32) -> f64 {
        match order {
            1 => (f(x + h) - f(x - h)) / (2.0 * h),
            2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
            _ => unreachable!(),
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(j_derivative_m(4, 0, 2.5).unwrap(), j_signed(4, 2.5).unwrap());
        let d = j_derivative_m(0, 1, 1.0).unwrap();
        assert!((d + J1_1).abs() < 1e-15);
        let fd = central_diff(|t| j_series(0, t, 1e-17).unwrap(), 1.0, 1e-5, 1);
        assert!((d - fd).abs() < 1e-8);
        let d2 = j_derivative_m(3, 2, 2.0).unwrap();
        let fd2 = central_diff(|t| j_series(3, t, 1e-17).unwrap(), 2.0, 1e-4, 2);
        assert!((d2 - fd2).abs() < 1e-6);
        assert!((d2 - 0.081_469_484_640_985_24).abs() < 1e-14);
    }

    #[test]
    fn addition_examples() {
        assert_eq!(j_addition(2, 1.3, 0.0, 10).unwrap(), j_signed(2, 1.3).unwrap());
        let v = j_addition(0, 1.1, 0.7, 30).unwrap();
        assert!((v - 0.339_986_411_042_558_3).abs() < 1e-12);
        let v = j_addition(3, 2.0, 2.0, 40).unwrap();
        assert!((v - 0.430_171_473_875_621_9).abs() < 1e-12);
    }

    #[test]
    fn jacobi_anger_examples() {
        let (c, s) = jacobi_anger_partial(0.0, 0.4, 5).unwrap();
        assert_eq!((c, s), (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)));
        let (_, s) = jacobi_anger_partial(2.0, 0.0, 40).unwrap();
        assert!((s - 1.0).norm() < 1e-12);
        let y = PI / 3.0;
        let (c, s) = jacobi_anger_partial(2.0, y, 40).unwrap();
        assert!((c - Complex64::new(0.0, 2.0 * y.cos()).exp()).norm() < 1e-12);
        assert!((s - Complex64::new(0.0, 2.0 * y.sin()).exp()).norm() < 1e-12);
    }

    #[test]
    fn translation_examples() {
        assert_eq!(j_translate_partial(1, 2.0, 0.0, 30).unwrap(), j_signed(1, 2.0).unwrap());
        let v = j_translate_partial(0, 1.0, 0.5, 30).unwrap();
        assert!((v - 0.511_827_671_735_918_1).abs() < 1e-10);
        let v = j_translate_partial(2, 2.0, -0.3, 30).unwrap();
        assert!((v - 0.281_738_942_352_741_3).abs() < 1e-10);
    }

    #[test]
    fn ode_examples() {
        for (n, x) in [(0, 1.0), (3, 5.0), (0, 0.01)] {
            let r = j_ode_residual(n, x).unwrap();
            assert!(r.abs() <= 1e-10 * (1.0 + x * x), "n = {n}, x = {x}: {r}");
        }
        assert!(j_ode_residual(0, 0.0).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(BesselEvalConfig::default().validate().is_ok());
        let bad = BesselEvalConfig { quad_nodes: 10 + 1, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = BesselEvalConfig { miller_pad: 3, ..Default::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn generating_function() {
        for t in [0.7, 1.3, -0.5] {
            let err = bessel_genfun_partial(1.0, t, 40).unwrap() - bessel_genfun_closed(1.0, t).unwrap();
            assert!(err.abs() < 1e-12, "t = {t}: {err}");
        }
        assert!(bessel_genfun_partial(1.0, 0.0, 4).is_err());
    }
}
