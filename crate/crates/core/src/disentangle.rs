//! Factoring `exp{t(α x² + β(xp+px) + γ p²)}` as
//! `exp(f x²) · exp(g(xp+px)) · exp(h p²)`.
//!
//! Differentiating the ordered product in `t` and moving every factor to the
//! left with conjugation gives, in the basis `{x², xp+px, p²}`,
//!
//! ```text
//! f' + 4if g' - 4f² e^{4ig} h' = α
//!      g'    + 2if e^{4ig} h' = β
//!                e^{4ig} h' = γ
//! ```
//!
//! which is triangular:
//! `h' = γ e^{-4ig}`, `g' = β - 2iγf`, `f' = α - 4iβf - 4γf²`.
//! [`coefficient_matching`] rebuilds the matrix above from the Weyl-algebra
//! conjugations so the hard-coded right-hand side can be checked against it.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::{from_f64, GaussRational, UniPoly};
use crate::error::{Error, Result};
use crate::weyl::{hadamard_conjugate, ConjugationResult, WeylOp, DEFAULT_MAX_DEPTH};

pub const DEFAULT_RK4_STEPS: usize = 10_000;

/// Coefficients of `x²`, `xp+px` and `p²` in the exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadExponent {
    pub a_x2: Complex64,
    pub b_mix: Complex64,
    pub c_p2: Complex64,
}

impl QuadExponent {
    pub fn new(a_x2: Complex64, b_mix: Complex64, c_p2: Complex64) -> Self {
        Self { a_x2, b_mix, c_p2 }
    }

    /// `-(p² - 4x² + 2i(xp+px))`, the exponent whose action on `1` sums
    /// `Σ t^n/n! H_{2n}(x)`.
    pub fn even_hermite() -> Self {
        Self::new(
            Complex64::new(4.0, 0.0),
            Complex64::new(0.0, -2.0),
            Complex64::new(-1.0, 0.0),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.a_x2.is_finite() && self.b_mix.is_finite() && self.c_p2.is_finite()
    }

    /// The exponent as an exact Weyl operator (floats converted exactly).
    pub fn to_weyl(&self) -> Result<WeylOp> {
        if !self.is_finite() {
            return Err(Error::arg("exponent", "coefficients must be finite"));
        }
        let a = GaussRational::from_complex(self.a_x2)?;
        let b = GaussRational::from_complex(self.b_mix)?;
        let c = GaussRational::from_complex(self.c_p2)?;
        Ok(&(&WeylOp::x_pow(2).scale(&a) + &WeylOp::xp_plus_px().scale(&b))
            + &WeylOp::p_pow(2).scale(&c))
    }
}

/// `(f, g, h)` at parameter value `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactoredForm {
    pub f: Complex64,
    pub g: Complex64,
    pub h: Complex64,
    pub t: f64,
}

impl FactoredForm {
    pub fn origin() -> Self {
        let z = Complex64::zero();
        Self { f: z, g: z, h: z, t: 0.0 }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.f - other.f)
            .norm()
            .max((self.g - other.g).norm())
            .max((self.h - other.h).norm())
    }
}

/// `e^{c x²} · poly(x)`, with `poly` given by ascending coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpQuadPoly {
    pub quad_coeff: Complex64,
    pub poly: Vec<Complex64>,
}

impl ExpQuadPoly {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let p = self.poly.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c);
        (self.quad_coeff * x * x).exp() * p
    }
}

/// Closed-form factor functions for [`QuadExponent::even_hermite`]:
/// `f = 4t/(4t+1)`, `g = -(i/2) ln(4t+1)`, `h = -t/(4t+1)`.
pub fn disentangle_closed_paper(t: f64) -> Result<FactoredForm> {
    if !t.is_finite() {
        return Err(Error::arg("t", "must be finite"));
    }
    let base = 4.0 * t + 1.0;
    if base <= 0.0 {
        return Err(Error::Singularity(format!("4t + 1 = {base} <= 0 at t = {t}")));
    }
    Ok(FactoredForm {
        f: Complex64::new(4.0 * t / base, 0.0),
        g: Complex64::new(0.0, -0.5 * base.ln()),
        h: Complex64::new(-t / base, 0.0),
        t,
    })
}

/// Right-hand side `(f', g', h')` of the triangular system.
pub fn ode_rhs(q: &QuadExponent, f: Complex64, g: Complex64) -> (Complex64, Complex64, Complex64) {
    let i = Complex64::i();
    let (a, b, c) = (q.a_x2, q.b_mix, q.c_p2);
    let df = a - 4.0 * i * b * f - 4.0 * c * f * f;
    let dg = b - 2.0 * i * c * f;
    let dh = c * (-4.0 * i * g).exp();
    (df, dg, dh)
}

/// Classical RK4 from `(0, 0, 0)` to `t` in `steps` equal steps.
pub fn disentangle_ode(q: &QuadExponent, t: f64, steps: usize) -> Result<FactoredForm> {
    if steps == 0 {
        return Err(Error::arg("steps", "must be at least 1"));
    }
    if !t.is_finite() || !q.is_finite() {
        return Err(Error::arg("t", "time and coefficients must be finite"));
    }
    if t == 0.0 {
        return Ok(FactoredForm::origin());
    }
    let dt = t / steps as f64;
    let rhs = |s: [Complex64; 3]| {
        let (df, dg, dh) = ode_rhs(q, s[0], s[1]);
        [df, dg, dh]
    };
    let axpy = |s: [Complex64; 3], k: [Complex64; 3], w: f64| {
        [s[0] + k[0] * w, s[1] + k[1] * w, s[2] + k[2] * w]
    };
    let mut state = [Complex64::zero(); 3];
    for step in 0..steps {
        let k1 = rhs(state);
        let k2 = rhs(axpy(state, k1, dt / 2.0));
        let k3 = rhs(axpy(state, k2, dt / 2.0));
        let k4 = rhs(axpy(state, k3, dt));
        for j in 0..3 {
            state[j] += (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) * (dt / 6.0);
        }
        if !state.iter().all(|z| z.is_finite()) {
            return Err(Error::BlowUp { t: dt * step as f64 });
        }
    }
    Ok(FactoredForm { f: state[0], g: state[1], h: state[2], t })
}

/// The linear system relating `(f', g', e^{λg} h')` to `(α, β, γ)` at a given
/// exact `f`, rebuilt from conjugations in the Weyl algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMatching {
    /// `rows[r][c]`: row `r` is the coefficient of `x²`, `xp+px`, `p²`;
    /// column `c` multiplies `f'`, `g'`, `e^{λg} h'`.
    pub rows: [[GaussRational; 3]; 3],
    /// `λ` in `e^{g(xp+px)} p² e^{-g(xp+px)} = e^{λg} p²`.
    pub eigenvalue: GaussRational,
}

fn coords(op: &WeylOp) -> Result<[GaussRational; 3]> {
    let (a, b, c) = op
        .quadratic_coords()
        .ok_or_else(|| Error::Internal(format!("{op} left the quadratic span")))?;
    Ok([a, b, c])
}

pub fn coefficient_matching(f: &GaussRational) -> Result<CoefficientMatching> {
    let x2 = WeylOp::x_pow(2);
    let mix = WeylOp::xp_plus_px();
    let p2 = WeylOp::p_pow(2);
    let terminated = |r: ConjugationResult| match r {
        ConjugationResult::Terminated(op) => Ok(op),
        ConjugationResult::Eigen { .. } => Err(Error::Internal("unexpected eigen case".into())),
    };
    let col_f = coords(&x2)?;
    let col_g = coords(&terminated(hadamard_conjugate(&x2, &mix, f, DEFAULT_MAX_DEPTH)?)?)?;
    let col_h = coords(&terminated(hadamard_conjugate(&x2, &p2, f, DEFAULT_MAX_DEPTH)?)?)?;
    let eigenvalue = match hadamard_conjugate(&mix, &p2, &GaussRational::one(), DEFAULT_MAX_DEPTH)? {
        ConjugationResult::Eigen { lambda, op } if op == p2 => lambda,
        other => return Err(Error::Internal(format!("expected eigen conjugation, got {other:?}"))),
    };
    let rows = std::array::from_fn(|r| [col_f[r].clone(), col_g[r].clone(), col_h[r].clone()]);
    Ok(CoefficientMatching { rows, eigenvalue })
}

impl CoefficientMatching {
    /// Back-substitution for `(f', g', e^{λg} h')` given the exponent
    /// coordinates; requires the upper-triangular unit-diagonal shape.
    pub fn solve(&self, rhs: &[GaussRational; 3]) -> Result<[GaussRational; 3]> {
        let r = &self.rows;
        let unit = r[0][0].is_one() && r[1][1].is_one() && r[2][2].is_one();
        let upper = r[1][0].is_zero() && r[2][0].is_zero() && r[2][1].is_zero();
        if !(unit && upper) {
            return Err(Error::Internal("matching system is not unit upper-triangular".into()));
        }
        let w = rhs[2].clone();
        let dg = &rhs[1] - &(&r[1][2] * &w);
        let df = &(&rhs[0] - &(&r[0][1] * &dg)) - &(&r[0][2] * &w);
        Ok([df, dg, w])
    }
}

/// Action of the factored operator on `q`: `exp(h p²)` as a finite
/// derivative series, `exp(g(xp+px))` diagonally (`x^k ↦ e^{-ig(2k+1)} x^k`),
/// and `exp(f x²)` kept as the Gaussian prefactor.
pub fn apply_factored(form: &FactoredForm, q: &UniPoly) -> ExpQuadPoly {
    // exp(h p²) = Σ_m (-h)^m/m! d^{2m}/dx^{2m}
    let mut smoothed = q.to_complex_coeffs();
    if smoothed.is_empty() {
        smoothed.push(Complex64::zero());
    }
    let mut deriv = q.clone();
    let mut weight = Complex64::one();
    let mut m = 0usize;
    loop {
        deriv = deriv.nth_derivative(2);
        if deriv.is_zero() {
            break;
        }
        m += 1;
        weight *= -form.h / m as f64;
        for (k, c) in deriv.to_complex_coeffs().into_iter().enumerate() {
            smoothed[k] += weight * c;
        }
    }
    let i = Complex64::i();
    let poly = smoothed
        .into_iter()
        .enumerate()
        .map(|(k, c)| c * (-i * form.g * (2 * k + 1) as f64).exp())
        .collect();
    ExpQuadPoly { quad_coeff: form.f, poly }
}

/// Truncated Taylor series `Σ_{m ≤ N} t^m/m! Op^m q` of the unfactored
/// exponential, computed exactly.
pub fn exp_taylor_apply(q_exp: &QuadExponent, t: f64, q: &UniPoly, order: usize) -> Result<UniPoly> {
    let op = q_exp.to_weyl()?;
    let t = GaussRational::real(from_f64(t)?);
    // Op^m q stays small when the exponent is; fold in t^m/m! only at the end
    let mut power = q.clone();
    let mut weight = GaussRational::one();
    let mut sum = q.clone();
    for m in 1..=order {
        power = op.apply_to_poly(&power);
        weight = &(&weight * &t) / &GaussRational::from_int(m as i64);
        sum = &sum + &power.scale(&weight);
    }
    Ok(sum)
}

/// `Σ t^n/n! H_{2n}(x)` through the factored operator acting on `1`.
pub fn even_hermite_via_disentangle(t: f64, x0: f64) -> Result<f64> {
    let form = disentangle_closed_paper(t)?;
    let value = apply_factored(&form, &UniPoly::one()).eval(Complex64::new(x0, 0.0));
    Ok(value.re)
}
