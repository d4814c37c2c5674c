use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::gauss::GaussRational;
use super::rational::{fmt_rational, Rational};

/// Sparse univariate polynomial `Σ c_k x^k` with exact Gaussian-rational
/// coefficients. Zero coefficients are never stored, so structural equality
/// is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, GaussRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::monomial(0, c)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, GaussRational::one())
    }

    pub fn monomial(degree: u32, c: GaussRational) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, &c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, GaussRational)>,
    {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    /// Builds a polynomial from integer coefficients in ascending order.
    pub fn from_ints(ascending: &[i64]) -> Self {
        Self::from_terms(
            ascending
                .iter()
                .enumerate()
                .map(|(k, &c)| (k as u32, GaussRational::from_int(c))),
        )
    }

    pub fn add_term(&mut self, degree: u32, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert_with(GaussRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> GaussRational {
        self.coeffs.get(&degree).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn leading_coeff(&self) -> GaussRational {
        self.coeffs.values().next_back().cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &GaussRational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.values().all(GaussRational::is_real)
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k + shift, c.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(&k, _)| k > 0)
                .map(|(&k, c)| (k - 1, c * &GaussRational::from_int(k as i64))),
        )
    }

    pub fn nth_derivative(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// `q(-x)`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k, if k % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x0: &GaussRational) -> GaussRational {
        let Some(top) = self.degree() else {
            return GaussRational::zero();
        };
        let mut acc = GaussRational::zero();
        for k in (0..=top).rev() {
            acc = &acc * x0;
            if let Some(c) = self.coeffs.get(&k) {
                acc += c;
            }
        }
        acc
    }

    pub fn eval_complex(&self, x0: Complex64) -> Complex64 {
        let Some(top) = self.degree() else {
            return Complex64::zero();
        };
        let mut acc = Complex64::zero();
        for k in (0..=top).rev() {
            acc *= x0;
            if let Some(c) = self.coeffs.get(&k) {
                acc += c.to_complex();
            }
        }
        acc
    }

    /// Dense ascending coefficients converted to floats.
    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        let n = self.degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![Complex64::zero(); n];
        for (&k, c) in &self.coeffs {
            out[k as usize] = c.to_complex();
        }
        out
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &rhs.coeffs {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.scale(&-GaussRational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Canonical text: descending powers, exact coefficients, `" + "` / `" - "`
/// separators, e.g. `1/2*x^2 - 2*x + 1`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (&k, c)) in self.coeffs.iter().rev().enumerate() {
            let (negative, mag) = if c.is_real() && c.re.is_negative() {
                (true, GaussRational::real(-c.re.clone()))
            } else {
                (false, c.clone())
            };
            let sep = match (idx, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let coeff = if mag.is_real() {
                fmt_rational(&mag.re)
            } else {
                format!("({mag})")
            };
            let body = match k {
                0 => coeff,
                _ => {
                    let var = if k == 1 { "x".to_string() } else { format!("x^{k}") };
                    if mag.is_one() {
                        var
                    } else {
                        format!("{coeff}*{var}")
                    }
                }
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

/// Convenience: the real rational polynomial with the given ascending
/// coefficients.
pub fn real_poly(ascending: &[Rational]) -> UniPoly {
    UniPoly::from_terms(
        ascending
            .iter()
            .enumerate()
            .map(|(k, c)| (k as u32, GaussRational::real(c.clone()))),
    )
}
