use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};

use super::gauss::GaussRational;
use super::poly::UniPoly;
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

/// Polynomial in fractional powers `Σ c_k x^{α+k}` sharing one fixed offset
/// `α`. Used to push `x^{n+α}` through differential operators when `α` is
/// not an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPoly {
    alpha: Rational,
    coeffs: BTreeMap<i64, GaussRational>,
}

impl ShiftedPoly {
    pub fn zero(alpha: Rational) -> Self {
        Self { alpha, coeffs: BTreeMap::new() }
    }

    /// `c · x^{α+k}`.
    pub fn monomial(alpha: Rational, k: i64, c: GaussRational) -> Self {
        let mut s = Self::zero(alpha);
        s.add_term(k, &c);
        s
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn coeff(&self, k: i64) -> GaussRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, k: i64, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(GaussRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    fn check_offset(&self, other: &Self) -> Result<()> {
        if self.alpha != other.alpha {
            return Err(Error::arg(
                "alpha",
                format!(
                    "cannot combine offsets {} and {}",
                    fmt_rational(&self.alpha),
                    fmt_rational(&other.alpha)
                ),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_offset(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-GaussRational::one()))
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        let mut out = Self::zero(self.alpha.clone());
        for (&k, c) in &self.coeffs {
            out.add_term(k, &(c * s));
        }
        out
    }

    /// Power rule: `c x^{α+k} ↦ c(α+k) x^{α+k-1}`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.alpha.clone());
        for (&k, c) in &self.coeffs {
            let factor = GaussRational::real(&self.alpha + Rational::from_integer(k.into()));
            out.add_term(k - 1, &(c * &factor));
        }
        out
    }

    /// Multiplies by `x^β`, folding the integer part of the new offset into
    /// the term indices so the offset stays in `[0, 1)`.
    pub fn times_power(&self, beta: &Rational) -> Self {
        let total = &self.alpha + beta;
        let whole = total.floor();
        let shift = whole.to_integer().to_i64().expect("exponent offset out of range");
        let mut out = Self::zero(total - whole);
        for (&k, c) in &self.coeffs {
            out.add_term(k + shift, c);
        }
        out
    }

    /// Converts to an ordinary polynomial; every surviving exponent must be a
    /// nonnegative integer.
    pub fn to_unipoly(&self) -> Result<UniPoly> {
        let normal = self.times_power(&Rational::zero());
        if !normal.alpha.is_zero() && !normal.is_zero() {
            return Err(Error::Internal(format!(
                "non-integer exponent offset {} survives",
                fmt_rational(&self.alpha)
            )));
        }
        if let Some((&k, _)) = normal.coeffs.iter().next() {
            if k < 0 {
                return Err(Error::Internal(format!("negative exponent {k} survives")));
            }
        }
        Ok(UniPoly::from_terms(normal.coeffs.into_iter().map(|(k, c)| (k as u32, c))))
    }
}

/// Generalized binomial `C(n+α, n−k) = Π_{j=1}^{n−k} (α+k+j)/j`.
pub fn binom_shifted(alpha: &Rational, n: u32, k: u32) -> Result<Rational> {
    if k > n {
        return Err(Error::arg("k", format!("k = {k} must lie in 0..={n}")));
    }
    let mut acc = Rational::one();
    for j in 1..=(n - k) {
        let num = alpha + Rational::from_integer((k + j).into());
        acc = acc * num / Rational::from_integer(j.into());
    }
    Ok(acc)
}
