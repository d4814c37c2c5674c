use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::rational::{fmt_rational, from_f64, int, is_negative, to_f64, Rational};
use crate::error::Result;

/// Exact complex scalar `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// `(-i)^k`, `i^k` and friends without repeated multiplication.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    /// Exact conversion of a finite complex float.
    pub fn from_complex(z: Complex64) -> Result<Self> {
        Ok(Self::new(from_f64(z.re)?, from_f64(z.im)?))
    }
}

impl From<Rational> for GaussRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on division by zero, like the rational type it wraps.
impl<'a> Div<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn div(self, rhs: &GaussRational) -> GaussRational {
        let inv = rhs.inv().expect("division of GaussRational by zero");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: &GaussRational) -> GaussRational { (&self).$m(rhs) }
        }
        impl<'a> $tr<GaussRational> for &'a GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRational> for GaussRational {
    fn mul_assign(&mut self, rhs: &GaussRational) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}i", fmt_imag(&self.im)),
            (false, false) => {
                let sign = if is_negative(&self.im) { "-" } else { "+" };
                let mag = if is_negative(&self.im) { -self.im.clone() } else { self.im.clone() };
                write!(f, "{}{}{}i", fmt_rational(&self.re), sign, fmt_imag(&mag))
            }
        }
    }
}

fn fmt_imag(r: &Rational) -> String {
    if r.is_one() {
        String::new()
    } else if *r == -Rational::one() {
        "-".to_string()
    } else {
        fmt_rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRational::i();
        assert_eq!(&i * &i, -GaussRational::one());
        assert_eq!(GaussRational::i_pow(-1), -GaussRational::i());
        assert_eq!(GaussRational::i_pow(6), -GaussRational::one());
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = GaussRational::new(rat(1, 2), rat(-3, 4));
        let b = GaussRational::new(rat(2, 3), rat(5, 7));
        assert_eq!(&(&a * &b) / &b, a);
        assert!(GaussRational::zero().inv().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(GaussRational::new(rat(1, 2), rat(-1, 1)).to_string(), "1/2-i");
        assert_eq!(GaussRational::new(rat(0, 1), rat(4, 1)).to_string(), "4i");
        assert_eq!(GaussRational::from_int(-2).to_string(), "-2");
    }
}
