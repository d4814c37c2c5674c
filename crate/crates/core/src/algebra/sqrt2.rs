use std::ops::{Add, Mul};

use num_traits::Zero;

use super::rational::{int, Rational};

/// Element `a + b√2` of the quadratic field Q(√2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl QuadSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero() }
    }

    /// `(√2)^k`.
    pub fn sqrt2_pow(k: u32) -> Self {
        let half = num_traits::pow(int(2), (k / 2) as usize);
        if k.is_multiple_of(2) {
            Self::rational(half)
        } else {
            Self::new(Rational::zero(), half)
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl Add for &QuadSqrt2 {
    type Output = QuadSqrt2;
    fn add(self, rhs: &QuadSqrt2) -> QuadSqrt2 {
        QuadSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Mul for &QuadSqrt2 {
    type Output = QuadSqrt2;
    fn mul(self, rhs: &QuadSqrt2) -> QuadSqrt2 {
        QuadSqrt2::new(
            &self.a * &rhs.a + int(2) * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let r = QuadSqrt2::sqrt2_pow(1);
        assert_eq!(&r * &r, QuadSqrt2::rational(int(2)));
        assert_eq!(QuadSqrt2::sqrt2_pow(5), QuadSqrt2::new(int(0), int(4)));
        assert!(QuadSqrt2::sqrt2_pow(4).is_rational());
    }
}
