use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::{binomial, int, GaussRational, QuadSqrt2, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::weyl::{weyl_pow, WeylOp};

/// `H_0 … H_N`, indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteSet {
    polys: Vec<UniPoly>,
}

impl HermiteSet {
    pub fn get(&self, n: usize) -> Option<&UniPoly> {
        self.polys.get(n)
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn into_polys(self) -> Vec<UniPoly> {
        self.polys
    }
}

/// `H_{n+1} = 2x H_n - 2n H_{n-1}` from `H_0 = 1`, `H_1 = 2x`.
pub fn hermite_recurrence(n_max: usize) -> HermiteSet {
    let two_x = UniPoly::monomial(1, GaussRational::from_int(2));
    let mut polys = vec![UniPoly::one()];
    if n_max >= 1 {
        polys.push(two_x.clone());
    }
    for n in 1..n_max {
        let next = &(&two_x * &polys[n]) - &polys[n - 1].scale(&GaussRational::from_int(2 * n as i64));
        polys.push(next);
    }
    HermiteSet { polys }
}

/// Rodrigues' formula unrolled: with `e^{-x²}` factored out, each derivative
/// maps `q ↦ 2x q - q'` (and the alternating sign is absorbed).
pub fn hermite_rodrigues(n: usize) -> UniPoly {
    let two_x = UniPoly::monomial(1, GaussRational::from_int(2));
    (0..n).fold(UniPoly::one(), |q, _| &(&two_x * &q) - &q.derivative())
}

/// `H_n = (-i)^n (p + 2ix)^n 1`, computed in the Weyl algebra.
pub fn hermite_operator(n: usize) -> Result<UniPoly> {
    let gen = &WeylOp::p() + &WeylOp::x().scale(&GaussRational::new(int(0), int(2)));
    let raw = weyl_pow(&gen, n as u32).apply_to_one();
    let h = raw.scale(&GaussRational::i_pow(-(n as i64)));
    if !h.is_real() {
        return Err(Error::Internal(format!(
            "operator route for H_{n} left imaginary coefficients: {h}"
        )));
    }
    Ok(h)
}

/// `H_n'' - 2x H_n' + 2n H_n`; the zero polynomial for a true Hermite
/// polynomial.
pub fn hermite_ode_residual(n: usize) -> UniPoly {
    let h = hermite_rodrigues(n);
    let d1 = h.derivative();
    let d2 = d1.derivative();
    let two_x = UniPoly::monomial(1, GaussRational::from_int(2));
    &(&d2 - &(&two_x * &d1)) + &h.scale(&GaussRational::from_int(2 * n as i64))
}

/// `H(√2·x0)` for a real rational polynomial, exactly in Q(√2).
fn eval_at_sqrt2_multiple(h: &UniPoly, x0: &Rational) -> Result<QuadSqrt2> {
    let mut acc = QuadSqrt2::rational(Rational::zero());
    for (k, c) in h.terms() {
        if !c.is_real() {
            return Err(Error::Internal("Hermite coefficient is not real".into()));
        }
        let scaled = c.re.clone() * num_traits::pow(x0.clone(), k as usize);
        acc = &acc + &(&QuadSqrt2::sqrt2_pow(k) * &QuadSqrt2::rational(scaled));
    }
    Ok(acc)
}

/// Both sides of `H_n(x+y) = 2^{-n/2} Σ_k C(n,k) H_k(√2x) H_{n-k}(√2y)`,
/// evaluated exactly at rational `(x0, y0)`.
pub fn hermite_addition_check(
    n: usize,
    x0: &Rational,
    y0: &Rational,
) -> Result<(GaussRational, GaussRational)> {
    let set = hermite_recurrence(n);
    let lhs = set.polys[n].eval(&GaussRational::real(x0 + y0));

    let mut sum = QuadSqrt2::rational(Rational::zero());
    for k in 0..=n {
        let hx = eval_at_sqrt2_multiple(&set.polys[k], x0)?;
        let hy = eval_at_sqrt2_multiple(&set.polys[n - k], y0)?;
        let weight = QuadSqrt2::rational(Rational::from_integer(binomial(n as u32, k as u32)));
        sum = &sum + &(&weight * &(&hx * &hy));
    }
    // 2^{-n/2} = (√2)^n / 2^n
    let scale = &QuadSqrt2::sqrt2_pow(n as u32)
        * &QuadSqrt2::rational(Rational::one() / num_traits::pow(int(2), n));
    let rhs = &scale * &sum;
    if !rhs.is_rational() {
        return Err(Error::Internal(format!(
            "addition formula left a residual sqrt(2) component {}",
            rhs.b
        )));
    }
    Ok((lhs, GaussRational::real(rhs.a)))
}

/// `H_0(x) … H_{n_max}(x)` in floating point via the three-term recurrence.
pub fn hermite_values(n_max: usize, x: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Complex64::one());
    if n_max >= 1 {
        out.push(2.0 * x);
    }
    for n in 1..n_max {
        let next = 2.0 * x * out[n] - 2.0 * n as f64 * out[n - 1];
        out.push(next);
    }
    out
}

/// `Σ_{n ≤ N} H_n(x) α^n / n!` for the generating-function variable `α`.
pub fn hermite_genfun_partial(gen_alpha: Complex64, x: Complex64, n_terms: usize) -> Complex64 {
    let h = hermite_values(n_terms, x);
    let mut weight = Complex64::one();
    let mut sum = Complex64::zero();
    for (n, hn) in h.iter().enumerate() {
        if n > 0 {
            weight *= gen_alpha / n as f64;
        }
        sum += weight * hn;
    }
    sum
}

/// `e^{-α² + 2αx}`.
pub fn hermite_genfun_closed(gen_alpha: Complex64, x: Complex64) -> Complex64 {
    (-gen_alpha * gen_alpha + 2.0 * gen_alpha * x).exp()
}

/// `Σ_{n ≤ N} t^n/n! H_{2n}(x)`. Converges for `|t| < 1/4`.
pub fn even_hermite_partial(t: Complex64, x: Complex64, n_terms: usize) -> Complex64 {
    let h = hermite_values(2 * n_terms, x);
    let mut weight = Complex64::one();
    let mut sum = Complex64::zero();
    for n in 0..=n_terms {
        if n > 0 {
            weight *= t / n as f64;
        }
        sum += weight * h[2 * n];
    }
    sum
}

/// `(4t+1)^{-1/2} exp(4t x² / (4t+1))` on the principal branch.
pub fn even_hermite_closed(t: Complex64, x: Complex64) -> Result<Complex64> {
    let base = 4.0 * t + 1.0;
    if base.im == 0.0 && base.re <= 0.0 {
        if base.re == 0.0 {
            return Err(Error::Singularity("4t + 1 = 0 at t = -1/4".into()));
        }
        return Err(Error::Domain(format!(
            "4t + 1 = {} lies on the branch cut (-inf, 0]",
            base.re
        )));
    }
    Ok((4.0 * t * x * x / base).exp() / base.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn low_order_examples() {
        let set = hermite_recurrence(3);
        assert_eq!(set.polys()[0], UniPoly::one());
        assert_eq!(set.polys()[1], UniPoly::from_ints(&[0, 2]));
        assert_eq!(set.polys()[2], UniPoly::from_ints(&[-2, 0, 4]));
        assert_eq!(hermite_rodrigues(0), UniPoly::one());
        assert_eq!(hermite_rodrigues(1), UniPoly::from_ints(&[0, 2]));
        assert_eq!(hermite_rodrigues(3), UniPoly::from_ints(&[0, -12, 0, 8]));
        assert_eq!(hermite_operator(0).unwrap(), UniPoly::one());
        assert_eq!(hermite_operator(2).unwrap(), UniPoly::from_ints(&[-2, 0, 4]));
        assert_eq!(hermite_operator(5).unwrap(), hermite_recurrence(5).polys()[5]);
        assert_eq!(hermite_recurrence(0).max_degree(), 0);
    }

    #[test]
    fn set_invariants() {
        let set = hermite_recurrence(15);
        for (n, h) in set.polys().iter().enumerate() {
            assert_eq!(h.degree(), Some(n as u32));
            assert_eq!(h.leading_coeff(), GaussRational::real(num_traits::pow(int(2), n)));
            let parity = if n % 2 == 0 { h.clone() } else { -h };
            assert_eq!(h.reflect(), parity);
        }
    }

    #[test]
    fn ode_residual_vanishes() {
        for n in [0, 2, 10] {
            assert!(hermite_ode_residual(n).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn addition_examples() {
        let (l, r) = hermite_addition_check(1, &int(1), &int(1)).unwrap();
        assert_eq!(l, GaussRational::from_int(4));
        assert_eq!(r, l);
        let (l, r) = hermite_addition_check(0, &rat(2, 3), &rat(5, 7)).unwrap();
        assert_eq!((l.clone(), r), (GaussRational::one(), l));
        let (l, r) = hermite_addition_check(4, &rat(1, 2), &rat(1, 3)).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn generating_function_examples() {
        let one = Complex64::one();
        assert_eq!(hermite_genfun_partial(Complex64::zero(), one, 10), one);
        for x in [1.0, 0.0] {
            let x = Complex64::new(x, 0.0);
            let a = Complex64::new(0.5, 0.0);
            let err = (hermite_genfun_partial(a, x, 40) - hermite_genfun_closed(a, x)).norm();
            assert!(err < 1e-12, "x = {x}: {err}");
        }
    }

    #[test]
    fn even_sum_examples() {
        let z = Complex64::zero();
        assert_eq!(even_hermite_partial(z, Complex64::new(0.3, 0.0), 5), Complex64::one());
        assert_eq!(even_hermite_closed(z, Complex64::new(0.3, 0.0)).unwrap(), Complex64::one());
        let c = even_hermite_closed(Complex64::new(0.2, 0.0), z).unwrap();
        assert!((c.re - 0.745_355_992_5).abs() < 1e-10);
        let t = Complex64::new(0.1, 0.0);
        let x = Complex64::one();
        let err = (even_hermite_partial(t, x, 80) - even_hermite_closed(t, x).unwrap()).norm();
        assert!(err < 1e-10, "{err}");
        assert!(matches!(
            even_hermite_closed(Complex64::new(-0.25, 0.0), x),
            Err(Error::Singularity(_))
        ));
        assert!(matches!(
            even_hermite_closed(Complex64::new(-1.0, 0.0), x),
            Err(Error::Domain(_))
        ));
    }
}
