use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::{
    binom_shifted, factorial, to_f64, GaussRational, Rational, ShiftedPoly, UniPoly,
};
use crate::error::{Error, Result};

/// `L_0^α … L_N^α` for one fixed order `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaguerreSet {
    alpha: Rational,
    polys: Vec<UniPoly>,
}

impl LaguerreSet {
    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> Option<&UniPoly> {
        self.polys.get(n)
    }
}

fn real(r: Rational) -> GaussRational {
    GaussRational::real(r)
}

fn nat(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

/// `(2n + α + 1 - x)` as a polynomial.
fn middle_factor(n: usize, alpha: &Rational) -> UniPoly {
    UniPoly::from_terms([
        (0, real(nat(2 * n) + alpha + Rational::one())),
        (1, -GaussRational::one()),
    ])
}

/// `(n+1) L_{n+1} = (2n+α+1-x) L_n - (n+α) L_{n-1}` seeded with
/// `L_0 = 1`, `L_1 = 1 + α - x`.
pub fn laguerre_recurrence(n_max: usize, alpha: &Rational) -> LaguerreSet {
    let mut polys = vec![UniPoly::one()];
    if n_max >= 1 {
        polys.push(middle_factor(0, alpha));
    }
    for n in 1..n_max {
        let a = &middle_factor(n, alpha) * &polys[n];
        let b = polys[n - 1].scale(&real(nat(n) + alpha));
        let next = (&a - &b).scale(&real(Rational::one() / nat(n + 1)));
        polys.push(next);
    }
    LaguerreSet { alpha: alpha.clone(), polys }
}

/// `(n+1) L_{n+1} - (2n+α+1-x) L_n + (n+α) L_{n-1}` for `n ≥ 1`.
pub fn laguerre_recurrence_residual(polys: &[UniPoly], n: usize, alpha: &Rational) -> UniPoly {
    let lhs = polys[n + 1].scale(&real(nat(n + 1)));
    let mid = &middle_factor(n, alpha) * &polys[n];
    &(&lhs - &mid) + &polys[n - 1].scale(&real(nat(n) + alpha))
}

/// `L_n^α = (1/n!) x^{-α} (d/dx - 1)^n x^{n+α}`, carried out on
/// fractional powers.
pub fn laguerre_operator(n: usize, alpha: &Rational) -> Result<UniPoly> {
    let mut s = ShiftedPoly::monomial(alpha.clone(), n as i64, GaussRational::one());
    for _ in 0..n {
        s = s.derivative().sub(&s)?;
    }
    let poly = s.times_power(&-alpha).to_unipoly()?;
    Ok(poly.scale(&real(Rational::one() / Rational::from_integer(factorial(n as u32)))))
}

/// `Σ_k C(n+α, n-k) (-1)^k x^k / k!`.
pub fn laguerre_explicit(n: usize, alpha: &Rational) -> UniPoly {
    UniPoly::from_terms((0..=n).map(|k| {
        let b = binom_shifted(alpha, n as u32, k as u32).expect("k <= n");
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        let c = b * sign / Rational::from_integer(factorial(k as u32));
        (k as u32, real(c))
    }))
}

/// Floating-point `L_0^α(x) … L_N^α(x)` by the same recurrence.
pub fn laguerre_values(n_max: usize, alpha: f64, x: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::one()];
    if n_max >= 1 {
        out.push(1.0 + alpha - x);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + alpha + 1.0 - x) * out[n] - (nf + alpha) * out[n - 1]) / (nf + 1.0);
        out.push(next);
    }
    out
}

fn check_radius(t: Complex64) -> Result<()> {
    if !(t.norm() < 1.0) {
        return Err(Error::Domain(format!("|t| = {} must be below 1", t.norm())));
    }
    Ok(())
}

/// `Σ_{n ≤ N} L_n^α(x) t^n`, requiring `|t| < 1`.
pub fn laguerre_genfun_partial(
    t: Complex64,
    x: Complex64,
    order_alpha: &Rational,
    n_terms: usize,
) -> Result<Complex64> {
    check_radius(t)?;
    let values = laguerre_values(n_terms, to_f64(order_alpha), x);
    let mut weight = Complex64::one();
    let mut sum = Complex64::zero();
    for (n, v) in values.iter().enumerate() {
        if n > 0 {
            weight *= t;
        }
        sum += weight * v;
    }
    Ok(sum)
}

/// `(1-t)^{-(α+1)} exp(-xt/(1-t))`.
pub fn laguerre_genfun_closed(t: Complex64, x: Complex64, order_alpha: &Rational) -> Result<Complex64> {
    check_radius(t)?;
    let one_minus = 1.0 - t;
    let power = one_minus.powc(Complex64::new(-(to_f64(order_alpha) + 1.0), 0.0));
    Ok(power * (-x * t / one_minus).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, real_poly};

    #[test]
    fn recurrence_examples() {
        assert_eq!(laguerre_recurrence(0, &int(3)).polys()[0], UniPoly::one());
        assert_eq!(laguerre_recurrence(1, &int(1)).polys()[1], UniPoly::from_ints(&[2, -1]));
        let l2 = laguerre_recurrence(2, &int(0)).polys()[2].clone();
        assert_eq!(l2, real_poly(&[int(1), int(-2), rat(1, 2)]));
    }

    #[test]
    fn operator_examples() {
        assert_eq!(laguerre_operator(0, &rat(7, 3)).unwrap(), UniPoly::one());
        assert_eq!(
            laguerre_operator(1, &rat(1, 2)).unwrap(),
            real_poly(&[rat(3, 2), int(-1)])
        );
        assert_eq!(laguerre_operator(3, &int(2)).unwrap(), laguerre_explicit(3, &int(2)));
    }

    #[test]
    fn explicit_examples() {
        assert_eq!(laguerre_explicit(0, &rat(1, 2)), UniPoly::one());
        assert_eq!(laguerre_explicit(1, &int(0)), UniPoly::from_ints(&[1, -1]));
        assert_eq!(laguerre_explicit(2, &int(1)), real_poly(&[int(3), int(-3), rat(1, 2)]));
    }

    #[test]
    fn value_at_zero_is_binomial() {
        for alpha in [int(0), int(3), rat(1, 2)] {
            let set = laguerre_recurrence(8, &alpha);
            assert_eq!(set.alpha(), &alpha);
            for (n, l) in set.polys().iter().enumerate() {
                assert_eq!(l.degree(), Some(n as u32));
                let want = binom_shifted(&alpha, n as u32, 0).unwrap();
                assert_eq!(l.coeff(0), GaussRational::real(want));
            }
        }
    }

    #[test]
    fn generating_function_examples() {
        let z = Complex64::zero();
        let x1 = Complex64::one();
        assert_eq!(laguerre_genfun_partial(z, x1, &int(0), 10).unwrap(), Complex64::one());
        let t = Complex64::new(0.3, 0.0);
        let got = laguerre_genfun_partial(t, x1, &int(0), 60).unwrap();
        let want = (-0.3f64 / 0.7).exp() / 0.7;
        assert!((got.re - want).abs() < 1e-10 && got.im.abs() < 1e-15);
        let got = laguerre_genfun_partial(t, z, &int(2), 60).unwrap();
        assert!((got.re - 0.7f64.powi(-3)).abs() < 1e-10);
        assert!(matches!(
            laguerre_genfun_partial(Complex64::new(1.0, 0.0), x1, &int(0), 5),
            Err(Error::Domain(_))
        ));
        assert!(laguerre_genfun_closed(Complex64::new(0.0, -1.5), x1, &int(0)).is_err());
    }
}
