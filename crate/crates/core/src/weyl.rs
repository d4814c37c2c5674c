//! Normal-ordered arithmetic in the Weyl algebra generated by `x` and
//! `p = -i d/dx`, with `[x, p] = i`.
//!
//! Every element is stored as `Σ c_{jk} x^j p^k` with all `x` factors to the
//! left. Products are reordered with the generalized Leibniz rule
//! `p^b x^c = Σ_k C(b,k) (-i)^k c!/(c-k)! x^{c-k} p^{b-k}`, which is the
//! closed form of repeatedly applying `p x = x p - i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::{binomial, GaussRational, Rational, UniPoly};
use crate::error::{Error, Result};

/// Cap on nested commutators tried by [`hadamard_conjugate`].
pub const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeylOp {
    terms: BTreeMap<(u32, u32), GaussRational>,
}

impl WeylOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(GaussRational::one())
    }

    pub fn scalar(c: GaussRational) -> Self {
        Self::term(0, 0, c)
    }

    /// `c · x^j p^k`.
    pub fn term(j: u32, k: u32, c: GaussRational) -> Self {
        let mut w = Self::zero();
        w.add_term(j, k, &c);
        w
    }

    pub fn x() -> Self {
        Self::term(1, 0, GaussRational::one())
    }

    pub fn p() -> Self {
        Self::term(0, 1, GaussRational::one())
    }

    pub fn x_pow(j: u32) -> Self {
        Self::term(j, 0, GaussRational::one())
    }

    pub fn p_pow(k: u32) -> Self {
        Self::term(0, k, GaussRational::one())
    }

    /// The symmetrized product `xp + px`, normal-ordered as `2xp - i`.
    pub fn xp_plus_px() -> Self {
        &(&Self::x() * &Self::p()) + &(&Self::p() * &Self::x())
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), GaussRational)>,
    {
        let mut w = Self::zero();
        for ((j, k), c) in terms {
            w.add_term(j, k, &c);
        }
        w
    }

    pub fn add_term(&mut self, j: u32, k: u32, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((j, k)).or_insert_with(GaussRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(j, k));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, j: u32, k: u32) -> GaussRational {
        self.terms.get(&(j, k)).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &GaussRational)> {
        self.terms.iter().map(|(&jk, c)| (jk, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value if the operator is a multiple of the identity
    /// (including zero).
    pub fn scalar_part(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&jk, c)| (jk, c * s)).collect(),
        }
    }

    /// `λ` with `self = λ·other`, if such a scalar exists. `other` must be
    /// nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<GaussRational> {
        let (&key, c_other) = other.terms.iter().next()?;
        let lambda = &self.coeff(key.0, key.1) / c_other;
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    /// Coordinates `(α, β, γ)` with `self = α x² + β(xp+px) + γ p²`, or
    /// `None` if the operator leaves that span.
    pub fn quadratic_coords(&self) -> Option<(GaussRational, GaussRational, GaussRational)> {
        let alpha = self.coeff(2, 0);
        let beta = &self.coeff(1, 1) / &GaussRational::from_int(2);
        let gamma = self.coeff(0, 2);
        let rebuilt = &(&Self::x_pow(2).scale(&alpha) + &Self::xp_plus_px().scale(&beta))
            + &Self::p_pow(2).scale(&gamma);
        (rebuilt == *self).then_some((alpha, beta, gamma))
    }

    /// Action on a polynomial: `x^j p^k` maps `q` to `x^j (-i)^k q^{(k)}`.
    pub fn apply_to_poly(&self, q: &UniPoly) -> UniPoly {
        let max_k = self.terms.keys().map(|&(_, k)| k).max().unwrap_or(0);
        let mut derivs = Vec::with_capacity(max_k as usize + 1);
        let mut d = q.clone();
        for _ in 0..=max_k {
            let next = d.derivative();
            derivs.push(d);
            d = next;
        }
        let mut out = UniPoly::zero();
        for (&(j, k), c) in &self.terms {
            let factor = c * &GaussRational::i_pow(-(k as i64));
            out = &out + &derivs[k as usize].scale(&factor).shift(j);
        }
        out
    }

    pub fn apply_to_one(&self) -> UniPoly {
        self.apply_to_poly(&UniPoly::one())
    }

    pub fn pow(&self, n: u32) -> Self {
        weyl_pow(self, n)
    }
}

fn falling(c: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * Rational::from_integer((c - j).into()))
}

/// Normal-ordered product `A·B`.
pub fn weyl_mul(a: &WeylOp, b: &WeylOp) -> WeylOp {
    let mut out = WeylOp::zero();
    for (&(xa, pa), ca) in &a.terms {
        for (&(xb, pb), cb) in &b.terms {
            let base = ca * cb;
            for k in 0..=pa.min(xb) {
                let weight = Rational::from_integer(binomial(pa, k)) * falling(xb, k);
                let c = &(&base * &GaussRational::i_pow(-(k as i64))) * &GaussRational::real(weight);
                out.add_term(xa + xb - k, pa + pb - k, &c);
            }
        }
    }
    out
}

pub fn commutator(a: &WeylOp, b: &WeylOp) -> WeylOp {
    &weyl_mul(a, b) - &weyl_mul(b, a)
}

pub fn weyl_pow(w: &WeylOp, n: u32) -> WeylOp {
    (0..n).fold(WeylOp::identity(), |acc, _| weyl_mul(&acc, w))
}

/// Outcome of conjugating `B` by `e^{ξA}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugationResult {
    /// The nested commutator series is finite; `result` is its exact sum.
    Terminated(WeylOp),
    /// `[A, B] = λB`, so the conjugate is `e^{ξλ}·op` (the exponential is
    /// left unevaluated).
    Eigen { lambda: GaussRational, op: WeylOp },
}

/// `e^{ξA} B e^{-ξA} = B + ξ[A,B] + ξ²/2! [A,[A,B]] + …`.
///
/// The eigen case is detected at the first nested level only.
pub fn hadamard_conjugate(
    a: &WeylOp,
    b: &WeylOp,
    xi: &GaussRational,
    max_depth: usize,
) -> Result<ConjugationResult> {
    if max_depth == 0 {
        return Err(Error::arg("max_depth", "must be at least 1"));
    }
    let first = commutator(a, b);
    if !first.is_zero() && !b.is_zero() {
        if let Some(lambda) = first.ratio_to(b) {
            return Ok(ConjugationResult::Eigen { lambda, op: b.clone() });
        }
    }
    let mut sum = b.clone();
    let mut nested = first;
    // ξ^k / k!
    let mut weight = GaussRational::one();
    for depth in 1..=max_depth {
        if nested.is_zero() {
            return Ok(ConjugationResult::Terminated(sum));
        }
        weight = &(&weight * xi) / &GaussRational::from_int(depth as i64);
        sum = &sum + &nested.scale(&weight);
        nested = commutator(a, &nested);
    }
    if nested.is_zero() {
        return Ok(ConjugationResult::Terminated(sum));
    }
    Err(Error::NonConvergence { depth: max_depth })
}

/// For `A`, `B` whose commutator is a central scalar `c` (so it commutes
/// with both), returns `c`, giving `e^{A+B} = e^{-c/2} e^A e^B`.
pub fn central_bch_prefactor(a: &WeylOp, b: &WeylOp) -> Result<GaussRational> {
    let c = commutator(a, b);
    if !commutator(&c, a).is_zero() {
        return Err(Error::NotApplicable(format!("[[A,B],A] != 0 for [A,B] = {c}")));
    }
    if !commutator(&c, b).is_zero() {
        return Err(Error::NotApplicable(format!("[[A,B],B] != 0 for [A,B] = {c}")));
    }
    c.scalar_part()
        .ok_or_else(|| Error::NotApplicable(format!("[A,B] = {c} is not a scalar")))
}

impl<'a> Add<&'a WeylOp> for &'a WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: &WeylOp) -> WeylOp {
        let mut out = self.clone();
        for (&(j, k), c) in &rhs.terms {
            out.add_term(j, k, c);
        }
        out
    }
}

impl<'a> Sub<&'a WeylOp> for &'a WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: &WeylOp) -> WeylOp {
        let mut out = self.clone();
        for (&(j, k), c) in &rhs.terms {
            out.add_term(j, k, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a WeylOp> for &'a WeylOp {
    type Output = WeylOp;
    fn mul(self, rhs: &WeylOp) -> WeylOp {
        weyl_mul(self, rhs)
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        self.scale(&-GaussRational::one())
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(j, k), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut mono = Vec::new();
            match j {
                0 => {}
                1 => mono.push("x".to_string()),
                _ => mono.push(format!("x^{j}")),
            }
            match k {
                0 => {}
                1 => mono.push("p".to_string()),
                _ => mono.push(format!("p^{k}")),
            }
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn g(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    fn gi(re: i64, im: i64) -> GaussRational {
        GaussRational::new(int(re), int(im))
    }

    fn x() -> WeylOp {
        WeylOp::x()
    }

    fn p() -> WeylOp {
        WeylOp::p()
    }

    fn hermite_gen() -> WeylOp {
        // p + 2ix
        &p() + &x().scale(&gi(0, 2))
    }

    #[test]
    fn product_examples() {
        let px = weyl_mul(&p(), &x());
        assert_eq!(px, WeylOp::from_terms([((1, 1), g(1)), ((0, 0), gi(0, -1))]));
        assert_eq!(weyl_mul(&x(), &p()), WeylOp::term(1, 1, g(1)));
        let sq = weyl_mul(&hermite_gen(), &hermite_gen());
        let want = WeylOp::from_terms([
            ((0, 2), g(1)),
            ((1, 1), gi(0, 4)),
            ((2, 0), g(-4)),
            ((0, 0), g(2)),
        ]);
        assert_eq!(sq, want);
        assert_eq!(weyl_pow(&hermite_gen(), 2), want);
        assert_eq!(weyl_pow(&hermite_gen(), 0), WeylOp::identity());
        assert_eq!(weyl_pow(&hermite_gen(), 1), hermite_gen());
    }

    #[test]
    fn commutator_table() {
        assert_eq!(commutator(&x(), &p()), WeylOp::scalar(GaussRational::i()));
        assert_eq!(commutator(&WeylOp::x_pow(2), &p()), WeylOp::term(1, 0, gi(0, 2)));
        assert_eq!(
            commutator(&WeylOp::x_pow(2), &WeylOp::p_pow(2)),
            WeylOp::from_terms([((0, 0), g(2)), ((1, 1), gi(0, 4))])
        );
        assert_eq!(
            commutator(&WeylOp::xp_plus_px(), &WeylOp::p_pow(2)),
            WeylOp::term(0, 2, gi(0, 4))
        );
        assert_eq!(
            commutator(&WeylOp::x_pow(2), &WeylOp::xp_plus_px()),
            WeylOp::term(2, 0, gi(0, 4))
        );
        // -2 + 4ipx in p-before-x order equals the normal-ordered 2 + 4ixp
        let reordered = &WeylOp::scalar(g(-2)) + &weyl_mul(&p(), &x()).scale(&gi(0, 4));
        assert_eq!(reordered, commutator(&WeylOp::x_pow(2), &WeylOp::p_pow(2)));
    }

    #[test]
    fn hadamard_cases() {
        let one = g(1);
        let r = hadamard_conjugate(&WeylOp::x_pow(2), &p(), &one, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(r, ConjugationResult::Terminated(hermite_gen()));

        let r = hadamard_conjugate(&x(), &p(), &one, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(r, ConjugationResult::Terminated(&p() + &WeylOp::scalar(GaussRational::i())));

        for f in [g(1), GaussRational::real(rat(1, 3))] {
            let r = hadamard_conjugate(&WeylOp::x_pow(2), &WeylOp::xp_plus_px(), &f, 64).unwrap();
            let want = &WeylOp::xp_plus_px() + &WeylOp::x_pow(2).scale(&(&gi(0, 4) * &f));
            assert_eq!(r, ConjugationResult::Terminated(want));

            let r = hadamard_conjugate(&WeylOp::x_pow(2), &WeylOp::p_pow(2), &f, 64).unwrap();
            let want = &(&WeylOp::p_pow(2) + &WeylOp::xp_plus_px().scale(&(&gi(0, 2) * &f)))
                - &WeylOp::x_pow(2).scale(&(&g(4) * &(&f * &f)));
            assert_eq!(r, ConjugationResult::Terminated(want));
        }

        let r = hadamard_conjugate(&WeylOp::xp_plus_px(), &WeylOp::p_pow(2), &g(1), 64).unwrap();
        assert_eq!(r, ConjugationResult::Eigen { lambda: gi(0, 4), op: WeylOp::p_pow(2) });
    }

    #[test]
    fn hadamard_depth_errors() {
        assert!(hadamard_conjugate(&x(), &p(), &g(1), 0).is_err());
        // ad_{x^2} on p^3 produces three nonzero nested commutators
        let r = hadamard_conjugate(&WeylOp::x_pow(2), &WeylOp::p_pow(3), &g(1), 2);
        assert_eq!(r, Err(Error::NonConvergence { depth: 2 }));
        assert!(hadamard_conjugate(&WeylOp::x_pow(2), &WeylOp::p_pow(3), &g(1), 3).is_ok());
        // [xp, x^2 p] = x^2 p: eigen
        let xp = WeylOp::term(1, 1, g(1));
        let x2p = WeylOp::term(2, 1, g(1));
        assert!(matches!(
            hadamard_conjugate(&xp, &x2p, &g(1), 8).unwrap(),
            ConjugationResult::Eigen { .. }
        ));
        let r = hadamard_conjugate(&WeylOp::p_pow(2), &WeylOp::x_pow(3), &g(1), 2);
        assert!(r.is_err());
        let r = hadamard_conjugate(&WeylOp::x_pow(3), &WeylOp::p_pow(2), &g(1), 64);
        assert!(r.is_ok());
        let r = hadamard_conjugate(&(&x() * &x()).scale(&g(1)), &x2p, &g(1), 64);
        assert!(r.is_ok());
    }

    #[test]
    fn non_terminating_series_reports_depth() {
        // ad_{xp} scales x by -i and p by +i, so x + p is never an eigenvector
        // and the series never closes
        let a = WeylOp::term(1, 1, g(1));
        let err = hadamard_conjugate(&a, &(&x() + &p()), &g(1), 5).unwrap_err();
        assert_eq!(err, Error::NonConvergence { depth: 5 });
    }

    #[test]
    fn bch_prefactor_cases() {
        let a = x().scale(&g(2));
        let b = p().scale(&gi(0, -1));
        assert_eq!(central_bch_prefactor(&a, &b).unwrap(), g(2));
        assert_eq!(central_bch_prefactor(&x(), &x()).unwrap(), g(0));
        assert!(matches!(
            central_bch_prefactor(&WeylOp::x_pow(2), &p()),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn action_on_polynomials() {
        assert!(p().apply_to_one().is_zero());
        let h2_raw = weyl_pow(&hermite_gen(), 2).apply_to_one();
        assert_eq!(h2_raw, UniPoly::from_ints(&[2, 0, -4]));
        assert_eq!(h2_raw.scale(&GaussRational::i_pow(-2)), UniPoly::from_ints(&[-2, 0, 4]));
        assert_eq!(WeylOp::x_pow(2).apply_to_poly(&UniPoly::x()), UniPoly::monomial(3, g(1)));
        // (xp+px) x = -3i x
        assert_eq!(
            WeylOp::xp_plus_px().apply_to_poly(&UniPoly::x()),
            UniPoly::monomial(1, gi(0, -3))
        );
    }

    #[test]
    fn quadratic_coordinates() {
        let op = &(&WeylOp::x_pow(2).scale(&g(4)) + &WeylOp::xp_plus_px().scale(&gi(0, -2)))
            - &WeylOp::p_pow(2);
        assert_eq!(op.quadratic_coords(), Some((g(4), gi(0, -2), g(-1))));
        assert_eq!(x().quadratic_coords(), None);
    }
}
