//! The named identity checks. Names and parameter keys are public API.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::params::Params;
use crate::algebra::{int, rat, GaussRational, Rational, UniPoly};
use crate::bessel::{self, BesselEvalConfig};
use crate::disentangle::{self, QuadExponent};
use crate::error::{Error, Result};
use crate::polyfam;
use crate::weyl::{self, ConjugationResult, WeylOp, DEFAULT_MAX_DEPTH};

/// Raw result of one check before it is wrapped into an `IdentityCheck`.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub tolerance: f64,
    pub exact: bool,
}

impl Outcome {
    /// Exact comparison of `compared` items, `mismatches` of which differed.
    /// Reported as `lhs = compared`, `rhs = matched`, `abs_err = mismatches`.
    fn exact(compared: usize, mismatches: usize) -> Self {
        Self {
            lhs: Complex64::new(compared as f64, 0.0),
            rhs: Complex64::new((compared - mismatches) as f64, 0.0),
            abs_err: mismatches as f64,
            tolerance: 0.0,
            exact: true,
        }
    }
}

/// Tracks the worst point of a numeric grid.
struct Worst {
    lhs: Complex64,
    rhs: Complex64,
    err: f64,
    seen: bool,
}

impl Worst {
    fn new() -> Self {
        Self { lhs: Complex64::zero(), rhs: Complex64::zero(), err: 0.0, seen: false }
    }

    /// `err` may be scaled. A NaN is kept once seen so it cannot hide.
    fn push(&mut self, lhs: Complex64, rhs: Complex64, err: f64) {
        if self.err.is_nan() {
            return;
        }
        if !self.seen || err.is_nan() || err > self.err {
            self.lhs = lhs;
            self.rhs = rhs;
            self.err = err;
            self.seen = true;
        }
    }

    fn push_real(&mut self, lhs: f64, rhs: f64, err: f64) {
        self.push(Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0), err);
    }

    fn finish(self, tolerance: f64) -> Outcome {
        Outcome { lhs: self.lhs, rhs: self.rhs, abs_err: self.err, tolerance, exact: false }
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

type CheckFn = fn(&Params) -> Result<Outcome>;

/// One registry entry.
pub struct CheckSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub defaults: &'static [(&'static str, &'static str)],
    pub run: CheckFn,
}

const ALPHAS: &str = "0,1,5,1/2,3/2";

pub static REGISTRY: &[CheckSpec] = &[
    CheckSpec {
        name: "hermite_triple_equality",
        description: "recurrence, Rodrigues iteration and operator form give identical H_n",
        defaults: &[("n_max", "25")],
        run: hermite_triple_equality,
    },
    CheckSpec {
        name: "hermite_derivative_relation",
        description: "H_n' = 2n H_{n-1} exactly",
        defaults: &[("n_max", "25")],
        run: hermite_derivative_relation,
    },
    CheckSpec {
        name: "hermite_ode_residual",
        description: "H_n'' - 2x H_n' + 2n H_n is the zero polynomial",
        defaults: &[("n_max", "25")],
        run: hermite_ode_residual,
    },
    CheckSpec {
        name: "hermite_set_invariants",
        description: "degree n, leading coefficient 2^n and parity of H_n",
        defaults: &[("n_max", "25")],
        run: hermite_set_invariants,
    },
    CheckSpec {
        name: "hermite_addition",
        description: "exact Hermite addition formula at random rational points",
        defaults: &[("n_max", "12"), ("pairs", "25"), ("seed", "7")],
        run: hermite_addition,
    },
    CheckSpec {
        name: "hermite_genfun",
        description: "partial sums of sum H_n(x) a^n/n! against exp(-a^2 + 2ax)",
        defaults: &[
            ("alpha", "0.5"),
            ("x_min", "-2"),
            ("x_max", "2"),
            ("points", "9"),
            ("N", "40"),
            ("tol", "1e-12"),
        ],
        run: hermite_genfun,
    },
    CheckSpec {
        name: "hermite_ladder",
        description: "raising and lowering relations of the oscillator functions",
        defaults: &[("n_max", "10"), ("xs", "-1,0,0.7,2"), ("tol", "1e-10")],
        run: hermite_ladder,
    },
    CheckSpec {
        name: "hermite_expand_orthonormality",
        description: "basis expansion of psi_target recovers a unit vector",
        defaults: &[("target", "3"), ("n_max", "8"), ("L", "10"), ("M", "400"), ("tol", "1e-8")],
        run: hermite_expand_orthonormality,
    },
    CheckSpec {
        name: "even_hermite_sum",
        description: "sum t^n/n! H_2n(x) partial sum against the closed form at one point",
        defaults: &[("t", "0.2"), ("x", "0"), ("N", "80"), ("tol", "1e-9")],
        run: even_hermite_sum,
    },
    CheckSpec {
        name: "even_hermite_grid",
        description: "even-Hermite closed form on a (t, x) grid, scaled error",
        defaults: &[("ts", "0.05,0.1,0.2"), ("xs", "-2,-1,0,1,2"), ("N", "80"), ("tol", "1e-9")],
        run: even_hermite_grid,
    },
    CheckSpec {
        name: "even_hermite_disentangled",
        description: "factored-operator pipeline agrees with the closed form",
        defaults: &[("ts", "0,0.05,0.1,0.2"), ("xs", "-2,-1,0,1,2"), ("tol", "1e-12")],
        run: even_hermite_disentangled,
    },
    CheckSpec {
        name: "laguerre_triple_equality",
        description: "recurrence, operator form and explicit sum give identical L_n^a",
        defaults: &[("n_max", "20"), ("alphas", ALPHAS)],
        run: laguerre_triple_equality,
    },
    CheckSpec {
        name: "laguerre_recurrence_residual",
        description: "explicit-sum polynomials satisfy the three-term recurrence",
        defaults: &[("n_max", "20"), ("alphas", ALPHAS)],
        run: laguerre_recurrence_residual,
    },
    CheckSpec {
        name: "laguerre_genfun",
        description: "partial sums of sum L_n^a(x) t^n against the closed form",
        defaults: &[("t", "0.3"), ("alphas", "0,2"), ("xs", "0,1,3"), ("N", "60"), ("tol", "1e-10")],
        run: laguerre_genfun,
    },
    CheckSpec {
        name: "weyl_commutator_table",
        description: "[x,p], [x^2,p], [x^2,xp+px], [xp+px,p^2], [x^2,p^2]",
        defaults: &[],
        run: weyl_commutator_table,
    },
    CheckSpec {
        name: "weyl_hadamard_conjugation",
        description: "finite and eigen cases of e^{fA} B e^{-fA}",
        defaults: &[("fs", "1,1/3")],
        run: weyl_hadamard_conjugation,
    },
    CheckSpec {
        name: "weyl_baker_hausdorff",
        description: "central commutator prefactor for A = 2x, B = -ip",
        defaults: &[],
        run: weyl_baker_hausdorff,
    },
    CheckSpec {
        name: "weyl_algebra_laws",
        description: "antisymmetry, Jacobi identity and action homomorphism on random operators",
        defaults: &[("trials", "20"), ("seed", "11")],
        run: weyl_algebra_laws,
    },
    CheckSpec {
        name: "bessel_cross_method",
        description: "series, quadrature and Miller recurrence agree",
        defaults: &[("n_max", "10"), ("xs", "0.5,1,5,10"), ("tol", "1e-12")],
        run: bessel_cross_method,
    },
    CheckSpec {
        name: "bessel_genfun",
        description: "sum t^n J_n(x) against exp(x(t - 1/t)/2)",
        defaults: &[("x", "1"), ("ts", "0.7,1.3,-0.5"), ("N", "40"), ("tol", "1e-12")],
        run: bessel_genfun,
    },
    CheckSpec {
        name: "bessel_recurrence",
        description: "(2n/x) J_n = J_{n-1} + J_{n+1}",
        defaults: &[("n_max", "8"), ("xs", "1,5"), ("tol", "1e-12")],
        run: bessel_recurrence,
    },
    CheckSpec {
        name: "bessel_bound_parity",
        description: "|J_n(x)| <= 1 and J_n(-x) = (-1)^n J_n(x) across methods",
        defaults: &[("n_max", "10"), ("xs", "0.5,1,5,10"), ("tol", "1e-12")],
        run: bessel_bound_parity,
    },
    CheckSpec {
        name: "bessel_addition",
        description: "truncated addition formula at one point",
        defaults: &[("n", "0"), ("x", "1.1"), ("y", "0.7"), ("K", "30"), ("tol", "1e-12")],
        run: bessel_addition,
    },
    CheckSpec {
        name: "bessel_addition_cases",
        description: "truncated addition formula at several (n, x, y)",
        defaults: &[("cases", "0:1.1:0.7;1:2:0.5;3:2:2"), ("K", "40"), ("tol", "1e-12")],
        run: bessel_addition_cases,
    },
    CheckSpec {
        name: "bessel_jacobi_anger",
        description: "both plane-wave expansions",
        defaults: &[("x", "2"), ("ys", "0,1.0471975511965976,1.2"), ("N", "40"), ("tol", "1e-12")],
        run: bessel_jacobi_anger,
    },
    CheckSpec {
        name: "bessel_translation",
        description: "Taylor translation via the m-th derivative formula",
        defaults: &[("cases", "0:1:0.5;2:2:-0.3"), ("M", "30"), ("tol", "1e-10")],
        run: bessel_translation,
    },
    CheckSpec {
        name: "bessel_ode_residual",
        description: "x^2 J'' + x J' + (x^2 - n^2) J, scaled by 1 + x^2",
        defaults: &[("n_max", "5"), ("xs", "0.5,1,2,5"), ("tol", "1e-10")],
        run: bessel_ode_residual,
    },
    CheckSpec {
        name: "disentangle_specialization",
        description: "coefficient matching rebuilt in the Weyl algebra reproduces the ODE system",
        defaults: &[("fs", "1,1/3")],
        run: disentangle_specialization,
    },
    CheckSpec {
        name: "disentangle_closed_residuals",
        description: "closed-form f, g, h satisfy the ODE system",
        defaults: &[("t_max", "0.2"), ("samples", "100"), ("tol", "1e-12")],
        run: disentangle_closed_residuals,
    },
    CheckSpec {
        name: "disentangle_ode_vs_closed",
        description: "RK4 solution against the closed forms",
        defaults: &[("t_max", "0.2"), ("samples", "11"), ("steps", "10000"), ("tol", "1e-10")],
        run: disentangle_ode_vs_closed,
    },
    CheckSpec {
        name: "disentangle_operator_equivalence",
        description: "factored action against the truncated Taylor series of the exponential",
        defaults: &[("ts", "0.02,0.05"), ("xs", "0,0.5,1"), ("order", "30"), ("tol", "1e-8")],
        run: disentangle_operator_equivalence,
    },
    CheckSpec {
        name: "disentangle_initial_condition",
        description: "every factored form starts at (0, 0, 0)",
        defaults: &[("steps", "10")],
        run: disentangle_initial_condition,
    },
];

pub fn lookup(name: &str) -> Result<&'static CheckSpec> {
    REGISTRY
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::Registry(name.to_string()))
}

// ---------------------------------------------------------------- hermite

fn hermite_triple_equality(p: &Params) -> Result<Outcome> {
    let n_max = p.usize("n_max")?;
    let rec = polyfam::hermite_recurrence(n_max);
    let mut bad = 0;
    for (n, h) in rec.polys().iter().enumerate() {
        let rod = polyfam::hermite_rodrigues(n);
        let op = polyfam::hermite_operator(n)?;
        bad += usize::from(*h != rod || *h != op);
    }
    Ok(Outcome::exact(n_max + 1, bad))
}

fn hermite_derivative_relation(p: &Params) -> Result<Outcome> {
    let n_max = p.usize("n_max")?;
    let set = polyfam::hermite_recurrence(n_max);
    let h = set.polys();
    let bad = (1..=n_max)
        .filter(|&n| h[n].derivative() != h[n - 1].scale(&GaussRational::from_int(2 * n as i64)))
        .count()
        + usize::from(!h[0].derivative().is_zero());
    Ok(Outcome::exact(n_max + 1, bad))
}

fn hermite_ode_residual(p: &Params) -> Result<Outcome> {
    let n_max = p.usize("n_max")?;
    let bad = (0..=n_max).filter(|&n| !polyfam::hermite_ode_residual(n).is_zero()).count();
    Ok(Outcome::exact(n_max + 1, bad))
}

fn hermite_set_invariants(p: &Params) -> Result<Outcome> {
    let n_max = p.usize("n_max")?;
    let set = polyfam::hermite_recurrence(n_max);
    let bad = set
        .polys()
        .iter()
        .enumerate()
        .filter(|(n, h)| {
            let lead = GaussRational::real(num_traits::pow(int(2), *n));
            let parity = if n % 2 == 0 { (*h).clone() } else { -*h };
            h.degree() != Some(*n as u32) || h.leading_coeff() != lead || h.reflect() != parity
        })
        .count();
    Ok(Outcome::exact(n_max + 1, bad))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=12))
}

fn hermite_addition(p: &Params) -> Result<Outcome> {
    let n_max = p.usize("n_max")?;
    let pairs = p.usize("pairs")?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.usize("seed")? as u64);
    let mut bad = 0;
    for _ in 0..pairs {
        let (x0, y0) = (random_rational(&mut rng), random_rational(&mut rng));
        for n in 0..=n_max {
            let (l, r) = polyfam::hermite_addition_check(n, &x0, &y0)?;
            bad += usize::from(l != r);
        }
    }
    Ok(Outcome::exact(pairs * (n_max + 1), bad))
}

fn hermite_genfun(p: &Params) -> Result<Outcome> {
    let a = real(p.f64("alpha")?);
    let (lo, hi) = (p.f64("x_min")?, p.f64("x_max")?);
    let points = p.usize("points")?.max(1);
    let n = p.usize("N")?;
    let mut worst = Worst::new();
    for k in 0..points {
        let x = if points == 1 { lo } else { lo + (hi - lo) * k as f64 / (points - 1) as f64 };
        let lhs = polyfam::hermite_genfun_partial(a, real(x), n);
        let rhs = polyfam::hermite_genfun_closed(a, real(x));
        worst.push(lhs, rhs, (lhs - rhs).norm());
    }
    Ok(worst.finish(p.tolerance()?))
}

fn hermite_ladder(p: &Params) -> Result<Outcome> {
    let n_max = p.usize("n_max")?;
    let mut worst = Worst::new();
    for x in p.f64_list("xs")? {
        let z = real(x);
        for n in 0..=n_max {
            let psi = polyfam::psi_eval(n, z);
            let dpsi = polyfam::psi_derivative(n, z);
            let up = (z * psi - dpsi) * FRAC_1_SQRT_2;
            let up_want = ((n + 1) as f64).sqrt() * polyfam::psi_eval(n + 1, z);
            worst.push(up, up_want, (up - up_want).norm());
            let down = (z * psi + dpsi) * FRAC_1_SQRT_2;
            let down_want = if n == 0 {
                Complex64::zero()
            } else {
                (n as f64).sqrt() * polyfam::psi_eval(n - 1, z)
            };
            worst.push(down, down_want, (down - down_want).norm());
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

fn hermite_expand_orthonormality(p: &Params) -> Result<Outcome> {
    let target = p.usize("target")?;
    let n_max = p.usize("n_max")?;
    let coeffs = polyfam::hermite_expand(
        |x| polyfam::psi_eval(target, real(x)).re,
        n_max,
        p.f64("L")?,
        p.usize("M")?,
    )?;
    let mut worst = Worst::new();
    for (n, c) in coeffs.iter().enumerate() {
        let want = if n == target { 1.0 } else { 0.0 };
        worst.push_real(*c, want, (c - want).abs());
    }
    Ok(worst.finish(p.tolerance()?))
}

fn even_hermite_sum(p: &Params) -> Result<Outcome> {
    let (t, x) = (real(p.f64("t")?), real(p.f64("x")?));
    let lhs = polyfam::even_hermite_partial(t, x, p.usize("N")?);
    let rhs = polyfam::even_hermite_closed(t, x)?;
    let mut worst = Worst::new();
    worst.push(lhs, rhs, (lhs - rhs).norm());
    Ok(worst.finish(p.tolerance()?))
}

fn even_hermite_grid(p: &Params) -> Result<Outcome> {
    let n = p.usize("N")?;
    let mut worst = Worst::new();
    for t in p.f64_list("ts")? {
        for x in p.f64_list("xs")? {
            let lhs = polyfam::even_hermite_partial(real(t), real(x), n);
            let rhs = polyfam::even_hermite_closed(real(t), real(x))?;
            worst.push(lhs, rhs, (lhs - rhs).norm() / (1.0 + rhs.norm()));
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

fn even_hermite_disentangled(p: &Params) -> Result<Outcome> {
    let mut worst = Worst::new();
    for t in p.f64_list("ts")? {
        for x in p.f64_list("xs")? {
            let lhs = disentangle::even_hermite_via_disentangle(t, x)?;
            let rhs = polyfam::even_hermite_closed(real(t), real(x))?;
            worst.push(real(lhs), rhs, (real(lhs) - rhs).norm() / (1.0 + rhs.norm()));
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

// ---------------------------------------------------------------- laguerre

fn laguerre_triple_equality(p: &Params) -> Result<Outcome> {
    let n_max = p.usize("n_max")?;
    let alphas = p.rational_list("alphas")?;
    let mut bad = 0;
    for alpha in &alphas {
        let rec = polyfam::laguerre_recurrence(n_max, alpha);
        for (n, l) in rec.polys().iter().enumerate() {
            let op = polyfam::laguerre_operator(n, alpha)?;
            let ex = polyfam::laguerre_explicit(n, alpha);
            bad += usize::from(*l != op || *l != ex);
        }
    }
    Ok(Outcome::exact(alphas.len() * (n_max + 1), bad))
}

fn laguerre_recurrence_residual(p: &Params) -> Result<Outcome> {
    let n_max = p.usize("n_max")?;
    let alphas = p.rational_list("alphas")?;
    let mut bad = 0;
    let mut compared = 0;
    for alpha in &alphas {
        let polys: Vec<UniPoly> = (0..=n_max + 1).map(|n| polyfam::laguerre_explicit(n, alpha)).collect();
        for n in 1..=n_max {
            compared += 1;
            bad += usize::from(!polyfam::laguerre_recurrence_residual(&polys, n, alpha).is_zero());
        }
    }
    Ok(Outcome::exact(compared, bad))
}

fn laguerre_genfun(p: &Params) -> Result<Outcome> {
    let t = real(p.f64("t")?);
    let n = p.usize("N")?;
    let mut worst = Worst::new();
    for alpha in p.rational_list("alphas")? {
        for x in p.f64_list("xs")? {
            let lhs = polyfam::laguerre_genfun_partial(t, real(x), &alpha, n)?;
            let rhs = polyfam::laguerre_genfun_closed(t, real(x), &alpha)?;
            worst.push(lhs, rhs, (lhs - rhs).norm());
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

// ---------------------------------------------------------------- weyl

fn gi(re: i64, im: i64) -> GaussRational {
    GaussRational::new(int(re), int(im))
}

fn weyl_commutator_table(_: &Params) -> Result<Outcome> {
    let (x, pp) = (WeylOp::x(), WeylOp::p());
    let x2 = WeylOp::x_pow(2);
    let p2 = WeylOp::p_pow(2);
    let mix = WeylOp::xp_plus_px();
    let table = [
        (weyl::commutator(&x, &pp), WeylOp::scalar(GaussRational::i())),
        (weyl::commutator(&x2, &pp), WeylOp::term(1, 0, gi(0, 2))),
        (weyl::commutator(&x2, &mix), WeylOp::term(2, 0, gi(0, 4))),
        (weyl::commutator(&mix, &p2), WeylOp::term(0, 2, gi(0, 4))),
        (
            weyl::commutator(&x2, &p2),
            WeylOp::from_terms([((0, 0), gi(2, 0)), ((1, 1), gi(0, 4))]),
        ),
    ];
    let bad = table.iter().filter(|(got, want)| got != want).count();
    Ok(Outcome::exact(table.len(), bad))
}

fn weyl_hadamard_conjugation(p: &Params) -> Result<Outcome> {
    let one = GaussRational::from_int(1);
    let x2 = WeylOp::x_pow(2);
    let p2 = WeylOp::p_pow(2);
    let mix = WeylOp::xp_plus_px();
    let term = |r: ConjugationResult| match r {
        ConjugationResult::Terminated(op) => Some(op),
        ConjugationResult::Eigen { .. } => None,
    };
    let mut cases: Vec<(Option<WeylOp>, WeylOp)> = vec![
        (
            term(weyl::hadamard_conjugate(&x2, &WeylOp::p(), &one, DEFAULT_MAX_DEPTH)?),
            &WeylOp::p() + &WeylOp::x().scale(&gi(0, 2)),
        ),
        (
            term(weyl::hadamard_conjugate(&WeylOp::x(), &WeylOp::p(), &one, DEFAULT_MAX_DEPTH)?),
            &WeylOp::p() + &WeylOp::scalar(GaussRational::i()),
        ),
    ];
    for f in p.rational_list("fs")? {
        let f = GaussRational::real(f);
        cases.push((
            term(weyl::hadamard_conjugate(&x2, &mix, &f, DEFAULT_MAX_DEPTH)?),
            &mix + &x2.scale(&(&gi(0, 4) * &f)),
        ));
        cases.push((
            term(weyl::hadamard_conjugate(&x2, &p2, &f, DEFAULT_MAX_DEPTH)?),
            &(&p2 + &mix.scale(&(&gi(0, 2) * &f))) - &x2.scale(&(&gi(4, 0) * &(&f * &f))),
        ));
    }
    let mut bad = cases.iter().filter(|(got, want)| got.as_ref() != Some(want)).count();
    let eigen = weyl::hadamard_conjugate(&mix, &p2, &one, DEFAULT_MAX_DEPTH)?;
    bad += usize::from(eigen != ConjugationResult::Eigen { lambda: gi(0, 4), op: p2 });
    Ok(Outcome::exact(cases.len() + 1, bad))
}

fn weyl_baker_hausdorff(_: &Params) -> Result<Outcome> {
    let a = WeylOp::x().scale(&gi(2, 0));
    let b = WeylOp::p().scale(&gi(0, -1));
    let c = weyl::central_bch_prefactor(&a, &b)?;
    // e^{A+B} = e^{-c/2} e^A e^B with prefactor exponent -1
    let exponent = &(-&c) / &gi(2, 0);
    let commuting = weyl::central_bch_prefactor(&WeylOp::x(), &WeylOp::x())?;
    let bad = usize::from(exponent != gi(-1, 0)) + usize::from(!commuting.is_zero());
    Ok(Outcome::exact(2, bad))
}

fn random_op(rng: &mut ChaCha8Rng) -> WeylOp {
    let mut w = WeylOp::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let (j, k) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        w.add_term(j, k, &gi(rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
    }
    w
}

fn weyl_algebra_laws(p: &Params) -> Result<Outcome> {
    let trials = p.usize("trials")?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.usize("seed")? as u64);
    let mut bad = 0;
    for _ in 0..trials {
        let (a, b, c) = (random_op(&mut rng), random_op(&mut rng), random_op(&mut rng));
        let anti = &weyl::commutator(&a, &b) + &weyl::commutator(&b, &a);
        let jacobi = &(&weyl::commutator(&a, &weyl::commutator(&b, &c))
            + &weyl::commutator(&b, &weyl::commutator(&c, &a)))
            + &weyl::commutator(&c, &weyl::commutator(&a, &b));
        let q = UniPoly::from_ints(&[rng.gen_range(-3..=3), 1, rng.gen_range(-3..=3), 2]);
        let hom = weyl::weyl_mul(&a, &b).apply_to_poly(&q) == a.apply_to_poly(&b.apply_to_poly(&q));
        let assoc = weyl::weyl_mul(&weyl::weyl_mul(&a, &b), &c) == weyl::weyl_mul(&a, &weyl::weyl_mul(&b, &c));
        bad += usize::from(!anti.is_zero()) + usize::from(!jacobi.is_zero());
        bad += usize::from(!hom) + usize::from(!assoc);
    }
    Ok(Outcome::exact(4 * trials, bad))
}

// ---------------------------------------------------------------- bessel

fn bessel_cross_method(p: &Params) -> Result<Outcome> {
    let cfg = BesselEvalConfig::default();
    let n_max = p.usize("n_max")?;
    let mut worst = Worst::new();
    for x in p.f64_list("xs")? {
        let miller = bessel::j_miller(n_max, x, cfg.miller_pad)?;
        for n in 0..=n_max {
            let s = bessel::j_series(n as u32, x, cfg.series_tol)?;
            let q = bessel::j_integral_adaptive(n as i64, x, &cfg)?;
            let scale = 1.0 + s.abs();
            worst.push_real(s, q, (s - q).abs() / scale);
            worst.push_real(s, miller[n], (s - miller[n]).abs() / scale);
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

fn bessel_genfun(p: &Params) -> Result<Outcome> {
    let x = p.f64("x")?;
    let n = p.usize("N")?;
    let mut worst = Worst::new();
    for t in p.f64_list("ts")? {
        let lhs = bessel::bessel_genfun_partial(x, t, n)?;
        let rhs = bessel::bessel_genfun_closed(x, t)?;
        worst.push_real(lhs, rhs, (lhs - rhs).abs());
    }
    Ok(worst.finish(p.tolerance()?))
}

fn bessel_recurrence(p: &Params) -> Result<Outcome> {
    let n_max = p.i64("n_max")?;
    let mut worst = Worst::new();
    for x in p.f64_list("xs")? {
        for n in 0..=n_max {
            let lhs = 2.0 * n as f64 / x * bessel::j_signed(n, x)?;
            let rhs = bessel::j_signed(n - 1, x)? + bessel::j_signed(n + 1, x)?;
            worst.push_real(lhs, rhs, (lhs - rhs).abs());
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

fn bessel_bound_parity(p: &Params) -> Result<Outcome> {
    let cfg = BesselEvalConfig::default();
    let n_max = p.i64("n_max")?;
    let mut worst = Worst::new();
    for x in p.f64_list("xs")? {
        for n in 0..=n_max {
            let forward = bessel::j_signed(n, x)?;
            let mirrored = bessel::j_integral_adaptive(n, -x, &cfg)?;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let excess = (forward.abs() - 1.0).max(0.0);
            worst.push_real(mirrored, sign * forward, (mirrored - sign * forward).abs() + excess);
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

fn bessel_addition(p: &Params) -> Result<Outcome> {
    let (n, x, y) = (p.i64("n")?, p.f64("x")?, p.f64("y")?);
    let lhs = bessel::j_addition(n, x, y, p.usize("K")?)?;
    let rhs = bessel::j_signed(n, x + y)?;
    let mut worst = Worst::new();
    worst.push_real(lhs, rhs, (lhs - rhs).abs());
    Ok(worst.finish(p.tolerance()?))
}

fn bessel_addition_cases(p: &Params) -> Result<Outcome> {
    let k = p.usize("K")?;
    let mut worst = Worst::new();
    for case in p.tuples("cases", 3)? {
        let (n, x, y) = (case[0] as i64, case[1], case[2]);
        let lhs = bessel::j_addition(n, x, y, k)?;
        let rhs = bessel::j_signed(n, x + y)?;
        worst.push_real(lhs, rhs, (lhs - rhs).abs());
    }
    Ok(worst.finish(p.tolerance()?))
}

fn bessel_jacobi_anger(p: &Params) -> Result<Outcome> {
    let x = p.f64("x")?;
    let n = p.usize("N")?;
    let mut worst = Worst::new();
    for y in p.f64_list("ys")? {
        let (cos_sum, sin_sum) = bessel::jacobi_anger_partial(x, y, n)?;
        let cos_want = Complex64::new(0.0, x * y.cos()).exp();
        let sin_want = Complex64::new(0.0, x * y.sin()).exp();
        worst.push(cos_sum, cos_want, (cos_sum - cos_want).norm());
        worst.push(sin_sum, sin_want, (sin_sum - sin_want).norm());
    }
    Ok(worst.finish(p.tolerance()?))
}

fn bessel_translation(p: &Params) -> Result<Outcome> {
    let m = p.usize("M")?;
    let mut worst = Worst::new();
    for case in p.tuples("cases", 3)? {
        let (n, x, y) = (case[0] as i64, case[1], case[2]);
        let lhs = bessel::j_translate_partial(n, x, y, m)?;
        let rhs = bessel::j_signed(n, x + y)?;
        worst.push_real(lhs, rhs, (lhs - rhs).abs());
    }
    Ok(worst.finish(p.tolerance()?))
}

fn bessel_ode_residual(p: &Params) -> Result<Outcome> {
    let n_max = p.i64("n_max")?;
    let mut worst = Worst::new();
    for x in p.f64_list("xs")? {
        for n in 0..=n_max {
            let r = bessel::j_ode_residual(n, x)?;
            worst.push_real(r, 0.0, r.abs() / (1.0 + x * x));
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

// ---------------------------------------------------------------- disentangle

fn disentangle_specialization(p: &Params) -> Result<Outcome> {
    let mut bad = 0;
    let mut compared = 0;
    for f in p.rational_list("fs")? {
        let f = GaussRational::real(f);
        let m = disentangle::coefficient_matching(&f)?;
        let zero = GaussRational::zero();
        let one = GaussRational::from_int(1);
        let want = [
            [one.clone(), &gi(0, 4) * &f, -(&gi(4, 0) * &(&f * &f))],
            [zero.clone(), one.clone(), &gi(0, 2) * &f],
            [zero.clone(), zero, one],
        ];
        compared += 2;
        bad += usize::from(m.rows != want) + usize::from(m.eigenvalue != gi(0, 4));
    }
    let coords = QuadExponent::even_hermite().to_weyl()?.quadratic_coords();
    compared += 1;
    bad += usize::from(coords != Some((gi(4, 0), gi(0, -2), gi(-1, 0))));
    Ok(Outcome::exact(compared, bad))
}

fn sample_times(t_max: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}

fn disentangle_closed_residuals(p: &Params) -> Result<Outcome> {
    let q = QuadExponent::even_hermite();
    let mut worst = Worst::new();
    for t in sample_times(p.f64("t_max")?, p.usize("samples")?) {
        let form = disentangle::disentangle_closed_paper(t)?;
        let base = 4.0 * t + 1.0;
        let exact = [
            real(4.0 / (base * base)),
            Complex64::new(0.0, -2.0 / base),
            real(-1.0 / (base * base)),
        ];
        let (df, dg, dh) = disentangle::ode_rhs(&q, form.f, form.g);
        for (got, want) in [df, dg, dh].into_iter().zip(exact) {
            worst.push(got, want, (got - want).norm());
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

fn disentangle_ode_vs_closed(p: &Params) -> Result<Outcome> {
    let q = QuadExponent::even_hermite();
    let steps = p.usize("steps")?;
    let mut worst = Worst::new();
    for t in sample_times(p.f64("t_max")?, p.usize("samples")?) {
        let ode = disentangle::disentangle_ode(&q, t, steps)?;
        let closed = disentangle::disentangle_closed_paper(t)?;
        for (a, b) in [(ode.f, closed.f), (ode.g, closed.g), (ode.h, closed.h)] {
            worst.push(a, b, (a - b).norm());
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

fn disentangle_operator_equivalence(p: &Params) -> Result<Outcome> {
    let q_exp = QuadExponent::even_hermite();
    let order = p.usize("order")?;
    let xs = p.f64_list("xs")?;
    let mut worst = Worst::new();
    for t in p.f64_list("ts")? {
        let form = disentangle::disentangle_closed_paper(t)?;
        for degree in 0..=2 {
            let q = UniPoly::monomial(degree, GaussRational::from_int(1));
            let taylor = disentangle::exp_taylor_apply(&q_exp, t, &q, order)?;
            let factored = disentangle::apply_factored(&form, &q);
            for &x in &xs {
                let (a, b) = (factored.eval(real(x)), taylor.eval_complex(real(x)));
                worst.push(a, b, (a - b).norm());
            }
        }
    }
    Ok(worst.finish(p.tolerance()?))
}

fn disentangle_initial_condition(p: &Params) -> Result<Outcome> {
    let steps = p.usize("steps")?;
    let origin = disentangle::FactoredForm::origin();
    let exponents = [
        QuadExponent::even_hermite(),
        QuadExponent::new(real(1.0), Complex64::new(0.5, -1.0), real(2.0)),
    ];
    let mut bad = usize::from(disentangle::disentangle_closed_paper(0.0)? != origin);
    for q in &exponents {
        bad += usize::from(disentangle::disentangle_ode(q, 0.0, steps.max(1))? != origin);
    }
    Ok(Outcome::exact(1 + exponents.len(), bad))
}
