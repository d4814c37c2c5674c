//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::f64::consts::FRAC_PI_3;
use std::process::{Command, ExitCode};

use opspecial::harness::{report_parse, run_check, IdentityCheck, ParamMap};

type Criterion = fn() -> Result<String, String>;

fn params(pairs: &[(&str, &str)]) -> ParamMap {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn run(name: &str, pairs: &[(&str, &str)]) -> Result<IdentityCheck, String> {
    run_check(name, &params(pairs)).map_err(|e| format!("{name}: {e}"))
}

/// Runs the named checks with explicit parameters; every one must pass.
fn all_pass(checks: &[(&str, &[(&str, &str)])]) -> Result<String, String> {
    let mut passed = Vec::new();
    let mut failed = Vec::new();
    for (name, pairs) in checks {
        let c = run(name, pairs)?;
        let line = match (&c.error, c.exact) {
            (Some(e), _) => format!("{name} error: {e}"),
            (None, true) => format!("{name} {}/{} exact", c.rhs.re, c.lhs.re),
            (None, false) => format!("{name} err {:.3e} <= {:e}", c.abs_err, c.tolerance),
        };
        if c.pass {
            passed.push(line);
        } else {
            failed.push(line);
        }
    }
    if failed.is_empty() {
        Ok(passed.join("; "))
    } else {
        Err(failed.join("; "))
    }
}

fn c1() -> Result<String, String> {
    all_pass(&[("hermite_triple_equality", &[("n_max", "25")])])
}

fn c2() -> Result<String, String> {
    all_pass(&[("laguerre_triple_equality", &[("n_max", "20"), ("alphas", "0,1,5,1/2,3/2")])])
}

fn c3() -> Result<String, String> {
    all_pass(&[
        ("hermite_ode_residual", &[("n_max", "25")]),
        ("hermite_derivative_relation", &[("n_max", "25")]),
    ])
}

fn c4() -> Result<String, String> {
    all_pass(&[("weyl_commutator_table", &[])])
}

fn c5() -> Result<String, String> {
    all_pass(&[("weyl_hadamard_conjugation", &[("fs", "1,1/3")])])
}

fn c6() -> Result<String, String> {
    all_pass(&[("weyl_baker_hausdorff", &[])])
}

fn c7() -> Result<String, String> {
    let at_origin = run("even_hermite_sum", &[("t", "0.2"), ("x", "0"), ("N", "80"), ("tol", "1e-9")])?;
    let oracle = 1.0 / 1.8f64.sqrt();
    if (at_origin.rhs.re - oracle).abs() > 1e-15 {
        return Err(format!("closed form at (0.2, 0) is {}, expected {oracle}", at_origin.rhs.re));
    }
    all_pass(&[(
        "even_hermite_grid",
        &[("ts", "0.05,0.1,0.2"), ("xs", "-2,-1,0,1,2"), ("N", "80"), ("tol", "1e-9")],
    )])
}

fn c8() -> Result<String, String> {
    all_pass(&[
        (
            "hermite_genfun",
            &[("alpha", "0.5"), ("x_min", "-2"), ("x_max", "2"), ("points", "9"), ("N", "40"), ("tol", "1e-12")],
        ),
        (
            "laguerre_genfun",
            &[("t", "0.3"), ("alphas", "0,2"), ("xs", "0,1,3"), ("N", "60"), ("tol", "1e-10")],
        ),
        ("bessel_genfun", &[("x", "1"), ("ts", "0.7,1.3,-0.5"), ("N", "40"), ("tol", "1e-12")]),
    ])
}

fn c9() -> Result<String, String> {
    all_pass(&[("bessel_cross_method", &[("n_max", "10"), ("xs", "0.5,1,5,10"), ("tol", "1e-12")])])
}

fn c10() -> Result<String, String> {
    all_pass(&[(
        "bessel_addition_cases",
        &[("cases", "0:1.1:0.7;1:2:0.5;3:2:2"), ("K", "40"), ("tol", "1e-12")],
    )])
}

fn c11() -> Result<String, String> {
    let ys = format!("0,{FRAC_PI_3},1.2");
    all_pass(&[("bessel_jacobi_anger", &[("x", "2"), ("ys", &ys), ("N", "40"), ("tol", "1e-12")])])
}

fn c12() -> Result<String, String> {
    all_pass(&[("bessel_translation", &[("cases", "0:1:0.5;2:2:-0.3"), ("M", "30"), ("tol", "1e-10")])])
}

fn c13() -> Result<String, String> {
    all_pass(&[("bessel_ode_residual", &[("n_max", "5"), ("xs", "0.5,1,2,5"), ("tol", "1e-10")])])
}

fn c14() -> Result<String, String> {
    all_pass(&[
        (
            "disentangle_ode_vs_closed",
            &[("t_max", "0.2"), ("samples", "21"), ("steps", "10000"), ("tol", "1e-10")],
        ),
        ("disentangle_specialization", &[("fs", "1,1/3")]),
        (
            "disentangle_operator_equivalence",
            &[("ts", "0.02,0.05"), ("xs", "0,0.5,1"), ("order", "30"), ("tol", "1e-8")],
        ),
    ])
}

fn c15() -> Result<String, String> {
    all_pass(&[
        (
            "hermite_expand_orthonormality",
            &[("target", "3"), ("n_max", "8"), ("L", "10"), ("M", "400"), ("tol", "1e-8")],
        ),
        ("hermite_ladder", &[("n_max", "10"), ("xs", "-1,0,0.7,2"), ("tol", "1e-10")]),
    ])
}

fn verify_once() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_opspecial"))
        .args(["verify", "--output", "json"])
        .env_remove("OPSPECIAL_CONFIG")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("verify exited with {}", out.status));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn strip_timestamp(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn c16() -> Result<String, String> {
    let first = verify_once()?;
    let second = verify_once()?;
    let report = report_parse(&first).map_err(|e| e.to_string())?;
    if report.counts.total < 25 {
        return Err(format!("only {} checks registered", report.counts.total));
    }
    if strip_timestamp(&first) != strip_timestamp(&second) {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} checks, exit 0, reports identical modulo timestamp", report.counts.total))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 16] = [
        ("Hermite triple equality", c1),
        ("Laguerre triple equality", c2),
        ("Hermite ODE and derivative relation", c3),
        ("commutator table", c4),
        ("Hadamard conjugation", c5),
        ("Baker-Hausdorff central case", c6),
        ("even-Hermite sum", c7),
        ("generating functions", c8),
        ("Bessel cross-method", c9),
        ("Bessel addition", c10),
        ("Jacobi-Anger", c11),
        ("Bessel translation", c12),
        ("Bessel ODE residual", c13),
        ("disentangling", c14),
        ("basis expansion and ladder", c15),
        ("verify determinism", c16),
    ];
    let mut failures = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:2} PASS {title}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:2} FAIL {title}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
