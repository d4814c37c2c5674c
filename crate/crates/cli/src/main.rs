use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use opspecial::algebra::{parse_rational, to_f64};
use opspecial::bessel::{self, BesselEvalConfig};
use opspecial::disentangle::{self, FactoredForm, QuadExponent, DEFAULT_RK4_STEPS};
use opspecial::harness::{self, SuiteConfig};
use opspecial::{polyfam, Rational, UniPoly};

/// Environment variable naming the default suite configuration file.
const CONFIG_ENV: &str = "OPSPECIAL_CONFIG";

#[derive(Parser)]
#[command(name = "opspecial", version, about = "Operator-algebra special functions and identity checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single function or polynomial.
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Compare a series partial sum with its closed form.
    #[command(subcommand)]
    Sum(SumCmd),
    /// Factor exp{t(α x² + β(xp+px) + γ p²)} into ordered exponentials.
    Disentangle(DisentangleArgs),
    /// Run the identity-check suite.
    Verify(VerifyArgs),
    /// Emit a table of polynomials.
    #[command(subcommand)]
    Table(TableCmd),
}

#[derive(Subcommand)]
enum EvalCmd {
    /// Hermite polynomial H_n, printed with exact coefficients.
    Hermite {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = HermiteRoute::Recurrence)]
        route: HermiteRoute,
    },
    /// Associated Laguerre polynomial L_n^α.
    Laguerre {
        #[arg(long)]
        n: usize,
        /// Order α, decimal or p/q.
        #[arg(long, default_value = "0", value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long, value_enum, default_value_t = LaguerreRoute::Recurrence)]
        route: LaguerreRoute,
    },
    /// Bessel function J_n(x).
    Bessel {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        x: f64,
        #[arg(long, value_enum, default_value_t = BesselMethod::Auto)]
        method: BesselMethod,
    },
    /// Normalized oscillator function ψ_n(x).
    Psi {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        x: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HermiteRoute {
    Recurrence,
    Rodrigues,
    Operator,
}

#[derive(Clone, Copy, ValueEnum)]
enum LaguerreRoute {
    Recurrence,
    Operator,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum BesselMethod {
    Auto,
    Series,
    Integral,
    Miller,
}

#[derive(Subcommand)]
enum SumCmd {
    /// Σ tⁿ/n! H_2n(x) against (1+4t)^{-1/2} exp(4t x²/(1+4t)).
    EvenHermite {
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        t: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        x: f64,
        #[arg(long = "N", default_value_t = 80)]
        terms: usize,
    },
    /// Σ H_n(x) aⁿ/n! against exp(-a² + 2ax).
    Hermite {
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        x: f64,
        #[arg(long = "N", default_value_t = 40)]
        terms: usize,
    },
    /// Σ L_n^α(x) tⁿ against its closed form; needs |t| < 1.
    Laguerre {
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        t: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        x: f64,
        #[arg(long, default_value = "0", value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long = "N", default_value_t = 60)]
        terms: usize,
    },
    /// Σ_{|n|≤N} tⁿ J_n(x) against exp(x(t - 1/t)/2).
    Bessel {
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        t: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
        x: f64,
        #[arg(long = "N", default_value_t = 40)]
        terms: usize,
    },
}

#[derive(Args)]
struct DisentangleArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
    t: f64,
    /// Coefficient of x² (complex, e.g. 4, -2i, 1/2+3i). Defaults give the even-Hermite exponent.
    #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
    alpha: Option<Complex64>,
    /// Coefficient of xp+px.
    #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
    beta: Option<Complex64>,
    /// Coefficient of p².
    #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
    gamma: Option<Complex64>,
    /// RK4 steps.
    #[arg(long, default_value_t = DEFAULT_RK4_STEPS)]
    steps: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Only run checks whose name matches this glob (`*`, `?`).
    #[arg(long, value_name = "PATTERN")]
    filter: Option<String>,
    /// Suite configuration (JSON). Defaults to $OPSPECIAL_CONFIG when set.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// List registered checks instead of running them.
    #[arg(long)]
    list: bool,
}

#[derive(Subcommand)]
enum TableCmd {
    /// Hermite polynomials H_0..H_{n-max}.
    Hermite {
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        format: Output,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn real_arg(s: &str) -> Result<f64, String> {
    rational_arg(s).map(|r| to_f64(&r))
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`; parts may be decimals or `p/q`.
fn complex_arg(s: &str) -> Result<Complex64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{s}` is not a complex number");
    let Some(body) = s.strip_suffix('i') else {
        return real_arg(&s).map(|re| Complex64::new(re, 0.0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(k, c)| (c == '+' || c == '-') && !body[..k].ends_with(['e', 'E']))
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    let re = real_arg(re).map_err(|_| bad())?;
    let im = real_arg(im).map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return format!("{}", z.re);
    }
    if z.re == 0.0 {
        return format!("{}i", z.im);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

fn complex_json(z: Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

fn coeff_strings(p: &UniPoly, n: usize) -> Vec<String> {
    (0..=n as u32).map(|k| p.coeff(k).to_string()).collect()
}

/// What a command produced, plus whether it counts as success.
struct Emitted {
    text: String,
    ok: bool,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn render(output: Output, text: String, value: serde_json::Value) -> Result<String> {
    Ok(match output {
        Output::Json => serde_json::to_string_pretty(&value)? + "\n",
        Output::Text => text + "\n",
        Output::Csv => bail!("csv output is only available for `table`"),
    })
}

fn eval(cmd: EvalCmd, output: Output) -> Result<Emitted> {
    let out = match cmd {
        EvalCmd::Hermite { n, route } => {
            let p = match route {
                HermiteRoute::Recurrence => polyfam::hermite_recurrence(n).into_polys().swap_remove(n),
                HermiteRoute::Rodrigues => polyfam::hermite_rodrigues(n),
                HermiteRoute::Operator => polyfam::hermite_operator(n)?,
            };
            let value = json!({ "n": n, "polynomial": p.to_string(), "coefficients": coeff_strings(&p, n) });
            render(output, p.to_string(), value)?
        }
        EvalCmd::Laguerre { n, alpha, route } => {
            let p = match route {
                LaguerreRoute::Recurrence => {
                    polyfam::laguerre_recurrence(n, &alpha).polys()[n].clone()
                }
                LaguerreRoute::Operator => polyfam::laguerre_operator(n, &alpha)?,
                LaguerreRoute::Explicit => polyfam::laguerre_explicit(n, &alpha),
            };
            let value = json!({
                "n": n,
                "alpha": opspecial::algebra::fmt_rational(&alpha),
                "polynomial": p.to_string(),
                "coefficients": coeff_strings(&p, n),
            });
            render(output, p.to_string(), value)?
        }
        EvalCmd::Bessel { n, x, method } => {
            let v = bessel_value(n, x, method)?;
            render(output, format!("{v}"), json!({ "n": n, "x": x, "value": v }))?
        }
        EvalCmd::Psi { n, x } => {
            let v = polyfam::psi_eval(n, Complex64::new(x, 0.0)).re;
            render(output, format!("{v}"), json!({ "n": n, "x": x, "value": v }))?
        }
    };
    Ok(Emitted::ok(out))
}

fn bessel_value(n: i64, x: f64, method: BesselMethod) -> Result<f64> {
    let cfg = BesselEvalConfig::default();
    let order = n.unsigned_abs();
    let sign = if n < 0 && order % 2 == 1 { -1.0 } else { 1.0 };
    Ok(match method {
        BesselMethod::Auto => bessel::j_signed(n, x)?,
        BesselMethod::Series => {
            let order = u32::try_from(order).context("order too large for the series")?;
            sign * bessel::j_series(order, x, cfg.series_tol)?
        }
        BesselMethod::Integral => bessel::j_integral_adaptive(n, x, &cfg)?,
        BesselMethod::Miller => {
            let order = usize::try_from(order).context("order too large")?;
            sign * bessel::j_miller(order, x, cfg.miller_pad)?[order]
        }
    })
}

fn sum_report(output: Output, partial: Complex64, closed: Complex64, params: serde_json::Value) -> Result<String> {
    let err = (partial - closed).norm();
    let text = format!(
        "partial = {}\nclosed  = {}\nabs_err = {err:e}",
        fmt_complex(partial),
        fmt_complex(closed)
    );
    let value = json!({
        "params": params,
        "partial": complex_json(partial),
        "closed": complex_json(closed),
        "abs_err": err,
    });
    render(output, text, value)
}

fn sum(cmd: SumCmd, output: Output) -> Result<Emitted> {
    let c = |v: f64| Complex64::new(v, 0.0);
    let out = match cmd {
        SumCmd::EvenHermite { t, x, terms } => {
            let closed = polyfam::even_hermite_closed(c(t), c(x))?;
            let partial = polyfam::even_hermite_partial(c(t), c(x), terms);
            sum_report(output, partial, closed, json!({ "t": t, "x": x, "N": terms }))?
        }
        SumCmd::Hermite { alpha, x, terms } => {
            let closed = polyfam::hermite_genfun_closed(c(alpha), c(x));
            let partial = polyfam::hermite_genfun_partial(c(alpha), c(x), terms);
            sum_report(output, partial, closed, json!({ "alpha": alpha, "x": x, "N": terms }))?
        }
        SumCmd::Laguerre { t, x, alpha, terms } => {
            let partial = polyfam::laguerre_genfun_partial(c(t), c(x), &alpha, terms)?;
            let closed = polyfam::laguerre_genfun_closed(c(t), c(x), &alpha)?;
            let a = opspecial::algebra::fmt_rational(&alpha);
            sum_report(output, partial, closed, json!({ "t": t, "x": x, "alpha": a, "N": terms }))?
        }
        SumCmd::Bessel { t, x, terms } => {
            let partial = bessel::bessel_genfun_partial(x, t, terms)?;
            let closed = bessel::bessel_genfun_closed(x, t)?;
            sum_report(output, c(partial), c(closed), json!({ "t": t, "x": x, "N": terms }))?
        }
    };
    Ok(Emitted::ok(out))
}

fn form_json(form: &FactoredForm) -> serde_json::Value {
    json!({ "f": complex_json(form.f), "g": complex_json(form.g), "h": complex_json(form.h) })
}

fn form_text(label: &str, form: &FactoredForm) -> String {
    format!(
        "{label}: f = {}, g = {}, h = {}",
        fmt_complex(form.f),
        fmt_complex(form.g),
        fmt_complex(form.h)
    )
}

fn disentangle_cmd(args: DisentangleArgs, output: Output) -> Result<Emitted> {
    let default = QuadExponent::even_hermite();
    let q = QuadExponent::new(
        args.alpha.unwrap_or(default.a_x2),
        args.beta.unwrap_or(default.b_mix),
        args.gamma.unwrap_or(default.c_p2),
    );
    let ode = disentangle::disentangle_ode(&q, args.t, args.steps)?;
    let mut text = vec![form_text("rk4", &ode)];
    let mut value = json!({
        "t": args.t,
        "alpha": complex_json(q.a_x2),
        "beta": complex_json(q.b_mix),
        "gamma": complex_json(q.c_p2),
        "steps": args.steps,
        "rk4": form_json(&ode),
    });
    if q == default {
        let closed = disentangle::disentangle_closed_paper(args.t)?;
        text.push(form_text("closed", &closed));
        text.push(format!("max_abs_diff = {:e}", ode.max_abs_diff(&closed)));
        value["closed"] = form_json(&closed);
        value["max_abs_diff"] = json!(ode.max_abs_diff(&closed));
    }
    Ok(Emitted::ok(render(output, text.join("\n"), value)?))
}

fn verify(args: VerifyArgs, output: Output) -> Result<Emitted> {
    if args.list {
        let lines: Vec<String> = harness::REGISTRY
            .iter()
            .map(|c| format!("{:34} {}", c.name, c.description))
            .collect();
        return Ok(Emitted::ok(lines.join("\n") + "\n"));
    }
    let path = args.config.or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let mut config = match path {
        Some(p) => harness::load_config(&p)?,
        None => SuiteConfig::new("default"),
    };
    if let Some(f) = args.filter {
        config.filter = Some(f);
    }
    let report = harness::run_suite(&config)?;
    let text = match output {
        Output::Json => harness::report_serialize(&report)?,
        Output::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                s += &format!("{status} {:34} abs_err={:e} tol={:e}", c.name, c.abs_err, c.tolerance);
                if let Some(e) = &c.error {
                    s += &format!(" ({e})");
                }
                s.push('\n');
            }
            s += &format!(
                "{} passed, {} failed, {} total\n",
                report.counts.pass, report.counts.fail, report.counts.total
            );
            s
        }
        Output::Csv => bail!("csv output is only available for `table`"),
    };
    Ok(Emitted { text, ok: report.all_pass() })
}

fn table(cmd: TableCmd) -> Result<Emitted> {
    let TableCmd::Hermite { n_max, format } = cmd;
    let set = polyfam::hermite_recurrence(n_max);
    let text = match format {
        Output::Text => set
            .polys()
            .iter()
            .enumerate()
            .map(|(n, p)| format!("H_{n} = {p}\n"))
            .collect(),
        Output::Csv => {
            let mut s = String::from("n");
            for k in 0..=n_max {
                s += &format!(",x^{k}");
            }
            s.push('\n');
            for (n, p) in set.polys().iter().enumerate() {
                s += &n.to_string();
                for c in coeff_strings(p, n_max) {
                    s += &format!(",{c}");
                }
                s.push('\n');
            }
            s
        }
        Output::Json => {
            let rows: Vec<_> = set
                .polys()
                .iter()
                .enumerate()
                .map(|(n, p)| json!({ "n": n, "polynomial": p.to_string(), "coefficients": coeff_strings(p, n) }))
                .collect();
            serde_json::to_string_pretty(&rows)? + "\n"
        }
    };
    Ok(Emitted::ok(text))
}

fn run(cli: Cli) -> Result<bool> {
    let emitted = match cli.command {
        Command::Eval(cmd) => eval(cmd, cli.output)?,
        Command::Sum(cmd) => sum(cmd, cli.output)?,
        Command::Disentangle(args) => disentangle_cmd(args, cli.output)?,
        Command::Verify(args) => verify(args, cli.output)?,
        Command::Table(cmd) => table(cmd)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, &emitted.text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(emitted.text.as_bytes())?,
    }
    Ok(emitted.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(complex_arg("4").unwrap(), Complex64::new(4.0, 0.0));
        assert_eq!(complex_arg("-2i").unwrap(), Complex64::new(0.0, -2.0));
        assert_eq!(complex_arg("1/2+3i").unwrap(), Complex64::new(0.5, 3.0));
        assert_eq!(complex_arg("1e-3-i").unwrap(), Complex64::new(1e-3, -1.0));
        assert_eq!(complex_arg("i").unwrap(), Complex64::new(0.0, 1.0));
        assert!(complex_arg("abc").is_err());
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(Complex64::new(1.0, 0.0)), "1");
        assert_eq!(fmt_complex(Complex64::new(0.5, -2.0)), "0.5-2i");
    }
}
