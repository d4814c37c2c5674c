//! Named identity checks, the suite runner and the JSON report.
//!
//! Every check is a pure function of its parameter map. The runner evaluates
//! checks in parallel and assembles the report in registry order, so two runs
//! with the same configuration serialize identically apart from `timestamp`.

mod params;
mod registry;
mod report;

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::ComplexF;
use crate::error::{Error, Result};

pub use params::{ParamMap, Params};
pub use registry::{lookup, CheckSpec, Outcome, REGISTRY};
pub use report::{report_parse, report_serialize, write_report};

/// Result of one named identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub params: ParamMap,
    #[serde(with = "report::complex")]
    pub lhs: ComplexF,
    #[serde(with = "report::complex")]
    pub rhs: ComplexF,
    pub abs_err: f64,
    pub tolerance: f64,
    pub exact: bool,
    pub pass: bool,
    /// Set when the check could not be evaluated or produced a non-finite value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl IdentityCheck {
    fn from_outcome(name: &str, params: ParamMap, o: Outcome) -> Self {
        let mut check = Self {
            name: name.to_string(),
            params,
            lhs: o.lhs,
            rhs: o.rhs,
            abs_err: o.abs_err,
            tolerance: o.tolerance,
            exact: o.exact,
            pass: false,
            error: None,
        };
        let finite = [check.lhs.re, check.lhs.im, check.rhs.re, check.rhs.im, check.abs_err]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            check.sanitize("non-finite value");
        } else {
            check.pass = if check.exact {
                check.abs_err == 0.0
            } else {
                check.abs_err >= 0.0 && check.abs_err <= check.tolerance
            };
        }
        check
    }

    fn failed(name: &str, params: ParamMap, err: &Error) -> Self {
        let mut check = Self {
            name: name.to_string(),
            params,
            lhs: ComplexF::new(0.0, 0.0),
            rhs: ComplexF::new(0.0, 0.0),
            abs_err: 0.0,
            tolerance: 0.0,
            exact: false,
            pass: false,
            error: None,
        };
        check.sanitize(&err.to_string());
        check
    }

    fn sanitize(&mut self, reason: &str) {
        for z in [&mut self.lhs, &mut self.rhs] {
            if !z.re.is_finite() {
                z.re = 0.0;
            }
            if !z.im.is_finite() {
                z.im = 0.0;
            }
        }
        self.abs_err = f64::MAX;
        self.pass = false;
        self.error = Some(reason.to_string());
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub total: usize,
}

/// Suite configuration. `overrides` maps check names to parameter overrides.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite_name: String,
    pub filter: Option<String>,
    pub overrides: BTreeMap<String, ParamMap>,
}

impl SuiteConfig {
    pub fn new(suite_name: impl Into<String>) -> Self {
        Self { suite_name: suite_name.into(), ..Self::default() }
    }

    pub fn with_filter(mut self, pattern: impl Into<String>) -> Self {
        self.filter = Some(pattern.into());
        self
    }
}

/// Reads a JSON suite configuration.
pub fn load_config(path: &Path) -> Result<SuiteConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let mut cfg: SuiteConfig = serde_json::from_str(&text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if cfg.suite_name.is_empty() {
        cfg.suite_name = "default".into();
    }
    Ok(cfg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite_name: String,
    pub timestamp: u64,
    pub checks: Vec<IdentityCheck>,
    pub counts: Counts,
    pub config: SuiteConfig,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.counts.fail == 0
    }
}

/// Runs one registered check with `overrides` merged over its defaults.
///
/// Unknown names and malformed parameters are errors. Failures while
/// evaluating the identity yield a failing check with `error` set.
pub fn run_check(name: &str, overrides: &ParamMap) -> Result<IdentityCheck> {
    let spec = lookup(name)?;
    let params = Params::merge(spec.defaults, overrides)?;
    match (spec.run)(&params) {
        Ok(outcome) => Ok(IdentityCheck::from_outcome(name, params.into_map(), outcome)),
        Err(e @ Error::Argument { .. }) => Err(e),
        Err(e) => Ok(IdentityCheck::failed(name, params.into_map(), &e)),
    }
}

/// Runs every registered check matching the filter, in registry order.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    if let Some(unknown) = config.overrides.keys().find(|k| lookup(k).is_err()) {
        return Err(Error::Registry(unknown.clone()));
    }
    let empty = ParamMap::new();
    let selected: Vec<&CheckSpec> = REGISTRY
        .iter()
        .filter(|c| config.filter.as_deref().is_none_or(|f| glob_match(f, c.name)))
        .collect();
    let checks = selected
        .par_iter()
        .map(|c| run_check(c.name, config.overrides.get(c.name).unwrap_or(&empty)))
        .collect::<Result<Vec<_>>>()?;
    let pass = checks.iter().filter(|c| c.pass).count();
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    Ok(Report {
        suite_name: config.suite_name.clone(),
        timestamp,
        counts: Counts { pass, fail: checks.len() - pass, total: checks.len() },
        checks,
        config: config.clone(),
    })
}

/// Shell-style matching with `*` and `?`.
pub fn glob_match(pattern: &str, name: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let s: Vec<char> = name.chars().collect();
    let (mut i, mut j) = (0, 0);
    let mut star: Option<(usize, usize)> = None;
    while j < s.len() {
        if i < p.len() && (p[i] == '?' || p[i] == s[j]) {
            i += 1;
            j += 1;
        } else if i < p.len() && p[i] == '*' {
            star = Some((i, j));
            i += 1;
        } else if let Some((si, sj)) = star {
            i = si + 1;
            j = sj + 1;
            star = Some((si, sj + 1));
        } else {
            return false;
        }
    }
    p[i..].iter().all(|&c| c == '*')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glob() {
        assert!(glob_match("hermite_*", "hermite_genfun"));
        assert!(!glob_match("hermite_*", "even_hermite_sum"));
        assert!(glob_match("*_sum", "even_hermite_sum"));
        assert!(glob_match("bessel_?de_*", "bessel_ode_residual"));
        assert!(glob_match("*", ""));
        assert!(!glob_match("a?", "a"));
    }

    #[test]
    fn spec_examples() {
        let mut p = ParamMap::new();
        p.insert("n_max".into(), "25".into());
        let c = run_check("hermite_triple_equality", &p).unwrap();
        assert!(c.pass && c.exact && c.tolerance == 0.0);

        let c = run_check("even_hermite_sum", &ParamMap::new()).unwrap();
        assert!(c.pass, "{c:?}");
        assert!((c.lhs.re - 1.0 / 1.8f64.sqrt()).abs() <= 1e-9);

        let c = run_check("bessel_addition", &ParamMap::new()).unwrap();
        assert!(c.pass, "{c:?}");
    }

    #[test]
    fn errors() {
        assert_eq!(
            run_check("no_such_check", &ParamMap::new()),
            Err(Error::Registry("no_such_check".into()))
        );
        let mut p = ParamMap::new();
        p.insert("n_max".into(), "many".into());
        match run_check("hermite_triple_equality", &p) {
            Err(Error::Argument { name, .. }) => assert_eq!(name, "n_max"),
            other => panic!("{other:?}"),
        }
        let mut cfg = SuiteConfig::new("x");
        cfg.overrides.insert("nope".into(), ParamMap::new());
        assert!(matches!(run_suite(&cfg), Err(Error::Registry(_))));
    }

    #[test]
    fn domain_failure_is_a_failing_check() {
        let mut p = ParamMap::new();
        p.insert("t".into(), "-1/4".into());
        let c = run_check("even_hermite_sum", &p).unwrap();
        assert!(!c.pass);
        assert!(c.error.is_some());
        assert_eq!(c.abs_err, f64::MAX);
    }

    #[test]
    fn registry_is_large_and_unique() {
        assert!(REGISTRY.len() >= 25);
        let mut names: Vec<_> = REGISTRY.iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), REGISTRY.len());
    }
}
