//! Typed access to the string-valued parameter maps of identity checks.

use std::collections::BTreeMap;

use crate::algebra::{parse_rational, to_f64, Rational};
use crate::error::{Error, Result};

pub type ParamMap = BTreeMap<String, String>;

/// Defaults merged with caller overrides. Every lookup names the offending
/// key on failure.
#[derive(Clone, Debug)]
pub struct Params {
    map: ParamMap,
}

impl Params {
    /// Unknown override keys are rejected.
    pub fn merge(defaults: &[(&str, &str)], overrides: &ParamMap) -> Result<Self> {
        let mut map: ParamMap = defaults
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        for (k, v) in overrides {
            if !map.contains_key(k) {
                return Err(Error::arg(k.clone(), "unknown parameter"));
            }
            map.insert(k.clone(), v.clone());
        }
        Ok(Self { map })
    }

    pub fn into_map(self) -> ParamMap {
        self.map
    }

    pub fn map(&self) -> &ParamMap {
        &self.map
    }

    fn raw(&self, key: &str) -> Result<&str> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::arg(key, "missing parameter"))
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        let raw = self.raw(key)?;
        raw.trim()
            .parse()
            .map_err(|_| Error::arg(key, format!("`{raw}` is not a nonnegative integer")))
    }

    pub fn i64(&self, key: &str) -> Result<i64> {
        let raw = self.raw(key)?;
        raw.trim()
            .parse()
            .map_err(|_| Error::arg(key, format!("`{raw}` is not an integer")))
    }

    pub fn rational(&self, key: &str) -> Result<Rational> {
        parse_rational(self.raw(key)?).map_err(|_| Error::arg(key, "not a rational number"))
    }

    /// Accepts plain floats and `p/q`.
    pub fn f64(&self, key: &str) -> Result<f64> {
        let raw = self.raw(key)?;
        parse_f64(raw).ok_or_else(|| Error::arg(key, format!("`{raw}` is not a number")))
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>> {
        split_list(self.raw(key)?)
            .map(|s| parse_f64(s).ok_or_else(|| Error::arg(key, format!("`{s}` is not a number"))))
            .collect()
    }

    pub fn rational_list(&self, key: &str) -> Result<Vec<Rational>> {
        split_list(self.raw(key)?)
            .map(|s| parse_rational(s).map_err(|_| Error::arg(key, format!("`{s}` is not rational"))))
            .collect()
    }

    /// `;`-separated tuples of `:`-separated numbers, e.g. `0:1.1:0.7;3:2:2`.
    pub fn tuples(&self, key: &str, arity: usize) -> Result<Vec<Vec<f64>>> {
        self.raw(key)?
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|tuple| {
                let parts: Option<Vec<f64>> = tuple.split(':').map(parse_f64).collect();
                match parts {
                    Some(v) if v.len() == arity => Ok(v),
                    _ => Err(Error::arg(key, format!("`{tuple}` is not a {arity}-tuple"))),
                }
            })
            .collect()
    }

    pub fn tolerance(&self) -> Result<f64> {
        let tol = self.f64("tol")?;
        if !(tol >= 0.0) {
            return Err(Error::arg("tol", "must be nonnegative"));
        }
        Ok(tol)
    }
}

fn split_list(raw: &str) -> impl Iterator<Item = &str> {
    raw.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_f64(s: &str) -> Option<f64> {
    let s = s.trim();
    if s.contains('/') {
        return parse_rational(s).ok().map(|r| to_f64(&r));
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}
