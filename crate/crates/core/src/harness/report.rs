//! JSON encoding of reports. Object keys come out sorted and floats use the
//! shortest representation that round-trips.

use std::path::Path;

use super::Report;
use crate::error::{Error, Result};

pub fn report_serialize(report: &Report) -> Result<String> {
    // `Value` objects are ordered maps, which sorts every key.
    let value = serde_json::to_value(report).map_err(|e| Error::Internal(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Error::Internal(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn report_parse(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::arg("report", e.to_string()))
}

pub fn write_report(report: &Report, path: &Path) -> Result<()> {
    std::fs::write(path, report_serialize(report)?).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub(super) mod complex {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Parts { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let p = Parts::deserialize(d)?;
        Ok(Complex64::new(p.re, p.im))
    }
}
