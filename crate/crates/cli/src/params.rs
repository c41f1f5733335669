//! Flat `key=value` parameters with layered overrides and typed lookups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// A bad or unknown parameter; reported as a usage error.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamError(pub String);

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParamError {}

pub type ParamResult<T> = Result<T, ParamError>;

/// Resolved parameters. Every key must be read by the experiment, otherwise
/// [`Params::finish`] rejects it as unknown.
#[derive(Debug, Default)]
pub struct Params {
    values: BTreeMap<String, String>,
    used: BTreeSet<String>,
    resolved: BTreeMap<String, String>,
}

fn normalize_key(key: &str) -> String {
    key.trim().replace('-', "_")
}

/// Parse one `key=value` assignment.
pub fn parse_assignment(text: &str) -> ParamResult<(String, String)> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| ParamError(format!("expected key=value, got '{text}'")))?;
    let key = normalize_key(k);
    if key.is_empty() {
        return Err(ParamError(format!("empty key in '{text}'")));
    }
    Ok((key, v.trim().to_string()))
}

/// Parse a config file body: one `key=value` per line, `#` comments.
pub fn parse_config(text: &str) -> ParamResult<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| parse_assignment(line).map_err(|e| ParamError(format!("line {}: {}", i + 1, e.0))))
        })
        .collect()
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load_config(&mut self, path: &Path) -> Result<(), crate::CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| crate::CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        for (k, v) in parse_config(&text).map_err(|e| ParamError(format!("{}: {}", path.display(), e.0)))? {
            self.values.insert(k, v);
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.values.insert(normalize_key(key), value.into());
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.used.insert(key.to_string());
        self.values.get(key).cloned()
    }

    fn record(&mut self, key: &str, value: String) {
        self.resolved.insert(key.to_string(), value);
    }

    /// Typed value or `default`.
    pub fn get<T>(&mut self, key: &str, default: T) -> ParamResult<T>
    where
        T: FromStr + fmt::Display,
    {
        let value = match self.take(key) {
            Some(raw) => raw
                .parse::<T>()
                .map_err(|_| ParamError(format!("invalid value '{raw}' for {key}")))?,
            None => default,
        };
        self.record(key, value.to_string());
        Ok(value)
    }

    /// Float that also accepts `inf` and `pi`-multiples such as `0.5pi`.
    pub fn get_f64(&mut self, key: &str, default: f64) -> ParamResult<f64> {
        let value = match self.take(key) {
            Some(raw) => parse_f64(&raw).ok_or_else(|| ParamError(format!("invalid value '{raw}' for {key}")))?,
            None => default,
        };
        self.record(key, crate::output::fmt_g(value));
        Ok(value)
    }

    /// Comma-separated floats.
    pub fn get_f64_list(&mut self, key: &str, default: &[f64]) -> ParamResult<Vec<f64>> {
        let value = match self.take(key) {
            Some(raw) => raw
                .split(',')
                .map(|s| parse_f64(s).ok_or_else(|| ParamError(format!("invalid value '{s}' in {key}"))))
                .collect::<ParamResult<Vec<_>>>()?,
            None => default.to_vec(),
        };
        if value.is_empty() {
            return Err(ParamError(format!("{key} must not be empty")));
        }
        let shown: Vec<String> = value.iter().map(|v| crate::output::fmt_g(*v)).collect();
        self.record(key, shown.join(";"));
        Ok(value)
    }

    /// Raw string value or `default`.
    pub fn get_str(&mut self, key: &str, default: &str) -> String {
        let value = self.take(key).unwrap_or_else(|| default.to_string());
        self.record(key, value.clone());
        value
    }

    /// Fail on keys that no experiment step consumed.
    pub fn finish(&self) -> ParamResult<()> {
        let unknown: Vec<&str> = self.values.keys().filter(|k| !self.used.contains(*k)).map(String::as_str).collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(ParamError(format!("unknown parameter(s): {}", unknown.join(", "))))
        }
    }

    /// Every parameter with the value actually used, sorted by key.
    pub fn resolved(&self) -> &BTreeMap<String, String> {
        &self.resolved
    }
}

pub fn parse_f64(text: &str) -> Option<f64> {
    let t = text.trim();
    match t {
        "inf" | "+inf" => return Some(f64::INFINITY),
        "-inf" => return Some(f64::NEG_INFINITY),
        _ => {}
    }
    if let Some(coef) = t.strip_suffix("pi") {
        let coef = coef.trim().trim_end_matches('*');
        let c = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().ok()? };
        return Some(c * std::f64::consts::PI);
    }
    t.parse::<f64>().ok().filter(|v| !v.is_nan())
}
