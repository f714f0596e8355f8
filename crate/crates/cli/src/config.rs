use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use ymqm_core::central::ModelParams;
use ymqm_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything a run depends on. Embedded in every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub g: f64,
    pub hbar: f64,
    pub t: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub kmax: u32,
    pub format: Format,
    /// Significant digits for high-precision constants.
    pub precision: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Command-specific options, as resolved.
    pub options: BTreeMap<String, String>,
}

pub const MIN_PRECISION: usize = 30;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            g: 1.0,
            hbar: 1.0,
            t: 0.1,
            q: 10.0,
            kmax: 8,
            format: Format::Json,
            precision: 40,
            seed: 1,
            out: None,
            options: BTreeMap::new(),
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Error> {
    v.trim().parse().map_err(|_| Error::Parse(format!("bad value for `{key}`: `{v}`")))
}

impl RunConfig {
    pub fn params(&self) -> Result<ModelParams, Error> {
        ModelParams::new(self.g, self.hbar, self.t, self.q)
    }

    /// Sets one key; unknown keys become command options.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Error> {
        match key {
            "g" => self.g = parse_num(key, value)?,
            "hbar" => self.hbar = parse_num(key, value)?,
            "t" => self.t = parse_num(key, value)?,
            "Q" | "q" => self.q = parse_num(key, value)?,
            "kmax" => self.kmax = parse_num(key, value)?,
            "precision" => self.precision = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "format" => {
                self.format = match value.trim() {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    v => return Err(Error::Parse(format!("unknown format `{v}`"))),
                }
            }
            _ => {
                self.options.insert(key.to_string(), value.trim().to_string());
            }
        }
        Ok(())
    }

    /// `key = value` lines (`#` comments allowed) or a flat JSON object.
    pub fn apply_text(&mut self, text: &str) -> Result<(), Error> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let map: BTreeMap<String, serde_json::Value> =
                serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("config JSON: {e}")))?;
            for (k, v) in map {
                let s = match v {
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Null => continue,
                    other => other.to_string(),
                };
                self.set(&k, &s)?;
            }
            return Ok(());
        }
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected `key = value`", i + 1)))?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), Error> {
        let text = std::fs::read_to_string(path)?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.precision < MIN_PRECISION {
            return Err(Error::InvalidArgument(format!(
                "precision {} below the {MIN_PRECISION}-digit minimum",
                self.precision
            )));
        }
        Ok(())
    }

    pub fn option(&self, key: &str) -> Option<&str> {
        self.options.get(key).map(String::as_str)
    }

    pub fn option_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, Error> {
        self.option(key).map(|v| parse_num(key, v)).transpose()
    }
}
