//! Experiment configuration files: flat key-value text with `[alice]`,
//! `[eve]` and `[run]` sections. Every key is also available as a CLI flag,
//! and flags override file values.
//!
//! ```text
//! # witness run against a lossy memory
//! [alice]
//! prior = gauss
//! sigma_a = 5.0
//! sigma_b = 5.0
//!
//! [eve]
//! strategy = tailored
//! eta = 0.8
//! nu = 1.0
//!
//! [run]
//! rounds = 1000000
//! seed = 42
//! chunk_size = 65536
//! z = 5
//! ```

use std::collections::HashMap;
use std::path::Path;

use crate::CliError;

const SECTIONS: &[(&str, &[&str])] = &[
    ("alice", &["prior", "sigma_a", "sigma_b", "l", "delta"]),
    ("eve", &["strategy", "eta", "nu", "k", "m", "c"]),
    ("run", &["rounds", "seed", "chunk_size", "z", "out"]),
];

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: HashMap<(String, String), String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = HashMap::new();
        let mut section: Option<String> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim().to_ascii_lowercase();
                if !SECTIONS.iter().any(|(s, _)| *s == name) {
                    return Err(CliError::usage(format!(
                        "config line {}: unknown section [{name}]",
                        lineno + 1
                    )));
                }
                section = Some(name);
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "config line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                )));
            };
            let Some(sec) = &section else {
                return Err(CliError::usage(format!(
                    "config line {}: key outside of any [section]",
                    lineno + 1
                )));
            };
            let key = key.trim().to_ascii_lowercase();
            let allowed = SECTIONS.iter().find(|(s, _)| s == sec).map(|(_, k)| *k).unwrap();
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::usage(format!(
                    "config line {}: unknown key `{key}` in section [{sec}]",
                    lineno + 1
                )));
            }
            if values.insert((sec.clone(), key.clone()), value.trim().to_string()).is_some() {
                return Err(CliError::usage(format!(
                    "config line {}: duplicate key `{key}` in section [{sec}]",
                    lineno + 1
                )));
            }
        }
        Ok(ConfigFile { values })
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.values.get(&(section.to_string(), key.to_string())).map(|s| s.as_str())
    }

    /// Parse a value, reporting the section/key on failure.
    pub fn get_parsed<T: std::str::FromStr>(
        &self,
        section: &str,
        key: &str,
    ) -> Result<Option<T>, CliError> {
        match self.get(section, key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                CliError::usage(format!("config [{section}] {key} = `{raw}`: cannot parse"))
            }),
        }
    }

    /// Parse a comma-separated list of floats.
    pub fn get_floats(&self, section: &str, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        match self.get(section, key) {
            None => Ok(None),
            Some(raw) => raw
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map(Some)
                .map_err(|_| {
                    CliError::usage(format!(
                        "config [{section}] {key} = `{raw}`: expected comma-separated numbers"
                    ))
                }),
        }
    }
}
