//! Run configuration from a flat `key = value` file.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const CONFIG_ENV: &str = "FBT_CONFIG";
pub const DEFAULT_CONFIG_FILE: &str = "fbt.conf";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub tol: f64,
    pub comparison_tol: f64,
    pub panel_budget: u64,
    pub seed: u64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { tol: 1e-8, comparison_tol: 1e-6, panel_budget: 2_000_000, seed: 42, output_format: OutputFormat::Csv }
    }
}

impl RunConfig {
    /// Lines of `key = value`; `#` starts a comment.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut c = RunConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = |what: &str| CliError::Config(format!("line {}: `{v}` is not a valid {what} for `{k}`", n + 1));
            match k {
                "tol" => c.tol = v.parse().map_err(|_| bad("number"))?,
                "comparison_tol" => c.comparison_tol = v.parse().map_err(|_| bad("number"))?,
                "panel_budget" => c.panel_budget = v.parse().map_err(|_| bad("integer"))?,
                "seed" => c.seed = v.parse().map_err(|_| bad("integer"))?,
                "output_format" => {
                    c.output_format = match v {
                        "csv" => OutputFormat::Csv,
                        "json" => OutputFormat::Json,
                        _ => return Err(bad("format (csv or json)")),
                    }
                }
                other => return Err(CliError::Config(format!("line {}: unknown key `{other}`", n + 1))),
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(self.tol > 0.0 && self.tol <= self.comparison_tol) || !self.comparison_tol.is_finite() {
            return Err(CliError::Config(format!(
                "need 0 < tol ≤ comparison_tol, got tol = {} and comparison_tol = {}",
                self.tol, self.comparison_tol
            )));
        }
        if self.panel_budget < 1000 {
            return Err(CliError::Config(format!("panel_budget must be at least 1000, got {}", self.panel_budget)));
        }
        Ok(())
    }

    /// The file named by `explicit`, else by `$FBT_CONFIG`, else `fbt.conf`
    /// if present, else the defaults.
    pub fn load(explicit: Option<&Path>) -> CliResult<Self> {
        let path: Option<PathBuf> = match explicit {
            Some(p) => Some(p.to_path_buf()),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) => Some(PathBuf::from(p)),
                None => Some(PathBuf::from(DEFAULT_CONFIG_FILE)).filter(|p| p.is_file()),
            },
        };
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(&p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                Self::parse(&text)
            }
            None => Ok(Self::default()),
        }
    }

    pub fn quad(&self) -> fbt_core::QuadConfig {
        fbt_core::QuadConfig { tol: self.tol, budget: self.panel_budget }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let c = RunConfig::parse("tol = 1e-7\n# comment\ncomparison_tol=1e-5\npanel_budget = 5000\nseed=7 # trailing\noutput_format = json\n").unwrap();
        assert_eq!(c, RunConfig { tol: 1e-7, comparison_tol: 1e-5, panel_budget: 5000, seed: 7, output_format: OutputFormat::Json });
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("tol = 1e-3\n").is_err());
        assert!(RunConfig::parse("panel_budget = 10\n").is_err());
        assert!(RunConfig::parse("colour = red\n").is_err());
        assert!(RunConfig::parse("tol 1e-9\n").is_err());
        assert!(RunConfig::parse("output_format = xml\n").is_err());
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
    }
}
