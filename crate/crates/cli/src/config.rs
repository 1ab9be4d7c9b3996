use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionMode {
    On,
    Off,
    Both,
}

impl ProjectionMode {
    pub fn variants(self) -> &'static [bool] {
        match self {
            Self::On => &[true],
            Self::Off => &[false],
            Self::Both => &[true, false],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NormName {
    Energy,
    Nodal,
    Multiplier,
}

/// Study configuration as read from a JSON file. Every field is optional so
/// that command-line flags can fill in or override values.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub problem: Option<String>,
    pub q: Option<usize>,
    #[serde(rename = "Ns", alias = "ns")]
    pub ns: Option<Vec<usize>>,
    pub projection: Option<ProjectionMode>,
    pub norms: Option<Vec<NormName>>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub t_end: Option<f64>,
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    pub problem: String,
    pub q: usize,
    pub ns: Vec<usize>,
    pub projection: ProjectionMode,
    pub norms: Vec<NormName>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub t_end: f64,
}

impl StudyConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config(format!("config {}: {e}", path.display())))
    }

    /// Values set in `over` win.
    pub fn merge(self, over: StudyConfig) -> StudyConfig {
        StudyConfig {
            problem: over.problem.or(self.problem),
            q: over.q.or(self.q),
            ns: over.ns.or(self.ns),
            projection: over.projection.or(self.projection),
            norms: over.norms.or(self.norms),
            format: over.format.or(self.format),
            output: over.output.or(self.output),
            seed: over.seed.or(self.seed),
            t_end: over.t_end.or(self.t_end),
        }
    }

    pub fn resolve(self) -> Result<ResolvedConfig, CliError> {
        let problem = self.problem.ok_or_else(|| CliError::config("no problem given"))?;
        let q = self.q.unwrap_or(2);
        if !(1..=6).contains(&q) {
            return Err(CliError::config(format!("q must be in 1..=6, got {q}")));
        }
        let ns = self.ns.unwrap_or_else(|| vec![8, 16, 32, 64]);
        if ns.is_empty() {
            return Err(CliError::config("Ns must not be empty"));
        }
        if ns[0] == 0 || ns.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::config("Ns must be positive and strictly increasing"));
        }
        let t_end = self.t_end.unwrap_or(1.0);
        if !(t_end.is_finite() && t_end > 0.0) {
            return Err(CliError::config(format!("t_end must be positive, got {t_end}")));
        }
        let mut norms = self.norms.unwrap_or_else(|| vec![NormName::Energy, NormName::Nodal]);
        norms.sort_by_key(|n| *n as u8);
        norms.dedup();
        if norms.is_empty() {
            return Err(CliError::config("no norms selected"));
        }
        Ok(ResolvedConfig {
            problem,
            q,
            ns,
            projection: self.projection.unwrap_or(ProjectionMode::On),
            norms,
            format: self.format.unwrap_or(Format::Csv),
            output: self.output,
            seed: self.seed.unwrap_or(0),
            t_end,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let file: StudyConfig = serde_json::from_str(r#"{"problem": "stokes3", "q": 3, "Ns": [4, 8]}"#).unwrap();
        let flags = StudyConfig { q: Some(2), ..Default::default() };
        let r = file.merge(flags).resolve().unwrap();
        assert_eq!((r.problem.as_str(), r.q, r.ns), ("stokes3", 2, vec![4, 8]));
    }

    #[test]
    fn rejects_bad_values() {
        let base = StudyConfig { problem: Some("heat1d".into()), ..Default::default() };
        for bad in [
            StudyConfig { ns: Some(vec![]), ..base.clone() },
            StudyConfig { ns: Some(vec![8, 8]), ..base.clone() },
            StudyConfig { q: Some(7), ..base.clone() },
            StudyConfig { norms: Some(vec![]), ..base.clone() },
            StudyConfig::default(),
        ] {
            assert_eq!(bad.resolve().unwrap_err().code, 2);
        }
    }

    #[test]
    fn unknown_keys_are_errors() {
        assert!(serde_json::from_str::<StudyConfig>(r#"{"problme": "x"}"#).is_err());
    }
}
