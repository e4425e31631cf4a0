//! Run configuration shared by the CLI and the scorecard.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cones::{DEFAULT_DISC_BOUND_LIMIT, DEFAULT_DISC_N_LIMIT, DEFAULT_RAY_N_LIMIT};
use crate::engine::{DEFAULT_BOUND, DEFAULT_SCL_N_LIMIT};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Size caps. Each may be raised above its module default but not lowered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    pub scl_n: usize,
    pub disc_n: usize,
    pub disc_bound: i64,
    pub ray_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            scl_n: DEFAULT_SCL_N_LIMIT,
            disc_n: DEFAULT_DISC_N_LIMIT,
            disc_bound: DEFAULT_DISC_BOUND_LIMIT,
            ray_n: DEFAULT_RAY_N_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub bound: i64,
    pub stabilize: bool,
    pub seed: u64,
    pub limits: Limits,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            bound: DEFAULT_BOUND,
            stabilize: true,
            seed: 0,
            limits: Limits::default(),
            output: OutputFormat::Json,
        }
    }
}

/// Command-line values; `None` leaves the file or default value in place.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub bound: Option<i64>,
    pub stabilize: Option<bool>,
    pub seed: Option<u64>,
    pub output: Option<OutputFormat>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Defaults, then the file, then flags.
    pub fn resolve(file: Option<&Path>, flags: &Overrides) -> Result<Self> {
        let mut cfg = match file {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        if let Some(b) = flags.bound {
            cfg.bound = b;
        }
        if let Some(s) = flags.stabilize {
            cfg.stabilize = s;
        }
        if let Some(s) = flags.seed {
            cfg.seed = s;
        }
        if let Some(o) = flags.output {
            cfg.output = o;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bound < 1 {
            return Err(Error::invalid(format!("bound must be positive, got {}", self.bound)));
        }
        let d = Limits::default();
        let l = &self.limits;
        if l.scl_n < d.scl_n || l.disc_n < d.disc_n || l.disc_bound < d.disc_bound || l.ray_n < d.ray_n {
            return Err(Error::invalid(format!(
                "limits may not go below the defaults {d:?}, got {l:?}"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"bound": 2, "seed": 9, "output": "text"}"#).unwrap();
        let cfg = RunConfig::resolve(Some(&path), &Overrides::default()).unwrap();
        assert_eq!((cfg.bound, cfg.seed, cfg.output), (2, 9, OutputFormat::Text));
        assert!(cfg.stabilize);
        let flags = Overrides {
            bound: Some(4),
            output: Some(OutputFormat::Json),
            ..Overrides::default()
        };
        let cfg = RunConfig::resolve(Some(&path), &flags).unwrap();
        assert_eq!((cfg.bound, cfg.seed, cfg.output), (4, 9, OutputFormat::Json));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::from_json(r#"{"bound": 0}"#).is_err());
        assert!(RunConfig::from_json(r#"{"limits": {"scl_n": 2}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"colour": "red"}"#).is_err());
        let raised = RunConfig::from_json(r#"{"limits": {"scl_n": 7}}"#).unwrap();
        assert_eq!(raised.limits.scl_n, 7);
        assert_eq!(raised.limits.ray_n, DEFAULT_RAY_N_LIMIT);
    }
}
