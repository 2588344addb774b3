//! Run configuration: built-in defaults, then an optional JSON file, then
//! command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tfd_core::fockspace::{Cutoff, DEFAULT_TAIL_TOL};
use tfd_core::observables::PhysicalConstants;

use crate::error::{CliError, CliResult};

/// `"adaptive"` or a fixed per-mode dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CutoffSetting {
    Fixed(usize),
    Named(AdaptiveTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdaptiveTag {
    Adaptive,
}

impl CutoffSetting {
    pub const ADAPTIVE: CutoffSetting = CutoffSetting::Named(AdaptiveTag::Adaptive);

    pub fn fixed_dim(self) -> Option<usize> {
        match self {
            CutoffSetting::Fixed(d) => Some(d),
            CutoffSetting::Named(_) => None,
        }
    }
}

impl std::str::FromStr for CutoffSetting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("adaptive") {
            return Ok(Self::ADAPTIVE);
        }
        s.parse::<usize>()
            .map(CutoffSetting::Fixed)
            .map_err(|_| format!("expected `adaptive` or a dimension, got `{s}`"))
    }
}

/// Keys accepted in the JSON config file; every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub hbar: Option<f64>,
    pub lambda: Option<f64>,
    pub epsilon: Option<f64>,
    pub cutoff: Option<CutoffSetting>,
    pub tail_tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::BadArgs(format!("config {}: {e}", path.display())))
    }

    /// Keys set in `over` replace those in `self`.
    pub fn overlay(self, over: ConfigFile) -> ConfigFile {
        ConfigFile {
            hbar: over.hbar.or(self.hbar),
            lambda: over.lambda.or(self.lambda),
            epsilon: over.epsilon.or(self.epsilon),
            cutoff: over.cutoff.or(self.cutoff),
            tail_tol: over.tail_tol.or(self.tail_tol),
            out: over.out.or(self.out),
            seed: over.seed.or(self.seed),
        }
    }
}

/// Fully resolved settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub hbar: f64,
    pub lambda: f64,
    pub epsilon: f64,
    pub cutoff: CutoffSetting,
    pub tail_tol: f64,
    pub out: PathBuf,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20_240_601;

impl RunConfig {
    /// Applies defaults to the merged keys and validates them.
    pub fn resolve(keys: ConfigFile, default_out: &str) -> CliResult<Self> {
        let cfg = RunConfig {
            hbar: keys.hbar.unwrap_or(1.0),
            lambda: keys.lambda.unwrap_or(1.0),
            epsilon: keys.epsilon.unwrap_or(1.0),
            cutoff: keys.cutoff.unwrap_or(CutoffSetting::ADAPTIVE),
            tail_tol: keys.tail_tol.unwrap_or(DEFAULT_TAIL_TOL),
            out: keys.out.unwrap_or_else(|| PathBuf::from(default_out)),
            seed: keys.seed.unwrap_or(DEFAULT_SEED),
        };
        cfg.physical()?;
        if !(cfg.tail_tol > 0.0 && cfg.tail_tol <= 1e-4) {
            return Err(CliError::BadArgs(format!("tail tolerance must lie in (0, 1e-4], got {}", cfg.tail_tol)));
        }
        if let CutoffSetting::Fixed(d) = cfg.cutoff {
            if d < 2 {
                return Err(CliError::BadArgs(format!("cutoff must be at least 2, got {d}")));
            }
        }
        Ok(cfg)
    }

    pub fn physical(&self) -> CliResult<PhysicalConstants> {
        PhysicalConstants::new(self.hbar, self.lambda, self.epsilon).map_err(|e| CliError::BadArgs(e.to_string()))
    }

    pub fn cutoff_policy(&self) -> Cutoff {
        match self.cutoff {
            CutoffSetting::Fixed(d) => Cutoff::fixed(d).with_tail_tol(self.tail_tol),
            CutoffSetting::Named(_) => Cutoff::adaptive(self.tail_tol),
        }
    }
}
