//! Run configuration: command-line flags layered over an optional TOML file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use dqd_core::sweep::{Axis, GridSpec};
use dqd_core::{BranchKind, CycleInputs, DotParams, DEFAULT_TOL};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Every knob any subcommand reads. All optional so the file and the flags
/// can each supply a subset.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    /// Energy detuning ε.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    /// Interdot tunneling amplitude τ.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    /// Bath temperature T (k_B = 1).
    #[arg(long, allow_hyphen_values = true)]
    pub temperature: Option<f64>,
    /// Strength of the first measurement channel.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Strength of the second measurement channel.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// engine | refrigerator-plus | refrigerator-minus
    #[arg(long)]
    pub branch: Option<String>,
    /// Strength axis as min:max:steps.
    #[arg(long)]
    pub grid_strength: Option<String>,
    /// Detuning axis as min:max:steps.
    #[arg(long)]
    pub grid_epsilon: Option<String>,
    /// Magnitudes at or below this count as zero when reading signs.
    #[arg(long)]
    pub zero_tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
}

impl Options {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("malformed config {}: {e}", path.display())))
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: Options) -> Options {
        Options {
            epsilon: self.epsilon.or(base.epsilon),
            tau: self.tau.or(base.tau),
            temperature: self.temperature.or(base.temperature),
            a: self.a.or(base.a),
            b: self.b.or(base.b),
            branch: self.branch.or(base.branch),
            grid_strength: self.grid_strength.or(base.grid_strength),
            grid_epsilon: self.grid_epsilon.or(base.grid_epsilon),
            zero_tol: self.zero_tol.or(base.zero_tol),
            format: self.format.or(base.format),
            output: self.output.or(base.output),
            seed: self.seed.or(base.seed),
            trials: self.trials.or(base.trials),
        }
    }

    fn require(value: Option<f64>, flag: &str) -> Result<f64, CliError> {
        value.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
    }

    pub fn params(&self) -> Result<DotParams, CliError> {
        let eps = Self::require(self.epsilon, "epsilon")?;
        Ok(DotParams::new(eps, self.tau.unwrap_or(0.0))?)
    }

    pub fn temperature(&self) -> Result<f64, CliError> {
        Self::require(self.temperature, "temperature")
    }

    pub fn cycle_inputs(&self) -> Result<CycleInputs, CliError> {
        let a = Self::require(self.a, "a")?;
        let b = Self::require(self.b, "b")?;
        Ok(CycleInputs::new(self.params()?, self.temperature()?, a, b)?)
    }

    pub fn branch(&self) -> Result<BranchKind, CliError> {
        let name = self
            .branch
            .as_deref()
            .ok_or_else(|| CliError::Usage("missing --branch".into()))?;
        BranchKind::from_str(name).map_err(CliError::Usage)
    }

    /// The free strength of `branch`: `--a` on the engine branch, `--b` otherwise.
    pub fn branch_strength(&self, branch: BranchKind) -> Result<f64, CliError> {
        match branch {
            BranchKind::Engine => Self::require(self.a, "a"),
            _ => Self::require(self.b, "b"),
        }
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol.unwrap_or(DEFAULT_TOL)
    }

    pub fn grid_spec(&self) -> Result<GridSpec, CliError> {
        let mut spec = GridSpec::new(self.branch()?, self.temperature()?, self.tau.unwrap_or(0.0));
        if let Some(s) = &self.grid_strength {
            spec.strength_axis = Axis::from_str(s).map_err(CliError::Usage)?;
        }
        if let Some(s) = &self.grid_epsilon {
            spec.epsilon_axis = Axis::from_str(s).map_err(CliError::Usage)?;
        }
        spec.zero_tol = self.zero_tol();
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: Options = toml::from_str(
            "epsilon = 2.0\ntau = 0.1\nbranch = \"engine\"\ngrid-strength = \"0:1:11\"\nformat = \"json\"",
        )
        .unwrap();
        let flags = Options {
            epsilon: Some(1.0),
            format: Some(Format::Csv),
            ..Options::default()
        };
        let merged = flags.over(file);
        assert_eq!(merged.epsilon, Some(1.0));
        assert_eq!(merged.tau, Some(0.1));
        assert_eq!(merged.format, Some(Format::Csv));
        assert_eq!(merged.grid_strength.as_deref(), Some("0:1:11"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<Options>("epsilon = 1.0\nbogus = 3").is_err());
    }

    #[test]
    fn branch_strength_picks_free_parameter() {
        let o = Options {
            a: Some(0.3),
            b: Some(0.8),
            ..Options::default()
        };
        assert_eq!(o.branch_strength(BranchKind::Engine).unwrap(), 0.3);
        assert_eq!(
            o.branch_strength(BranchKind::RefrigeratorPlus).unwrap(),
            0.8
        );
    }
}
