use crate::Failure;
use serde::Deserialize;
use std::path::{Path, PathBuf};

pub const DEFAULT_RESOLUTION: usize = 512;

/// Thresholds applied by the front end. Anything missing from a TOML file
/// keeps its default.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliTolerances {
    /// Bound on every residual of the verification report.
    pub verify: f64,
    /// Smallest singular value of the restricted symbol counted as elliptic.
    pub sigma: f64,
}

impl Default for CliTolerances {
    fn default() -> Self {
        CliTolerances { verify: 1e-7, sigma: 1e-8 }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    resolution: Option<usize>,
    tolerances: CliTolerances,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub resolution: usize,
    pub tolerances: CliTolerances,
    pub output: Option<PathBuf>,
    pub input: Option<PathBuf>,
}

impl RunConfig {
    /// Flags win over the TOML file, which wins over the defaults.
    pub fn resolve(
        command: &str,
        resolution: Option<usize>,
        config: Option<&Path>,
        output: Option<PathBuf>,
        input: Option<PathBuf>,
    ) -> Result<Self, Failure> {
        let file = match config {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))?;
                toml::from_str::<ConfigFile>(&text)
                    .map_err(|e| Failure::Input(format!("bad config {}: {e}", p.display())))?
            }
            None => ConfigFile::default(),
        };
        let cfg = RunConfig {
            command: command.to_string(),
            resolution: resolution.or(file.resolution).unwrap_or(DEFAULT_RESOLUTION),
            tolerances: file.tolerances,
            output,
            input,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let m = self.resolution;
        if !m.is_power_of_two() || !(64..=8192).contains(&m) {
            return Err(Failure::Input(format!("resolution {m} must be a power of two in [64, 8192]")));
        }
        let t = self.tolerances;
        if !(t.verify > 0.0 && t.sigma > 0.0) {
            return Err(Failure::Input("tolerances must be positive".into()));
        }
        Ok(())
    }
}
