//! Run configuration: defaults, then a TOML file, then command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use eisenstein_cubic::constants::{DEFAULT_CUBE_CUTOFF, DEFAULT_INNER_CUTOFF, DEFAULT_PRIME_CUTOFF};
use eisenstein_cubic::lfunction::{balanced_y, AfeSettings};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "EISENCUBIC_CACHE";
pub const DEFAULT_CACHE_FILE: &str = "cubic-moments-cache.jsonl";

pub const MIN_PRIME_CUTOFF: u64 = 100;
pub const MIN_CUBE_CUTOFF: u64 = 10;
pub const MIN_INNER_CUTOFF: u64 = 10;
pub const TOLERANCE_RANGE: (f64, f64) = (1e-12, 1e-4);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum YStrategy {
    /// `Y = √(3q)`.
    Balanced,
    Fixed(f64),
}

impl YStrategy {
    pub fn y_for(&self, cond_norm: u64) -> f64 {
        match *self {
            YStrategy::Balanced => balanced_y(cond_norm),
            YStrategy::Fixed(y) => y,
        }
    }
}

impl FromStr for YStrategy {
    type Err = CliError;

    /// `balanced`, `fixed(40)` or a bare positive number.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("balanced") {
            return Ok(YStrategy::Balanced);
        }
        let inner = s.strip_prefix("fixed(").and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        match inner.trim().parse::<f64>() {
            Ok(y) if y > 0.0 && y.is_finite() => Ok(YStrategy::Fixed(y)),
            _ => Err(CliError::Config(format!("y strategy must be 'balanced' or a positive number, got {s:?}"))),
        }
    }
}

impl TryFrom<String> for YStrategy {
    type Error = CliError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<YStrategy> for String {
    fn from(y: YStrategy) -> String {
        y.to_string()
    }
}

impl fmt::Display for YStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YStrategy::Balanced => write!(f, "balanced"),
            YStrategy::Fixed(y) => write!(f, "fixed({y})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub x_max: u64,
    pub tolerance: f64,
    pub y_strategy: YStrategy,
    pub prime_cutoff: u64,
    pub cube_cutoff: u64,
    pub inner_cutoff: u64,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
    pub cache_path: PathBuf,
    pub output_format: OutputFormat,
}

/// Every field optional; used both for the TOML file and for flag overrides.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub x_max: Option<u64>,
    pub tolerance: Option<f64>,
    pub y_strategy: Option<YStrategy>,
    pub prime_cutoff: Option<u64>,
    pub cube_cutoff: Option<u64>,
    pub inner_cutoff: Option<u64>,
    pub threads: Option<usize>,
    pub cache_path: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            x_max: 10_000,
            tolerance: eisenstein_cubic::lfunction::afe::DEFAULT_TOLERANCE,
            y_strategy: YStrategy::Balanced,
            prime_cutoff: DEFAULT_PRIME_CUTOFF,
            cube_cutoff: DEFAULT_CUBE_CUTOFF,
            inner_cutoff: DEFAULT_INNER_CUTOFF,
            threads: 0,
            cache_path: std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE), PathBuf::from),
            output_format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    /// Defaults, overlaid by `file` (if any), overlaid by `flags`, validated.
    pub fn resolve(file: Option<&Path>, flags: &ConfigOverrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(CliError::io_error(path))?;
            let from_file: ConfigOverrides =
                toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            cfg.apply(&from_file);
        }
        cfg.apply(flags);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &ConfigOverrides) {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = o.$f.clone() { self.$f = v; } )* };
        }
        set!(x_max, tolerance, y_strategy, prime_cutoff, cube_cutoff, inner_cutoff, threads, cache_path, output_format);
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = TOLERANCE_RANGE;
        if !(lo..=hi).contains(&self.tolerance) {
            return Err(CliError::Config(format!("tolerance {:e} outside [{lo:e}, {hi:e}]", self.tolerance)));
        }
        if self.x_max == 0 {
            return Err(CliError::Config("x_max must be positive".into()));
        }
        for (name, v, min) in [
            ("prime_cutoff", self.prime_cutoff, MIN_PRIME_CUTOFF),
            ("cube_cutoff", self.cube_cutoff, MIN_CUBE_CUTOFF),
            ("inner_cutoff", self.inner_cutoff, MIN_INNER_CUTOFF),
        ] {
            if v < min {
                return Err(CliError::Config(format!("{name} = {v} is below the minimum {min}")));
            }
        }
        Ok(())
    }

    pub fn afe_settings(&self) -> AfeSettings {
        AfeSettings { tolerance: self.tolerance, ..AfeSettings::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_strategy_parses() {
        assert_eq!("balanced".parse::<YStrategy>().unwrap(), YStrategy::Balanced);
        assert_eq!("fixed(40)".parse::<YStrategy>().unwrap(), YStrategy::Fixed(40.0));
        assert_eq!("12.5".parse::<YStrategy>().unwrap(), YStrategy::Fixed(12.5));
        assert!("-1".parse::<YStrategy>().is_err());
        assert!("fixed()".parse::<YStrategy>().is_err());
        assert_eq!(YStrategy::Fixed(2.0).to_string().parse::<YStrategy>().unwrap(), YStrategy::Fixed(2.0));
    }

    #[test]
    fn file_then_flags() {
        let dir = std::env::temp_dir().join(format!("cubic-moments-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        std::fs::write(&path, "x_max = 2000\ntolerance = 1e-9\ny_strategy = \"fixed(30)\"\noutput_format = \"jsonl\"\n").unwrap();
        let flags = ConfigOverrides { x_max: Some(500), ..Default::default() };
        let cfg = RunConfig::resolve(Some(&path), &flags).unwrap();
        assert_eq!(cfg.x_max, 500);
        assert_eq!(cfg.tolerance, 1e-9);
        assert_eq!(cfg.y_strategy, YStrategy::Fixed(30.0));
        assert_eq!(cfg.output_format, OutputFormat::Jsonl);
        std::fs::write(&path, "x_maxx = 1\n").unwrap();
        assert!(RunConfig::resolve(Some(&path), &ConfigOverrides::default()).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn validation() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        assert!(RunConfig { tolerance: 1e-13, ..ok.clone() }.validate().is_err());
        assert!(RunConfig { tolerance: 1e-3, ..ok.clone() }.validate().is_err());
        assert!(RunConfig { prime_cutoff: 99, ..ok.clone() }.validate().is_err());
        assert!(RunConfig { cube_cutoff: 5, ..ok.clone() }.validate().is_err());
        assert!(RunConfig { x_max: 0, ..ok }.validate().is_err());
    }
}
