//! Experiment configuration and its validation.

use thiserror::Error;

use crate::sampling::SamplingPolicy;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("exponent {0} is outside (0, 1]")]
    Exponent(f64),
    #[error("level {level} exceeds resolution {resolution}")]
    Level { level: u32, resolution: u32 },
    #[error("resolution {0} is not supported (at most {1})")]
    Resolution(u32, u32),
    #[error("empty {0} grid")]
    Empty(&'static str),
    #[error("{0} requires exact mode")]
    NeedsExact(&'static str),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// Settings shared by all commands. `None` fields take the per-command defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub resolution: Option<u32>,
    /// Largest level of the one-dimensional growth scans.
    pub resolution_1d: Option<u32>,
    pub p_grid: Option<Vec<f64>>,
    pub levels: Option<Vec<u32>>,
    pub sampling: SamplingPolicy,
    pub samples: usize,
    pub seed: u64,
    pub mode: Option<Mode>,
    pub factor: f64,
    /// Run exponents outside the proven range; their rows never decide the verdict.
    pub exploratory: bool,
    /// Replace `D_n` by `D_{n-1}` in the identity checks.
    pub mutate: bool,
    pub lemma3_resolution: u32,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            resolution: None,
            resolution_1d: None,
            p_grid: None,
            levels: None,
            sampling: SamplingPolicy::Auto,
            samples: 32,
            seed: 1,
            mode: None,
            factor: 4.0,
            exploratory: false,
            mutate: false,
            lemma3_resolution: 6,
        }
    }
}

pub const MAX_RESOLUTION: u32 = 14;

impl ExperimentConfig {
    pub fn resolution_or(&self, default: u32) -> Result<u32, ConfigError> {
        check_resolution(self.resolution.unwrap_or(default))
    }

    pub fn resolution_1d_or(&self, default: u32) -> Result<u32, ConfigError> {
        check_resolution(self.resolution_1d.unwrap_or(default))
    }

    /// Exact by default up to resolution 6.
    pub fn mode_for(&self, resolution: u32) -> Mode {
        self.mode.unwrap_or(if resolution <= 6 { Mode::Exact } else { Mode::Float })
    }

    pub fn p_grid_or(&self, default: &[f64]) -> Result<Vec<f64>, ConfigError> {
        let grid = self.p_grid.clone().unwrap_or_else(|| default.to_vec());
        if grid.is_empty() {
            return Err(ConfigError::Empty("p"));
        }
        for &p in &grid {
            if !(p > 0.0 && p <= 1.0) {
                return Err(ConfigError::Exponent(p));
            }
        }
        Ok(grid)
    }

    pub fn levels_or(&self, default: &[u32], resolution: u32) -> Result<Vec<u32>, ConfigError> {
        let grid = self.levels.clone().unwrap_or_else(|| default.to_vec());
        if grid.is_empty() {
            return Err(ConfigError::Empty("N"));
        }
        for &level in &grid {
            if level > resolution {
                return Err(ConfigError::Level { level, resolution });
            }
        }
        let mut grid = grid;
        grid.sort_unstable();
        grid.dedup();
        Ok(grid)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(grid) = &self.p_grid {
            self.p_grid_or(grid)?;
        }
        if let Some(levels) = &self.levels {
            if levels.is_empty() {
                return Err(ConfigError::Empty("N"));
            }
        }
        if let Some(m) = self.resolution {
            check_resolution(m)?;
        }
        if let Some(m) = self.resolution_1d {
            check_resolution(m)?;
        }
        if self.samples == 0 {
            return Err(ConfigError::Other("sample count must be positive".into()));
        }
        if !(self.factor.is_finite() && self.factor >= 1.0) {
            return Err(ConfigError::Other(format!(
                "ratio bound factor {} must be at least 1",
                self.factor
            )));
        }
        Ok(())
    }
}

fn check_resolution(m: u32) -> Result<u32, ConfigError> {
    if m > MAX_RESOLUTION {
        Err(ConfigError::Resolution(m, MAX_RESOLUTION))
    } else {
        Ok(m)
    }
}
