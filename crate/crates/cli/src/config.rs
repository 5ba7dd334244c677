//! Experiment configuration: one JSON document per run.

use std::fmt;
use std::path::{Path, PathBuf};

use latblow::{BoxDomain, Params64};
use serde::{Deserialize, Serialize};

/// Invalid configuration, with the JSON path of the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config.{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

/// Initial profile; the initial data is `amplitude * profile`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitProfile {
    /// 1 at the site `(floor(N_1/2), ..., floor(N_d/2))`, 0 elsewhere.
    DeltaCenter,
    /// 1 on every interior site.
    ConstantInterior,
    /// The discrete sine mode `prod_k sin(mode_k pi n_k / N_k)`.
    SineMode { mode: Vec<usize> },
    /// A field file (`{"extents": [...], "values": [...]}`).
    File { path: PathBuf },
    /// Interior values uniform in `[0, max_amplitude)` from the seeded generator.
    Random { seed: u64, max_amplitude: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Blow-up is declared when `1 - alpha*delta*g^alpha <= blowup_guard`.
    #[serde(default)]
    pub blowup_guard: f64,
    /// Relative slack of the majorant comparison.
    #[serde(default = "default_slack")]
    pub comparison_slack: f64,
    /// Relative bracket width of the threshold search.
    #[serde(default = "default_threshold_tol")]
    pub threshold: f64,
}

fn default_slack() -> f64 {
    latblow::COMPARISON_SLACK
}

fn default_threshold_tol() -> f64 {
    1e-3
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            blowup_guard: 0.0,
            comparison_slack: default_slack(),
            threshold: default_threshold_tol(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    /// Output directory; `--out` takes precedence.
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    /// Defaults to the single top-level `alpha`.
    #[serde(default)]
    pub alphas: Vec<f64>,
    pub amplitudes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Optional; must equal `extents.len()` when present.
    #[serde(default)]
    pub dims: Option<usize>,
    pub extents: Vec<usize>,
    pub alpha: f64,
    pub delta: f64,
    pub steps: usize,
    pub init: InitProfile,
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default)]
    pub sweep: Option<SweepGrid>,
}

fn one() -> f64 {
    1.0
}

impl ExperimentConfig {
    /// Parses and validates a config document.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: Self = serde_path_to_error::deserialize(de)
            .map_err(|e| ConfigError::new(e.path().to_string(), e.inner().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("", format!("cannot read {}: {e}", path.display())))?;
        let mut config = Self::from_json(&text)?;
        // Relative field-file paths are resolved against the config's directory.
        if let InitProfile::File { path: file } = &mut config.init {
            if file.is_relative() {
                if let Some(parent) = path.parent() {
                    *file = parent.join(&*file);
                }
            }
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(dims) = self.dims {
            if dims != self.extents.len() {
                return Err(ConfigError::new(
                    "dims",
                    format!("{dims} does not match {} extents", self.extents.len()),
                ));
            }
        }
        if self.extents.is_empty() {
            return Err(ConfigError::new("extents", "at least one axis is required"));
        }
        if let Some(k) = self.extents.iter().position(|&n| n < 2) {
            return Err(ConfigError::new(
                format!("extents[{k}]"),
                format!("must be at least 2, got {}", self.extents[k]),
            ));
        }
        positive("alpha", self.alpha)?;
        positive("delta", self.delta)?;
        if !(self.amplitude.is_finite() && self.amplitude >= 0.0) {
            return Err(ConfigError::new(
                "amplitude",
                format!("must be finite and nonnegative, got {}", self.amplitude),
            ));
        }
        self.params()
            .map_err(|e| ConfigError::new("alpha", e.to_string()))?;

        let t = &self.tolerances;
        if !(0.0..1.0).contains(&t.blowup_guard) {
            return Err(ConfigError::new(
                "tolerances.blowup_guard",
                format!("must lie in [0, 1), got {}", t.blowup_guard),
            ));
        }
        if !(t.comparison_slack.is_finite() && t.comparison_slack >= 0.0) {
            return Err(ConfigError::new(
                "tolerances.comparison_slack",
                format!("must be finite and nonnegative, got {}", t.comparison_slack),
            ));
        }
        if !(t.threshold > 0.0 && t.threshold < 1.0) {
            return Err(ConfigError::new(
                "tolerances.threshold",
                format!("must lie in (0, 1), got {}", t.threshold),
            ));
        }

        match &self.init {
            InitProfile::SineMode { mode } => {
                let interior = mode.len() == self.extents.len()
                    && mode
                        .iter()
                        .zip(&self.extents)
                        .all(|(&m, &n)| m > 0 && m < n);
                if !interior {
                    return Err(ConfigError::new(
                        "init.mode",
                        format!(
                            "{mode:?} is not an interior multi-index of {:?}",
                            self.extents
                        ),
                    ));
                }
            }
            InitProfile::Random { max_amplitude, .. } => {
                if !(max_amplitude.is_finite() && *max_amplitude >= 0.0) {
                    return Err(ConfigError::new(
                        "init.max_amplitude",
                        format!("must be finite and nonnegative, got {max_amplitude}"),
                    ));
                }
            }
            _ => {}
        }

        if let Some(grid) = &self.sweep {
            for (i, &a) in grid.alphas.iter().enumerate() {
                positive_at(format!("sweep.alphas[{i}]"), a)?;
            }
            if grid.amplitudes.is_empty() {
                return Err(ConfigError::new("sweep.amplitudes", "must not be empty"));
            }
            for (i, &a) in grid.amplitudes.iter().enumerate() {
                if !(a.is_finite() && a >= 0.0) {
                    return Err(ConfigError::new(
                        format!("sweep.amplitudes[{i}]"),
                        format!("must be finite and nonnegative, got {a}"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> BoxDomain {
        BoxDomain::new(self.extents.clone()).expect("validated extents")
    }

    pub fn params(&self) -> latblow::Result<Params64> {
        self.params_with_alpha(self.alpha)
    }

    pub fn params_with_alpha(&self, alpha: f64) -> latblow::Result<Params64> {
        Params64::new(alpha, self.delta)?.with_blowup_guard(self.tolerances.blowup_guard)
    }

    /// Applies `--seed` (random profiles only) and `--steps`.
    pub fn apply_overrides(&mut self, seed: Option<u64>, steps: Option<usize>) {
        if let (Some(s), InitProfile::Random { seed, .. }) = (seed, &mut self.init) {
            *seed = s;
        }
        if let Some(steps) = steps {
            self.steps = steps;
        }
    }
}

fn positive(path: &str, v: f64) -> Result<(), ConfigError> {
    positive_at(path.to_string(), v)
}

fn positive_at(path: String, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::new(
            path,
            format!("must be a positive finite number, got {v}"),
        ))
    }
}
