//! Field files: `{"extents": [...], "values": [...]}` with values over every
//! site in lexicographic order, written with 17 significant digits.

use std::path::Path;

use anyhow::{bail, Context};
use latblow::{BoxDomain, Field64, ModeTable64, SeededRng};
use serde::Deserialize;

use crate::config::{ExperimentConfig, InitProfile};
use crate::output::write_atomic;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldFile {
    extents: Vec<usize>,
    values: Vec<f64>,
}

/// Serializes a field to the field-file format.
pub fn render_field(field: &Field64) -> String {
    let extents: Vec<String> = field
        .domain()
        .extents()
        .iter()
        .map(|n| n.to_string())
        .collect();
    let values: Vec<String> = field.values().iter().map(|v| format!("{v:.16e}")).collect();
    format!(
        "{{\"extents\":[{}],\"values\":[{}]}}\n",
        extents.join(","),
        values.join(",")
    )
}

pub fn write_field(path: &Path, field: &Field64) -> anyhow::Result<()> {
    if let Some(v) = field.values().iter().find(|v| !v.is_finite()) {
        bail!("cannot write non-finite value {v} to a field file");
    }
    write_atomic(path, render_field(field).as_bytes())
}

pub fn parse_field(text: &str) -> anyhow::Result<Field64> {
    let file: FieldFile = serde_json::from_str(text).context("malformed field file")?;
    let domain = BoxDomain::new(file.extents)?;
    Ok(Field64::from_values(&domain, file.values)?)
}

pub fn read_field(path: &Path) -> anyhow::Result<Field64> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_field(&text).with_context(|| format!("in field file {}", path.display()))
}

/// The unscaled profile named by `config.init`.
pub fn profile(config: &ExperimentConfig) -> anyhow::Result<Field64> {
    let domain = config.domain();
    let field = match &config.init {
        InitProfile::DeltaCenter => {
            let mut f = Field64::zeros(&domain);
            let center: Vec<usize> = domain.extents().iter().map(|n| n / 2).collect();
            f.set(&center, 1.0)?;
            f
        }
        InitProfile::ConstantInterior => Field64::from_interior_fn(&domain, |_| 1.0),
        InitProfile::SineMode { mode } => ModeTable64::new(&domain).mode_field(mode)?,
        InitProfile::File { path } => {
            let f = read_field(path)?;
            if f.domain() != &domain {
                bail!(
                    "field file {} has extents {:?}, config has {:?}",
                    path.display(),
                    f.domain().extents(),
                    domain.extents()
                );
            }
            f
        }
        InitProfile::Random {
            seed,
            max_amplitude,
        } => latblow::random_field(&domain, &mut SeededRng::new(*seed), *max_amplitude),
    };
    Ok(field)
}

/// Initial data `amplitude * profile`.
pub fn initial_field(config: &ExperimentConfig) -> anyhow::Result<Field64> {
    Ok(profile(config)?.scaled(config.amplitude))
}
