//! Run configuration: a JSON file naming the subshift, the cocycle table,
//! the Holder exponent, budgets, and tolerances. Validation failures carry
//! the offending field path.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cocycle_lab::{Cocycle, Sft};
use serde::Deserialize;

use crate::report::Format;
use crate::Failure;

fn default_theta() -> f64 {
    1.0
}

fn default_max_period() -> usize {
    8
}

fn default_n_max() -> usize {
    12
}

fn default_grid() -> usize {
    720
}

fn default_iters() -> usize {
    500
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    #[serde(default = "default_max_period")]
    pub max_period: usize,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_iters")]
    pub iters: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_period: default_max_period(),
            n_max: default_n_max(),
            grid: default_grid(),
            iters: default_iters(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    sft: serde_json::Value,
    cocycle: serde_json::Value,
    #[serde(default = "default_theta")]
    theta: f64,
    #[serde(default)]
    budgets: Budgets,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    output: Option<OutputSpec>,
}

pub struct RunConfig {
    pub sft: Sft,
    pub cocycle: Cocycle,
    pub theta: f64,
    pub budgets: Budgets,
    pub tolerances: BTreeMap<String, f64>,
    pub output: Option<OutputSpec>,
}

impl RunConfig {
    pub fn tolerance(&self, key: &str, fallback: f64) -> f64 {
        self.tolerances.get(key).copied().unwrap_or(fallback)
    }
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Validation(format!("config field {field}: {msg}"))
}

pub fn load(path: &Path) -> Result<RunConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("config {}: {e}", path.display())))?;
    let raw: RawConfig = serde_json::from_str(&text)
        .map_err(|e| Failure::Validation(format!("config {}: {e}", path.display())))?;
    let sft: Sft = serde_json::from_value(raw.sft).map_err(|e| invalid("sft", e))?;
    let cocycle =
        Cocycle::from_json(sft.clone(), &raw.cocycle).map_err(|e| invalid("cocycle", e))?;
    if !(raw.theta > 0.0 && raw.theta.is_finite()) {
        return Err(invalid(
            "theta",
            format!("must be a positive real, got {}", raw.theta),
        ));
    }
    for (name, value) in [
        ("budgets.max_period", raw.budgets.max_period),
        ("budgets.n_max", raw.budgets.n_max),
        ("budgets.grid", raw.budgets.grid),
        ("budgets.iters", raw.budgets.iters),
    ] {
        if value == 0 {
            return Err(invalid(name, "must be positive"));
        }
    }
    for (key, value) in &raw.tolerances {
        if !(*value > 0.0 && value.is_finite()) {
            return Err(invalid(
                &format!("tolerances.{key}"),
                format!("must be a positive real, got {value}"),
            ));
        }
    }
    Ok(RunConfig {
        sft,
        cocycle,
        theta: raw.theta,
        budgets: raw.budgets,
        tolerances: raw.tolerances,
        output: raw.output,
    })
}
