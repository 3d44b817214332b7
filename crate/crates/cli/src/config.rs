//! TOML run configuration.
//!
//! Every section is optional and falls back to the Fig. 4 parameter set at
//! `k_B T = 0.25 gap`. Unknown keys are rejected. A `[meta]` table, as
//! written into output sidecars, is accepted and ignored, so a sidecar can
//! be fed back as a config.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use lambda_dicke::minimizer::DEFAULT_GRID_POINTS;
use lambda_dicke::phase_diagram::{linspace, ScanAxis, SweepOptions};
use lambda_dicke::{Branch, ModelParams};
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: ModelSection,
    #[serde(default)]
    pub temperature: TemperatureSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub axes: AxesSection,
    #[serde(default)]
    pub boundary: BoundarySection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub features: FeatureSection,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default, skip_serializing)]
    pub meta: Option<toml::Table>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub delta: f64,
    pub gap: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub g1: f64,
    pub g2: f64,
    /// Couplings (here and on coupling axes) are given as `g_n / g_{n,c}`.
    #[serde(default)]
    pub scale_by_critical: bool,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            delta: 0.1,
            gap: 1.0,
            omega1: 1.1,
            omega2: 0.8,
            g1: 0.1,
            g2: 0.1,
            scale_by_critical: false,
        }
    }
}

/// Exactly one of the two keys must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemperatureSection {
    /// `k_B T` in units of the gap.
    #[serde(rename = "kT_over_gap", default, skip_serializing_if = "Option::is_none")]
    pub kt_over_gap: Option<Vec<f64>>,
    /// `k_B T` in absolute energy units.
    #[serde(rename = "kT", default, skip_serializing_if = "Option::is_none")]
    pub kt: Option<Vec<f64>>,
}

impl Default for TemperatureSection {
    fn default() -> Self {
        Self {
            kt_over_gap: Some(vec![0.25]),
            kt: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub points: usize,
    pub coarse_points: usize,
    pub verify_every: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        let d = SweepOptions::default();
        Self {
            points: DEFAULT_GRID_POINTS,
            coarse_points: d.coarse_points,
            verify_every: d.verify_every,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    /// Overrides `model.scale_by_critical` for a coupling axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale_by_critical: Option<bool>,
}

impl AxisSpec {
    pub fn single(value: f64) -> Self {
        Self {
            min: value,
            max: value,
            points: 1,
            scale_by_critical: None,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.points)
    }
}

/// `min:max:points`, or a single value.
impl FromStr for AxisSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        match parts.as_slice() {
            [v] => Ok(Self::single(num(v)?)),
            [a, b, n] => Ok(Self {
                min: num(a)?,
                max: num(b)?,
                points: n.trim().parse().map_err(|e| format!("{n:?}: {e}"))?,
                scale_by_critical: None,
            }),
            _ => Err(format!("expected min:max:points, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxesSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g1: Option<AxisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g2: Option<AxisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y1: Option<AxisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y2: Option<AxisSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySection {
    pub axis: ScanAxis,
    /// Couplings follow the scaling convention of the model section;
    /// temperatures are in the units of the temperature section.
    pub lo: f64,
    pub hi: f64,
}

impl Default for BoundarySection {
    fn default() -> Self {
        Self {
            axis: ScanAxis::G1,
            lo: 0.4,
            hi: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    /// File stem; defaults to the subcommand name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basename: Option<String>,
    #[serde(default)]
    pub format: Format,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            basename: None,
            format: Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureSection {
    #[serde(default)]
    pub spinodals: bool,
    /// Also emit every local minimum per node.
    #[serde(default)]
    pub metastable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    /// Worker threads; 0 uses one per core.
    #[serde(default)]
    pub workers: usize,
}

/// Unit convention of the temperature list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemperatureUnit {
    Gap,
    Absolute,
}

impl TemperatureUnit {
    pub fn column(self) -> &'static str {
        match self {
            TemperatureUnit::Gap => "kT_over_gap",
            TemperatureUnit::Absolute => "kT",
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str, origin: &Path) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text, path)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |key: &str, message: String| ConfigError::Invalid {
            key: key.to_string(),
            message,
        };
        self.params().map_err(|e| invalid("model", e.to_string()))?;

        match (&self.temperature.kt_over_gap, &self.temperature.kt) {
            (Some(_), Some(_)) => {
                return Err(invalid("temperature", "set either kT_over_gap or kT, not both".into()))
            }
            (None, None) => return Err(invalid("temperature", "set kT_over_gap or kT".into())),
            (Some(list), None) | (None, Some(list)) => {
                if list.is_empty() {
                    return Err(invalid("temperature", "temperature list is empty".into()));
                }
                if let Some(t) = list.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
                    return Err(invalid("temperature", format!("temperature must be positive, got {t}")));
                }
            }
        }

        if self.grid.points < 2 || self.grid.coarse_points < 2 {
            return Err(invalid("grid", "grid points must be at least 2".into()));
        }
        if self.grid.verify_every == 0 {
            return Err(invalid("grid.verify_every", "must be at least 1".into()));
        }

        let axes = [
            ("axes.g1", self.axes.g1),
            ("axes.g2", self.axes.g2),
            ("axes.y1", self.axes.y1),
            ("axes.y2", self.axes.y2),
        ];
        for (key, axis) in axes {
            let Some(a) = axis else { continue };
            if !(a.min.is_finite() && a.max.is_finite()) {
                return Err(invalid(key, "bounds must be finite".into()));
            }
            if a.points == 0 {
                return Err(invalid(key, "points must be at least 1".into()));
            }
            if a.min > a.max || (a.points == 1 && a.min != a.max) {
                return Err(invalid(key, format!("bad range {}..{} with {} points", a.min, a.max, a.points)));
            }
            if key.starts_with("axes.g") && a.min < 0.0 {
                return Err(invalid(key, "couplings must be non-negative".into()));
            }
        }

        let b = &self.boundary;
        if !(b.lo.is_finite() && b.hi.is_finite() && b.lo < b.hi) {
            return Err(invalid("boundary", format!("need lo < hi, got {} and {}", b.lo, b.hi)));
        }
        if b.axis == ScanAxis::Temperature && b.lo <= 0.0 {
            return Err(invalid("boundary.lo", "temperatures must be positive".into()));
        }
        Ok(())
    }

    fn scaled(&self, axis: Option<&AxisSpec>) -> bool {
        axis.and_then(|a| a.scale_by_critical)
            .unwrap_or(self.model.scale_by_critical)
    }

    /// Model with absolute couplings.
    pub fn params(&self) -> Result<ModelParams, lambda_dicke::Error> {
        let m = &self.model;
        let mut p = ModelParams::new(m.delta, m.gap, m.omega1, m.omega2, m.g1, m.g2);
        if m.scale_by_critical {
            p.g1 = m.g1 * p.critical_coupling(Branch::One);
            p.g2 = m.g2 * p.critical_coupling(Branch::Two);
        }
        p.validate()
    }

    pub fn temperature_unit(&self) -> TemperatureUnit {
        if self.temperature.kt.is_some() {
            TemperatureUnit::Absolute
        } else {
            TemperatureUnit::Gap
        }
    }

    /// Temperatures as configured, in the units of [`Self::temperature_unit`].
    pub fn temperatures(&self) -> Vec<f64> {
        self.temperature
            .kt
            .clone()
            .or_else(|| self.temperature.kt_over_gap.clone())
            .unwrap_or_default()
    }

    /// Converts a configured temperature to `k_B T` in energy units.
    pub fn absolute_temperature(&self, t: f64) -> f64 {
        match self.temperature_unit() {
            TemperatureUnit::Gap => t * self.model.gap,
            TemperatureUnit::Absolute => t,
        }
    }

    /// Axis values as written to output, and the matching absolute couplings.
    pub fn coupling_axis(&self, branch: Branch) -> CouplingAxis {
        let spec = match branch {
            Branch::One => self.axes.g1,
            Branch::Two => self.axes.g2,
        };
        let scaled = self.scaled(spec.as_ref());
        let base = self.model_unscaled();
        let gc = base.critical_coupling(branch);
        let (coords, fixed) = match spec {
            Some(a) => (a.values(), false),
            None => {
                let v = match branch {
                    Branch::One => self.model.g1,
                    Branch::Two => self.model.g2,
                };
                (vec![v], true)
            }
        };
        // A fixed coupling keeps the model section's convention.
        let scaled = if fixed { self.model.scale_by_critical } else { scaled };
        let values = coords
            .iter()
            .map(|&c| if scaled { c * gc } else { c })
            .collect();
        CouplingAxis {
            name: match (branch, scaled) {
                (Branch::One, false) => "g1",
                (Branch::One, true) => "g1_over_g1c",
                (Branch::Two, false) => "g2",
                (Branch::Two, true) => "g2_over_g2c",
            },
            coords,
            values,
        }
    }

    fn model_unscaled(&self) -> ModelParams {
        let m = &self.model;
        ModelParams::new(m.delta, m.gap, m.omega1, m.omega2, m.g1, m.g2)
    }

    /// Boundary bracket in absolute units.
    pub fn boundary_bracket(&self) -> (f64, f64) {
        let b = &self.boundary;
        let base = self.model_unscaled();
        let f = |x: f64| match b.axis {
            ScanAxis::G1 if self.model.scale_by_critical => x * base.critical_coupling(Branch::One),
            ScanAxis::G2 if self.model.scale_by_critical => x * base.critical_coupling(Branch::Two),
            ScanAxis::Temperature => self.absolute_temperature(x),
            _ => x,
        };
        (f(b.lo), f(b.hi))
    }

    /// Converts an absolute boundary location back to the configured units.
    pub fn boundary_coordinate(&self, x: f64) -> f64 {
        let base = self.model_unscaled();
        match self.boundary.axis {
            ScanAxis::G1 if self.model.scale_by_critical => x / base.critical_coupling(Branch::One),
            ScanAxis::G2 if self.model.scale_by_critical => x / base.critical_coupling(Branch::Two),
            ScanAxis::Temperature => match self.temperature_unit() {
                TemperatureUnit::Gap => x / self.model.gap,
                TemperatureUnit::Absolute => x,
            },
            _ => x,
        }
    }

    pub fn boundary_column(&self) -> &'static str {
        match self.boundary.axis {
            ScanAxis::G1 if self.model.scale_by_critical => "g1_over_g1c",
            ScanAxis::G2 if self.model.scale_by_critical => "g2_over_g2c",
            ScanAxis::G1 => "g1",
            ScanAxis::G2 => "g2",
            ScanAxis::Temperature => self.temperature_unit().column(),
        }
    }

    pub fn sweep_options(&self) -> SweepOptions {
        SweepOptions {
            grid_points: self.grid.points,
            coarse_points: self.grid.coarse_points,
            verify_every: self.grid.verify_every,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingAxis {
    pub name: &'static str,
    /// Values in output units.
    pub coords: Vec<f64>,
    /// Absolute couplings.
    pub values: Vec<f64>,
}
