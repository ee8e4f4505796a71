//! Scan configuration: a flat key/value map, presets, and validation.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QslError, Result};
use crate::quadrature::QuadratureSettings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Jc,
    Dephasing,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::Jc => "jc",
            Model::Dephasing => "dephasing",
        }
    }

    /// Physical parameters the model consumes, in column order.
    pub fn params(&self) -> &'static [Param] {
        match self {
            Model::Jc => &[Param::R, Param::Theta, Param::Gamma0, Param::Lambda, Param::Tau],
            Model::Dephasing => &[Param::R, Param::Theta, Param::Eta, Param::S, Param::OmegaC, Param::Tau],
        }
    }
}

impl FromStr for Model {
    type Err = QslError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jc" => Ok(Model::Jc),
            "dephasing" => Ok(Model::Dephasing),
            other => Err(QslError::Config(format!("unknown model `{other}` (expected jc or dephasing)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    R,
    Theta,
    Gamma0,
    Lambda,
    Eta,
    S,
    OmegaC,
    Tau,
}

impl Param {
    pub const ALL: [Param; 8] = [
        Param::R,
        Param::Theta,
        Param::Gamma0,
        Param::Lambda,
        Param::Eta,
        Param::S,
        Param::OmegaC,
        Param::Tau,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Param::R => "r",
            Param::Theta => "theta",
            Param::Gamma0 => "gamma0",
            Param::Lambda => "lambda",
            Param::Eta => "eta",
            Param::S => "s",
            Param::OmegaC => "omega_c",
            Param::Tau => "tau",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Param {
    type Err = QslError;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| QslError::Config(format!("unknown parameter `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// Which interval endpoints belong to the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bounds {
    /// `[min, max]`
    Closed,
    /// `[min, max)`, e.g. a full period of a phase.
    OpenRight,
    /// `(min, max]`
    OpenLeft,
}

impl Bounds {
    pub fn as_str(&self) -> &'static str {
        match self {
            Bounds::Closed => "[]",
            Bounds::OpenRight => "[)",
            Bounds::OpenLeft => "(]",
        }
    }
}

impl FromStr for Bounds {
    type Err = QslError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "[]" | "closed" => Ok(Bounds::Closed),
            "[)" | "open-right" => Ok(Bounds::OpenRight),
            "(]" | "open-left" => Ok(Bounds::OpenLeft),
            other => Err(QslError::Config(format!("unknown bounds `{other}` (expected [], [) or (])"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
    pub bounds: Bounds,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        let (lo, hi) = match self.spacing {
            Spacing::Linear => (self.min, self.max),
            Spacing::Log => (self.min.ln(), self.max.ln()),
        };
        let (divisions, offset) = match self.bounds {
            Bounds::Closed => ((n - 1) as f64, 0.0),
            Bounds::OpenRight => (n as f64, 0.0),
            Bounds::OpenLeft => (n as f64, 1.0),
        };
        let step = (hi - lo) / divisions;
        (0..n)
            .map(|i| {
                let x = if self.bounds == Bounds::Closed && i == n - 1 {
                    hi
                } else {
                    lo + step * (i as f64 + offset)
                };
                match self.spacing {
                    Spacing::Linear => x,
                    Spacing::Log => {
                        if i == 0 && self.bounds != Bounds::OpenLeft {
                            self.min
                        } else if x == hi {
                            self.max
                        } else {
                            x.exp()
                        }
                    }
                }
            })
            .collect()
    }

    fn validate(&self, which: &str) -> Result<()> {
        if self.count < 2 {
            return Err(QslError::Config(format!("{which}_count must be at least 2")));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(QslError::Config(format!("{which} axis needs finite min < max")));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(QslError::Config(format!("{which} axis: log spacing needs min > 0")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub model: Model,
    /// Values for every model parameter that is not swept.
    pub fixed: BTreeMap<Param, f64>,
    /// Outer (slow) axis.
    pub rows: Option<Axis>,
    /// Inner (fast) axis.
    pub cols: Option<Axis>,
    pub quadrature: QuadratureSettings,
}

const AXIS_FIELDS: [&str; 6] = ["axis", "min", "max", "count", "spacing", "bounds"];

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| QslError::Config(format!("`{key}` must be a number, got `{value}`")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .trim()
        .parse::<usize>()
        .map_err(|_| QslError::Config(format!("`{key}` must be a non-negative integer, got `{value}`")))
}

impl ScanConfig {
    /// Builds a config from flat `key = value` pairs.
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let model: Model = map
            .get("model")
            .ok_or_else(|| QslError::Config("missing `model`".into()))?
            .parse()?;

        for key in map.keys() {
            let known = key == "model"
                || Param::from_str(key).is_ok()
                || ["abs_tol", "rel_tol", "max_subdivisions"].contains(&key.as_str())
                || ["row", "col"].iter().any(|p| {
                    AXIS_FIELDS
                        .iter()
                        .any(|f| key == &format!("{p}_{f}"))
                });
            if !known {
                return Err(QslError::Config(format!("unknown key `{key}`")));
            }
        }

        let rows = Self::axis_from_map(map, "row")?;
        let cols = Self::axis_from_map(map, "col")?;

        let mut fixed = BTreeMap::new();
        for p in Param::ALL {
            if let Some(v) = map.get(p.as_str()) {
                fixed.insert(p, parse_f64(p.as_str(), v)?);
            }
        }
        if model == Model::Dephasing && !fixed.contains_key(&Param::OmegaC) {
            let swept = [rows, cols].iter().flatten().any(|a| a.param == Param::OmegaC);
            if !swept {
                fixed.insert(Param::OmegaC, 1.0);
            }
        }

        let defaults = QuadratureSettings::default();
        let quadrature = QuadratureSettings {
            abs_tol: map
                .get("abs_tol")
                .map(|v| parse_f64("abs_tol", v))
                .transpose()?
                .unwrap_or(defaults.abs_tol),
            rel_tol: map
                .get("rel_tol")
                .map(|v| parse_f64("rel_tol", v))
                .transpose()?
                .unwrap_or(defaults.rel_tol),
            max_subdivisions: map
                .get("max_subdivisions")
                .map(|v| parse_usize("max_subdivisions", v))
                .transpose()?
                .unwrap_or(defaults.max_subdivisions),
        };

        let config = Self {
            model,
            fixed,
            rows,
            cols,
            quadrature,
        };
        config.validate()?;
        Ok(config)
    }

    fn axis_from_map(map: &BTreeMap<String, String>, prefix: &str) -> Result<Option<Axis>> {
        let key = |f: &str| format!("{prefix}_{f}");
        let Some(param) = map.get(&key("axis")) else {
            if let Some(stray) = AXIS_FIELDS[1..].iter().find(|f| map.contains_key(&key(f))) {
                return Err(QslError::Config(format!("`{prefix}_{stray}` given without `{prefix}_axis`")));
            }
            return Ok(None);
        };
        let get = |f: &str| {
            map.get(&key(f))
                .ok_or_else(|| QslError::Config(format!("missing `{}`", key(f))))
        };
        let spacing = match map.get(&key("spacing")).map(String::as_str) {
            None | Some("linear") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => return Err(QslError::Config(format!("unknown spacing `{other}`"))),
        };
        let bounds = match map.get(&key("bounds")) {
            None => Bounds::Closed,
            Some(b) => b.parse()?,
        };
        Ok(Some(Axis {
            param: param.parse()?,
            min: parse_f64(&key("min"), get("min")?)?,
            max: parse_f64(&key("max"), get("max")?)?,
            count: parse_usize(&key("count"), get("count")?)?,
            spacing,
            bounds,
        }))
    }

    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate()?;
        let allowed = self.model.params();
        let axes: Vec<&Axis> = [&self.rows, &self.cols].into_iter().flatten().collect();
        for (axis, which) in axes.iter().zip(["row", "col"]) {
            axis.validate(which)?;
            if !allowed.contains(&axis.param) {
                return Err(QslError::Config(format!(
                    "parameter `{}` does not apply to model {}",
                    axis.param,
                    self.model.as_str()
                )));
            }
            if self.fixed.contains_key(&axis.param) {
                return Err(QslError::Config(format!(
                    "parameter `{}` is both swept and fixed",
                    axis.param
                )));
            }
        }
        if let (Some(r), Some(c)) = (&self.rows, &self.cols) {
            if r.param == c.param {
                return Err(QslError::Config(format!("parameter `{}` swept twice", r.param)));
            }
        }
        for p in self.fixed.keys() {
            if !allowed.contains(p) {
                return Err(QslError::Config(format!(
                    "parameter `{p}` does not apply to model {}",
                    self.model.as_str()
                )));
            }
        }
        for p in allowed {
            if !self.fixed.contains_key(p) && !axes.iter().any(|a| a.param == *p) {
                return Err(QslError::Config(format!("missing value for `{p}`")));
            }
        }
        Ok(())
    }

    /// Canonical `key = value` echo, in a fixed order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut out = vec![("model".to_string(), self.model.as_str().to_string())];
        for p in self.model.params() {
            if let Some(v) = self.fixed.get(p) {
                out.push((p.as_str().to_string(), format_float(*v)));
            }
        }
        for (prefix, axis) in [("row", &self.rows), ("col", &self.cols)] {
            if let Some(a) = axis {
                out.push((format!("{prefix}_axis"), a.param.as_str().to_string()));
                out.push((format!("{prefix}_min"), format_float(a.min)));
                out.push((format!("{prefix}_max"), format_float(a.max)));
                out.push((format!("{prefix}_count"), a.count.to_string()));
                let spacing = match a.spacing {
                    Spacing::Linear => "linear",
                    Spacing::Log => "log",
                };
                out.push((format!("{prefix}_spacing"), spacing.to_string()));
                out.push((format!("{prefix}_bounds"), a.bounds.as_str().to_string()));
            }
        }
        out.push(("abs_tol".into(), format_float(self.quadrature.abs_tol)));
        out.push(("rel_tol".into(), format_float(self.quadrature.rel_tol)));
        out.push(("max_subdivisions".into(), self.quadrature.max_subdivisions.to_string()));
        out
    }

    pub fn row_values(&self) -> Vec<Option<f64>> {
        self.rows
            .map(|a| a.values().into_iter().map(Some).collect())
            .unwrap_or_else(|| vec![None])
    }

    pub fn col_values(&self) -> Vec<Option<f64>> {
        self.cols
            .map(|a| a.values().into_iter().map(Some).collect())
            .unwrap_or_else(|| vec![None])
    }
}

/// Fixed 17-significant-digit float formatting used in every output file.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parses a flat JSON object into string pairs. Numbers keep their textual
/// form; nested values are rejected.
pub fn parse_config_json(text: &str) -> Result<BTreeMap<String, String>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| QslError::Config(format!("config is not valid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| QslError::Config("config must be a JSON object".into()))?;
    obj.iter()
        .map(|(k, v)| {
            let s = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                other => {
                    return Err(QslError::Config(format!(
                        "config value for `{k}` must be a string or number, got {other}"
                    )))
                }
            };
            Ok((k.clone(), s))
        })
        .collect()
}

/// Parses `key=value` overrides.
pub fn parse_override(text: &str) -> Result<(String, String)> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| QslError::Config(format!("override `{text}` is not key=value")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fig1a,
    Fig1b,
    Fig2,
}

impl FromStr for Preset {
    type Err = QslError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1a" => Ok(Preset::Fig1a),
            "fig1b" => Ok(Preset::Fig1b),
            "fig2" => Ok(Preset::Fig2),
            other => Err(QslError::Config(format!("unknown preset `{other}` (expected fig1a, fig1b or fig2)"))),
        }
    }
}

/// Default grid resolution per axis.
pub const DEFAULT_GRID: usize = 64;

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig1a, Preset::Fig1b, Preset::Fig2];

    pub fn as_str(&self) -> &'static str {
        match self {
            Preset::Fig1a => "fig1a",
            Preset::Fig1b => "fig1b",
            Preset::Fig2 => "fig2",
        }
    }

    /// Raw key/value map for the preset, so overrides can be merged before
    /// validation.
    pub fn pairs(&self) -> BTreeMap<String, String> {
        let two_pi = (2.0 * PI).to_string();
        let grid = DEFAULT_GRID.to_string();
        let entries: Vec<(&str, String)> = match self {
            // θ × γ₀ at r = 0.5, λ = 1, τ = 1.
            Preset::Fig1a => vec![
                ("model", "jc".into()),
                ("r", "0.5".into()),
                ("lambda", "1".into()),
                ("tau", "1".into()),
                ("row_axis", "theta".into()),
                ("row_min", "0".into()),
                ("row_max", two_pi),
                ("row_count", grid.clone()),
                ("row_bounds", "[)".into()),
                ("col_axis", "gamma0".into()),
                ("col_min", "0.1".into()),
                ("col_max", "10".into()),
                ("col_count", grid),
            ],
            // r × γ₀ at θ = π/2, λ = 1, τ = 1.
            Preset::Fig1b => vec![
                ("model", "jc".into()),
                ("theta", (0.5 * PI).to_string()),
                ("lambda", "1".into()),
                ("tau", "1".into()),
                ("row_axis", "r".into()),
                ("row_min", "0".into()),
                ("row_max", "1".into()),
                ("row_count", grid.clone()),
                ("col_axis", "gamma0".into()),
                ("col_min", "0.1".into()),
                ("col_max", "10".into()),
                ("col_count", grid),
            ],
            // θ (vertical) × s (horizontal) at r = 1, τ = 3.
            Preset::Fig2 => vec![
                ("model", "dephasing".into()),
                ("r", "1".into()),
                ("eta", "1".into()),
                ("omega_c", "1".into()),
                ("tau", "3".into()),
                ("row_axis", "theta".into()),
                ("row_min", "0".into()),
                ("row_max", two_pi),
                ("row_count", grid.clone()),
                ("row_bounds", "[)".into()),
                ("col_axis", "s".into()),
                ("col_min", "0".into()),
                ("col_max", "4".into()),
                ("col_count", grid),
                ("col_bounds", "(]".into()),
            ],
        };
        entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    pub fn config(&self) -> ScanConfig {
        ScanConfig::from_map(&self.pairs()).expect("presets are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for p in Preset::ALL {
            let c = p.config();
            assert_eq!(c.rows.unwrap().count, DEFAULT_GRID);
            assert_eq!(c.cols.unwrap().count, DEFAULT_GRID);
        }
    }

    #[test]
    fn half_open_phase_axis_mirrors() {
        let theta = Preset::Fig1a.config().rows.unwrap().values();
        assert_eq!(theta[0], 0.0);
        assert!(theta[63] < 2.0 * PI);
        for i in 1..64 {
            assert!((theta[i] + theta[64 - i] - 2.0 * PI).abs() < 1e-14);
        }
        let s = Preset::Fig2.config().cols.unwrap().values();
        assert_eq!(s[0], 4.0 / 64.0);
        assert_eq!(s[63], 4.0);
    }

    #[test]
    fn closed_axis_hits_both_ends() {
        let gamma0 = Preset::Fig1b.config().cols.unwrap().values();
        assert_eq!((gamma0[0], gamma0[63]), (0.1, 10.0));
    }

    #[test]
    fn log_axis() {
        let a = Axis {
            param: Param::Gamma0,
            min: 0.1,
            max: 10.0,
            count: 3,
            spacing: Spacing::Log,
            bounds: Bounds::Closed,
        };
        let v = a.values();
        assert_eq!(v[0], 0.1);
        assert!((v[1] - 1.0).abs() < 1e-15);
        assert_eq!(v[2], 10.0);
    }

    #[test]
    fn rejects_swept_and_fixed() {
        let mut m = Preset::Fig1a.pairs();
        m.insert("theta".into(), "1".into());
        assert!(ScanConfig::from_map(&m).is_err());
    }

    #[test]
    fn rejects_foreign_parameter() {
        let mut m = Preset::Fig1a.pairs();
        m.insert("eta".into(), "1".into());
        assert!(ScanConfig::from_map(&m).is_err());
        let mut m = Preset::Fig2.pairs();
        m.insert("gamma0".into(), "1".into());
        assert!(ScanConfig::from_map(&m).is_err());
    }

    #[test]
    fn rejects_small_axis_and_missing_values() {
        let mut m = Preset::Fig1b.pairs();
        m.insert("row_count".into(), "1".into());
        assert!(ScanConfig::from_map(&m).is_err());
        let mut m = Preset::Fig1b.pairs();
        m.remove("lambda");
        assert!(ScanConfig::from_map(&m).is_err());
        let mut m = Preset::Fig1b.pairs();
        m.insert("bogus".into(), "1".into());
        assert!(ScanConfig::from_map(&m).is_err());
    }

    #[test]
    fn json_round_trip_through_pairs() {
        let json = r#"{"model": "jc", "r": 0.2, "theta": 1, "gamma0": 2, "lambda": 1,
                       "col_axis": "tau", "col_min": 0.5, "col_max": 2, "col_count": 4}"#;
        let c = ScanConfig::from_map(&parse_config_json(json).unwrap()).unwrap();
        assert!(c.rows.is_none());
        let echo: BTreeMap<_, _> = c.to_pairs().into_iter().collect();
        assert_eq!(ScanConfig::from_map(&echo).unwrap(), c);
        assert!(parse_config_json("[1, 2]").is_err());
        assert!(parse_config_json(r#"{"r": [1]}"#).is_err());
    }

    #[test]
    fn overrides() {
        assert_eq!(parse_override("r = 0.3").unwrap(), ("r".into(), "0.3".into()));
        assert!(parse_override("r").is_err());
    }
}
