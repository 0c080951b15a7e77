use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::export::ExportFormat;
use super::grid::{AxisSpec, GridSpec};
use super::render::{ImageSpec, RenderStyle};
use crate::error::{Error, Result};
use crate::kinematics::BoostParams;
use crate::wavemodel::{AmplitudeMode, WaveField};

/// Seed for every randomized check unless overridden.
pub const DEFAULT_SEED: u64 = 0x5EED_1D0C;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Rest,
    #[default]
    Boosted,
    Ray,
    Generalized,
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rest" => Ok(Scenario::Rest),
            "boosted" => Ok(Scenario::Boosted),
            "ray" => Ok(Scenario::Ray),
            "generalized" => Ok(Scenario::Generalized),
            other => Err(Error::Config(format!("unknown scenario `{other}`"))),
        }
    }
}

impl FromStr for AmplitudeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(AmplitudeMode::Unit),
            "inverse-r" => Ok(AmplitudeMode::InverseR),
            other => Err(Error::Config(format!("unknown amplitude mode `{other}`"))),
        }
    }
}

/// A fully resolved and validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub params: BoostParams,
    pub ray_speed: Option<f64>,
    pub amplitude_mode: AmplitudeMode,
    pub grid: GridSpec,
    pub seed: u64,
    /// Record the generation time in exported metadata.
    pub timestamp: bool,
    pub out: Option<PathBuf>,
    pub format: ExportFormat,
    pub style: RenderStyle,
    pub image: ImageSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: Scenario::Boosted,
            params: BoostParams::new(0.6),
            ray_speed: None,
            amplitude_mode: AmplitudeMode::Unit,
            grid: GridSpec {
                x: AxisSpec::swept(-10.0, 10.0, 201),
                y: AxisSpec::swept(-7.5, 7.5, 151),
                z: AxisSpec::fixed(0.0),
                t: AxisSpec::fixed(0.0),
            },
            seed: DEFAULT_SEED,
            timestamp: true,
            out: None,
            format: ExportFormat::Csv,
            style: RenderStyle::Heatmap,
            image: ImageSpec::default(),
        }
    }
}

impl RunConfig {
    /// Defaults overlaid with `layer`, then validated.
    pub fn from_layer(layer: &ConfigLayer) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let p = &mut cfg.params;
        if let Some(v) = layer.beta {
            p.beta = v;
        }
        if let Some(v) = layer.c {
            p.c = v;
        }
        if let Some(v) = layer.omega0 {
            p.omega0 = v;
        }
        if let Some(v) = layer.a {
            p.exponent_a = v;
        }
        if let Some(v) = layer.hbar {
            p.hbar = v;
        }
        if let Some(s) = &layer.scenario {
            cfg.scenario = s.parse()?;
        }
        cfg.ray_speed = layer.ray_speed;
        if let Some(s) = &layer.amplitude {
            cfg.amplitude_mode = s.parse()?;
        }
        for (slot, value) in [
            (&mut cfg.grid.x, &layer.x),
            (&mut cfg.grid.y, &layer.y),
            (&mut cfg.grid.z, &layer.z),
            (&mut cfg.grid.t, &layer.t),
        ] {
            if let Some(v) = value {
                *slot = v.to_axis()?;
            }
        }
        if let Some(v) = layer.seed {
            cfg.seed = v;
        }
        if let Some(v) = layer.timestamp {
            cfg.timestamp = v;
        }
        if let Some(v) = &layer.out {
            cfg.out = Some(v.clone());
        }
        if let Some(v) = &layer.format {
            cfg.format = v.parse()?;
        }
        if let Some(v) = &layer.style {
            cfg.style = v.parse()?;
        }
        if let Some(v) = layer.width {
            cfg.image.width = v;
        }
        if let Some(v) = layer.height {
            cfg.image.height = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.scenario == Scenario::Boosted && self.params.exponent_a != 1.0 {
            return Err(Error::Config(
                "the boosted scenario is the Lorentz form; use `generalized` for a != 1".into(),
            ));
        }
        if self.ray_speed.is_some() && self.scenario != Scenario::Ray {
            return Err(Error::Config("ray_speed only applies to the `ray` scenario".into()));
        }
        if self.amplitude_mode == AmplitudeMode::InverseR && self.scenario != Scenario::Rest {
            return Err(Error::Config("inverse-r amplitude only applies to the `rest` scenario".into()));
        }
        self.grid.validate()?;
        if self.image.width == 0 || self.image.height == 0 {
            return Err(Error::Config("image resolution must be non-zero".into()));
        }
        if self.scenario == Scenario::Ray {
            crate::rayconstruct::RaySpeedConfig::new(&self.params, self.effective_ray_speed())?;
        }
        Ok(())
    }

    pub fn effective_ray_speed(&self) -> f64 {
        self.ray_speed.unwrap_or(self.params.c)
    }

    pub fn field(&self) -> Result<WaveField> {
        match self.scenario {
            Scenario::Rest => WaveField::rest(self.params, self.amplitude_mode),
            Scenario::Boosted => WaveField::boosted(self.params),
            Scenario::Ray => WaveField::ray_constructed(self.params, self.effective_ray_speed()),
            Scenario::Generalized => WaveField::generalized(self.params),
        }
    }
}

/// Axis entry in a config file: a number (fixed) or `"min:max:count"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisValue {
    Fixed(f64),
    Text(String),
}

impl AxisValue {
    fn to_axis(&self) -> Result<AxisSpec> {
        match self {
            AxisValue::Fixed(v) => Ok(AxisSpec::fixed(*v)),
            AxisValue::Text(s) => s.parse(),
        }
    }
}

/// One layer of optional settings: a config file or a set of CLI flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub scenario: Option<String>,
    pub beta: Option<f64>,
    pub omega0: Option<f64>,
    pub c: Option<f64>,
    pub a: Option<f64>,
    pub hbar: Option<f64>,
    pub ray_speed: Option<f64>,
    pub seed: Option<u64>,
    pub amplitude: Option<String>,
    pub x: Option<AxisValue>,
    pub y: Option<AxisValue>,
    pub z: Option<AxisValue>,
    pub t: Option<AxisValue>,
    pub timestamp: Option<bool>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub style: Option<String>,
    pub width: Option<u32>,
    pub height: Option<u32>,
}

impl ConfigLayer {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Settings from `over` take precedence.
    pub fn merge(self, over: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            scenario: over.scenario.or(self.scenario),
            beta: over.beta.or(self.beta),
            omega0: over.omega0.or(self.omega0),
            c: over.c.or(self.c),
            a: over.a.or(self.a),
            hbar: over.hbar.or(self.hbar),
            ray_speed: over.ray_speed.or(self.ray_speed),
            seed: over.seed.or(self.seed),
            amplitude: over.amplitude.or(self.amplitude),
            x: over.x.or(self.x),
            y: over.y.or(self.y),
            z: over.z.or(self.z),
            t: over.t.or(self.t),
            timestamp: over.timestamp.or(self.timestamp),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            style: over.style.or(self.style),
            width: over.width.or(self.width),
            height: over.height.or(self.height),
        }
    }
}
