use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::BoostParams;
use crate::wavemodel::{AmplitudeMode, Event, Provenance, WaveField};

/// One coordinate axis of a grid: held fixed or swept inclusively.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxisSpec {
    Fixed { value: f64 },
    Swept { min: f64, max: f64, count: usize },
}

impl Default for AxisSpec {
    fn default() -> Self {
        AxisSpec::Fixed { value: 0.0 }
    }
}

impl AxisSpec {
    pub fn fixed(value: f64) -> Self {
        AxisSpec::Fixed { value }
    }

    pub fn swept(min: f64, max: f64, count: usize) -> Self {
        AxisSpec::Swept { min, max, count }
    }

    pub fn count(&self) -> usize {
        match *self {
            AxisSpec::Fixed { .. } => 1,
            AxisSpec::Swept { count, .. } => count,
        }
    }

    pub fn is_swept(&self) -> bool {
        matches!(self, AxisSpec::Swept { .. })
    }

    pub fn value(&self, i: usize) -> f64 {
        match *self {
            AxisSpec::Fixed { value } => value,
            AxisSpec::Swept { min, max, count } => {
                if i + 1 == count {
                    max
                } else {
                    min + (max - min) * (i as f64 / (count - 1) as f64)
                }
            }
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            AxisSpec::Fixed { value } => (value, value),
            AxisSpec::Swept { min, max, .. } => (min, max),
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        match *self {
            AxisSpec::Fixed { value } if !value.is_finite() => {
                Err(Error::Config(format!("axis {name}: fixed value must be finite")))
            }
            AxisSpec::Swept { min, max, count } => {
                if !(min.is_finite() && max.is_finite()) {
                    Err(Error::Config(format!("axis {name}: bounds must be finite")))
                } else if !(max > min) {
                    Err(Error::Config(format!("axis {name}: need min < max, got {min}..{max}")))
                } else if count < 2 {
                    Err(Error::Config(format!("axis {name}: a swept axis needs at least 2 points")))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// Parses `value` (fixed) or `min:max:count` (swept).
impl FromStr for AxisSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("axis `{s}`: expected `value` or `min:max:count`"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            [v] => Ok(AxisSpec::fixed(v.trim().parse().map_err(|_| bad())?)),
            [lo, hi, n] => Ok(AxisSpec::swept(
                lo.trim().parse().map_err(|_| bad())?,
                hi.trim().parse().map_err(|_| bad())?,
                n.trim().parse().map_err(|_| bad())?,
            )),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
    T,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
            Axis::T => "t",
        }
    }
}

/// Axes of a sampled slab. Storage is row-major in `(t, z, y, x)` order, so `x`
/// varies fastest and `t` is outermost.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GridSpec {
    pub x: AxisSpec,
    pub y: AxisSpec,
    pub z: AxisSpec,
    pub t: AxisSpec,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        self.x.validate("x")?;
        self.y.validate("y")?;
        self.z.validate("z")?;
        self.t.validate("t")
    }

    pub fn axis(&self, axis: Axis) -> &AxisSpec {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
            Axis::T => &self.t,
        }
    }

    /// Swept axes in storage order, outermost first.
    pub fn swept_axes(&self) -> Vec<Axis> {
        [Axis::T, Axis::Z, Axis::Y, Axis::X]
            .into_iter()
            .filter(|&a| self.axis(a).is_swept())
            .collect()
    }

    /// `[nt, nz, ny, nx]`.
    pub fn shape(&self) -> [usize; 4] {
        [self.t.count(), self.z.count(), self.y.count(), self.x.count()]
    }

    pub fn len(&self) -> usize {
        self.shape().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, it: usize, iz: usize, iy: usize, ix: usize) -> usize {
        let [_, nz, ny, nx] = self.shape();
        ((it * nz + iz) * ny + iy) * nx + ix
    }

    pub fn event(&self, index: usize) -> Event {
        let [_, nz, ny, nx] = self.shape();
        let ix = index % nx;
        let iy = (index / nx) % ny;
        let iz = (index / (nx * ny)) % nz;
        let it = index / (nx * ny * nz);
        Event::new(self.x.value(ix), self.y.value(iy), self.z.value(iz), self.t.value(it))
    }
}

/// Everything needed to reproduce a grid besides its axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    pub provenance: Provenance,
    pub amplitude_mode: AmplitudeMode,
    pub params: BoostParams,
    pub ray_speed: Option<f64>,
    /// Seconds since the Unix epoch; absent for reproducible output.
    pub generated_unix: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGrid {
    pub axes: GridSpec,
    pub metadata: GridMetadata,
    pub values: Vec<f64>,
}

impl FieldGrid {
    pub fn validate(&self) -> Result<()> {
        self.axes.validate()?;
        if self.values.len() != self.axes.len() {
            return Err(Error::Dimensionality(format!(
                "{} values for a grid of {} points",
                self.values.len(),
                self.axes.len()
            )));
        }
        if let Some(i) = self.values.iter().position(|v| !v.is_finite()) {
            let e = self.axes.event(i);
            return Err(Error::NonFinite { x: e.x, y: e.y, z: e.z, t: e.t });
        }
        Ok(())
    }

    pub fn get(&self, it: usize, iz: usize, iy: usize, ix: usize) -> f64 {
        self.values[self.axes.index(it, iz, iy, ix)]
    }

    pub fn points(&self) -> impl Iterator<Item = (Event, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (self.axes.event(i), v))
    }
}

/// How many workers evaluate a grid. Results do not depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Workers {
    Serial,
    /// Rayon's global pool.
    #[default]
    Auto,
    Threads(usize),
}

/// Evaluates `field` on every grid point.
pub fn sample_field(field: &WaveField, axes: GridSpec, workers: Workers) -> Result<Vec<f64>> {
    axes.validate()?;
    let eval = |i: usize| -> Result<f64> {
        let e = axes.event(i);
        let v = field.evaluate(e)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x: e.x, y: e.y, z: e.z, t: e.t })
        }
    };
    let n = axes.len();
    match workers {
        Workers::Serial => (0..n).map(eval).collect(),
        Workers::Auto => (0..n).into_par_iter().map(eval).collect(),
        Workers::Threads(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(|| (0..n).into_par_iter().map(eval).collect())
        }
    }
}
