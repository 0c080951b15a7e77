//! Front tracking and equal-time / fixed-point spacing measurements.
//!
//! Features are located by bisection on sign changes of the analytic factors
//! along the axis of motion (`y = z = 0`). Carrier nodes are sign changes of
//! the carrier; modulation crests are sign changes of `sin θ` where `cos θ > 0`.

use serde::{Deserialize, Serialize};

use super::roots::{fit_line, zeros_in};
use crate::error::{Error, Result};
use crate::kinematics::{BoostParams, PhaseSpeed};
use crate::wavemodel::{Event, FactorPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrontTarget {
    CarrierNode,
    ModulationCrest,
}

/// Tracked feature positions and their least-squares speed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontTrace {
    pub target: FrontTarget,
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub fitted_speed: f64,
    pub fit_residual: f64,
}

/// Evenly spaced sample times on `[t0, t1]`, endpoints included.
pub fn sample_times(t0: f64, t1: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![t0],
        n => (0..n)
            .map(|i| if i == n - 1 { t1 } else { t0 + (t1 - t0) * (i as f64 / (n - 1) as f64) })
            .collect(),
    }
}

struct Feature<'a> {
    factors: &'a FactorPair,
    target: FrontTarget,
    spacing: f64,
    speed: f64,
}

impl<'a> Feature<'a> {
    fn new(factors: &'a FactorPair, target: FrontTarget) -> Result<Self> {
        let (spacing, speed) = match target {
            FrontTarget::CarrierNode => (factors.carrier_node_spacing(), factors.carrier_speed),
            FrontTarget::ModulationCrest => match (factors.modulation_zero_spacing(), factors.modulation_speed) {
                (Some(spacing), PhaseSpeed::Finite(speed)) => (spacing, speed),
                _ => {
                    return Err(Error::invalid(
                        "beta",
                        "modulation crests do not move at rest (beta = 0)",
                    ))
                }
            },
        };
        Ok(Feature {
            factors,
            target,
            spacing,
            speed,
        })
    }

    fn signal(&self, x: f64, t: f64) -> f64 {
        let e = Event::on_axis(x, t);
        match self.target {
            FrontTarget::CarrierNode => self.factors.carrier(e),
            FrontTarget::ModulationCrest => self.factors.modulation_phase(e).sin(),
        }
    }

    fn qualifies(&self, x: f64, t: f64) -> bool {
        match self.target {
            FrontTarget::CarrierNode => true,
            FrontTarget::ModulationCrest => self.factors.modulation(Event::on_axis(x, t)) > 0.0,
        }
    }

    fn roots(&self, lo: f64, hi: f64, t: f64) -> Vec<f64> {
        zeros_in(|x| self.signal(x, t), lo, hi, self.spacing / 16.0)
            .into_iter()
            .filter(|&x| self.qualifies(x, t))
            .collect()
    }
}

/// Positions of one carrier node or modulation crest at each of `times`.
///
/// The first feature in `x_window` is taken at the first time; afterwards the
/// bracket is one feature spacing centred on the previous position advanced
/// at the factor's nominal speed, and the nearest qualifying root is kept.
pub fn follow_front(
    factors: &FactorPair,
    x_window: (f64, f64),
    times: &[f64],
    target: FrontTarget,
) -> Result<Vec<f64>> {
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("times", "must be strictly increasing"));
    }
    let (lo, hi) = x_window;
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::invalid("x_window", format!("[{lo}, {hi}] is empty")));
    }
    let Some(&t0) = times.first() else {
        return Ok(Vec::new());
    };
    let feature = Feature::new(factors, target)?;

    let mut positions = Vec::with_capacity(times.len());
    let mut current = *feature
        .roots(lo, hi, t0)
        .first()
        .ok_or(Error::FeatureNotFound { lo, hi, t: t0 })?;
    positions.push(current);

    for w in times.windows(2) {
        let (t_prev, t) = (w[0], w[1]);
        let predicted = current + feature.speed * (t - t_prev);
        let (a, b) = (predicted - 0.5 * feature.spacing, predicted + 0.5 * feature.spacing);
        current = feature
            .roots(a, b, t)
            .into_iter()
            .min_by(|p, q| (p - predicted).abs().total_cmp(&(q - predicted).abs()))
            .ok_or(Error::FeatureNotFound { lo: a, hi: b, t })?;
        positions.push(current);
    }
    Ok(positions)
}

/// Follows a feature through `times` and fits its speed by least squares.
pub fn track_front(
    factors: &FactorPair,
    x_window: (f64, f64),
    times: &[f64],
    target: FrontTarget,
) -> Result<FrontTrace> {
    if times.len() < 3 {
        return Err(Error::DegenerateFit { samples: times.len() });
    }
    let positions = follow_front(factors, x_window, times, target)?;
    let fit = fit_line(times, &positions).ok_or(Error::DegenerateFit { samples: times.len() })?;
    Ok(FrontTrace {
        target,
        times: times.to_vec(),
        positions,
        fitted_speed: fit.slope,
        fit_residual: fit.rms_residual,
    })
}

/// Zeros of a function found by scanning, with their fitted mean spacing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingMeasurement {
    pub zeros: Vec<f64>,
    pub spacing: f64,
}

impl SpacingMeasurement {
    /// Angular rate `π / spacing` of a sinusoid with these zeros.
    pub fn angular_rate(&self) -> f64 {
        std::f64::consts::PI / self.spacing
    }
}

fn measure_spacing<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, step: f64) -> Result<SpacingMeasurement> {
    let zeros = zeros_in(f, lo, hi, step);
    if zeros.len() < 3 {
        return Err(Error::DegenerateFit { samples: zeros.len() });
    }
    let index: Vec<f64> = (0..zeros.len()).map(|i| i as f64).collect();
    let fit = fit_line(&index, &zeros).ok_or(Error::DegenerateFit { samples: zeros.len() })?;
    Ok(SpacingMeasurement {
        zeros,
        spacing: fit.slope,
    })
}

/// Equal-time zero spacing of the modulation along x; its angular rate is the
/// de Broglie wave number.
pub fn modulation_wavenumber(factors: &FactorPair, t: f64, x_window: (f64, f64)) -> Result<SpacingMeasurement> {
    let expected = factors
        .modulation_zero_spacing()
        .ok_or_else(|| Error::invalid("beta", "the modulation is uniform at rest"))?;
    measure_spacing(
        |x| factors.modulation(Event::on_axis(x, t)),
        x_window.0,
        x_window.1,
        expected / 16.0,
    )
}

/// Zero spacing of the modulation in time at a fixed point; its angular rate
/// is the dilated frequency.
pub fn modulation_frequency(factors: &FactorPair, x: f64, t_window: (f64, f64)) -> Result<SpacingMeasurement> {
    measure_spacing(
        |t| factors.modulation(Event::on_axis(x, t)),
        t_window.0,
        t_window.1,
        factors.modulation_half_period() / 16.0,
    )
}

/// Equal-time modulation phase lag across `dx` along the motion, `γ^a·ω₀·v·dx/c²`.
pub fn dephasing(params: &BoostParams, dx: f64) -> Result<f64> {
    params.validate()?;
    let s = params.scale()?;
    Ok(s * params.omega0 * params.velocity() * dx / (params.c * params.c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavemodel::factorize;

    #[test]
    fn carrier_node_moves_at_v() {
        let params = BoostParams::new(0.6);
        let f = factorize(&params).unwrap();
        let times = sample_times(0.0, 4.0, 21);
        let trace = track_front(&f, (-6.0, 6.0), &times, FrontTarget::CarrierNode).unwrap();
        assert!((trace.fitted_speed - 0.6).abs() < 1e-6);
        assert!(trace.fit_residual < 1e-8);
        // Analytic node x = vt ± nπ/(γκ₀)
        let spacing = std::f64::consts::PI / 1.25;
        let offset = trace.positions[0] / spacing;
        assert!((offset - offset.round()).abs() < 1e-12);
    }

    #[test]
    fn modulation_crest_is_superluminal() {
        let f = factorize(&BoostParams::new(0.6)).unwrap();
        let times = sample_times(0.0, 3.0, 31);
        let trace = track_front(&f, (-10.0, 10.0), &times, FrontTarget::ModulationCrest).unwrap();
        assert!((trace.fitted_speed - 5.0 / 3.0).abs() < 1e-6);
        let carrier = track_front(&f, (-10.0, 10.0), &times, FrontTarget::CarrierNode).unwrap();
        assert!((trace.fitted_speed * carrier.fitted_speed - 1.0).abs() < 1e-5);
    }

    #[test]
    fn tracking_errors() {
        let f = factorize(&BoostParams::new(0.6)).unwrap();
        let times = sample_times(0.0, 1.0, 5);
        assert!(matches!(
            track_front(&f, (0.0, 1.0), &times[..2], FrontTarget::CarrierNode),
            Err(Error::DegenerateFit { samples: 2 })
        ));
        // The window sits between two nodes.
        assert!(matches!(
            track_front(&f, (0.1, 0.2), &times, FrontTarget::CarrierNode),
            Err(Error::FeatureNotFound { .. })
        ));
        let rest = factorize(&BoostParams::new(0.0)).unwrap();
        assert!(track_front(&rest, (-5.0, 5.0), &times, FrontTarget::ModulationCrest).is_err());
        assert!(track_front(&f, (-5.0, 5.0), &[0.0, 1.0, 1.0], FrontTarget::CarrierNode).is_err());
    }

    #[test]
    fn dephasing_anchors() {
        assert_eq!(dephasing(&BoostParams::new(0.0), 3.0).unwrap(), 0.0);
        let params = BoostParams::new(0.6);
        assert!((dephasing(&params, 1.0).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(dephasing(&params, 2.0).unwrap(), 2.0 * dephasing(&params, 1.0).unwrap());
    }

    #[test]
    fn spacing_rates() {
        let params = BoostParams::new(0.6);
        let f = factorize(&params).unwrap();
        let k = modulation_wavenumber(&f, 0.0, (-20.0, 20.0)).unwrap();
        assert!((k.angular_rate() - 0.75).abs() < 1e-9);
        let w = modulation_frequency(&f, 0.3, (0.0, 20.0)).unwrap();
        assert!((w.angular_rate() - 1.25).abs() < 1e-9);
    }

    #[test]
    fn sample_times_inclusive() {
        let t = sample_times(1.0, 2.0, 3);
        assert_eq!(t, vec![1.0, 1.5, 2.0]);
        assert_eq!(sample_times(0.0, 1.0, 1), vec![0.0]);
    }
}
