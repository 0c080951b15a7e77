//! The moving wave built from rays instead of from a coordinate transform.
//!
//! At a field point `P` and time `t` the wave is the interference of the
//! outgoing ray that left the centre `t1` earlier and the incoming ray that
//! reaches the centre `t2` later. All rays through the centre share one
//! phase, which advances at `s·ω₀·(1 − v²/C²)` where `C` is the ray speed and
//! `s = γ_C^a` with `γ_C = (1 − v²/C²)^(−1/2)`. With `C = c` and `a = 1` the
//! result is the Lorentz-transformed rest wave.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{lorentz_factor, BoostParams};
use crate::wavemodel::Event;

/// Emission delay `t1` and absorption lead `t2` for one field point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RetardationTimes {
    pub t1: f64,
    pub t2: f64,
}

/// Ray speed and its contraction factor `γ_C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaySpeedConfig {
    pub ray_speed: f64,
    pub gamma_c: f64,
}

impl RaySpeedConfig {
    pub fn new(params: &BoostParams, ray_speed: f64) -> Result<Self> {
        params.validate()?;
        if !(ray_speed.is_finite() && ray_speed > 0.0) {
            return Err(Error::invalid("ray_speed", format!("must be finite and positive, got {ray_speed}")));
        }
        let v = params.velocity();
        if ray_speed <= v.abs() {
            return Err(Error::RaySpeedTooSlow {
                ray_speed,
                centre_speed: v.abs(),
            });
        }
        Ok(RaySpeedConfig {
            ray_speed,
            gamma_c: lorentz_factor(v / ray_speed)?,
        })
    }
}

/// Node spacings of the envelope relative to the rest spacing `π/κ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeScales {
    pub longitudinal: f64,
    pub transverse: f64,
}

/// Precomputed ray construction for one scenario and ray speed.
#[derive(Debug, Clone, PartialEq)]
pub struct RayConstruction {
    config: RaySpeedConfig,
    v: f64,
    beta_c: f64,
    omega0: f64,
    s: f64,
    phase_rate: f64,
}

impl RayConstruction {
    pub fn new(params: &BoostParams, ray_speed: f64) -> Result<Self> {
        let config = RaySpeedConfig::new(params, ray_speed)?;
        let v = params.velocity();
        let beta_c = v / ray_speed;
        let s = config.gamma_c.powf(params.exponent_a);
        // (ω₁ + ω₂)/2 · (1 − β_C²) with ω₁,₂ = s·ω₀·(1 ± β_C)
        let phase_rate = s * params.omega0 * ((1.0 - beta_c) * (1.0 + beta_c));
        Ok(RayConstruction {
            config,
            v,
            beta_c,
            omega0: params.omega0,
            s,
            phase_rate,
        })
    }

    pub fn config(&self) -> RaySpeedConfig {
        self.config
    }

    /// Common phase rate of the rays through the centre.
    pub fn phase_rate(&self) -> f64 {
        self.phase_rate
    }

    /// Rest wave number of rays travelling at the ray speed.
    pub fn kappa(&self) -> f64 {
        self.omega0 / self.config.ray_speed
    }

    /// Solves `C²t₁² = (x − v(t − t₁))² + y² + z²` and its absorption twin.
    ///
    /// Each root is `(√D ± β_C·Δx) / (C(1 − β_C²))` with `Δx = x − vt`; whichever
    /// sign would cancel is rewritten as `r²/(C(√D ∓ β_C·Δx))`.
    pub fn retardation(&self, e: Event) -> RetardationTimes {
        let c = self.config.ray_speed;
        let b = self.beta_c;
        let dx = e.x - self.v * e.t;
        let rho2 = e.y * e.y + e.z * e.z;
        let r2 = dx * dx + rho2;
        if r2 == 0.0 {
            return RetardationTimes { t1: 0.0, t2: 0.0 };
        }
        let one_minus_b2 = (1.0 - b) * (1.0 + b);
        let root = (dx * dx + one_minus_b2 * rho2).sqrt();
        let lead = b * dx;
        let (t1, t2) = if lead >= 0.0 {
            let plus = root + lead;
            (plus / (c * one_minus_b2), r2 / (c * plus))
        } else {
            let minus = root - lead;
            (r2 / (c * minus), minus / (c * one_minus_b2))
        };
        RetardationTimes { t1, t2 }
    }

    /// Relative residuals of the two defining quadratics.
    pub fn residuals(&self, e: Event, times: RetardationTimes) -> (f64, f64) {
        let c = self.config.ray_speed;
        let dx = e.x - self.v * e.t;
        let rho2 = e.y * e.y + e.z * e.z;
        let relative = |lhs: f64, rhs: f64| {
            let scale = lhs.abs().max(rhs.abs());
            if scale == 0.0 {
                0.0
            } else {
                (lhs - rhs).abs() / scale
            }
        };
        let emit_arm = dx + self.v * times.t1;
        let absorb_arm = dx - self.v * times.t2;
        (
            relative((c * times.t1).powi(2), emit_arm * emit_arm + rho2),
            relative((c * times.t2).powi(2), absorb_arm * absorb_arm + rho2),
        )
    }

    /// Phase of the outgoing ray, fixed when it left the centre at `t − t1`.
    pub fn emission_phase(&self, t: f64, t1: f64) -> f64 {
        self.phase_rate * (t - t1)
    }

    /// Phase of the incoming ray, fixed when it reaches the centre at `t + t2`.
    pub fn absorption_phase(&self, t: f64, t2: f64) -> f64 {
        self.phase_rate * (t + t2)
    }

    /// `[e^{iφ_A} − e^{iφ_C}]/2` at the field point.
    pub fn composed(&self, e: Event) -> Complex64 {
        let times = self.retardation(e);
        let outgoing = Complex64::cis(self.emission_phase(e.t, times.t1));
        let incoming = Complex64::cis(self.absorption_phase(e.t, times.t2));
        (outgoing - incoming) / 2.0
    }

    /// Real travelling-wave amplitude at the field point: the sin·cos projection
    /// of the composed amplitude, which is `sin κr·cos ωt` at rest.
    pub fn interfere(&self, e: Event) -> f64 {
        -self.composed(e).im
    }

    /// Envelope argument `phase_rate·(t1 + t2)/2`.
    pub fn envelope_phase(&self, e: Event) -> f64 {
        let times = self.retardation(e);
        0.5 * self.phase_rate * (times.t1 + times.t2)
    }

    pub fn envelope_scales(&self) -> EnvelopeScales {
        EnvelopeScales {
            longitudinal: 1.0 / self.s,
            transverse: self.config.gamma_c / self.s,
        }
    }
}

pub fn retardation_times(params: &BoostParams, ray_speed: f64, e: Event) -> Result<RetardationTimes> {
    Ok(RayConstruction::new(params, ray_speed)?.retardation(e))
}

/// Emission-side ray phase for rays at the wave speed `c`.
pub fn ray_phase_at_emission(params: &BoostParams, t: f64, t1: f64) -> Result<f64> {
    Ok(RayConstruction::new(params, params.c)?.emission_phase(t, t1))
}

/// Absorption-side ray phase for rays at the wave speed `c`.
pub fn ray_phase_at_absorption(params: &BoostParams, t: f64, t2: f64) -> Result<f64> {
    Ok(RayConstruction::new(params, params.c)?.absorption_phase(t, t2))
}

pub fn interfere(params: &BoostParams, ray_speed: f64, e: Event) -> Result<f64> {
    Ok(RayConstruction::new(params, ray_speed)?.interfere(e))
}

/// Longitudinal `1/s` and transverse `γ_C/s` node-spacing ratios.
pub fn envelope_scales(params: &BoostParams, ray_speed: f64) -> Result<EnvelopeScales> {
    Ok(RayConstruction::new(params, ray_speed)?.envelope_scales())
}
