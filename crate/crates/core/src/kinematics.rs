//! Scalar relativistic bookkeeping.
//!
//! Everything here is a pure function of a [`BoostParams`]: the Lorentz factor
//! and its `γ^a` generalization, the Doppler-shifted forward/rearward ray pair,
//! de Broglie frequency and wave number, and collinear velocity composition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Configuration of one boosted-wave scenario.
///
/// The velocity is stored as the fraction `beta = v / c`; the speed `v` and the
/// rest wave number `kappa0 = omega0 / c` are always derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoostParams {
    pub beta: f64,
    pub c: f64,
    pub omega0: f64,
    pub exponent_a: f64,
    pub hbar: f64,
}

impl Default for BoostParams {
    fn default() -> Self {
        BoostParams {
            beta: 0.0,
            c: 1.0,
            omega0: 1.0,
            exponent_a: 1.0,
            hbar: 1.0,
        }
    }
}

impl BoostParams {
    /// Natural units (`c = omega0 = hbar = 1`, `a = 1`) at velocity fraction `beta`.
    pub fn new(beta: f64) -> Self {
        BoostParams {
            beta,
            ..Default::default()
        }
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_omega0(mut self, omega0: f64) -> Self {
        self.omega0 = omega0;
        self
    }

    pub fn with_exponent(mut self, exponent_a: f64) -> Self {
        self.exponent_a = exponent_a;
        self
    }

    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    /// Checks every invariant, including `|beta| < 1`.
    pub fn validate(&self) -> Result<()> {
        positive("c", self.c)?;
        positive("omega0", self.omega0)?;
        positive("hbar", self.hbar)?;
        if !self.exponent_a.is_finite() {
            return Err(Error::invalid("exponent_a", "must be finite"));
        }
        if !self.beta.is_finite() {
            return Err(Error::invalid("beta", "must be finite"));
        }
        if self.beta.abs() >= 1.0 {
            return Err(Error::Superluminal(self.beta.abs()));
        }
        Ok(())
    }

    /// Centre speed `v = beta * c`.
    pub fn velocity(&self) -> f64 {
        self.beta * self.c
    }

    /// Rest wave number `kappa0 = omega0 / c` (not the de Broglie wave number).
    pub fn kappa0(&self) -> f64 {
        self.omega0 / self.c
    }

    pub fn gamma(&self) -> Result<f64> {
        lorentz_factor(self.beta)
    }

    /// `gamma^a` for this scenario.
    pub fn scale(&self) -> Result<f64> {
        scale_factor(self.beta, self.exponent_a)
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite and positive, got {value}")))
    }
}

/// `(1 - beta^2)^(-1/2)`.
pub fn lorentz_factor(beta: f64) -> Result<f64> {
    if !beta.is_finite() {
        return Err(Error::invalid("beta", "must be finite"));
    }
    if beta.abs() >= 1.0 {
        return Err(Error::Superluminal(beta.abs()));
    }
    // (1 - b)(1 + b) keeps precision as |beta| -> 1.
    Ok(1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt())
}

/// The transform family `gamma^a`: `a = 1` is Lorentz, `a = 0` Galilean.
pub fn scale_factor(beta: f64, exponent_a: f64) -> Result<f64> {
    let gamma = lorentz_factor(beta)?;
    if !exponent_a.is_finite() {
        return Err(Error::invalid("exponent_a", "must be finite"));
    }
    Ok(gamma.powf(exponent_a))
}

/// Forward (1) and rearward (2) rays of a moving standing wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayPair {
    pub omega1: f64,
    pub omega2: f64,
    pub kappa1: f64,
    pub kappa2: f64,
}

impl RayPair {
    /// Phase speeds of the two rays; both equal `c` by construction.
    pub fn ray_speeds(&self) -> (f64, f64) {
        (self.omega1 / self.kappa1, self.omega2 / self.kappa2)
    }
}

/// Doppler-shifted ray pair `omega_{1,2} = s * omega0 * (1 ± beta)`, `s = gamma^a`.
pub fn doppler_pair(params: &BoostParams) -> Result<RayPair> {
    params.validate()?;
    let s = params.scale()?;
    let omega1 = s * params.omega0 * (1.0 + params.beta);
    let omega2 = s * params.omega0 * (1.0 - params.beta);
    Ok(RayPair {
        omega1,
        omega2,
        kappa1: omega1 / params.c,
        kappa2: omega2 / params.c,
    })
}

/// A speed that may diverge, as the de Broglie phase speed does for a particle at rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseSpeed {
    Finite(f64),
    Divergent,
}

impl PhaseSpeed {
    pub fn finite(self) -> Option<f64> {
        match self {
            PhaseSpeed::Finite(v) => Some(v),
            PhaseSpeed::Divergent => None,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, PhaseSpeed::Divergent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeBroglieQuantities {
    /// Dilated frequency `gamma * omega0`.
    pub omega_e: f64,
    /// `gamma * kappa0 * beta`.
    pub kappa_db: f64,
    pub energy: f64,
    pub momentum: f64,
    pub phase_speed: PhaseSpeed,
}

/// Planck-Einstein and de Broglie relations for the moving particle.
pub fn de_broglie(params: &BoostParams) -> Result<DeBroglieQuantities> {
    params.validate()?;
    let gamma = params.gamma()?;
    let omega_e = gamma * params.omega0;
    let kappa_db = gamma * params.kappa0() * params.beta;
    let phase_speed = if params.beta == 0.0 {
        PhaseSpeed::Divergent
    } else {
        PhaseSpeed::Finite(params.c / params.beta)
    };
    Ok(DeBroglieQuantities {
        omega_e,
        kappa_db,
        energy: params.hbar * omega_e,
        momentum: params.hbar * kappa_db,
        phase_speed,
    })
}

/// Collinear relativistic velocity addition in units of the wave speed.
pub fn compose_velocities(beta1: f64, beta2: f64) -> Result<f64> {
    if !beta1.is_finite() || !beta2.is_finite() {
        return Err(Error::invalid("beta", "must be finite"));
    }
    if beta1.abs() >= 1.0 {
        return Err(Error::Superluminal(beta1.abs()));
    }
    if beta2.abs() > 1.0 {
        return Err(Error::Superluminal(beta2.abs()));
    }
    let denom = 1.0 + beta1 * beta2;
    if denom == 0.0 {
        return Err(Error::CompositionUndefined);
    }
    Ok(((beta1 + beta2) / denom).clamp(-1.0, 1.0))
}
