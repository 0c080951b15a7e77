//! Preferred-frame detectability for the `γ^a` transform family.

use serde::{Deserialize, Serialize};

use super::roots::bisect;
use crate::error::{Error, Result};
use crate::kinematics::{compose_velocities, doppler_pair, scale_factor, BoostParams};

/// Closure defects above this are reported as anisotropy.
pub const ANISOTROPY_THRESHOLD: f64 = 1e-9;

/// The frame in which a forward/rearward ray pair has equal frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsotropyFrame {
    pub beta: f64,
    /// Common frequency of both rays once re-expressed in that frame.
    pub common_frequency: f64,
}

/// Finds the boost that equalizes a forward/rearward ray pair.
///
/// A ray pair re-expressed in a frame moving at `b` along +x has frequencies
/// `s(b)·ω_f·(1 − b)` and `s(b)·ω_r·(1 + b)`; the equalizing `b` is located by
/// bisection and the common frequency reported with `s = γ^a` from `params`.
pub fn isotropy_search(omega_forward: f64, omega_rearward: f64, params: &BoostParams) -> Result<IsotropyFrame> {
    for (name, w) in [("omega_forward", omega_forward), ("omega_rearward", omega_rearward)] {
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::invalid(name, format!("must be finite and positive, got {w}")));
        }
    }
    if !params.exponent_a.is_finite() {
        return Err(Error::invalid("exponent_a", "must be finite"));
    }
    // Decreasing in b, positive at -1 and negative at +1.
    let mismatch = |b: f64| omega_forward * (1.0 - b) - omega_rearward * (1.0 + b);
    let beta = if omega_forward == omega_rearward {
        0.0
    } else {
        bisect(mismatch, -1.0, 1.0)
    };
    if !(beta.abs() < 1.0) {
        return Err(Error::NoIsotropyFrame);
    }
    let s = scale_factor(beta, params.exponent_a).map_err(|_| Error::NoIsotropyFrame)?;
    Ok(IsotropyFrame {
        beta,
        common_frequency: s * omega_forward * (1.0 - beta),
    })
}

/// Mismatch between two successive `γ^a` frequency maps and the single map at
/// the composed velocity; the larger of the forward and rearward relative errors.
pub fn group_closure_defect(exponent_a: f64, beta1: f64, beta2: f64) -> Result<f64> {
    let composed = compose_velocities(beta1, beta2)?;
    let forward = |b: f64| -> Result<f64> { Ok(scale_factor(b, exponent_a)? * (1.0 + b)) };
    let rearward = |b: f64| -> Result<f64> { Ok(scale_factor(b, exponent_a)? * (1.0 - b)) };

    let two_step_f = forward(beta1)? * forward(beta2)?;
    let two_step_r = rearward(beta1)? * rearward(beta2)?;
    let single_f = forward(composed)?;
    let single_r = rearward(composed)?;
    Ok((two_step_f / single_f - 1.0).abs().max((two_step_r / single_r - 1.0).abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectabilityReport {
    pub exponent_a: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub closure_defect: f64,
    pub isotropy_frame_beta: f64,
    /// Common frequency in the isotropy frame over `omega0`; 1 only for `a = 1`.
    pub rest_frequency_ratio: f64,
    pub anisotropy_flag: bool,
}

/// Detectability metrics for a particle boosted by `beta1` and then `beta2`.
pub fn detectability(params: &BoostParams, beta2: f64) -> Result<DetectabilityReport> {
    let pair = doppler_pair(params)?;
    let frame = isotropy_search(pair.omega1, pair.omega2, params)?;
    let closure_defect = group_closure_defect(params.exponent_a, params.beta, beta2)?;
    Ok(DetectabilityReport {
        exponent_a: params.exponent_a,
        beta1: params.beta,
        beta2,
        closure_defect,
        isotropy_frame_beta: frame.beta,
        rest_frequency_ratio: frame.common_frequency / params.omega0,
        anisotropy_flag: closure_defect > ANISOTROPY_THRESHOLD,
    })
}
