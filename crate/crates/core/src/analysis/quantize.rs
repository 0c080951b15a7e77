//! Loop-phase quantization: `∮κ ds` split into whole turns and a residual.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the distance between the first and last path samples.
pub const CLOSURE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantizationResult {
    pub loop_phase: f64,
    pub nearest_n: i64,
    /// In `(−π, π]`.
    pub residual: f64,
}

impl QuantizationResult {
    /// Splits a loop phase so that `TAU * n + residual == loop_phase` exactly.
    ///
    /// Half-integer turns resolve to the smaller `n` (residual `+π`).
    pub fn from_loop_phase(loop_phase: f64) -> Self {
        let mut n = (loop_phase / TAU - 0.5).ceil();
        let mut residual = loop_phase - TAU * n;
        // The division above can land one turn off near the boundaries.
        if residual > PI {
            n += 1.0;
            residual = loop_phase - TAU * n;
        } else if residual <= -PI {
            n -= 1.0;
            residual = loop_phase - TAU * n;
        }
        QuantizationResult {
            loop_phase,
            nearest_n: n as i64,
            residual,
        }
    }

    pub fn reconstruct(&self) -> f64 {
        TAU * self.nearest_n as f64 + self.residual
    }
}

/// Loop phase of a constant wave number around a closed path of given length.
pub fn bohr_residual(kappa_db: f64, path_length: f64) -> Result<QuantizationResult> {
    if !(kappa_db.is_finite() && kappa_db >= 0.0) {
        return Err(Error::invalid("kappa_db", format!("must be finite and non-negative, got {kappa_db}")));
    }
    if !(path_length.is_finite() && path_length > 0.0) {
        return Err(Error::invalid("path_length", format!("must be finite and positive, got {path_length}")));
    }
    Ok(QuantizationResult::from_loop_phase(kappa_db * path_length))
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Curvature of the circle through three points (zero when collinear or degenerate).
fn menger_curvature(prev: [f64; 3], here: [f64; 3], next: [f64; 3]) -> f64 {
    let u = sub(here, prev);
    let w = sub(next, prev);
    let cross = [
        u[1] * w[2] - u[2] * w[1],
        u[2] * w[0] - u[0] * w[2],
        u[0] * w[1] - u[1] * w[0],
    ];
    let sides = norm(u) * norm(w) * norm(sub(next, here));
    if sides == 0.0 {
        0.0
    } else {
        2.0 * norm(cross) / sides
    }
}

/// Trapezoidal `∮κ ds` along a sampled closed curve.
///
/// `path` repeats its first point at the end; `kappa_db` has one value per
/// sample. Segment lengths are arcs of the circle whose curvature is the mean
/// of the three-point curvatures at the segment ends, so circular paths are
/// integrated with exact arclength.
pub fn bohr_path_integral(path: &[[f64; 3]], kappa_db: &[f64]) -> Result<QuantizationResult> {
    if path.len() < 3 {
        return Err(Error::TooFewSamples { got: path.len(), need: 3 });
    }
    if kappa_db.len() != path.len() {
        return Err(Error::Dimensionality(format!(
            "{} wave-number samples for {} path samples",
            kappa_db.len(),
            path.len()
        )));
    }
    if let Some(bad) = kappa_db.iter().find(|k| !(k.is_finite() && **k >= 0.0)) {
        return Err(Error::invalid("kappa_db", format!("must be finite and non-negative, got {bad}")));
    }
    let gap = norm(sub(path[path.len() - 1], path[0]));
    if !(gap <= CLOSURE_TOLERANCE) {
        return Err(Error::OpenPath { gap });
    }

    let distinct = &path[..path.len() - 1];
    let m = distinct.len();
    let curvature: Vec<f64> = (0..m)
        .map(|i| menger_curvature(distinct[(i + m - 1) % m], distinct[i], distinct[(i + 1) % m]))
        .collect();

    let mut total = 0.0;
    for i in 0..m {
        let chord = norm(sub(path[i + 1], path[i]));
        let k = 0.5 * (curvature[i] + curvature[(i + 1) % m]);
        let half = 0.5 * k * chord;
        let arc = if k > 0.0 && half < 1.0 { 2.0 * half.asin() / k } else { chord };
        total += 0.5 * (kappa_db[i] + kappa_db[i + 1]) * arc;
    }
    Ok(QuantizationResult::from_loop_phase(total))
}

/// `samples + 1` points on a circle in the xy-plane, closing on the first.
pub fn circle_path(radius: f64, samples: usize) -> Vec<[f64; 3]> {
    let mut path: Vec<[f64; 3]> = (0..samples)
        .map(|i| {
            let theta = TAU * i as f64 / samples as f64;
            [radius * theta.cos(), radius * theta.sin(), 0.0]
        })
        .collect();
    if let Some(&first) = path.first() {
        path.push(first);
    }
    path
}
