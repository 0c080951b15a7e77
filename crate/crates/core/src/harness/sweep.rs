//! Detectability and envelope scales over a grid of `(a, β)` cells.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::detectability;
use crate::error::{Error, Result};
use crate::kinematics::BoostParams;
use crate::rayconstruct::envelope_scales;

use super::export::ExportFormat;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub exponents: Vec<f64>,
    pub betas: Vec<f64>,
    /// Second boost used for the closure defect.
    pub beta2: f64,
    /// Ray speed for the envelope scales, in units of `c`.
    pub ray_speed_ratio: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            exponents: vec![0.0, 0.5, 1.0, 1.5, 2.0],
            betas: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            beta2: 0.5,
            ray_speed_ratio: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub exponent_a: f64,
    pub beta: f64,
    pub closure_defect: f64,
    pub isotropy_frame_beta: f64,
    pub rest_frequency_ratio: f64,
    pub anisotropy_flag: bool,
    pub longitudinal_scale: f64,
    pub transverse_scale: f64,
}

/// One row per cell, exponent-major, in the order of `spec`.
pub fn sweep(base: &BoostParams, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.exponents.is_empty() || spec.betas.is_empty() {
        return Err(Error::Config("a sweep needs at least one exponent and one beta".into()));
    }
    let nb = spec.betas.len();
    (0..spec.exponents.len() * nb)
        .into_par_iter()
        .map(|i| {
            let params = BoostParams {
                beta: spec.betas[i % nb],
                exponent_a: spec.exponents[i / nb],
                ..*base
            };
            let report = detectability(&params, spec.beta2)?;
            let scales = envelope_scales(&params, spec.ray_speed_ratio * params.c)?;
            Ok(SweepRow {
                exponent_a: report.exponent_a,
                beta: report.beta1,
                closure_defect: report.closure_defect,
                isotropy_frame_beta: report.isotropy_frame_beta,
                rest_frequency_ratio: report.rest_frequency_ratio,
                anisotropy_flag: report.anisotropy_flag,
                longitudinal_scale: scales.longitudinal,
                transverse_scale: scales.transverse,
            })
        })
        .collect()
}

pub fn rows_to_string(rows: &[SweepRow], format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Json => {
            serde_json::to_string_pretty(rows).map_err(|e| Error::Config(format!("json encoding: {e}")))
        }
        ExportFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in rows {
                writer
                    .serialize(row)
                    .map_err(|e| Error::Config(format!("csv encoding: {e}")))?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| Error::Config(format!("csv encoding: {e}")))?;
            Ok(String::from_utf8_lossy(&bytes).into_owned())
        }
    }
}
