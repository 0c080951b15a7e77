//! Grid sampling, file export, rendering, configuration and verification.

pub mod config;
pub mod export;
pub mod grid;
pub mod render;
pub mod sweep;
pub mod verify;

use std::time::{SystemTime, UNIX_EPOCH};

pub use config::{ConfigLayer, RunConfig, Scenario, DEFAULT_SEED};
pub use export::{export, import, ExportFormat};
pub use grid::{Axis, AxisSpec, FieldGrid, GridMetadata, GridSpec, Workers};
pub use render::{render, ImageSpec, RenderStyle};
pub use sweep::{sweep, SweepRow, SweepSpec};
pub use verify::{verify, Check, Suite, VerifyReport};

use crate::error::Result;

/// Samples the configured field on the configured grid.
pub fn sample(config: &RunConfig) -> Result<FieldGrid> {
    sample_with(config, Workers::Auto)
}

/// [`sample`] with an explicit worker count; the values do not depend on it.
pub fn sample_with(config: &RunConfig, workers: Workers) -> Result<FieldGrid> {
    config.validate()?;
    let field = config.field()?;
    let values = grid::sample_field(&field, config.grid, workers)?;
    let generated_unix = config
        .timestamp
        .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
    Ok(FieldGrid {
        axes: config.grid,
        metadata: GridMetadata {
            provenance: field.provenance(),
            amplitude_mode: field.amplitude_mode(),
            params: config.params,
            ray_speed: field.ray_speed(),
            generated_unix,
        },
        values,
    })
}
