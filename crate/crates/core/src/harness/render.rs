//! Raster output: heatmaps of 2-D slices and amplitude-vs-x snapshots.

use std::io::Cursor;
use std::path::Path;
use std::str::FromStr;

use image::{ImageFormat, Rgb, RgbImage};
use serde::{Deserialize, Serialize};

use super::grid::{Axis, FieldGrid};
use crate::analysis::{follow_front, FrontTarget};
use crate::error::{Error, Result};
use crate::wavemodel::{factorize, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RenderStyle {
    #[default]
    Heatmap,
    LineSnapshots,
}

impl FromStr for RenderStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heatmap" => Ok(RenderStyle::Heatmap),
            "line-snapshots" | "snapshots" => Ok(RenderStyle::LineSnapshots),
            other => Err(Error::Config(format!("unknown render style `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageSpec {
    pub width: u32,
    pub height: u32,
}

impl Default for ImageSpec {
    fn default() -> Self {
        ImageSpec {
            width: 1024,
            height: 768,
        }
    }
}

/// A 2-D slice of a grid; row 0 holds the smallest value of the outer axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueMatrix {
    pub row_axis: Axis,
    pub col_axis: Axis,
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
}

impl ValueMatrix {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }
}

/// The value matrix behind a heatmap; the grid must sweep exactly two axes.
pub fn heatmap_matrix(grid: &FieldGrid) -> Result<ValueMatrix> {
    grid.validate()?;
    let swept = grid.axes.swept_axes();
    let [row_axis, col_axis] = swept[..] else {
        return Err(Error::Dimensionality(format!(
            "a heatmap needs exactly 2 swept axes, the grid sweeps {}",
            swept.len()
        )));
    };
    // Fixed axes have a single entry, so storage order is already row-major.
    Ok(ValueMatrix {
        row_axis,
        col_axis,
        rows: grid.axes.axis(row_axis).count(),
        cols: grid.axes.axis(col_axis).count(),
        values: grid.values.clone(),
    })
}

fn max_abs(values: &[f64]) -> f64 {
    let m = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m > 0.0 {
        m
    } else {
        1.0
    }
}

/// Blue for negative, white for zero, red for positive.
fn diverging(v: f64) -> Rgb<u8> {
    let v = v.clamp(-1.0, 1.0);
    let fade = |k: f64| (255.0 * (1.0 - k.abs())).round() as u8;
    if v >= 0.0 {
        Rgb([255, fade(v), fade(v)])
    } else {
        Rgb([fade(v), fade(v), 255])
    }
}

pub fn heatmap_image(grid: &FieldGrid, spec: ImageSpec) -> Result<RgbImage> {
    let m = heatmap_matrix(grid)?;
    let scale = max_abs(&m.values);
    let (w, h) = (spec.width, spec.height);
    Ok(RgbImage::from_fn(w, h, |px, py| {
        let col = (px as usize * m.cols / w as usize).min(m.cols - 1);
        // Image rows run downwards; the outer axis increases upwards.
        let row = ((h - 1 - py) as usize * m.rows / h as usize).min(m.rows - 1);
        diverging(m.get(row, col) / scale)
    }))
}

/// Carrier-node and modulation-crest positions at one snapshot time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnapshotMarkers {
    pub t: f64,
    pub carrier: f64,
    pub modulation: f64,
}

fn check_snapshot_grid(grid: &FieldGrid) -> Result<()> {
    grid.validate()?;
    if grid.axes.swept_axes() != [Axis::T, Axis::X] {
        return Err(Error::Dimensionality(
            "line snapshots need a grid swept in x and t only".into(),
        ));
    }
    Ok(())
}

/// Front markers for a snapshot grid, or an empty list when the field has no
/// moving factorization (rest frame, or rays slower or faster than `c`).
pub fn snapshot_markers(grid: &FieldGrid) -> Result<Vec<SnapshotMarkers>> {
    check_snapshot_grid(grid)?;
    let m = &grid.metadata;
    let factorizable = m.provenance != Provenance::Rest
        && m.params.beta != 0.0
        && m.ray_speed.is_none_or(|c| c == m.params.c);
    if !factorizable {
        return Ok(Vec::new());
    }
    let factors = factorize(&m.params)?;
    let times: Vec<f64> = (0..grid.axes.t.count()).map(|i| grid.axes.t.value(i)).collect();
    let window = grid.axes.x.bounds();
    let carrier = follow_front(&factors, window, &times, FrontTarget::CarrierNode)?;
    let modulation = follow_front(&factors, window, &times, FrontTarget::ModulationCrest)?;
    Ok(times
        .iter()
        .zip(carrier.iter().zip(&modulation))
        .map(|(&t, (&carrier, &modulation))| SnapshotMarkers { t, carrier, modulation })
        .collect())
}

const PALETTE: [[u8; 3]; 6] = [
    [31, 119, 180],
    [214, 39, 40],
    [44, 160, 44],
    [148, 103, 189],
    [255, 127, 14],
    [23, 190, 207],
];

fn draw_line(img: &mut RgbImage, from: (f64, f64), to: (f64, f64), color: Rgb<u8>) {
    let (dx, dy) = (to.0 - from.0, to.1 - from.1);
    let steps = dx.abs().max(dy.abs()).ceil().max(1.0) as usize;
    for i in 0..=steps {
        let f = i as f64 / steps as f64;
        let (x, y) = ((from.0 + f * dx).round(), (from.1 + f * dy).round());
        for (ox, oy) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)] {
            let (px, py) = (x + ox, y + oy);
            if px >= 0.0 && py >= 0.0 && (px as u32) < img.width() && (py as u32) < img.height() {
                img.put_pixel(px as u32, py as u32, color);
            }
        }
    }
}

/// Amplitude against x at each snapshot time, with carrier markers drawn up
/// from the bottom edge and modulation markers down from the top edge.
pub fn snapshots_image(grid: &FieldGrid, spec: ImageSpec) -> Result<RgbImage> {
    check_snapshot_grid(grid)?;
    let markers = snapshot_markers(grid)?;
    let (w, h) = (spec.width as f64, spec.height as f64);
    let margin = (0.05 * w.min(h)).max(4.0);
    let (x_min, x_max) = grid.axes.x.bounds();
    let scale = max_abs(&grid.values);
    let to_px = |x: f64| margin + (x - x_min) / (x_max - x_min) * (w - 2.0 * margin);
    let to_py = |v: f64| 0.5 * h - v / scale * (0.5 * h - 2.0 * margin);

    let mut img = RgbImage::from_pixel(spec.width, spec.height, Rgb([255, 255, 255]));
    draw_line(&mut img, (margin, 0.5 * h), (w - margin, 0.5 * h), Rgb([190, 190, 190]));

    let nx = grid.axes.x.count();
    for it in 0..grid.axes.t.count() {
        let color = Rgb(PALETTE[it % PALETTE.len()]);
        for ix in 1..nx {
            let (x0, x1) = (grid.axes.x.value(ix - 1), grid.axes.x.value(ix));
            draw_line(
                &mut img,
                (to_px(x0), to_py(grid.get(it, 0, 0, ix - 1))),
                (to_px(x1), to_py(grid.get(it, 0, 0, ix))),
                color,
            );
        }
        if let Some(mk) = markers.get(it) {
            let tick = 2.0 * margin;
            for (x, y0, y1) in [(mk.carrier, h - 1.0, h - 1.0 - tick), (mk.modulation, 0.0, tick)] {
                if (x_min..=x_max).contains(&x) {
                    draw_line(&mut img, (to_px(x), y0), (to_px(x), y1), color);
                }
            }
        }
    }
    Ok(img)
}

/// Validates, rasterizes and writes a PNG. Nothing is written on error.
pub fn render(grid: &FieldGrid, style: RenderStyle, spec: ImageSpec, path: &Path) -> Result<()> {
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::Config("image resolution must be non-zero".into()));
    }
    let img = match style {
        RenderStyle::Heatmap => heatmap_image(grid, spec)?,
        RenderStyle::LineSnapshots => snapshots_image(grid, spec)?,
    };
    let mut buf = Vec::new();
    img.write_to(&mut Cursor::new(&mut buf), ImageFormat::Png)
        .map_err(|e| Error::Config(format!("png encoding: {e}")))?;
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}
