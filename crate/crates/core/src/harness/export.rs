//! CSV and JSON grid files.
//!
//! CSV files open with `# key = value` metadata lines, then a header
//! `x,y,z,t,psi` and one row per grid point in storage order. Numbers are
//! written with 17 significant digits so every value re-imports bit-exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::grid::{AxisSpec, FieldGrid, GridMetadata, GridSpec};
use crate::error::{Error, Result};
use crate::kinematics::BoostParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::Config(format!("unknown format `{other}` (csv or json)"))),
        }
    }
}

const CSV_MAGIC: &str = "# wavekin field grid";
const CSV_HEADER: [&str; 5] = ["x", "y", "z", "t", "psi"];

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn axis_text(a: &AxisSpec) -> String {
    match *a {
        AxisSpec::Fixed { value } => format!("fixed {}", num(value)),
        AxisSpec::Swept { min, max, count } => format!("swept {} {} {count}", num(min), num(max)),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

pub fn to_csv_string(grid: &FieldGrid) -> Result<String> {
    grid.validate()?;
    let m = &grid.metadata;
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_MAGIC}");
    let _ = writeln!(out, "# provenance = {}", m.provenance);
    let _ = writeln!(out, "# amplitude_mode = {}", m.amplitude_mode.as_str());
    for (key, value) in [
        ("beta", m.params.beta),
        ("c", m.params.c),
        ("omega0", m.params.omega0),
        ("exponent_a", m.params.exponent_a),
        ("hbar", m.params.hbar),
    ] {
        let _ = writeln!(out, "# {key} = {}", num(value));
    }
    let _ = writeln!(out, "# ray_speed = {}", opt(m.ray_speed.map(num)));
    let _ = writeln!(out, "# generated_unix = {}", opt(m.generated_unix));
    for (name, axis) in [("x", &grid.axes.x), ("y", &grid.axes.y), ("z", &grid.axes.z), ("t", &grid.axes.t)] {
        let _ = writeln!(out, "# axis.{name} = {}", axis_text(axis));
    }

    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Config(format!("csv encoding: {e}"));
    writer.write_record(CSV_HEADER).map_err(csv_err)?;
    for (e, v) in grid.points() {
        writer
            .write_record([num(e.x), num(e.y), num(e.z), num(e.t), num(v)])
            .map_err(csv_err)?;
    }
    let body = writer
        .into_inner()
        .map_err(|e| Error::Config(format!("csv encoding: {e}")))?;
    out.push_str(&String::from_utf8_lossy(&body));
    Ok(out)
}

pub fn to_json_string(grid: &FieldGrid) -> Result<String> {
    grid.validate()?;
    serde_json::to_string_pretty(grid).map_err(|e| Error::Config(format!("json encoding: {e}")))
}

/// Parses a CSV grid; the error string describes what is malformed.
pub fn from_csv_str(text: &str) -> std::result::Result<FieldGrid, String> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(CSV_MAGIC) {
        return Err("missing grid header line".into());
    }
    let meta: BTreeMap<&str, &str> = text
        .lines()
        .skip(1)
        .take_while(|l| l.starts_with('#'))
        .filter_map(|l| l.trim_start_matches('#').split_once('='))
        .map(|(k, v)| (k.trim(), v.trim()))
        .collect();
    let get = |k: &str| meta.get(k).copied().ok_or_else(|| format!("missing metadata `{k}`"));
    let float = |k: &str| -> std::result::Result<f64, String> {
        get(k)?.parse().map_err(|_| format!("metadata `{k}` is not a number"))
    };
    let axis = |k: &str| -> std::result::Result<AxisSpec, String> {
        let text = get(k)?;
        let parts: Vec<&str> = text.split_whitespace().collect();
        let bad = || format!("metadata `{k}` = `{text}` is not an axis");
        match parts.as_slice() {
            ["fixed", v] => Ok(AxisSpec::fixed(v.parse().map_err(|_| bad())?)),
            ["swept", lo, hi, n] => Ok(AxisSpec::swept(
                lo.parse().map_err(|_| bad())?,
                hi.parse().map_err(|_| bad())?,
                n.parse().map_err(|_| bad())?,
            )),
            _ => Err(bad()),
        }
    };

    let metadata = GridMetadata {
        provenance: get("provenance")?.parse().map_err(|e: Error| e.to_string())?,
        amplitude_mode: get("amplitude_mode")?.parse().map_err(|e: Error| e.to_string())?,
        params: BoostParams {
            beta: float("beta")?,
            c: float("c")?,
            omega0: float("omega0")?,
            exponent_a: float("exponent_a")?,
            hbar: float("hbar")?,
        },
        ray_speed: match get("ray_speed")? {
            "none" => None,
            _ => Some(float("ray_speed")?),
        },
        generated_unix: match get("generated_unix")? {
            "none" => None,
            v => Some(v.parse().map_err(|_| "metadata `generated_unix` is not an integer".to_string())?),
        },
    };
    let axes = GridSpec {
        x: axis("axis.x")?,
        y: axis("axis.y")?,
        z: axis("axis.z")?,
        t: axis("axis.t")?,
    };

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| e.to_string())?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(format!("unexpected column header `{}`", header.iter().collect::<Vec<_>>().join(",")));
    }
    let mut values = Vec::with_capacity(axes.len());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        let row: Vec<f64> = record
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| format!("row {}: not a number", i + 1))?;
        if row.len() != 5 {
            return Err(format!("row {}: expected 5 columns", i + 1));
        }
        if i >= axes.len() {
            return Err(format!("more rows than the {} grid points", axes.len()));
        }
        let e = axes.event(i);
        if [e.x, e.y, e.z, e.t] != row[..4] {
            return Err(format!("row {}: coordinates do not match the axes", i + 1));
        }
        values.push(row[4]);
    }
    let grid = FieldGrid { axes, metadata, values };
    grid.validate().map_err(|e| e.to_string())?;
    Ok(grid)
}

pub fn from_json_str(text: &str) -> std::result::Result<FieldGrid, String> {
    let grid: FieldGrid = serde_json::from_str(text).map_err(|e| e.to_string())?;
    grid.validate().map_err(|e| e.to_string())?;
    Ok(grid)
}

pub fn to_string(grid: &FieldGrid, format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Csv => to_csv_string(grid),
        ExportFormat::Json => to_json_string(grid),
    }
}

/// Writes `grid` to `path` in the given format.
pub fn export(grid: &FieldGrid, path: &Path, format: ExportFormat) -> Result<()> {
    let text = to_string(grid, format)?;
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Reads a grid written by [`export`], detecting the format from the content.
pub fn import(path: &Path) -> Result<FieldGrid> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let parsed = if text.trim_start().starts_with('{') {
        from_json_str(&text)
    } else {
        from_csv_str(&text)
    };
    parsed.map_err(|reason| Error::Format {
        path: path.to_path_buf(),
        reason,
    })
}
