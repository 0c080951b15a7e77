#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wavekin::analysis::{sample_times, track_front, FrontTarget, FrontTrace};
use wavekin::harness::config::AxisValue;
use wavekin::harness::sweep::rows_to_string;
use wavekin::harness::{
    export, import, render, sample, sweep, verify, AxisSpec, ConfigLayer, ExportFormat, RenderStyle, RunConfig,
    Suite, SweepSpec,
};
use wavekin::{factorize, Error};

#[derive(Parser)]
#[command(name = "wavekin", version, about = "Sample, render and check moving standing waves")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Speed of the wave centre as a fraction of c.
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Rest-frame angular frequency.
    #[arg(long, global = true)]
    omega0: Option<f64>,
    /// Wave speed.
    #[arg(long, global = true)]
    c: Option<f64>,
    /// Exponent of the contraction factor, gamma^a (1 is Lorentz).
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Ray speed for the `ray` scenario (defaults to c).
    #[arg(long, global = true)]
    ray_speed: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file of settings; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted, except for images).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
}

#[derive(Args, Default)]
struct FieldArgs {
    /// rest, boosted, ray or generalized.
    #[arg(long)]
    scenario: Option<String>,
    /// unit or inverse-r (rest scenario only).
    #[arg(long)]
    amplitude: Option<String>,
    /// Axis as `value` or `min:max:count`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Leave the generation time out of the metadata.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a field on a grid and export it.
    Sample(FieldArgs),
    /// Render a field, or a previously exported grid, as a PNG.
    Render {
        #[command(flatten)]
        field: FieldArgs,
        /// heatmap or line-snapshots.
        #[arg(long)]
        style: Option<String>,
        #[arg(long)]
        width: Option<u32>,
        #[arg(long)]
        height: Option<u32>,
        /// Render this exported grid instead of sampling.
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Run property suites and print a JSON report; exits 1 on any failure.
    Verify {
        /// equivalence, speeds, detectability, quantization or all.
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Detectability and envelope scales over (a, beta) cells.
    Sweep {
        /// Comma-separated exponents.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        exponents: Option<Vec<f64>>,
        /// Comma-separated boosts.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        betas: Option<Vec<f64>>,
        /// Second boost for the closure defect.
        #[arg(long, allow_hyphen_values = true)]
        beta2: Option<f64>,
    },
    /// Track a carrier node and a modulation crest and fit their speeds.
    Track {
        /// Sample times as `min:max:count`.
        #[arg(long, default_value = "0:4:41")]
        times: String,
        /// Search window for the first feature, `min:max`.
        #[arg(long, default_value = "-10:10", allow_hyphen_values = true)]
        window: String,
    },
}

enum Failure {
    Config(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn axis_value(text: &Option<String>) -> Option<AxisValue> {
    text.as_ref().map(|s| AxisValue::Text(s.clone()))
}

impl GlobalArgs {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            beta: self.beta,
            omega0: self.omega0,
            c: self.c,
            a: self.a,
            ray_speed: self.ray_speed,
            seed: self.seed,
            out: self.out.clone(),
            format: self.format.clone(),
            ..Default::default()
        }
    }

    /// Config file, then flags, then subcommand options; later layers win.
    fn resolve(&self, base: ConfigLayer, command: ConfigLayer) -> Result<RunConfig, Failure> {
        let file = match &self.config {
            Some(path) => ConfigLayer::load(path)?,
            None => ConfigLayer::default(),
        };
        Ok(RunConfig::from_layer(&base.merge(file).merge(self.layer()).merge(command))?)
    }
}

impl FieldArgs {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            scenario: self.scenario.clone(),
            amplitude: self.amplitude.clone(),
            x: axis_value(&self.x),
            y: axis_value(&self.y),
            z: axis_value(&self.z),
            t: axis_value(&self.t),
            timestamp: self.no_timestamp.then_some(false),
            ..Default::default()
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| Failure::Config(format!("{}: {e}", parent.display())))?;
            }
            std::fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Config(format!("stdout: {e}")))
        }
    }
}

fn parse_window(text: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::Config(format!("window `{text}`: expected `min:max`"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(hi > lo) {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn traces_csv(traces: &[FrontTrace]) -> String {
    let mut out = String::from("target,t,position\n");
    for trace in traces {
        let name = match trace.target {
            FrontTarget::CarrierNode => "carrier-node",
            FrontTarget::ModulationCrest => "modulation-crest",
        };
        for (t, x) in trace.times.iter().zip(&trace.positions) {
            out.push_str(&format!("{name},{t:.16e},{x:.16e}\n"));
        }
    }
    out
}

fn run(cli: Cli) -> Result<(), Failure> {
    let global = &cli.global;
    match &cli.command {
        Command::Sample(field) => {
            let config = global.resolve(ConfigLayer::default(), field.layer())?;
            let grid = sample(&config)?;
            match &config.out {
                Some(path) => export(&grid, path, config.format)?,
                None => emit(&export::to_string(&grid, config.format)?, None)?,
            }
        }
        Command::Render {
            field,
            style,
            width,
            height,
            input,
        } => {
            let snapshots = style.as_deref().map(str::parse::<RenderStyle>).transpose()?
                == Some(RenderStyle::LineSnapshots);
            // Snapshots default to a line along x at three times.
            let base = if snapshots {
                ConfigLayer {
                    x: Some(AxisValue::Text("-10:10:801".into())),
                    y: Some(AxisValue::Fixed(0.0)),
                    t: Some(AxisValue::Text("0:4:3".into())),
                    ..Default::default()
                }
            } else {
                ConfigLayer::default()
            };
            let command = ConfigLayer {
                style: style.clone(),
                width: *width,
                height: *height,
                ..field.layer()
            };
            let config = global.resolve(base, command)?;
            let out = config.out.clone().unwrap_or_else(|| PathBuf::from("wavekin.png"));
            let grid = match input {
                Some(path) => import(path)?,
                None => sample(&config)?,
            };
            render(&grid, config.style, config.image, &out)?;
            eprintln!("wrote {}", out.display());
        }
        Command::Verify { suite } => {
            let config = global.resolve(ConfigLayer::default(), ConfigLayer::default())?;
            let suite: Suite = suite.parse()?;
            let report = verify(suite, config.seed)?;
            for check in &report.checks {
                eprintln!(
                    "{} {}: {:e} (tolerance {:e})",
                    if check.passed { "PASS" } else { "FAIL" },
                    check.name,
                    check.measured,
                    check.tolerance
                );
            }
            emit(&(report.to_json() + "\n"), config.out.as_deref())?;
            if !report.passed {
                return Err(Failure::Verification);
            }
        }
        Command::Sweep { exponents, betas, beta2 } => {
            let config = global.resolve(ConfigLayer::default(), ConfigLayer::default())?;
            let defaults = SweepSpec::default();
            let spec = SweepSpec {
                exponents: exponents.clone().unwrap_or(defaults.exponents),
                betas: betas.clone().unwrap_or(defaults.betas),
                beta2: beta2.unwrap_or(defaults.beta2),
                ray_speed_ratio: config.effective_ray_speed() / config.params.c,
            };
            let rows = sweep(&config.params, &spec)?;
            emit(&rows_to_string(&rows, config.format)?, config.out.as_deref())?;
        }
        Command::Track { times, window } => {
            let config = global.resolve(ConfigLayer::default(), ConfigLayer::default())?;
            let times = match times.parse::<AxisSpec>()? {
                AxisSpec::Swept { min, max, count } if max > min && count >= 3 => sample_times(min, max, count),
                _ => return Err(Failure::Config(format!("times `{times}`: expected `min:max:count` with count >= 3"))),
            };
            let window = parse_window(window)?;
            let factors = factorize(&config.params)?;
            let carrier = track_front(&factors, window, &times, FrontTarget::CarrierNode)?;
            let crest = track_front(&factors, window, &times, FrontTarget::ModulationCrest)?;
            eprintln!(
                "carrier {:.9}  modulation {:.9}  product {:.9}",
                carrier.fitted_speed,
                crest.fitted_speed,
                carrier.fitted_speed * crest.fitted_speed
            );
            let traces = [carrier, crest];
            let text = match config.format {
                ExportFormat::Csv => traces_csv(&traces),
                ExportFormat::Json => {
                    serde_json::to_string_pretty(&traces).map_err(|e| Failure::Config(e.to_string()))? + "\n"
                }
            };
            emit(&text, config.out.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Config(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
