//! `qcorr` — CSV-emitting sweeps of two-qubit correlation dynamics under
//! intrinsic decoherence.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration,
//! 3 physicality violation, 4 numerical failure.

use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use qcorr_core::evolution::EvolutionError;
use qcorr_core::states::{BellDiagonalSpec, WernerSpec};
use qcorr_core::sweep::{
    figure_preset, max_oracle_deltas, run_sweep, steady_state_report, write_csv, Backend,
    InitialState, Measure, SweepConfig, SweepError,
};

const EXIT_IO: u8 = 1;
const EXIT_INVALID_CONFIG: u8 = 2;
const EXIT_UNPHYSICAL: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Two-qubit correlation dynamics under intrinsic decoherence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the correlation measures over time and write a CSV file.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct SweepArgs {
    /// Figure preset (fig1a..fig6b); explicit flags override its fields.
    #[arg(long)]
    preset: Option<String>,

    /// Initial state family: bell-diagonal or werner.
    #[arg(long)]
    state: Option<String>,

    /// Bell-diagonal correlation coefficients.
    #[arg(long, allow_negative_numbers = true)]
    c1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c3: Option<f64>,

    /// Werner purity parameter.
    #[arg(long)]
    r: Option<f64>,

    /// x-squeezing strength.
    #[arg(long)]
    mu: Option<f64>,

    /// Transverse magnetic field.
    #[arg(long = "B")]
    field_b: Option<f64>,

    /// Intrinsic decoherence rate.
    #[arg(long)]
    gamma: Option<f64>,

    /// y-squeezing strength (forces the numerical eigensystem when > 0).
    #[arg(long)]
    zeta: Option<f64>,

    /// Cross xy-squeezing strength.
    #[arg(long = "Gamma-xy")]
    gamma_xy: Option<f64>,

    /// End of the uniform time grid.
    #[arg(long = "t-max")]
    t_max: Option<f64>,

    /// Number of time samples (>= 2).
    #[arg(long = "t-steps")]
    t_steps: Option<usize>,

    /// Comma-separated subset of concurrence,lqu,tdd,uin.
    #[arg(long)]
    measures: Option<String>,

    /// Comma-separated output multipliers, one per requested measure.
    #[arg(long = "scale-factors")]
    scale_factors: Option<String>,

    /// Evolution backend: spectral, kraus or rk4.
    #[arg(long)]
    backend: Option<String>,

    /// Add brute-force oracle columns and report the worst deltas.
    #[arg(long = "oracle-check")]
    oracle_check: bool,

    /// Append the infinite-time record (t = "inf") after the sweep rows.
    #[arg(long = "steady-state")]
    steady_state: bool,

    /// Flat key=value file mirroring the flags; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output CSV path.
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Sweep(args) => match run(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(failure) => {
                eprintln!("error: {}", failure.message);
                ExitCode::from(failure.code)
            }
        },
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID_CONFIG,
            message: message.into(),
        }
    }
}

impl From<SweepError> for Failure {
    fn from(err: SweepError) -> Self {
        let code = match &err {
            SweepError::InvalidConfig(_) | SweepError::UnknownPreset { .. } => EXIT_INVALID_CONFIG,
            SweepError::Model(_) => EXIT_INVALID_CONFIG,
            SweepError::State(_) => EXIT_UNPHYSICAL,
            SweepError::Evolution(e) => match e {
                EvolutionError::InvalidParameter { .. } => EXIT_INVALID_CONFIG,
                EvolutionError::NotHermitian { .. }
                | EvolutionError::TraceNotUnit { .. }
                | EvolutionError::NotPositive { .. } => EXIT_UNPHYSICAL,
                _ => EXIT_NUMERICAL,
            },
            SweepError::Measure(_) => EXIT_NUMERICAL,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

fn run(mut args: SweepArgs) -> Result<(), Failure> {
    if let Some(path) = args.config.take() {
        let text = fs::read_to_string(&path).map_err(|e| {
            Failure::config(format!("cannot read config file {}: {e}", path.display()))
        })?;
        merge_config_file(&mut args, &text)?;
    }

    let cfg = build_config(&args)?;
    let mut records = run_sweep(&cfg)?;
    if args.steady_state {
        records.push(steady_state_report(&cfg)?);
    }

    let file = fs::File::create(&args.output).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot create {}: {e}", args.output.display()),
    })?;
    let mut writer = BufWriter::new(file);
    write_csv(&cfg, &records, &mut writer)
        .and_then(|()| writer.flush())
        .map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write {}: {e}", args.output.display()),
        })?;

    if cfg.oracle_check {
        let deltas = max_oracle_deltas(&cfg, &records);
        let summary = deltas
            .iter()
            .map(|(m, d)| format!("{m}={d:.3e}"))
            .collect::<Vec<_>>()
            .join(" ");
        eprintln!("oracle check: max |closed - brute-force| per measure: {summary}");
    }
    Ok(())
}

/// Fill unset arguments from a flat key=value file ('#' starts a comment).
fn merge_config_file(args: &mut SweepArgs, text: &str) -> Result<(), Failure> {
    fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, Failure>
    where
        T::Err: std::fmt::Display,
    {
        value
            .parse::<T>()
            .map_err(|e| Failure::config(format!("config key '{key}': {e}")))
    }

    let mut seen: HashMap<&str, ()> = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Failure::config(format!(
                "config line {}: expected key=value, got '{line}'",
                lineno + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        if seen.insert(key_static(key)?, ()).is_some() {
            return Err(Failure::config(format!("config key '{key}' repeated")));
        }
        match key {
            "preset" => {
                args.preset.get_or_insert_with(|| value.to_string());
            }
            "state" => {
                args.state.get_or_insert_with(|| value.to_string());
            }
            "measures" => {
                args.measures.get_or_insert_with(|| value.to_string());
            }
            "backend" => {
                args.backend.get_or_insert_with(|| value.to_string());
            }
            "scale-factors" => {
                args.scale_factors.get_or_insert_with(|| value.to_string());
            }
            "c1" => {
                args.c1.get_or_insert(parse(key, value)?);
            }
            "c2" => {
                args.c2.get_or_insert(parse(key, value)?);
            }
            "c3" => {
                args.c3.get_or_insert(parse(key, value)?);
            }
            "r" => {
                args.r.get_or_insert(parse(key, value)?);
            }
            "mu" => {
                args.mu.get_or_insert(parse(key, value)?);
            }
            "B" => {
                args.field_b.get_or_insert(parse(key, value)?);
            }
            "gamma" => {
                args.gamma.get_or_insert(parse(key, value)?);
            }
            "zeta" => {
                args.zeta.get_or_insert(parse(key, value)?);
            }
            "Gamma-xy" => {
                args.gamma_xy.get_or_insert(parse(key, value)?);
            }
            "t-max" => {
                args.t_max.get_or_insert(parse(key, value)?);
            }
            "t-steps" => {
                args.t_steps.get_or_insert(parse(key, value)?);
            }
            "oracle-check" => {
                args.oracle_check |= parse::<bool>(key, value)?;
            }
            "steady-state" => {
                args.steady_state |= parse::<bool>(key, value)?;
            }
            _ => unreachable!("key validated above"),
        }
    }
    Ok(())
}

/// Validate config-file keys, returning a static copy for duplicate checks.
fn key_static(key: &str) -> Result<&'static str, Failure> {
    const KEYS: [&str; 18] = [
        "preset",
        "state",
        "c1",
        "c2",
        "c3",
        "r",
        "mu",
        "B",
        "gamma",
        "zeta",
        "Gamma-xy",
        "t-max",
        "t-steps",
        "measures",
        "scale-factors",
        "backend",
        "oracle-check",
        "steady-state",
    ];
    KEYS.iter()
        .find(|k| **k == key)
        .copied()
        .ok_or_else(|| Failure::config(format!("unknown config key '{key}'")))
}

fn build_config(args: &SweepArgs) -> Result<SweepConfig, Failure> {
    let mut cfg = match &args.preset {
        Some(name) => figure_preset(name)?,
        None => default_config(),
    };

    if let Some(state) = &args.state {
        cfg.state = match state.as_str() {
            "bell-diagonal" => {
                let (c1, c2, c3) = match (args.c1, args.c2, args.c3) {
                    (Some(c1), Some(c2), Some(c3)) => (c1, c2, c3),
                    _ => {
                        return Err(Failure::config(
                            "state bell-diagonal requires --c1, --c2 and --c3",
                        ))
                    }
                };
                InitialState::BellDiagonal(BellDiagonalSpec::new(c1, c2, c3).map_err(SweepError::State)?)
            }
            "werner" => {
                let Some(r) = args.r else {
                    return Err(Failure::config("state werner requires --r"));
                };
                InitialState::Werner(WernerSpec::new(r).map_err(SweepError::State)?)
            }
            other => {
                return Err(Failure::config(format!(
                    "unknown state '{other}' (expected bell-diagonal or werner)"
                )))
            }
        };
    } else if args.preset.is_none() {
        return Err(Failure::config(
            "either --preset or --state must be given",
        ));
    }

    if args.preset.is_none() {
        for (name, value) in [("--mu", args.mu), ("--B", args.field_b), ("--gamma", args.gamma)] {
            if value.is_none() {
                return Err(Failure::config(format!(
                    "{name} is required without a preset"
                )));
            }
        }
    }

    if let Some(mu) = args.mu {
        cfg.mu = mu;
    }
    if let Some(b) = args.field_b {
        cfg.field_b = b;
    }
    if let Some(gamma) = args.gamma {
        cfg.gamma = gamma;
    }
    if let Some(zeta) = args.zeta {
        cfg.zeta = zeta;
    }
    if let Some(gamma_xy) = args.gamma_xy {
        cfg.gamma_xy = gamma_xy;
    }
    if let Some(t_max) = args.t_max {
        cfg.t_max = t_max;
    }
    if let Some(t_steps) = args.t_steps {
        cfg.t_steps = t_steps;
    }
    if let Some(list) = &args.measures {
        cfg.measures = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Measure::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map_err(Failure::config)?;
    }
    if let Some(list) = &args.scale_factors {
        cfg.scale_factors = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Failure::config(format!("scale factor '{s}': {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
    }
    if let Some(backend) = &args.backend {
        cfg.backend = Backend::from_str(backend).map_err(Failure::config)?;
    }
    cfg.oracle_check |= args.oracle_check;
    Ok(cfg)
}

/// Defaults for non-preset invocations; state and (mu, B, gamma) are
/// required flags on this path and always overwrite the placeholders.
fn default_config() -> SweepConfig {
    SweepConfig {
        state: InitialState::Werner(WernerSpec { r: 0.0 }),
        mu: 0.0,
        field_b: 0.0,
        gamma: 0.0,
        zeta: 0.0,
        gamma_xy: 0.0,
        t_max: 30.0,
        t_steps: 600,
        measures: Measure::ALL.to_vec(),
        scale_factors: Vec::new(),
        oracle_check: false,
        backend: Backend::Spectral,
    }
}
