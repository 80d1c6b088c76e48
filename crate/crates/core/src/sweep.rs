//! Parameter sweeps over time: evolve an initial state, evaluate the
//! requested correlation measures at each sample, and emit CSV rows.
//!
//! Sample points are independent, so they are evaluated in parallel and
//! assembled in time order; output is byte-deterministic across runs and
//! thread counts.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::evolution::{
    integrate_master, propagate_kraus_adaptive, propagate_spectral, steady_state,
    DecoherenceParams, DensityMatrix, EvolutionError,
};
use crate::hamiltonian::{
    analytic_eigensystem, build_hamiltonian, numeric_eigensystem, Eigensystem, ModelError,
    ModelParams,
};
use crate::linalg::LinalgError;
use crate::measures::{
    concurrence, concurrence_x, lqu, lqu_bruteforce, tdd_bruteforce, tdd_x, uin, uin_bruteforce,
};
use crate::states::{
    bell_diagonal, elements_from_density, werner, BellDiagonalSpec, StateError, WernerSpec,
};
use crate::tolerances::BRUTE_FORCE_GRID;

/// Fixed RK4 step used by the `rk4` backend.
pub const RK4_DT: f64 = 1e-3;

/// Correlation vector shared by the Bell-diagonal figure presets.
pub const PRESET_BELL_C: (f64, f64, f64) = (0.9, -0.4, 0.4);

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown preset '{name}'; valid presets: {valid}")]
    UnknownPreset { name: String, valid: String },
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
    #[error("measure evaluation failed: {0}")]
    Measure(#[from] LinalgError),
}

/// The four sweepable correlation measures, in canonical column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Concurrence,
    Lqu,
    Tdd,
    Uin,
}

impl Measure {
    pub const ALL: [Measure; 4] = [
        Measure::Concurrence,
        Measure::Lqu,
        Measure::Tdd,
        Measure::Uin,
    ];

    pub fn column_name(&self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Lqu => "lqu",
            Measure::Tdd => "tdd",
            Measure::Uin => "uin",
        }
    }

    pub fn oracle_column_name(&self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence_bf",
            Measure::Lqu => "lqu_bf",
            Measure::Tdd => "tdd_bf",
            Measure::Uin => "uin_bf",
        }
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "concurrence" => Ok(Measure::Concurrence),
            "lqu" => Ok(Measure::Lqu),
            "tdd" => Ok(Measure::Tdd),
            "uin" => Ok(Measure::Uin),
            other => Err(format!(
                "unknown measure '{other}' (expected concurrence, lqu, tdd or uin)"
            )),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column_name())
    }
}

/// Evolution backend used to produce ρ(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Spectral,
    Kraus,
    Rk4,
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "spectral" => Ok(Backend::Spectral),
            "kraus" => Ok(Backend::Kraus),
            "rk4" => Ok(Backend::Rk4),
            other => Err(format!(
                "unknown backend '{other}' (expected spectral, kraus or rk4)"
            )),
        }
    }
}

/// Initial-state selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    BellDiagonal(BellDiagonalSpec),
    Werner(WernerSpec),
}

impl InitialState {
    pub fn density_matrix(&self) -> DensityMatrix {
        match self {
            InitialState::BellDiagonal(spec) => bell_diagonal(spec),
            InitialState::Werner(spec) => werner(spec),
        }
    }
}

/// Full description of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub state: InitialState,
    pub mu: f64,
    pub field_b: f64,
    pub gamma: f64,
    pub zeta: f64,
    pub gamma_xy: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub measures: Vec<Measure>,
    /// Output-only multipliers, aligned with `measures`; raw values are the
    /// contract, scaling is cosmetic.
    pub scale_factors: Vec<f64>,
    pub oracle_check: bool,
    pub backend: Backend,
}

impl SweepConfig {
    /// Canonically ordered, de-duplicated (measure, scale) pairs.
    pub fn measure_columns(&self) -> Vec<(Measure, f64)> {
        let mut columns: Vec<(Measure, f64)> = Vec::new();
        for m in Measure::ALL {
            if let Some(pos) = self.measures.iter().position(|x| *x == m) {
                let scale = self.scale_factors.get(pos).copied().unwrap_or(1.0);
                columns.push((m, scale));
            }
        }
        columns
    }

    fn validate(&self) -> Result<(), SweepError> {
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(SweepError::InvalidConfig(format!(
                "t_max must be finite and > 0, got {}",
                self.t_max
            )));
        }
        if self.t_steps < 2 {
            return Err(SweepError::InvalidConfig(format!(
                "t_steps must be >= 2, got {}",
                self.t_steps
            )));
        }
        if self.measures.is_empty() {
            return Err(SweepError::InvalidConfig(
                "at least one measure must be requested".into(),
            ));
        }
        if !self.scale_factors.is_empty() && self.scale_factors.len() != self.measures.len() {
            return Err(SweepError::InvalidConfig(format!(
                "scale_factors has {} entries for {} measures",
                self.scale_factors.len(),
                self.measures.len()
            )));
        }
        if self.scale_factors.iter().any(|s| !s.is_finite()) {
            return Err(SweepError::InvalidConfig(
                "scale factors must be finite".into(),
            ));
        }
        ModelParams::new(self.mu, self.zeta, self.gamma_xy, self.field_b)?;
        DecoherenceParams::new(self.gamma, 0.0)?;
        Ok(())
    }

    fn eigensystem(&self) -> Result<Eigensystem, SweepError> {
        let params = ModelParams::new(self.mu, self.zeta, self.gamma_xy, self.field_b)?;
        let es = if params.is_one_axis_twisting() {
            analytic_eigensystem(self.mu, self.field_b)?
        } else {
            numeric_eigensystem(&params)?
        };
        Ok(es)
    }
}

/// One time sample: raw (unscaled) measure values in canonical column
/// order, plus optional brute-force oracle values.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    pub t: f64,
    pub values: Vec<f64>,
    pub oracle_values: Option<Vec<f64>>,
}

fn evaluate_measures(
    rho: &DensityMatrix,
    columns: &[(Measure, f64)],
    oracle: bool,
) -> Result<(Vec<f64>, Option<Vec<f64>>), SweepError> {
    let elements = elements_from_density(rho)?;
    let mut values = Vec::with_capacity(columns.len());
    let mut oracle_values = if oracle {
        Some(Vec::with_capacity(columns.len()))
    } else {
        None
    };
    for (measure, _) in columns {
        let closed = match measure {
            Measure::Concurrence => concurrence_x(&elements).value,
            Measure::Lqu => lqu(rho)?.value,
            Measure::Tdd => tdd_x(&elements).value,
            Measure::Uin => uin(rho)?.value,
        };
        values.push(closed);
        if let Some(oracle_values) = oracle_values.as_mut() {
            let brute = match measure {
                Measure::Concurrence => concurrence(rho)?.value,
                Measure::Lqu => lqu_bruteforce(rho, BRUTE_FORCE_GRID)?.value,
                Measure::Tdd => tdd_bruteforce(rho, BRUTE_FORCE_GRID).value,
                Measure::Uin => uin_bruteforce(rho, BRUTE_FORCE_GRID)?.value,
            };
            oracle_values.push(brute);
        }
    }
    Ok((values, oracle_values))
}

/// Run the sweep: one record per uniform time sample
/// t_k = k·t_max/(t_steps−1), evaluated in parallel, assembled in order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<CorrelationRecord>, SweepError> {
    cfg.validate()?;
    let es = cfg.eigensystem()?;
    let rho0 = cfg.state.density_matrix();
    let columns = cfg.measure_columns();
    let h = build_hamiltonian(&ModelParams::new(
        cfg.mu,
        cfg.zeta,
        cfg.gamma_xy,
        cfg.field_b,
    )?);

    (0..cfg.t_steps)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 * cfg.t_max / (cfg.t_steps - 1) as f64;
            let d = DecoherenceParams::new(cfg.gamma, t)?;
            let rho_t = match cfg.backend {
                Backend::Spectral => propagate_spectral(&es, &rho0, &d),
                Backend::Kraus => propagate_kraus_adaptive(&es, &rho0, &d)?.0,
                Backend::Rk4 => integrate_master(&h, &rho0, &d, RK4_DT)?,
            };
            let (values, oracle_values) = evaluate_measures(&rho_t, &columns, cfg.oracle_check)?;
            Ok(CorrelationRecord {
                t,
                values,
                oracle_values,
            })
        })
        .collect()
}

/// Evaluate the requested measures on the infinite-time state; the record
/// carries t = +∞ (CSV value "inf").
pub fn steady_state_report(cfg: &SweepConfig) -> Result<CorrelationRecord, SweepError> {
    cfg.validate()?;
    if cfg.gamma <= 0.0 {
        return Err(SweepError::InvalidConfig(
            "steady-state report requires gamma > 0".into(),
        ));
    }
    let es = cfg.eigensystem()?;
    let rho_inf = steady_state(&es, &cfg.state.density_matrix());
    let columns = cfg.measure_columns();
    let (values, oracle_values) = evaluate_measures(&rho_inf, &columns, cfg.oracle_check)?;
    Ok(CorrelationRecord {
        t: f64::INFINITY,
        values,
        oracle_values,
    })
}

/// Largest |closed − oracle| per column over a record set; empty when no
/// oracle columns were produced.
pub fn max_oracle_deltas(cfg: &SweepConfig, records: &[CorrelationRecord]) -> Vec<(Measure, f64)> {
    let columns = cfg.measure_columns();
    let mut deltas = vec![0.0f64; columns.len()];
    let mut any = false;
    for record in records {
        if let Some(oracle) = &record.oracle_values {
            any = true;
            for (i, (v, o)) in record.values.iter().zip(oracle).enumerate() {
                deltas[i] = deltas[i].max((v - o).abs());
            }
        }
    }
    if !any {
        return Vec::new();
    }
    columns
        .iter()
        .map(|(m, _)| *m)
        .zip(deltas)
        .collect()
}

const PRESET_NAMES: [&str; 12] = [
    "fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b",
    "fig6a", "fig6b",
];

/// Sweep configuration reproducing one of the twelve dynamical figures.
/// Defaults: t_max = 30, 600 samples, all four measures, spectral backend.
pub fn figure_preset(name: &str) -> Result<SweepConfig, SweepError> {
    let bell = |mu: f64, b: f64, gamma: f64| -> Result<SweepConfig, SweepError> {
        let (c1, c2, c3) = PRESET_BELL_C;
        Ok(preset_base(
            InitialState::BellDiagonal(BellDiagonalSpec::new(c1, c2, c3)?),
            mu,
            b,
            gamma,
        ))
    };
    let wern = |r: f64, mu: f64, b: f64, gamma: f64| -> Result<SweepConfig, SweepError> {
        Ok(preset_base(
            InitialState::Werner(WernerSpec::new(r)?),
            mu,
            b,
            gamma,
        ))
    };
    match name {
        "fig1a" => bell(1.6, 0.25, 0.1),
        "fig1b" => bell(1.6, 0.55, 0.1),
        "fig2a" => bell(1.1, 0.3, 0.01),
        "fig2b" => bell(2.0, 0.3, 0.01),
        "fig3a" => bell(1.6, 0.6, 0.1),
        "fig3b" => bell(1.6, 0.6, 0.25),
        "fig4a" => wern(0.9, 2.0, 0.6, 0.01),
        "fig4b" => wern(0.9, 2.0, 0.6, 0.1),
        "fig5a" => wern(0.9, 1.0, 2.0, 0.01),
        "fig5b" => wern(0.5, 1.0, 2.0, 0.01),
        "fig6a" => wern(0.9, 2.0, 1.5, 0.01),
        "fig6b" => wern(0.5, 2.0, 1.5, 0.01),
        other => Err(SweepError::UnknownPreset {
            name: other.to_string(),
            valid: PRESET_NAMES.join(", "),
        }),
    }
}

pub fn preset_names() -> &'static [&'static str] {
    &PRESET_NAMES
}

fn preset_base(state: InitialState, mu: f64, field_b: f64, gamma: f64) -> SweepConfig {
    SweepConfig {
        state,
        mu,
        field_b,
        gamma,
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

/// Fixed 17-significant-digit decimal formatting; infinities print as
/// "inf" so the steady-state marker round-trips.
pub fn format_csv_value(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.16e}")
}

/// Write records as CSV: header `t,<measures>[,<measure>_bf...]`, LF line
/// endings, scale factors applied at output only.
pub fn write_csv<W: Write>(
    cfg: &SweepConfig,
    records: &[CorrelationRecord],
    out: &mut W,
) -> io::Result<()> {
    let columns = cfg.measure_columns();
    let mut header = String::from("t");
    for (m, _) in &columns {
        header.push(',');
        header.push_str(m.column_name());
    }
    let has_oracle = records.iter().any(|r| r.oracle_values.is_some());
    if has_oracle {
        for (m, _) in &columns {
            header.push(',');
            header.push_str(m.oracle_column_name());
        }
    }
    out.write_all(header.as_bytes())?;
    out.write_all(b"\n")?;

    for record in records {
        let mut line = format_csv_value(record.t);
        for (value, (_, scale)) in record.values.iter().zip(&columns) {
            line.push(',');
            line.push_str(&format_csv_value(value * scale));
        }
        if has_oracle {
            if let Some(oracle) = &record.oracle_values {
                for (value, (_, scale)) in oracle.iter().zip(&columns) {
                    line.push(',');
                    line.push_str(&format_csv_value(value * scale));
                }
            }
        }
        out.write_all(line.as_bytes())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
