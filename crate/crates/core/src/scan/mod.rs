//! Parameter sweeps over either model, CSV output, and oracle verification
//! runs.
//!
//! Grid points are independent and are evaluated on a worker pool; records
//! are always emitted in row-major grid order so output is reproducible
//! byte for byte.

pub mod config;
pub mod csv;
pub mod verify;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dephasing::{self, OhmicSpectrum, Sign};
use crate::error::{QslError, Result};
use crate::jc::{self, LorentzianSpectrum};
use crate::qsl::QslResult;
use crate::quadrature::QuadratureSettings;
use crate::reservoir::SqueezedEnvironment;

pub use config::{Axis, Bounds, Model, Param, Preset, ScanConfig, Spacing};

/// Dephasing-only quantities recorded alongside the speed limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DephasingExtras {
    pub gamma_tau: f64,
    pub gamma_rate_tau: f64,
    pub min_gamma_rate: f64,
    pub sign_at_tau: Sign,
    pub sign_min: Sign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub row: usize,
    pub col: usize,
    /// Every model parameter for this point, keyed by name.
    pub params: BTreeMap<Param, f64>,
    pub result: std::result::Result<QslResult, String>,
    pub dephasing: Option<std::result::Result<DephasingExtras, String>>,
}

impl ScanRecord {
    pub fn param(&self, p: Param) -> f64 {
        self.params[&p]
    }

    pub fn ratio(&self) -> Option<f64> {
        self.result.as_ref().ok().map(|r| r.ratio)
    }

    pub fn is_ok(&self) -> bool {
        self.result.is_ok() && self.dephasing.as_ref().is_none_or(|d| d.is_ok())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOutput {
    pub config: ScanConfig,
    pub n_rows: usize,
    pub n_cols: usize,
    pub records: Vec<ScanRecord>,
}

impl ScanOutput {
    pub fn get(&self, row: usize, col: usize) -> &ScanRecord {
        &self.records[row * self.n_cols + col]
    }

    /// Ratio grid, `NaN` where a point failed.
    pub fn ratio_grid(&self) -> Vec<Vec<f64>> {
        (0..self.n_rows)
            .map(|i| {
                (0..self.n_cols)
                    .map(|j| self.get(i, j).ratio().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    }
}

fn point_params(
    config: &ScanConfig,
    row: Option<f64>,
    col: Option<f64>,
) -> BTreeMap<Param, f64> {
    let mut params = config.fixed.clone();
    if let (Some(axis), Some(v)) = (&config.rows, row) {
        params.insert(axis.param, v);
    }
    if let (Some(axis), Some(v)) = (&config.cols, col) {
        params.insert(axis.param, v);
    }
    params
}

/// Speed limit for one fully specified JC point.
pub fn point_jc(params: &BTreeMap<Param, f64>, settings: &QuadratureSettings) -> Result<QslResult> {
    let env = SqueezedEnvironment::new(params[&Param::R], params[&Param::Theta])?;
    let spec = LorentzianSpectrum::new(params[&Param::Gamma0], params[&Param::Lambda])?;
    jc::qsl_jc_with(params[&Param::Tau], &env, &spec, settings)
}

fn dephasing_inputs(params: &BTreeMap<Param, f64>) -> Result<(SqueezedEnvironment, OhmicSpectrum, f64)> {
    let env = SqueezedEnvironment::new(params[&Param::R], params[&Param::Theta])?;
    let spec = OhmicSpectrum::with_cutoff(params[&Param::Eta], params[&Param::S], params[&Param::OmegaC])?;
    Ok((env, spec, params[&Param::Tau]))
}

/// Speed limit for one fully specified dephasing point.
pub fn point_dephasing(params: &BTreeMap<Param, f64>, settings: &QuadratureSettings) -> Result<QslResult> {
    let (env, spec, tau) = dephasing_inputs(params)?;
    dephasing::qsl_dephasing_with(tau, &env, &spec, settings)
}

fn dephasing_extras(params: &BTreeMap<Param, f64>) -> Result<DephasingExtras> {
    let (env, spec, tau) = dephasing_inputs(params)?;
    let traj = dephasing::trajectory(tau, &env, &spec)?;
    let min_gamma_rate = dephasing::min_rate(tau, &env, &spec)?;
    Ok(DephasingExtras {
        gamma_tau: traj.gamma,
        gamma_rate_tau: traj.gamma_rate,
        min_gamma_rate,
        sign_at_tau: Sign::classify(traj.gamma_rate),
        sign_min: Sign::classify(min_gamma_rate),
    })
}

fn evaluate(config: &ScanConfig, row: usize, col: usize, rv: Option<f64>, cv: Option<f64>) -> ScanRecord {
    let params = point_params(config, rv, cv);
    let (result, dephasing) = match config.model {
        Model::Jc => (point_jc(&params, &config.quadrature), None),
        Model::Dephasing => (
            point_dephasing(&params, &config.quadrature),
            Some(dephasing_extras(&params).map_err(|e| e.to_string())),
        ),
    };
    ScanRecord {
        row,
        col,
        params,
        result: result.map_err(|e| e.to_string()),
        dephasing,
    }
}

/// Evaluates the whole grid on rayon's global pool.
pub fn run_scan(config: &ScanConfig) -> Result<ScanOutput> {
    config.validate()?;
    let rows = config.row_values();
    let cols = config.col_values();
    let points: Vec<(usize, usize, Option<f64>, Option<f64>)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, &rv)| cols.iter().enumerate().map(move |(j, &cv)| (i, j, rv, cv)))
        .collect();
    let records = points
        .par_iter()
        .map(|&(i, j, rv, cv)| evaluate(config, i, j, rv, cv))
        .collect();
    Ok(ScanOutput {
        config: config.clone(),
        n_rows: rows.len(),
        n_cols: cols.len(),
        records,
    })
}

/// As [`run_scan`], on a dedicated pool of `threads` workers.
pub fn run_scan_with_threads(config: &ScanConfig, threads: usize) -> Result<ScanOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| QslError::Config(format!("cannot build thread pool: {e}")))?;
    pool.install(|| run_scan(config))
}
