//! Scan CSV format.
//!
//! ```text
//! # model=jc
//! # r=5.0000000000000000e-1
//! # ...
//! row,col,r,theta,gamma0,lambda,tau,tau_qsl,ratio,tight_norm,quad_error,status
//! 0,0,5.0000000000000000e-1,...
//! ```
//!
//! Every float is printed with 17 significant digits. Failed points keep
//! their row with `NaN` numerics and the error message in `status`.

use std::io::{self, Write};

use super::config::{format_float, Model};
use super::{ScanOutput, ScanRecord};
use crate::error::{QslError, Result};

const QSL_COLUMNS: [&str; 4] = ["tau_qsl", "ratio", "tight_norm", "quad_error"];
const DEPHASING_COLUMNS: [&str; 5] = [
    "gamma_tau",
    "gamma_rate_tau",
    "min_gamma_rate",
    "sign_at_tau",
    "sign_min",
];

/// Column names for a model, in output order.
pub fn columns(model: Model) -> Vec<String> {
    let mut cols = vec!["row".to_string(), "col".to_string()];
    cols.extend(model.params().iter().map(|p| p.as_str().to_string()));
    cols.extend(QSL_COLUMNS.iter().map(|s| s.to_string()));
    if model == Model::Dephasing {
        cols.extend(DEPHASING_COLUMNS.iter().map(|s| s.to_string()));
    }
    cols.push("status".into());
    cols
}

fn sanitize(msg: &str) -> String {
    msg.replace([',', '\n', '\r'], ";")
}

fn record_fields(model: Model, rec: &ScanRecord) -> Vec<String> {
    let nan = || format_float(f64::NAN);
    let mut fields = vec![rec.row.to_string(), rec.col.to_string()];
    fields.extend(model.params().iter().map(|p| format_float(rec.param(*p))));
    let mut errors = Vec::new();
    match &rec.result {
        Ok(r) => fields.extend([
            format_float(r.tau_qsl),
            format_float(r.ratio),
            r.tight_norm.to_string(),
            format_float(r.quad_error),
        ]),
        Err(e) => {
            fields.extend([nan(), nan(), "none".into(), nan()]);
            errors.push(e.clone());
        }
    }
    if model == Model::Dephasing {
        match &rec.dephasing {
            Some(Ok(d)) => fields.extend([
                format_float(d.gamma_tau),
                format_float(d.gamma_rate_tau),
                format_float(d.min_gamma_rate),
                d.sign_at_tau.to_string(),
                d.sign_min.to_string(),
            ]),
            Some(Err(e)) => {
                fields.extend([nan(), nan(), nan(), "none".into(), "none".into()]);
                errors.push(e.clone());
            }
            None => fields.extend([nan(), nan(), nan(), "none".into(), "none".into()]),
        }
    }
    let status = if errors.is_empty() {
        "ok".to_string()
    } else {
        format!("error: {}", sanitize(&errors.join("; ")))
    };
    fields.push(status);
    fields
}

pub fn write_csv<W: Write>(output: &ScanOutput, mut w: W) -> io::Result<()> {
    for (k, v) in output.config.to_pairs() {
        writeln!(w, "# {k}={v}")?;
    }
    let model = output.config.model;
    writeln!(w, "{}", columns(model).join(","))?;
    for rec in &output.records {
        writeln!(w, "{}", record_fields(model, rec).join(","))?;
    }
    Ok(())
}

pub fn to_csv_string(output: &ScanOutput) -> String {
    let mut buf = Vec::new();
    write_csv(output, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// A parsed scan CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub config: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Vec::new();
        let mut columns = None;
        let mut rows = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if let Some(rest) = line.strip_prefix('#') {
                let (k, v) = rest
                    .trim()
                    .split_once('=')
                    .ok_or_else(|| QslError::Config(format!("line {}: header is not key=value", n + 1)))?;
                config.push((k.to_string(), v.to_string()));
            } else if columns.is_none() {
                columns = Some(line.split(',').map(str::to_string).collect::<Vec<_>>());
            } else {
                let fields: Vec<String> = line.split(',').map(str::to_string).collect();
                let width = columns.as_ref().map_or(0, Vec::len);
                if fields.len() != width {
                    return Err(QslError::Config(format!(
                        "line {}: expected {width} fields, found {}",
                        n + 1,
                        fields.len()
                    )));
                }
                rows.push(fields);
            }
        }
        let columns = columns.ok_or_else(|| QslError::Config("missing column row".into()))?;
        Ok(Self { config, columns, rows })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of a numeric column.
    pub fn column_f64(&self, name: &str) -> Result<Vec<f64>> {
        let idx = self
            .column_index(name)
            .ok_or_else(|| QslError::Config(format!("no column `{name}`")))?;
        self.rows
            .iter()
            .map(|r| {
                r[idx]
                    .parse::<f64>()
                    .map_err(|_| QslError::Config(format!("`{}` in column {name} is not a number", r[idx])))
            })
            .collect()
    }

    pub fn column_str(&self, name: &str) -> Option<Vec<&str>> {
        let idx = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[idx].as_str()).collect())
    }
}
