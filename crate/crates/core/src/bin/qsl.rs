use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use squeezed_qsl::scan::config::{parse_config_json, parse_override};
use squeezed_qsl::scan::csv::write_csv;
use squeezed_qsl::scan::verify::{run_verify, Suite};
use squeezed_qsl::scan::{self, Model, Param, Preset, ScanConfig};
use squeezed_qsl::{QslError, QuadratureSettings};

#[derive(Parser)]
#[command(name = "qsl", version, about = "Quantum speed limits under a squeezed reservoir")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a parameter grid and write a CSV.
    Scan {
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        preset: Option<Preset>,
        /// Flat JSON object of config keys.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override a config key, e.g. `--set r=0.7`. Repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Points per swept axis.
        #[arg(long)]
        grid: Option<usize>,
        /// Output path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run an oracle suite and print a JSON report.
    Verify { suite: Suite },
    /// Speed limit at a single parameter point, as JSON.
    Point {
        #[arg(long)]
        model: Model,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        gamma0: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        omega_c: f64,
        #[arg(long)]
        tau: f64,
    },
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

fn scan_config(
    preset: Option<Preset>,
    config: Option<PathBuf>,
    overrides: &[String],
    grid: Option<usize>,
) -> AnyResult<ScanConfig> {
    let mut map = match (preset, config) {
        (Some(p), _) => p.pairs(),
        (None, Some(path)) => parse_config_json(&fs::read_to_string(&path)?)?,
        (None, None) => return Err(QslError::Config("need --preset or --config".into()).into()),
    };
    if let Some(n) = grid {
        map.insert("row_count".into(), n.to_string());
        map.insert("col_count".into(), n.to_string());
    }
    for o in overrides {
        let (k, v) = parse_override(o)?;
        map.insert(k, v);
    }
    Ok(ScanConfig::from_map(&map)?)
}

fn run(cli: Cli) -> AnyResult<bool> {
    match cli.command {
        Command::Scan {
            preset,
            config,
            overrides,
            grid,
            out,
            threads,
        } => {
            let cfg = scan_config(preset, config, &overrides, grid)?;
            let output = match threads {
                Some(n) => scan::run_scan_with_threads(&cfg, n)?,
                None => scan::run_scan(&cfg)?,
            };
            match out {
                Some(path) => write_csv(&output, io::BufWriter::new(fs::File::create(path)?))?,
                None => write_csv(&output, io::stdout().lock())?,
            }
            let failed = output.records.iter().filter(|r| !r.is_ok()).count();
            if failed > 0 {
                eprintln!("{failed} of {} points failed; see the status column", output.records.len());
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            let report = run_verify(suite)?;
            let mut stdout = io::stdout().lock();
            serde_json::to_writer_pretty(&mut stdout, &report)?;
            writeln!(stdout)?;
            Ok(report.pass)
        }
        Command::Point {
            model,
            r,
            theta,
            gamma0,
            lambda,
            eta,
            s,
            omega_c,
            tau,
        } => {
            let mut params = BTreeMap::from([(Param::R, r), (Param::Theta, theta), (Param::Tau, tau)]);
            let optional = [
                (Param::Gamma0, gamma0),
                (Param::Lambda, lambda),
                (Param::Eta, eta),
                (Param::S, s),
                (Param::OmegaC, Some(omega_c)),
            ];
            for (p, v) in optional {
                if !model.params().contains(&p) {
                    continue;
                }
                let v = v.ok_or_else(|| QslError::Config(format!("--{} is required for this model", p.as_str())))?;
                params.insert(p, v);
            }
            let settings = QuadratureSettings::default();
            let result = match model {
                Model::Jc => scan::point_jc(&params, &settings)?,
                Model::Dephasing => scan::point_dephasing(&params, &settings)?,
            };
            writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&result)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
