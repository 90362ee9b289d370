//! `larmor`: scenario runner for the relativistic Larmor clock.
//!
//! Exit codes: 0 success, 2 config error, 3 solver error, 4 validation failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use larmor_clock::scenario::record::write_csv;
use larmor_clock::scenario::{
    run_point, run_sweep, run_validation, ScenarioConfig, ScenarioError, SiDisplay, Spacing,
    SweepAxis, SweepSpec, ValidationSettings,
};

#[derive(Parser)]
#[command(
    name = "larmor",
    version,
    about = "Relativistic Larmor-clock tunneling times (natural units)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one record; JSON to stdout, or CSV with --csv.
    Run {
        config: PathBuf,
        /// Write a one-row CSV here instead of JSON to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also print times in seconds for a rest energy of this many MeV.
        #[arg(long, value_name = "MASS_MEV")]
        si: Option<f64>,
    },
    /// One-parameter sweep as CSV.
    Sweep {
        config: PathBuf,
        /// E, d, U0, V or n_segments.
        #[arg(long)]
        axis: String,
        #[arg(long, allow_hyphen_values = true)]
        start: f64,
        #[arg(long, allow_hyphen_values = true)]
        stop: f64,
        #[arg(long)]
        count: usize,
        /// Logarithmic spacing.
        #[arg(long)]
        log: bool,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite.
    Validate {
        /// Machine-readable report.
        #[arg(long)]
        json: bool,
        /// Replace every numerical tolerance (negative control).
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read_config(path: &Path) -> Result<ScenarioConfig, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let config = ScenarioConfig::from_json(&text)?;
    config.validate()?;
    Ok(config)
}

fn io_error(path: &str, e: io::Error) -> ScenarioError {
    ScenarioError::Io {
        path: path.to_string(),
        message: e.to_string(),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, ScenarioError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| io_error(&p.display().to_string(), e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(command: Command) -> Result<ExitCode, ScenarioError> {
    match command {
        Command::Run { config, csv, si } => {
            let si = si.map(SiDisplay::new).transpose()?;
            let record = run_point(&read_config(&config)?)?;
            match csv {
                Some(path) => {
                    let out = open_output(Some(&path))?;
                    write_csv(out, std::slice::from_ref(&record))
                        .map_err(|e| io_error(&path.display().to_string(), e))?;
                }
                None => println!("{}", record.to_json()),
            }
            if let Some(si) = si {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&si.convert(&record)).expect("json")
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            config,
            axis,
            start,
            stop,
            count,
            log,
            out,
        } => {
            let spec = SweepSpec {
                axis: axis.parse::<SweepAxis>()?,
                start,
                stop,
                count,
                spacing: if log { Spacing::Log } else { Spacing::Linear },
            };
            let records = run_sweep(&read_config(&config)?, &spec)?;
            let writer = open_output(out.as_deref())?;
            write_csv(writer, &records).map_err(|e| io_error("output", e))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate {
            json,
            tolerance,
            seed,
        } => {
            let mut settings = ValidationSettings {
                tolerance_override: tolerance,
                ..Default::default()
            };
            if let Some(seed) = seed {
                settings.seed = seed;
            }
            let report = run_validation(&settings);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("larmor: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
