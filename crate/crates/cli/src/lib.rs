//! Command-line front end for `ptosc`: parameter sweeps written as CSV or
//! JSON, and the oracle validation suite.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{
    cmd_cardioid, cmd_masses, cmd_probabilities, cmd_validate, render_reports_json, render_reports_text,
    validation_params,
};
use crate::config::{read_config_file, Defaults, Format, OutputTarget, RawOptions, SweepConfig};
pub use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "ptosc", version, about = "Two-state PT-symmetric oscillation sweeps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Survival and transition probabilities over an η × phase grid.
    Probabilities(CommonArgs),
    /// Squared eigenmasses of the PT and Hermitian models.
    Masses(CommonArgs),
    /// Dirac-norm cardioid r(ϑ) and r(ϑ)/r(π).
    Cardioid(CommonArgs),
    /// Run the oracle checks; exits 1 if any fail.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// η as a value, a comma list or min:max:steps.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    /// Phase grid in radians, e.g. 0:2pi:64.
    #[arg(long, allow_hyphen_values = true)]
    pub phase: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<String>,
    /// (m1² - m2²)/(m1² + m2²), default 0.5.
    #[arg(long, allow_hyphen_values = true)]
    pub ratio: Option<String>,
    /// Reference scale m1² + m2², default 1.
    #[arg(long)]
    pub mass_sum: Option<String>,
    /// Comma list of closed_form, trace, hermitian, naive_continuation.
    #[arg(long)]
    pub methods: Option<String>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<String>,
    /// File path, or `stdout`.
    #[arg(long)]
    pub output: Option<String>,
    /// m1sq,m2sq,musq[,p] instead of an η sweep.
    #[arg(long)]
    pub raw_params: Option<String>,
    /// Flat `key = value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Replace every check tolerance.
    #[arg(long)]
    pub tolerance: Option<String>,
    /// Emit the reports as JSON.
    #[arg(long)]
    pub json: bool,
}

impl CommonArgs {
    fn raw(&self) -> Result<RawOptions, CliError> {
        let flags = RawOptions {
            eta: self.eta.clone(),
            phase: self.phase.clone(),
            t0: self.t0.clone(),
            ratio: self.ratio.clone(),
            mass_sum: self.mass_sum.clone(),
            methods: self.methods.clone(),
            format: self.format.clone(),
            output: self.output.clone(),
            raw_params: self.raw_params.clone(),
            tolerance: None,
        };
        match &self.config {
            Some(path) => Ok(flags.or(read_config_file(path)?)),
            None => Ok(flags),
        }
    }
}

const PROBABILITY_DEFAULTS: Defaults = Defaults {
    eta: "0:0.95:20",
    phase: "0:2pi:64",
    methods: "closed_form,hermitian",
};
const MASS_DEFAULTS: Defaults = Defaults {
    eta: "0:2:201",
    ..PROBABILITY_DEFAULTS
};
const CARDIOID_DEFAULTS: Defaults = Defaults {
    eta: "0.1,0.5,0.9",
    phase: "0:2pi:361",
    ..PROBABILITY_DEFAULTS
};

/// Runs a parsed command and returns the rendered output together with
/// where it should go. Validation failures are reported after the output
/// has been produced, so callers get both.
pub fn execute(command: &Command) -> Result<(String, OutputTarget, Option<CliError>), CliError> {
    match command {
        Command::Probabilities(args) => {
            let cfg = SweepConfig::resolve(args.raw()?, PROBABILITY_DEFAULTS)?;
            Ok((cmd_probabilities(&cfg)?.render(cfg.format), cfg.output, None))
        }
        Command::Masses(args) => {
            let cfg = SweepConfig::resolve(args.raw()?, MASS_DEFAULTS)?;
            Ok((cmd_masses(&cfg)?.render(cfg.format), cfg.output, None))
        }
        Command::Cardioid(args) => {
            let cfg = SweepConfig::resolve(args.raw()?, CARDIOID_DEFAULTS)?;
            Ok((cmd_cardioid(&cfg)?.render(cfg.format), cfg.output, None))
        }
        Command::Validate(args) => {
            let mut raw = args.common.raw()?;
            if args.tolerance.is_some() {
                raw.tolerance = args.tolerance.clone();
            }
            let explicit_eta = raw.eta.is_some();
            let cfg = SweepConfig::resolve(raw, PROBABILITY_DEFAULTS)?;
            if let Some(tol) = cfg.tolerance {
                if tol < 0.0 {
                    return Err(CliError::Config(format!("tolerance must be non-negative, got {tol}")));
                }
            }
            let reports = cmd_validate(validation_params(&cfg, explicit_eta)?, cfg.tolerance);
            let text = if args.json || cfg.format == Format::Json {
                render_reports_json(&reports)
            } else {
                render_reports_text(&reports)
            };
            let failed = reports.iter().filter(|r| !r.passed).count();
            let status = (failed > 0).then_some(CliError::ValidationFailed {
                failed,
                total: reports.len(),
            });
            Ok((text, cfg.output, status))
        }
    }
}

/// Runs a command end to end, writing its output. Returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(&cli.command).and_then(|(text, target, status)| {
        write_output(&text, &target)?;
        status.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("ptosc: {e}");
            e.exit_code()
        }
    }
}

fn write_output(text: &str, target: &OutputTarget) -> Result<(), CliError> {
    match target {
        OutputTarget::Stdout => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        OutputTarget::File(path) => std::fs::write(path, text)?,
    }
    Ok(())
}
