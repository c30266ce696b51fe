//! Command-line front end: file formats, report rendering and the
//! `pqclab` subcommands.

pub mod commands;
pub mod formats;
pub mod report;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use pqclab_core::{Error, Tolerance};
use serde::de::DeserializeOwned;
use serde_json::json;

use commands::Emit;
use formats::{AlgebraFile, ChannelSpecFile, Rho0File, StatesFile, VectorFile};
use report::{CommandEcho, OutputFormat, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for inputs that are well-formed but inconsistent with the command,
    /// 1 for everything that fails to read or validate.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(
                Error::NotUnital
                | Error::NotUnitalAlgebra(_)
                | Error::DimensionMismatch(_)
                | Error::Rho0NotInAlgebra(_),
            ) => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> String {
        match self {
            Self::Parse(_) => "Parse".into(),
            Self::Io(_) => "Io".into(),
            Self::Core(e) => format!("{e:?}")
                .split(|c: char| !c.is_alphanumeric())
                .next()
                .unwrap_or_default()
                .to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pqclab",
    version,
    about = "Private quantum channels and trace vectors"
)]
pub struct Cli {
    /// Absolute tolerance for all numerical checks.
    #[arg(long, global = true, env = "PQCLAB_TOL")]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

/// File arguments accept `-` for standard input.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the private pure states of a unital qubit channel.
    Classify {
        channel: String,
        /// Number of private states to sample.
        #[arg(long)]
        samples: Option<usize>,
        /// Write the samples as CSV instead of inlining them in the report.
        #[arg(long, requires = "samples")]
        out: Option<PathBuf>,
    },
    /// Check whether every state is mapped to rho0.
    CheckPqc {
        channel: String,
        states: String,
        rho0: String,
    },
    /// Construct or check trace vectors of an algebra.
    TraceVectors {
        algebra: String,
        #[arg(long, conflicts_with = "onb")]
        rho0: Option<String>,
        /// Emit an orthonormal basis of trace vectors.
        #[arg(long, conflicts_with = "check")]
        onb: bool,
        /// Report on the given vector instead of constructing one.
        #[arg(long)]
        check: Option<String>,
    },
    /// Emit the trace-preserving conditional expectation onto an algebra.
    Condexp {
        algebra: String,
        #[arg(long, value_enum, default_value_t = Emit::Kraus)]
        emit: Emit,
        /// Append the axiom check.
        #[arg(long)]
        verify: bool,
    },
    /// Two-qubit collective-noise example.
    DemoFrame,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Classify { .. } => "classify",
            Self::CheckPqc { .. } => "check-pqc",
            Self::TraceVectors { .. } => "trace-vectors",
            Self::Condexp { .. } => "condexp",
            Self::DemoFrame => "demo-frame",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }
}

fn load<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))
}

fn execute(command: &Command, tol: Tolerance) -> Result<serde_json::Value, CliError> {
    match command {
        Command::Classify {
            channel,
            samples,
            out,
        } => {
            let ch = load::<ChannelSpecFile>(channel)?.build(tol)?;
            commands::classify(&ch, *samples, out.as_deref(), tol)
        }
        Command::CheckPqc {
            channel,
            states,
            rho0,
        } => {
            let ch = load::<ChannelSpecFile>(channel)?.build(tol)?;
            let states = load::<StatesFile>(states)?.build()?;
            let rho0 = load::<Rho0File>(rho0)?.build(tol)?;
            commands::check_pqc(ch, states, rho0, tol)
        }
        Command::TraceVectors {
            algebra,
            rho0,
            onb,
            check,
        } => {
            let alg = load::<AlgebraFile>(algebra)?.build(tol)?;
            let rho0 = rho0
                .as_deref()
                .map(|p| load::<Rho0File>(p)?.build(tol))
                .transpose()?;
            let check = check
                .as_deref()
                .map(|p| formats::vector_from_json(&load::<VectorFile>(p)?.vector))
                .transpose()?;
            commands::trace_vectors(&alg, rho0, *onb, check, tol)
        }
        Command::Condexp {
            algebra,
            emit,
            verify,
        } => {
            let alg = load::<AlgebraFile>(algebra)?.build(tol)?;
            commands::condexp(&alg, *emit, *verify, tol)
        }
        Command::DemoFrame => commands::demo_frame(tol),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    exit_code: 1,
                }
            } else {
                Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    exit_code: 0,
                }
            };
        }
    };
    let echo = CommandEcho {
        name: cli.command.name().into(),
        args: args
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
    };
    let tol_value = cli.tol.unwrap_or(pqclab_core::matrix::DEFAULT_ATOL);
    let outcome = Tolerance::new(tol_value)
        .map_err(CliError::from)
        .and_then(|tol| execute(&cli.command, tol));
    let (result, exit_code, stderr) = match outcome {
        Ok(result) => (result, 0, String::new()),
        Err(e) => {
            let code = e.exit_code();
            let result = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            (result, code, format!("pqclab: {e}\n"))
        }
    };
    let report = RunReport {
        command: echo,
        tolerance: tol_value,
        result,
        exit_code,
    };
    Outcome {
        stdout: report.render(cli.format),
        stderr,
        exit_code,
    }
}
