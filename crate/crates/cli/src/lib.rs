//! The `entangle` command-line tool.
//!
//! Exit codes: 0 when the analysis completed (and, for `algebra`, closure
//! holds), 1 on a verification failure, 2 on any input error.

pub mod commands;
pub mod input;
pub mod report;
pub mod surd;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use entangle_core::criteria::{DEFAULT_DET_TOL, DEFAULT_MAXIMAL_TOL};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    #[value(alias = "json")]
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "entangle",
    version,
    about = "Entanglement analysis of bipartite pure states"
)]
pub struct Cli {
    /// Tolerance for determinant rules and Schmidt rank.
    #[arg(long, global = true, default_value_t = DEFAULT_DET_TOL)]
    pub tol: f64,
    /// Max-norm tolerance on rho_A - I/d for the maximality check.
    #[arg(long, global = true, default_value_t = DEFAULT_MAXIMAL_TOL)]
    pub max_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Rescale non-normalized input instead of rejecting it.
    #[arg(long, global = true)]
    pub normalize: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
pub struct InputArgs {
    /// State document (JSON); `-` reads stdin.
    #[arg(group = "source")]
    pub file: Option<PathBuf>,
    /// Comma-separated real amplitudes, e.g. "1,0,0,1".
    #[arg(long, allow_hyphen_values = true, group = "source")]
    pub amps: Option<String>,
    /// cos(theta)|00> + sin(theta)|11>; accepts forms like pi/6.
    #[arg(long, allow_hyphen_values = true, group = "source")]
    pub theta: Option<String>,
    /// Four real Bell-basis coefficients.
    #[arg(long, allow_hyphen_values = true, group = "source")]
    pub bell: Option<String>,
    /// Dimensions for --amps, e.g. 2x3.
    #[arg(long, requires = "amps")]
    pub dims: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Bell,
    Qutrit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Su2,
    Su3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Degree,
    Agreement,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the determinant rule, the Schmidt-rank oracle and the maximality check.
    Classify(InputArgs),
    /// Schmidt coefficients, rank and reconstruction residual.
    Schmidt(InputArgs),
    /// A Bell or qutrit basis state and its coefficient matrix.
    Basis {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        index: usize,
    },
    /// Rescale a basis family to generators and verify closure.
    Algebra {
        #[arg(long, value_enum)]
        group: GroupArg,
    },
    /// Seeded ensemble scan.
    Scan {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Degree)]
        mode: ModeArg,
    },
}

/// Parses `args`, runs the command and writes its report to `out`.
/// Diagnostics go to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.output.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT
        }
    }
}

pub fn run() -> u8 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
