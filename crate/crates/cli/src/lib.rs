//! `qedlife` command line: hydrogen matrix elements, `Im Z` and lifetimes, and the
//! resonance toy-model simulations.

// `!(x > 0.0)` is the NaN-rejecting form of a range check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qedlife::Error;

mod hydrogen;
mod linewidth;
mod simulate;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "qedlife",
    version,
    about = "Exact hydrogen decay rates and resonance toy-model checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound-state energies E_n = -1/(4 n^2).
    Energies {
        #[arg(long)]
        n_max: u32,
    },
    /// Radial function R_{n,l} in closed form, optionally evaluated.
    Radial {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        /// Radii (units of a0/2) at which to evaluate R_{n,l}.
        #[arg(long, value_delimiter = ',')]
        eval: Vec<f64>,
    },
    /// Dipole matrix element <to| r_axis |from>.
    Dipole {
        /// Source orbital `n,l,m`.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        /// Target orbital `n,l,m`.
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        axis: String,
        /// Exact radicals (the default).
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        /// Floating-point value only.
        #[arg(long)]
        float: bool,
    },
    /// Decay operator Im Z on level n.
    Imz {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Kappa::One)]
        kappa: Kappa,
        #[arg(long, value_enum, default_value_t = Form::Position)]
        form: Form,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Exact)]
        format: MatrixFormat,
    },
    /// Im Z eigenvalues and SI lifetimes on level n.
    Lifetimes {
        #[arg(long)]
        n: u32,
        /// key=value file with alpha, m_kg, c_mps, hbar_Js.
        #[arg(long)]
        constants: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Kappa::One)]
        kappa: Kappa,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Toy-model simulations.
    Simulate {
        #[command(subcommand)]
        what: Simulation,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kappa {
    One,
    Quartic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    Position,
    Momentum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixFormat {
    Exact,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Model config (key=value); built-in default model when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the CSV table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Simulation {
    /// Survival amplitude of the first target state.
    Survival {
        #[command(flatten)]
        model: ModelArgs,
        /// Last sample time; default 1/(g^2 Im Z).
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Second-sheet resonance pole with its Newton trace.
    Pole {
        #[command(flatten)]
        model: ModelArgs,
        /// Scan these couplings instead of the config's g.
        #[arg(long, value_delimiter = ',')]
        g_list: Vec<f64>,
    },
    /// |A(tau/g^2)| against exp(-tau Im Gamma) along a coupling sequence.
    Corollary {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        tau: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        g_list: Vec<f64>,
    },
    /// Feshbach resolvent identity on seeded random models.
    FeshbachCheck {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        models: usize,
        #[arg(long, default_value_t = 50)]
        max_dim: usize,
    },
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidArgument(_)
            | Error::InvalidQuantumNumbers { .. }
            | Error::Config { .. } => EXIT_USAGE,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_NUMERICAL,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: err.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write_file(path: &Path, text: &str) -> CmdResult {
    std::fs::write(path, text).map_err(|e| Failure::io(path, e))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Energies { n_max } => hydrogen::energies(out, n_max),
        Command::Radial { n, l, eval } => hydrogen::radial(out, n, l, &eval),
        Command::Dipole {
            from,
            to,
            axis,
            exact: _,
            float,
        } => hydrogen::dipole(out, &from, &to, &axis, float),
        Command::Imz {
            n,
            kappa,
            form,
            format,
        } => linewidth::imz(out, err, n, kappa, form, format),
        Command::Lifetimes {
            n,
            constants,
            kappa,
            format,
        } => linewidth::lifetimes(out, n, constants.as_deref(), kappa, format),
        Command::Simulate { what } => simulate::run(out, what),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
