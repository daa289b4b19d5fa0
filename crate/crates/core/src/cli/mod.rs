//! Command-line front end of the `psi-dp` binary.
//!
//! Every command prints an [`OutputEnvelope`] (JSON by default) or, for
//! `roc` and `sweep`, a CSV table. Exit statuses: 0 success, 2 usage error,
//! 3 domain or unsatisfiable request, 4 solver failure.

mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use output::{format_number, Format, OutputEnvelope};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "psi-dp", version, about = "Privacy accounting for the Gaussian mechanism via its sensitivity index psi = Delta/sigma")]
struct Cli {
    /// Output format [default: json; csv for roc and sweep]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Epsilon for a target delta by every conversion, plus GDP, AUC and RDP views
    Convert(ConvertArgs),
    /// Smallest sigma meeting an (epsilon, delta) target
    Calibrate(CalibrateArgs),
    /// Index of the composition of several Gaussian mechanisms
    Compose(ComposeArgs),
    /// Index for groups of k individuals
    Group(GroupArgs),
    /// Asymptotic DP-SGD accountant
    Dpsgd(DpsgdArgs),
    /// Export the ROC curve
    Roc(RocArgs),
    /// Profile vs RDP conversions over a range of psi
    Sweep(SweepArgs),
    /// Monte-Carlo check of the closed forms
    McVerify(McVerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Profile,
    RdpStandard,
    RdpImproved,
    All,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long, allow_negative_numbers = true)]
    psi: f64,
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
}

#[derive(Debug, Args)]
struct CalibrateArgs {
    #[arg(long, allow_negative_numbers = true)]
    sensitivity: f64,
    #[arg(long, allow_negative_numbers = true)]
    epsilon: f64,
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
}

#[derive(Debug, Args)]
struct ComposeArgs {
    /// Repeat once per mechanism
    #[arg(long = "psi", required = true, allow_negative_numbers = true)]
    psis: Vec<f64>,
    /// Also report epsilon of the composition at this delta
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
}

#[derive(Debug, Args)]
struct GroupArgs {
    #[arg(long, allow_negative_numbers = true)]
    psi: f64,
    #[arg(long)]
    k: u64,
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
}

#[derive(Debug, Args)]
struct DpsgdArgs {
    /// Noise multiplier
    #[arg(long, allow_negative_numbers = true)]
    sigma: f64,
    #[arg(long, allow_negative_numbers = true)]
    sampling_rate: f64,
    #[arg(long)]
    steps: u64,
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
}

#[derive(Debug, Args)]
struct RocArgs {
    #[arg(long, allow_negative_numbers = true)]
    psi: f64,
    #[arg(long, default_value_t = crate::tradeoff::DEFAULT_CURVE_POINTS)]
    points: usize,
    /// Add the tangent of slope e^epsilon as a third column
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1e-5, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    psi_min: f64,
    #[arg(long, default_value_t = 6.0, allow_negative_numbers = true)]
    psi_max: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

#[derive(Debug, Args)]
struct McVerifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    psi: f64,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also check the privacy-loss tail at this epsilon
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_DOMAIN
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Convert(a) => commands::convert(a.psi, a.delta, a.method),
        Command::Calibrate(a) => commands::calibrate(a.sensitivity, a.epsilon, a.delta),
        Command::Compose(a) => commands::compose(&a.psis, a.delta),
        Command::Group(a) => commands::group(a.psi, a.k, a.delta),
        Command::Dpsgd(a) => commands::dpsgd(a.sigma, a.sampling_rate, a.steps, a.delta),
        Command::Roc(a) => commands::roc(a.psi, a.points, a.epsilon),
        Command::Sweep(a) => commands::sweep(a.delta, a.psi_min, a.psi_max, a.steps),
        Command::McVerify(a) => commands::mc_verify(a.psi, a.samples, a.seed, a.epsilon),
    };
    match result {
        Ok(out) => {
            let format = cli.format.unwrap_or_else(|| out.default_format());
            match out.write(format, stdout, stderr) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
