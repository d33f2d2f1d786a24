use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use glhwv::invariants::fundamental_invariants;
use glhwv::nilcone::ScanMethod;
use glhwv::report::{dispatch, Command, RunConfig};
use glhwv::semiinv::{basic, Family};
use glhwv::{Error, RingContext, Weight};

const USAGE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "glhwv", version, about = "Highest weight vectors for the adjoint action of GL_n on polynomials")]
struct Cli {
    /// Field characteristic (a prime); rationals if omitted.
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    /// Degree cap for generation checks.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the fundamental invariants s_1..s_n, one per line.
    Invariants {
        #[arg(long)]
        n: usize,
    },
    /// Build or verify semi-invariants.
    #[command(subcommand)]
    Hwv(HwvCmd),
    /// Evaluate v_{t,I} at A_{σ(J)}.
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Complete σ(J) at random (seeded).
        #[arg(long)]
        randomized: bool,
    },
    /// Check that the u_{t,I} or v_{t,I} form a module basis.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "u")]
        family: Family,
    },
    /// Jacobian minor certificate for algebraic independence.
    Jacobian {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// The GL_3 checks.
    Gl3 {
        /// Largest l1 + l2 for the module bases.
        #[arg(long, default_value_t = 6)]
        cap: u32,
    },
    /// Quotient dimensions for multiples of λᵗ.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value = "auto")]
        method: ScanMethod,
    },
    /// Apply E_λ to tuples of invariants and test generation.
    Question {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(long)]
        tuple_cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum HwvCmd {
    /// Build u_{t,I} or v_{t,I}.
    Build {
        #[command(flatten)]
        spec: BuildArgs,
        /// Print only the polynomial.
        #[arg(long)]
        text: bool,
    },
    /// Check that the polynomial in a file is a highest weight vector of weight λ.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Weight,
        /// Matrix size; defaults to the length of λ.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, value_delimiter = ',')]
    set: Vec<usize>,
    #[arg(long, default_value = "u")]
    family: Family,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE_ERROR)
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidArgument(_) | Error::IndexOutOfRange { .. } | Error::DimensionMismatch { .. } | Error::Parse { .. } | Error::ContextMismatch
    )
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), ExitCode> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            // A closed pipe downstream is not an error of the run.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let command = match cli.command {
        Cmd::Invariants { n } => {
            let ch = glhwv::Characteristic::from_option(cli.characteristic).map_err(usage)?;
            let ctx = RingContext::with(n, ch, Vec::<String>::new()).map_err(usage)?;
            let lines: Vec<String> = fundamental_invariants(&ctx).iter().map(ToString::to_string).collect();
            emit(&cli.out, &lines.join("\n"))?;
            return Ok(ExitCode::SUCCESS);
        }
        Cmd::Hwv(HwvCmd::Build { spec, text: true }) => {
            let ch = glhwv::Characteristic::from_option(cli.characteristic).map_err(usage)?;
            let ctx = RingContext::with(spec.n, ch, Vec::<String>::new()).map_err(usage)?;
            let c = basic(&ctx, spec.family, spec.t, &spec.set).map_err(usage)?;
            emit(&cli.out, &c.poly.to_string())?;
            return Ok(ExitCode::SUCCESS);
        }
        Cmd::Hwv(HwvCmd::Build { spec, text: false }) => Command::HwvBuild { n: spec.n, t: spec.t, set: spec.set, family: spec.family },
        Cmd::Hwv(HwvCmd::Verify { file, lambda, n }) => {
            let polynomial = std::fs::read_to_string(&file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
            Command::HwvVerify { n: n.unwrap_or(lambda.n()), polynomial: polynomial.trim().to_string(), lambda }
        }
        Cmd::Delta { n, t, randomized } => Command::Delta { n, t, randomized },
        Cmd::Basis { n, t, family } => Command::Basis { n, t, family },
        Cmd::Jacobian { n, t } => Command::Jacobian { n, t },
        Cmd::Gl3 { cap } => Command::Gl3 { cap },
        Cmd::Scan { n, t, r, method } => Command::Scan { n, t, r, method },
        Cmd::Question { n, lambda, tuple_cap } => Command::Question { n, lambda, tuple_cap },
    };
    let config = RunConfig { command, characteristic: cli.characteristic, max_degree: cli.max_degree, seed: cli.seed };
    config.validate().map_err(usage)?;
    let report = match dispatch(&config) {
        Ok(r) => r,
        Err(e) if is_usage(&e) => return Err(usage(e)),
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    emit(&cli.out, &report.to_json())?;
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
