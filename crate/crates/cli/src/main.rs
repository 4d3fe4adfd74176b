//! `logdiff`: freeness checks, tangency tests and decompositions of
//! differential operators tangent to a hyperplane arrangement.
//!
//! Exit status: 0 on success, 1 when the answer is negative (not free, not
//! tangent, a failed check), 2 on usage, input or parse errors.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use logdiff::parse::VarStyle;

use commands::{DecomposeArgs, Lemma, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

/// Text to print plus whether the answer was positive.
pub struct Report {
    ok: bool,
    text: String,
}

impl Report {
    fn pass(text: String) -> Self {
        Report { ok: true, text }
    }

    fn fail(text: String) -> Self {
        Report { ok: false, text }
    }
}

#[derive(Parser)]
#[command(name = "logdiff", version, about = "Differential operators tangent to hyperplane arrangements")]
struct Cli {
    /// Print variables as x, y, z instead of x1, x2, x3 (at most three variables).
    #[arg(long, global = true)]
    alias: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a candidate basis of tangent derivations with Saito's criterion.
    CheckFree {
        /// Arrangement file, or builtin:NAME.
        #[arg(long)]
        arrangement: String,
        /// JSON file with a list of derivations; defaults to the arrangement's own.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Write a tangent operator in terms of words in a basis of tangent derivations.
    Decompose {
        #[arg(long)]
        arrangement: String,
        #[arg(long)]
        basis: Option<PathBuf>,
        /// The operator, e.g. "x1^2*d1^2".
        #[arg(long)]
        op: String,
        #[arg(long)]
        json: bool,
        /// Truncation of the tangency pre-check (default: the order of the operator).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        tmax: Option<u32>,
        /// Skip the tangency pre-check and rely on exact division alone.
        #[arg(long)]
        no_precheck: bool,
    },
    /// Test u*a^t in a^t*Diff(S) for every hyperplane a and t = 1..tmax.
    Tangent {
        #[arg(long)]
        arrangement: String,
        #[arg(long)]
        op: String,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        tmax: u32,
    },
    /// Randomized exact checks of the underlying identities.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        /// Dimension (default 2, or the arrangement's).
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use this arrangement's basis (jacobian-power) or tangent operators (divisibility).
        #[arg(long)]
        arrangement: Option<String>,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let style = if cli.alias { VarStyle::Alias } else { VarStyle::Indexed };
    match cli.command {
        Command::CheckFree { arrangement, basis } => commands::check_free(&arrangement, basis.as_deref(), style),
        Command::Decompose { arrangement, basis, op, json, tmax, no_precheck } => commands::decompose(DecomposeArgs {
            arrangement: &arrangement,
            basis: basis.as_deref(),
            op: &op,
            json,
            t_max: tmax,
            no_precheck,
            style,
        }),
        Command::Tangent { arrangement, op, tmax } => commands::tangent(&arrangement, &op, tmax, style),
        Command::Verify { lemma, l, p, trials, seed, arrangement } => commands::verify(VerifyArgs {
            lemma,
            l,
            p,
            trials,
            seed,
            arrangement: arrangement.as_deref(),
            style,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(r) => {
            print!("{}", r.text);
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
