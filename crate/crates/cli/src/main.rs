use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relsmooth::{exit_code, run, Options, Report};
use relsmooth_core::Budget;

#[derive(Parser)]
#[command(name = "relsmooth", version, about = "Smoothness and relative homological dimensions of algebra maps")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script.
    Run {
        script: PathBuf,
        #[command(flatten)]
        opts: Common,
    },
    /// Gröbner basis of a ring such as `Q[x,y] / (x^2 - y)`.
    Gb {
        ring: String,
        #[command(flatten)]
        opts: Common,
    },
    /// Normal form of a polynomial modulo the relations of a ring.
    Nf {
        ring: String,
        poly: String,
        #[command(flatten)]
        opts: Common,
    },
    /// Krull dimension of a ring.
    Dim {
        ring: String,
        #[command(flatten)]
        opts: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Critical pairs allowed per Gröbner basis.
    #[arg(long, env = "RELSMOOTH_BUDGET_MAX_PAIRS", default_value_t = Budget::default().max_pairs)]
    max_pairs: usize,
    /// Largest degree allowed in a Gröbner basis computation.
    #[arg(long, env = "RELSMOOTH_BUDGET_MAX_DEGREE", default_value_t = Budget::default().max_degree)]
    max_degree: u64,
    /// Resolution length cutoff when a command gives none.
    #[arg(long, env = "RELSMOOTH_BUDGET_CUTOFF", default_value_t = 6)]
    cutoff: usize,
    /// Seed for random module sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock time per result.
    #[arg(long)]
    timing: bool,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            budget: Budget { max_pairs: self.max_pairs, max_degree: self.max_degree },
            cutoff: self.cutoff,
            seed: self.seed,
            timing: self.timing,
        }
    }
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Json => print!("{}", report.to_json_string()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(exit_code(report) as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, opts) = match &cli.command {
        Cmd::Run { script, opts } => match std::fs::read_to_string(script) {
            Ok(t) => (t, opts),
            Err(e) => {
                eprintln!("relsmooth: cannot read {}: {e}", script.display());
                return ExitCode::from(2);
            }
        },
        Cmd::Gb { ring, opts } => (format!("ring R = {ring}\ncompute gb R\n"), opts),
        Cmd::Nf { ring, poly, opts } => (format!("ring R = {ring}\ncompute nf {poly} in R\n"), opts),
        Cmd::Dim { ring, opts } => (format!("ring R = {ring}\ncompute dim R\n"), opts),
    };
    match run(&text, &opts.options()) {
        Ok(report) => emit(&report, opts.format),
        Err(e) => {
            eprintln!("relsmooth: parse error at {e}");
            ExitCode::from(2)
        }
    }
}
