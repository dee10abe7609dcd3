use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coulomb_zeros::Kind;
use coulomb_zeros_cli::{
    cmd_abramowitz_table, cmd_eps, cmd_study_min_n, cmd_zeros, CliError, Format, IndexRange,
    Method, Output, RealRange, RunConfig,
};

/// McMahon-type approximations to zeros of Coulomb wave functions.
#[derive(Parser)]
#[command(name = "coulomb-zeros", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate (and optionally refine) the zeros n = A..B.
    Zeros {
        /// F, G, dF or dG.
        #[arg(long)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        /// Inclusive index range such as 1..10.
        #[arg(long, default_value = "1..10")]
        n: IndexRange,
        /// Terms of the expansion, counting ρ₀.
        #[arg(long, default_value_t = coulomb_zeros::DEFAULT_TERMS)]
        terms: usize,
        /// Refine each zero against direct evaluation of the function.
        #[arg(long)]
        refine: bool,
        #[arg(long, value_enum, default_value_t = Method::Mcmahon)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expansion coefficients next to their closed forms.
    Eps {
        #[arg(long)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Smallest n reaching a relative accuracy, over a grid of η (CSV).
    StudyMinN {
        #[arg(long, default_value = "F")]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        /// Inclusive η range such as 0.5..5.
        #[arg(long, allow_hyphen_values = true)]
        eta: RealRange,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = coulomb_zeros::DEFAULT_TERMS)]
        terms: usize,
        #[arg(long, default_value_t = 40)]
        n_cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Second and third zeros of F₀(η, ρ) against Abramowitz's 1948 values.
    AbramowitzTable {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(command: Command) -> Result<(Output, Option<PathBuf>), CliError> {
    Ok(match command {
        Command::Zeros {
            kind,
            lambda,
            eta,
            n,
            terms,
            refine,
            method,
            format,
            out,
        } => {
            let cfg = RunConfig {
                kind,
                lambda,
                eta,
                n_start: n.start,
                n_end: n.end,
                terms,
                refine,
                method,
                format,
                output: out.clone(),
            };
            (cmd_zeros(&cfg)?, out)
        }
        Command::Eps {
            kind,
            lambda,
            eta,
            order,
        } => (cmd_eps(lambda, eta, kind, order)?, None),
        Command::StudyMinN {
            kind,
            lambda,
            eta,
            step,
            tol,
            terms,
            n_cap,
            out,
        } => {
            let grid = eta.grid(step)?;
            (
                cmd_study_min_n(lambda, &grid, kind, tol, terms, n_cap)?,
                out,
            )
        }
        Command::AbramowitzTable { out } => (cmd_abramowitz_table()?, out),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((output, path)) => {
            match path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &output.text) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", output.text),
            }
            for w in &output.warnings {
                eprintln!("flagged: {w}");
            }
            ExitCode::from(output.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
