use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use klr_cli::{
    cmd_cyclo, cmd_datum, cmd_gdim, cmd_verify, load_quiver, parse_nu, BackendKind, CliError, Format,
    Outcome, Settings,
};
use klr_core::cyclotomic::DominantWeight;
use klr_core::{Quiver, RootVector};

#[derive(Parser)]
#[command(name = "klr", version, about = "Quiver Hecke algebras via torus-fixed-point localization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Borcherds-Cartan datum of a quiver.
    Datum {
        quiver: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check every defining relation and the localization cross-check.
    Verify(Common),
    /// Compare Poincare series with ranks in the fixed-point model.
    Gdim {
        #[command(flatten)]
        common: Common,
        /// Left color, e.g. `i,j` or `["i","j"]`; all colors when absent.
        #[arg(long)]
        nu_out: Option<String>,
        /// Right color; all colors when absent.
        #[arg(long)]
        nu_in: Option<String>,
    },
    /// Truncated graded dimensions of a cyclotomic quotient.
    Cyclo {
        #[command(flatten)]
        common: Common,
        /// Dominant weight, e.g. `{"i":1}` or `i`.
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Args)]
struct Common {
    quiver: PathBuf,
    /// Root vector, e.g. `{"i":2,"j":1}` or `2i+j`.
    #[arg(long)]
    alpha: String,
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendKind,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Evaluation points for the randomized backend.
    #[arg(long, default_value_t = 3)]
    points: usize,
    /// Extra random inputs for the cross-check.
    #[arg(long, default_value_t = 0)]
    trials: usize,
    /// Input degree bound (verify), window width (gdim) or degree cap (cyclo).
    #[arg(long)]
    max_degree: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl Common {
    fn load(&self) -> Result<(Quiver, RootVector, Settings), CliError> {
        let q = load_quiver(&self.quiver)?;
        let alpha = RootVector::parse(&q, &self.alpha)?;
        let settings = Settings {
            backend: self.backend,
            seed: self.seed,
            points: self.points,
            trials: self.trials,
            max_degree: self.max_degree,
        };
        Ok((q, alpha, settings))
    }
}

fn run(cli: Cli) -> Result<(Outcome, Format), CliError> {
    match cli.command {
        Command::Datum { quiver, format } => Ok((cmd_datum(&load_quiver(&quiver)?), format)),
        Command::Verify(c) => {
            let (q, alpha, s) = c.load()?;
            Ok((cmd_verify(&q, &alpha, &s)?, c.format))
        }
        Command::Gdim { common, nu_out, nu_in } => {
            let (q, alpha, s) = common.load()?;
            let nu_out = nu_out.map(|t| parse_nu(&q, &t)).transpose()?;
            let nu_in = nu_in.map(|t| parse_nu(&q, &t)).transpose()?;
            Ok((cmd_gdim(&q, &alpha, nu_out, nu_in, &s)?, common.format))
        }
        Command::Cyclo { common, lambda } => {
            let (q, alpha, s) = common.load()?;
            let lambda = DominantWeight::parse(&q, &lambda)?;
            Ok((cmd_cyclo(&q, &alpha, &lambda, &s)?, common.format))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((outcome, format)) => {
            print!("{}", outcome.render(format));
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
