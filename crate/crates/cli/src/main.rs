use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use milnor_cli::commands::{run_decompose, run_gram, run_motive, run_pairing, MotiveInput};
use milnor_cli::error::CliError;
use milnor_cli::report::Report;
use milnor_cli::verify::run_verify;
use milnor_core::localization::Regime;

#[derive(Parser)]
#[command(
    name = "milnor",
    version,
    about = "Intersection theory and motives of hyperplane sections of Milnor hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// `sampled` switches pairings for n >= 6 to exact evaluation at sample points.
    #[arg(long, global = true, value_enum, default_value_t = RegimeArg::Symbolic)]
    regime: RegimeArg,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite for n = 1..=n-max.
    Verify {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Motivic decomposition for an endomorphism or an étale algebra.
    Motive {
        /// JSON file {"p": prime, "rows": [[int]]}.
        #[arg(long, conflicts_with = "etale", required_unless_present = "etale")]
        matrix: Option<PathBuf>,
        /// `<m>xC<d>`: m copies of the cyclic extension of degree d.
        #[arg(long)]
        etale: Option<String>,
        /// Optional consistency check against the degree of L.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Intersection matrix of the given classes.
    Pairing {
        #[arg(long)]
        n: usize,
        #[arg(required = true)]
        classes: Vec<String>,
    },
    /// Gram matrix of the basis of A(Y).
    Gram {
        #[arg(long)]
        n: usize,
    },
    /// Coordinates of a class in the basis of A(Y).
    Decompose {
        #[arg(long)]
        n: usize,
        class: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Symbolic,
    Sampled,
}

fn echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("milnor {}", args.join(" "))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let regime = match cli.regime {
        RegimeArg::Symbolic => Regime::Symbolic,
        RegimeArg::Sampled => Regime::Sampled,
    };
    match &cli.command {
        Command::Verify { n_max } => run_verify(*n_max, regime, echo()),
        Command::Motive { matrix, etale, n } => {
            let input = match (matrix, etale) {
                (Some(path), None) => MotiveInput::Matrix(path.clone()),
                (None, Some(spec)) => MotiveInput::Etale(spec.clone()),
                _ => {
                    return Err(CliError::Input(
                        "give exactly one of --matrix, --etale".into(),
                    ))
                }
            };
            run_motive(&input, *n, echo())
        }
        Command::Pairing { n, classes } => run_pairing(*n, classes, regime, echo()),
        Command::Gram { n } => run_gram(*n, regime, echo()),
        Command::Decompose { n, class } => run_decompose(*n, class, regime, echo()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Table => print!("{}", report.to_table()),
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
