mod commands;
mod suite;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kobstruct::obstruct::Mode;

/// K-theory of tensor and free products, and splitting obstructions for
/// the quotient map `A *_C B -> A (x) B`.
#[derive(Parser, Debug)]
#[command(name = "kobstruct", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Which quotient map to compute sections for.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,

    /// Run a single paper-examples item.
    #[arg(long, global = true)]
    only: Option<String>,

    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the invariant or K-pair of an expression.
    Kgroups { expr: String },
    /// Run the classifier on two algebras.
    Classify { a: String, b: String },
    /// Look for right inverses of the induced maps (default mode: unital).
    Section { a: String, b: String },
    /// Replay the built-in example suite.
    PaperExamples,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Unital,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Unital => Mode::Unital,
            ModeArg::Full => Mode::Full,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let mode = cli.mode.map(Mode::from);
    let mut out = match &cli.command {
        Command::Kgroups { expr } => commands::kgroups(expr),
        Command::Classify { a, b } => commands::classify(a, b, mode),
        Command::Section { a, b } => commands::section(a, b, mode.unwrap_or(Mode::Unital)),
        Command::PaperExamples => suite::run(cli.only.as_deref()),
    };
    if cli.timing {
        out.set_timing(start.elapsed());
    }
    out.print(cli.format);
    ExitCode::from(out.exit)
}
