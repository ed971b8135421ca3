use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverpot::commands::{run_text, Command, RunOptions};
use quiverpot::zoo::FitMode;

/// Exact computations for quiver algebras with potentials.
///
/// Every option can also be set through a `QUIVERPOT_*` environment
/// variable. Exit status: 0 when every verdict is affirmative, 1 for a
/// negative verdict, 2 for an error.
#[derive(Parser, Debug)]
#[command(name = "quiverpot", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "QUIVERPOT_FORMAT")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Derive deformation data from a potential with lower-degree terms.
    Derive(Input),
    /// Evaluate the PBW conditions for a deformation.
    CheckPbw(Input),
    /// Reconstruct the lower-degree potential from a deformation.
    Reconstruct(Input),
    /// Truncated Calabi-Yau checks for the homogeneous algebra.
    CheckCy(Input),
    /// Graded dimensions of the homogeneous algebra.
    Hilbert(Input),
    /// Search for a potential whose derivatives give the relations.
    FitPotential(Input),
    /// Print a document for a catalogued example.
    Zoo {
        /// Instance `family[:params]`, e.g. `two-vertex:3,2`.
        name: String,
        /// Attach a documented deformation of the instance.
        #[arg(long, env = "QUIVERPOT_DEFORMATION")]
        deformation: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Input document, or `-` for standard input.
    #[arg(default_value = "-")]
    input: PathBuf,
    /// Truncation degree.
    #[arg(long, env = "QUIVERPOT_DEGREE")]
    degree: Option<usize>,
    /// Extra generator length for the dimension oracle in check-pbw.
    #[arg(long, env = "QUIVERPOT_SLACK")]
    slack: Option<usize>,
    /// Seed for generic-rank sampling.
    #[arg(long, default_value_t = 0, env = "QUIVERPOT_SEED")]
    seed: u64,
    /// Constraint used by fit-potential.
    #[arg(long, value_enum, default_value_t = Mode::PerLine, env = "QUIVERPOT_MODE")]
    mode: Mode,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    PerLine,
    WholeSpan,
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, input) = match cli.command {
        Cmd::Derive(i) => (Command::Derive, Some(i)),
        Cmd::CheckPbw(i) => (Command::CheckPbw, Some(i)),
        Cmd::Reconstruct(i) => (Command::Reconstruct, Some(i)),
        Cmd::CheckCy(i) => (Command::CheckCy, Some(i)),
        Cmd::Hilbert(i) => (Command::Hilbert, Some(i)),
        Cmd::FitPotential(i) => (Command::FitPotential, Some(i)),
        Cmd::Zoo { name, deformation } => {
            let options = RunOptions {
                zoo: Some(name),
                deformation,
                ..RunOptions::default()
            };
            return emit(run_text(Command::Zoo, None, &options), cli.format);
        }
    };
    let input = input.expect("document commands carry input");
    let text = match read_input(&input.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("quiverpot: cannot read {}: {e}", input.input.display());
            return ExitCode::from(2);
        }
    };
    let options = RunOptions {
        degree: input.degree,
        slack: input.slack,
        seed: input.seed,
        mode: match input.mode {
            Mode::PerLine => FitMode::PerGeneratorLine,
            Mode::WholeSpan => FitMode::WholeSpan,
        },
        ..RunOptions::default()
    };
    emit(run_text(command, Some(&text), &options), cli.format)
}

fn emit(report: quiverpot::commands::Report, format: Format) -> ExitCode {
    let out = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    print!("{out}");
    ExitCode::from(report.exit_code() as u8)
}
