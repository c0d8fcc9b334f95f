use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sgkit::commands::{run_command, Command, CommandError};
use sgkit::document::{read_input, InputDocument};
use sgkit::fixtures;

#[derive(Parser)]
#[command(name = "sgkit", version, about = "Legendrian invariants on open-book pages and support-genus bounds")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// TOML input document.
    #[arg(long, global = true, conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Use a bundled fixture instead of a file (see `--list-fixtures`).
    #[arg(long, global = true)]
    fixture: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Also write the machine-readable result (JSON) to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Thurston-Bennequin invariant of every curve.
    Tb,
    /// Rotation number of the distinguished curve of every Stein problem.
    Rot,
    /// Smith normal form of every matrix, Seifert matrix and boundary map.
    Snf,
    /// Heegaard Floer bookkeeping for every HF module.
    Hf,
    /// Support-genus intervals with derivations.
    SgBounds,
    /// Check the bundled fixtures against the published values.
    VerifyPaper,
    /// Print the names of the bundled fixtures.
    ListFixtures,
    /// Print a bundled fixture's TOML source.
    ShowFixture { name: String },
}

fn document(cli: &Cli) -> Result<InputDocument, CommandError> {
    match (&cli.input, &cli.fixture) {
        (Some(path), _) => Ok(read_input(path)?),
        (None, Some(name)) => Ok(fixtures::load(name)?),
        (None, None) => Ok(InputDocument::default()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match &cli.command {
        Cmd::Tb => Command::Tb,
        Cmd::Rot => Command::Rot,
        Cmd::Snf => Command::Snf,
        Cmd::Hf => Command::Hf,
        Cmd::SgBounds => Command::SgBounds,
        Cmd::VerifyPaper => Command::VerifyPaper,
        Cmd::ListFixtures => {
            for name in fixtures::names() {
                println!("{name}");
            }
            return ExitCode::SUCCESS;
        }
        Cmd::ShowFixture { name } => {
            return match fixtures::source(name) {
                Some(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                None => {
                    eprintln!("error: no bundled fixture `{name}`");
                    ExitCode::from(2)
                }
            };
        }
    };
    let report = match document(&cli).and_then(|doc| run_command(command, &doc)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let json = serde_json::to_string_pretty(&report.machine).expect("JSON values serialize");
    match cli.format {
        Format::Human => print!("{}", report.human),
        Format::Machine => println!("{json}"),
    }
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
