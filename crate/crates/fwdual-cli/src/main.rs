//! Command-line driver: run named verification suites and emit reports.
//!
//! Exit status: 0 when every check passes, 1 when any check fails, 2 on
//! configuration or I/O errors.

use clap::{Parser, Subcommand, ValueEnum};
use fwdual::config::RunConfig;
use fwdual::report::Report;
use fwdual::suites::{run_suite, SuiteId};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fwdual",
    about = "Exact verification suites for the Fermi-Bose dual structure of the free FW/Dirac equation"
)]
struct Cli {
    /// Key-value configuration file (mass, tolerances, grid, conventions).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    Fermi,
    Bose,
}

#[derive(Subcommand)]
enum Command {
    /// Run named exact-verification suites.
    Verify {
        /// Suites: clifford, so8, spin, intertwine, poincare, solutions.
        /// An empty selection produces an empty report.
        #[arg(num_args = 0..)]
        suites: Vec<String>,

        /// Restrict the poincare suite to one representation.
        #[arg(long, value_enum)]
        rep: Option<Rep>,
    },
    /// Run the numeric conservation suite.
    Conserve,
    /// Run every suite in dependency order.
    All,
}

fn selection(command: &Command) -> Result<Vec<SuiteId>, String> {
    match command {
        Command::All => Ok(SuiteId::ALL.to_vec()),
        Command::Conserve => Ok(vec![SuiteId::Conserve]),
        Command::Verify { suites, rep } => {
            let mut ids = Vec::new();
            for name in suites {
                match name.as_str() {
                    "clifford" => {
                        ids.push(SuiteId::Clifford);
                        ids.push(SuiteId::Span);
                    }
                    "so8" => ids.push(SuiteId::So8),
                    "spin" => ids.push(SuiteId::Spin),
                    "intertwine" => ids.push(SuiteId::Intertwine),
                    "poincare" => match rep {
                        Some(Rep::Fermi) => ids.push(SuiteId::PoincareFermi),
                        Some(Rep::Bose) => {
                            ids.push(SuiteId::PoincareBoseCartesian);
                            ids.push(SuiteId::PoincareBoseCyclic);
                        }
                        None => {
                            ids.push(SuiteId::PoincareFermi);
                            ids.push(SuiteId::PoincareBoseCartesian);
                            ids.push(SuiteId::PoincareBoseCyclic);
                        }
                    },
                    "solutions" => ids.push(SuiteId::Solutions),
                    other => return Err(format!("unknown suite `{other}`")),
                }
            }
            Ok(ids)
        }
    }
}

fn run() -> Result<i32, String> {
    let cli = Cli::parse();

    let cfg = match &cli.config {
        None => RunConfig::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            RunConfig::parse(&text).map_err(|e| format!("config error: {e}"))?
        }
    };

    let ids = selection(&cli.command)?;
    let suites = ids.into_iter().map(|id| run_suite(id, &cfg)).collect();
    let report = Report::new(cfg.describe(), suites);

    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    match &cli.out {
        None => print!("{rendered}"),
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
    }

    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
