use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gqg::{run, CliError, SessionConfig, Task};

#[derive(Parser)]
#[command(name = "gqg", version, about = "Exact computations for generalized quantum groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a session config and write a JSON report.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Run only this task instead of the config's task list.
        #[arg(long, value_enum)]
        task: Option<Task>,
        /// Defaults to gqg-<config hash>.json in the working directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn execute(config: PathBuf, task: Option<Task>, out: Option<PathBuf>) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(&config).map_err(|e| CliError::Config(format!("{}: {e}", config.display())))?;
    let cfg = SessionConfig::from_json(&text)?;
    let outcome = run(&cfg, task)?;
    let mut report = outcome.report;
    report["generated_at"] = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true).into();
    let path = out.unwrap_or_else(|| PathBuf::from(format!("gqg-{}.json", cfg.hash())));
    let body = serde_json::to_string_pretty(&report).expect("report serializes");
    std::fs::write(&path, body + "\n").map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    eprintln!("report written to {}", path.display());
    Ok(outcome.failures)
}

fn main() -> ExitCode {
    let Command::Run { config, task, out } = Cli::parse().command;
    match execute(config, task, out) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            for f in &failures {
                eprintln!("internal consistency failure: {f}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
