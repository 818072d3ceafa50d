mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::Value;

use commands::Command;
use config::Settings;
use output::Manifest;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sofic_pressure::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use sofic_pressure::Error as E;
        match self {
            CliError::Core(E::NonConvergence { .. } | E::VerificationFailed(_)) => 3,
            _ => 2,
        }
    }
}

/// Equilibrium and Gibbs computations for the Ising model on free-group
/// Cayley trees, with permutation-model simulations.
///
/// Each run writes one CSV per result table plus manifest.json into --out.
#[derive(Debug, Parser)]
#[command(name = "sofic-pressure", version)]
struct Cli {
    command: Command,
    /// TOML file of `flag-name = value` pairs; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let command = cli.command.name();

    let mut settings = cli.settings.clone();
    let outcome = (|| {
        if let Some(path) = &cli.config {
            settings = cli.settings.clone().over(Settings::from_file(path)?);
        }
        let out = settings.out.get_or_insert_with(|| PathBuf::from(".")).clone();
        std::fs::create_dir_all(&out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
        if let Some(threads) = settings.threads {
            if threads == 0 {
                return Err(CliError::Invalid("--threads must be at least 1".into()));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        let result = commands::run(cli.command, &mut settings)?;
        let mut written = Vec::new();
        for table in &result.tables {
            table.write(&out)?;
            written.push(table.file.clone());
        }
        Ok((result, written))
    })();

    let (code, failure, outputs, results) = match outcome {
        Ok((r, written)) => {
            let code = if r.failure.is_some() { 3 } else { 0 };
            (code, r.failure, written, r.results)
        }
        Err(e) => (e.exit_code(), Some(e.to_string()), Vec::new(), Value::Null),
    };
    if let Some(reason) = &failure {
        eprintln!("sofic-pressure {command}: {reason}");
    }

    let dir = settings.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let manifest = Manifest {
        schema_version: output::SCHEMA_VERSION,
        command: &command,
        status: if code == 0 { "ok" } else { "failed" },
        exit_code: code as i32,
        failure_reason: failure,
        library_version: sofic_pressure::VERSION,
        seed: settings.seed,
        wall_time_seconds: started.elapsed().as_secs_f64(),
        config: &settings,
        outputs,
        results,
    };
    if let Err(e) = manifest.write(&dir) {
        eprintln!("sofic-pressure {command}: could not write manifest: {e}");
        return ExitCode::from(code.max(2));
    }
    ExitCode::from(code)
}
