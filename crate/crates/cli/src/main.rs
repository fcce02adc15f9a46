//! `eraser`: batch driver for the delayed-choice eraser simulator.
//!
//! Exit status: 0 on success, 2 on configuration or I/O errors, 3 when a
//! correct evolution yields signaling or a non-isometric map.

mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;
use eraser_core::ScenarioConfig;
use serde::Serialize;

use args::{Cli, Command};
use config::ConfigBuilder;
use error::CliError;
use output::{table, OutputDir};

#[derive(Serialize)]
struct RunManifest {
    command: String,
    config: ScenarioConfig,
    outputs: Vec<String>,
    summary: String,
    warnings: Vec<String>,
    generated_unix_s: u64,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let common = cli.command.common();
    let overrides = common.overrides();
    let builder = || -> Result<ConfigBuilder, CliError> {
        let mut b = ConfigBuilder::new();
        if let Some(path) = &common.config {
            b.load_file(path)?;
        }
        for (k, v) in &overrides {
            b.set(k, v.clone())?;
        }
        Ok(b)
    };

    let mut dir = OutputDir::create(&common.out_dir)?;
    let (outcome, cfg) = match &cli.command {
        Command::Sweep(args) => commands::sweep(args, builder, &mut dir)?,
        other => {
            let cfg = config::resolve(common.config.as_deref(), &overrides)?;
            let outcome = match other {
                Command::Pattern(_) => commands::pattern(&cfg, &mut dir)?,
                Command::AuditUnitarity(_) => commands::audit_unitarity(&cfg, &mut dir)?,
                Command::AuditSignaling(_) => commands::audit_signaling(&cfg, &mut dir)?,
                Command::Sweep(_) => unreachable!(),
            };
            (outcome, cfg)
        }
    };

    let summary = table(&format!("eraser {}", cli.command.name()), &outcome.rows);
    let manifest = RunManifest {
        command: cli.command.name().to_owned(),
        config: cfg,
        outputs: dir.written().iter().map(|p| p.display().to_string()).collect(),
        summary: summary.clone(),
        warnings: outcome.warnings.clone(),
        generated_unix_s: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    };
    dir.write_json("manifest.json", &manifest)?;

    print!("{summary}");
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    match outcome.violation {
        Some(msg) => Err(CliError::Physics(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eraser: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
