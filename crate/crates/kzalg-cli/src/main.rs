mod args;
mod commands;
mod config;
mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command};
use report::{Format, Report};

/// Default output directory when `--output` is absent.
const OUT_DIR_VAR: &str = "KZALG_OUT_DIR";

fn run(cli: &Cli) -> Result<Report> {
    if cli.common.self_test {
        return Ok(selftest::run(&cli.command));
    }
    match &cli.command {
        Command::Roots(a) => commands::roots(a),
        Command::Clans(a) => commands::clans(a),
        Command::Spirals(a) => commands::spirals(a),
        Command::Orbits(a) => commands::orbits(a),
        Command::Partypes(a) => commands::partypes(a),
        Command::KlrCheck(a) => commands::klr_check(a),
        Command::HeckeCheck(a) => commands::hecke_check(a),
        Command::Monodromy(a) => commands::monodromy(a),
    }
}

fn destination(cli: &Cli, format: Format) -> Option<PathBuf> {
    if let Some(p) = &cli.common.output {
        return Some(p.clone());
    }
    let dir = std::env::var_os(OUT_DIR_VAR)?;
    let suffix = if cli.common.self_test { "-self-test" } else { "" };
    Some(PathBuf::from(dir).join(format!("{}{suffix}.{}", cli.command.name(), format.extension())))
}

fn main() -> ExitCode {
    let argv = match config::expand_args(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let format = cli.common.format;
    let text = report.render(format);
    let written = match destination(&cli, format) {
        Some(path) => write_file(&path, &text).map(|_| eprintln!("wrote {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
