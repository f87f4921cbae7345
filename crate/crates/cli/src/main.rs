use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use essnorm_cli::analyze::{load_problem, run_analysis};
use essnorm_cli::args::{Cli, Command};
use essnorm_cli::{curve, exit, verify, CliError};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze(args) => {
            let started = Instant::now();
            let problem = load_problem(&read(&args.config)?)?;
            let analysis = run_analysis(&problem, &args.options(), started)?;
            emit(args.out.as_deref(), &analysis.report.to_toml())?;
            for v in &analysis.violations {
                eprintln!("invariant violation: {v}");
            }
            if analysis.status == exit::INCONCLUSIVE {
                eprintln!("verdict inconclusive: the boundary estimate did not converge");
            }
            Ok(analysis.status)
        }
        Command::Curve(args) => {
            let problem = load_problem(&read(&args.config)?)?;
            let rows = curve::curve_rows(&problem, &args.options())?;
            emit(args.out.as_deref(), &curve::render(&rows))?;
            Ok(exit::OK)
        }
        Command::Verify(args) => {
            let report = verify::verify(&args.options())?;
            emit(args.out.as_deref(), &report.to_toml())?;
            for s in report.suites.iter().filter(|s| !s.pass) {
                eprintln!(
                    "suite {} failed ({} of {}): {}",
                    s.name,
                    s.failures,
                    s.samples,
                    s.first_failure.as_deref().unwrap_or("")
                );
            }
            Ok(if report.pass { exit::OK } else { exit::VIOLATION })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
