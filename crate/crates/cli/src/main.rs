use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cocycle_cli::{run, CliError, Overrides};

#[derive(Parser)]
#[command(name = "cocycle", version, about = "Cocycle spaces, harmonic cocycles and affine actions from JSON specs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a task: z1, har, project, irreducible, commutant, vndim, exists, wreath, selftest.
    Run {
        task: String,
        /// Spec file, or `-` for stdin. Optional for `selftest`.
        spec: Option<String>,
        #[arg(long)]
        tol_rank: Option<f64>,
        #[arg(long)]
        tol_res: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Include bases (Z¹, B¹, Har, commutant) in the report.
        #[arg(long)]
        emit_bases: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read_spec(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{path}: {e}")))
    }
}

fn main() -> ExitCode {
    let Command::Run { task, spec, tol_rank, tol_res, seed, trials, emit_bases, output } = Cli::parse().command;
    let overrides = Overrides { tol_rank, tol_res, seed, trials, emit_bases };
    let result = (|| {
        let text = spec.as_deref().map(read_spec).transpose()?;
        let report = run(&task, text.as_deref(), &overrides)?;
        let rendered = report.render();
        match &output {
            Some(p) => std::fs::write(p, rendered)?,
            None => print!("{rendered}"),
        }
        if report.passed {
            Ok(())
        } else {
            let passed = report.json["passed"].as_u64().unwrap_or(0) as usize;
            Err(CliError::SuiteFailed(passed))
        }
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
