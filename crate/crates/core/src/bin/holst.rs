use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use torsion_spectral::cli::{
    cmd_decompose, cmd_heat_fit, cmd_holst, cmd_verify, exit_code, CommandOutput, OutputFormat,
    RunConfig, Suite, VerifyOptions,
};
use torsion_spectral::Result;

#[derive(Parser)]
#[command(
    name = "holst",
    version,
    about = "Torsion decomposition, identity suites, Holst action and heat-trace fits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a torsion tensor {"n", "A"} into its V, T, S (and S+, S-) parts
    Decompose {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run identity suites and print a JSON report
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_tolerance: bool,
    },
    /// Fit heat-trace coefficients for constant torsion
    HeatFit {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Holst action of the configured torsion field
    Holst {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(path: &Path) -> Result<RunConfig> {
    RunConfig::from_json(&std::fs::read_to_string(path)?)
}

fn emit(output: &CommandOutput, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, &output.text)?,
        None => print!("{}", output.text),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    let (output, out) = match cli.command {
        Command::Decompose { input, out } => {
            (cmd_decompose(&std::fs::read_to_string(input)?)?, out)
        }
        Command::Verify {
            suite,
            seed,
            count,
            out,
            corrupt_tolerance,
        } => {
            let opts = VerifyOptions {
                suite,
                seed,
                count,
                corrupt_tolerance,
            };
            let (report, output) = cmd_verify(&opts)?;
            for check in report.checks.iter().filter(|c| !c.pass) {
                eprintln!(
                    "FAIL {}: residual {:e} > tolerance {:e}",
                    check.id, check.max_residual, check.tolerance
                );
            }
            (output, out)
        }
        Command::HeatFit {
            config,
            out,
            format,
        } => {
            let cfg = load_config(&config)?;
            let out = out.or(cfg.out.clone());
            (cmd_heat_fit(&cfg, format)?, out)
        }
        Command::Holst { config, out } => {
            let cfg = load_config(&config)?;
            let out = out.or(cfg.out.clone());
            (cmd_holst(&cfg)?, out)
        }
    };
    emit(&output, out.as_deref())?;
    Ok(output.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
