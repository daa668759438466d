mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{ConfigError, Format, Overrides};

/// Wave-packet scattering on the modified Ising chain.
#[derive(Parser, Debug)]
#[command(name = "wpscatter", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration, or a JSON `config_echo.json` from an earlier run.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Worker threads for `table`.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Overrides `vqe.seed`.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Overrides `output.format`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Overrides `output.dir`.
    #[arg(long, global = true, value_name = "DIR")]
    output: Option<PathBuf>,
    /// Expand Toffolis into six CNOTs when exporting.
    #[arg(long, global = true)]
    expand_toffoli: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Prepare the scattering state and write it with preparation metrics.
    Prepare,
    /// Evolve the prepared state and write the trajectory.
    Evolve,
    /// Run the (J, g) error sweep and write the report.
    Table,
    /// Write the packet-preparation circuit as OpenQASM.
    Export,
    /// Variational ground state of the configured model.
    Vqe,
}

enum Failure {
    Config(ConfigError),
    Runtime(anyhow::Error),
}

const EXIT_CONFIG: u8 = 1;
const EXIT_RUNTIME: u8 = 2;
const EXIT_PARTIAL: u8 = 3;

fn run(cli: &Cli) -> Result<commands::Outputs, Failure> {
    let path = cli.config.as_ref().ok_or_else(|| {
        Failure::Config(ConfigError {
            path: String::new(),
            line: None,
            message: "--config PATH is required".into(),
        })
    })?;
    if cli.jobs == Some(0) {
        return Err(Failure::Config(ConfigError {
            path: "--jobs".into(),
            line: None,
            message: "must be at least 1".into(),
        }));
    }
    let overrides = Overrides {
        seed: cli.seed,
        format: cli.format,
        output: cli.output.clone(),
        expand_toffoli: cli.expand_toffoli,
    };
    let cfg = config::load(path, &overrides).map_err(Failure::Config)?;
    match cli.command {
        Command::Prepare | Command::Evolve => cfg.require_packets().map_err(Failure::Config)?,
        Command::Table => cfg.require_cells().map_err(Failure::Config)?,
        Command::Export | Command::Vqe => {}
    }
    let out = match cli.command {
        Command::Prepare => commands::prepare(&cfg),
        Command::Evolve => commands::evolve(&cfg),
        Command::Table => commands::table(&cfg, cli.jobs),
        Command::Export => commands::export(&cfg),
        Command::Vqe => commands::vqe(&cfg),
    }
    .map_err(Failure::Runtime)?;
    out.write(&cfg.output.dir).map_err(Failure::Runtime)?;
    for name in out.names() {
        println!("{}", cfg.output.dir.join(name).display());
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) if out.failed_cells > 0 => {
            eprintln!("error: {} sweep cell(s) failed; see the report", out.failed_cells);
            ExitCode::from(EXIT_PARTIAL)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}
