mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use env_logger::Env;

use commands::{run, Failure};
use config::{CommandName, RunConfig};

const EXIT_CONFIG: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "orbit-codes", version, about = "Orbit codes, their distance structure and multishot assemblies")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe an extension field and list the powers of its primitive element.
    Field(RunConfig),
    /// Count (and optionally list) the k-dimensional subspaces.
    Grassmannian(RunConfig),
    /// Generate the orbit code of a subspace under a group.
    Orbit(RunConfig),
    /// The spread code of the subfield of dimension r.
    Spread(RunConfig),
    /// Orbit code of a block layout under the unipotent group of a rank-metric code.
    AbelianConstruct(RunConfig),
    /// Split an orbit code into subcodes over the cosets of a subgroup.
    Partition(RunConfig),
    /// Minimum distance by the reduced coset search.
    FastMindist(RunConfig),
    /// Voronoi region of a codeword inside the Grassmannian.
    Voronoi(RunConfig),
    /// Alphabet partition tree and assembled multishot code.
    Multishot(RunConfig),
    /// Run every acceptance check and print a pass/fail table.
    ReproducePaper(RunConfig),
    /// Execute a JSON run configuration.
    Run(RunFile),
}

#[derive(Args)]
struct RunFile {
    /// JSON file with a `command` key and the options of that command.
    config: PathBuf,
}

fn load(path: &PathBuf) -> Result<RunConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(anyhow::anyhow!("{}: {e}", path.display())))?;
    let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| Failure::Config(anyhow::anyhow!("{}: {e}", path.display())))?;
    if cfg.command.is_none() {
        return Err(Failure::Config(anyhow::anyhow!("{}: missing \"command\"", path.display())));
    }
    Ok(cfg)
}

fn with(mut cfg: RunConfig, name: CommandName) -> RunConfig {
    cfg.command = Some(name);
    cfg
}

fn resolve(cmd: Cmd) -> Result<RunConfig, Failure> {
    use CommandName as C;
    Ok(match cmd {
        Cmd::Field(c) => with(c, C::Field),
        Cmd::Grassmannian(c) => with(c, C::Grassmannian),
        Cmd::Orbit(c) => with(c, C::Orbit),
        Cmd::Spread(c) => with(c, C::Spread),
        Cmd::AbelianConstruct(c) => with(c, C::AbelianConstruct),
        Cmd::Partition(c) => with(c, C::Partition),
        Cmd::FastMindist(c) => with(c, C::FastMindist),
        Cmd::Voronoi(c) => with(c, C::Voronoi),
        Cmd::Multishot(c) => with(c, C::Multishot),
        Cmd::ReproducePaper(c) => with(c, C::ReproducePaper),
        Cmd::Run(f) => load(&f.config)?,
    })
}

fn emit(cfg: &RunConfig, text: &str) -> std::io::Result<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(Env::default().filter_or("ORBIT_CODES_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = resolve(cli.command).and_then(|cfg| run(&cfg).map(|o| (cfg, o)));
    match result {
        Ok((cfg, outcome)) => {
            if let Err(e) = emit(&cfg, &outcome.report.render()) {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
            match outcome.failure {
                Some(msg) => {
                    eprintln!("verification failed: {msg}");
                    ExitCode::from(EXIT_VERIFY)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
