use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hvc_cli::{CliError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "hvc", version, about = "Hypervolume-contribution estimator experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write benchmark solution sets under <out>/sets.
    Gen(Common),
    /// Run every configured method on every set; writes results.csv and values.csv.
    Run(Common),
    /// Score estimates against the exact engine; writes metrics.csv.
    Eval(Common),
    /// Time each method over whole suites; writes bench.csv.
    Bench(Common),
    /// Write per-axis tables and a summary under <out>/report.
    Report(Common),
    /// Print the effective configuration as JSON.
    Config(Common),
}

#[derive(Args)]
struct Common {
    /// Experiment configuration (JSON). Defaults to the desk-scale grid.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Start from the full-size grid instead of the desk-scale one.
    #[arg(long, conflicts_with = "config")]
    paper_scale: bool,
}

impl Common {
    fn resolve(&self) -> hvc_cli::Result<ExperimentConfig> {
        let mut config = match (&self.config, self.paper_scale) {
            (Some(path), _) => ExperimentConfig::load(path)?,
            (None, true) => ExperimentConfig::paper_scale(),
            (None, false) => ExperimentConfig::desk(),
        };
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(out) = &self.out {
            config.output_dir = out.clone();
        }
        config.validate()?;
        Ok(config)
    }
}

fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Gen(c) => {
            let config = c.resolve()?;
            let n = hvc_cli::gen(&config)?;
            eprintln!("wrote {n} solution sets under {}", config.output_dir.join("sets").display());
        }
        Command::Run(c) => {
            let config = c.resolve()?;
            let n = hvc_cli::run(&config)?;
            eprintln!("wrote {n} result rows to {}", config.output_dir.display());
        }
        Command::Eval(c) => {
            let config = c.resolve()?;
            let rows = hvc_cli::eval(&config)?;
            eprintln!("wrote {} metric rows", rows.len());
        }
        Command::Bench(c) => {
            let config = c.resolve()?;
            let rows = hvc_cli::bench(&config)?;
            eprintln!("wrote {} bench rows", rows.len());
        }
        Command::Report(c) => {
            let config = c.resolve()?;
            for path in hvc_cli::report(&config)? {
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Config(c) => print!("{}", c.resolve()?.to_json()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
