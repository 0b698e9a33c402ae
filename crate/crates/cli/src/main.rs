use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use superpath::analysis::{theorem1_check, DEFAULT_SINGULAR_TOL};
use superpath::capacity::LowerBoundConfig;
use superpath::experiments::{self, Experiment, ExperimentConfig, ExperimentOutput};
use superpath::{ChannelSpec, Error};

#[derive(Parser)]
#[command(name = "superpath", version, about = "Capacity of channels routed through superposed paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep (fig4, fig5a, fig5b, capacity) or report (asymptotic, theorem1).
    Simulate {
        experiment: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// CSV for sweeps, JSON for reports; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the optimal ensemble of every sweep row to this JSON file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check the singular-value-1 conditions for a link channel.
    #[command(name = "theorem1-check")]
    Theorem1Check {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SINGULAR_TOL)]
        tol: f64,
    },
    /// Lower bounds for n links, superposed and as a single sequence.
    Capacity {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
    },
}

enum Failure {
    Config(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Config(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Numerical(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Config(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Io(e.to_string());
    match path {
        Some(p) => {
            let file = fs::File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => body(&mut io::stdout().lock()).map_err(io_err),
    }
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), Failure> {
    write_to(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(io::Error::other)?;
        writeln!(w)
    })
}

fn simulate(
    experiment: &str,
    config: Option<&Path>,
    out: Option<&Path>,
    witness: Option<&Path>,
) -> Result<(), Failure> {
    let experiment: Experiment = experiment.parse()?;
    let config = match config {
        Some(p) => read_json(p)?,
        None => ExperimentConfig::for_experiment(experiment),
    };
    let out = out.or(config.output_path.as_deref());
    match experiments::run(experiment, &config)? {
        ExperimentOutput::Sweep(rows) => {
            write_to(out, |w| experiments::write_csv(&rows, w))?;
            if let Some(path) = witness {
                write_json(Some(path), &rows)?;
            }
        }
        report => write_json(out, &report)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Simulate {
            experiment,
            config,
            out,
            witness,
        } => simulate(&experiment, config.as_deref(), out.as_deref(), witness.as_deref()),
        Command::Theorem1Check { channel, tol } => {
            if tol.is_nan() || tol <= 0.0 {
                return Err(Failure::Config("tolerance must be positive".into()));
            }
            let spec: ChannelSpec = read_json(&channel)?;
            let report = theorem1_check(&spec.build()?, tol);
            write_json(None, &report)
        }
        Command::Capacity { channel, n, s } => {
            let spec: ChannelSpec = read_json(&channel)?;
            let point = experiments::capacity_point(&spec.build()?, n, s, &LowerBoundConfig::default())?;
            write_json(None, &point)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
