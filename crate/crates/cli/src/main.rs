use std::fs;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qaffect::affect::DEFAULT_THRESHOLD;
use qaffect::session::{
    parse_script_json, CollapseMode, HandMap, SessionConfig, DEFAULT_COLLAPSE_THRESHOLD,
    DEFAULT_OMEGA,
};
use qaffect_cli::commands::{self, Table};
use qaffect_cli::server::{self, ServeOptions};

#[derive(Parser)]
#[command(
    name = "qaffect",
    version,
    about = "Affective qubit model: states, circuits, networks and steering sessions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bloch point, psychological readout and labels for a pair of angles.
    Bloch {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
        /// Angles are in degrees rather than radians.
        #[arg(long)]
        degrees: bool,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
    },
    /// Circuit operations.
    Circuit {
        #[command(subcommand)]
        action: CircuitAction,
    },
    /// Print a truth table regenerated by running its circuit.
    Table {
        which: TableArg,
        #[arg(long)]
        json: bool,
    },
    /// Transition network operations.
    Network {
        #[command(subcommand)]
        action: NetworkAction,
    },
    /// Predicted trajectory CSV for a waypoint script.
    Predict {
        script: PathBuf,
        /// Sampling interval in seconds; overrides the script's own.
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Angular deviation between a model and a human trajectory CSV.
    Compare { model: PathBuf, human: PathBuf },
    /// Start the WebSocket steering service.
    Serve {
        #[arg(long, env = "QAFFECT_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[command(flatten)]
        session: SessionArgs,
        /// Waypoint script whose prediction finished sessions are scored against.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Directory of browser assets to serve at `/`.
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
    /// Re-run a newline-delimited log of client messages and print the trajectory CSV.
    Replay {
        log: PathBuf,
        #[command(flatten)]
        session: SessionArgs,
    },
}

#[derive(Subcommand)]
enum CircuitAction {
    /// Run a circuit JSON file on a basis input.
    Run {
        file: PathBuf,
        /// Input ket label such as `00` or `|01⟩`; defaults to all zeros.
        #[arg(long)]
        input: Option<String>,
        /// Sample this many measurements instead of printing amplitudes.
        #[arg(long)]
        shots: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum NetworkAction {
    /// Report nodes where doing nothing leaves a metric stuck above a threshold.
    Check {
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        file: Option<PathBuf>,
        /// One of the bundled networks: appraisal, freeze, duplicate.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value = "dissatisfaction")]
        metric: String,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        threshold: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Traits,
    Satisfaction,
    Hri,
}

#[derive(clap::Args)]
struct SessionArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Angular speed per unit deflection, rad/s.
    #[arg(long, default_value_t = DEFAULT_OMEGA)]
    omega: f64,
    /// Accumulated |rotation| that triggers a collapse, rad.
    #[arg(long, default_value_t = DEFAULT_COLLAPSE_THRESHOLD)]
    collapse_threshold: f64,
    #[arg(long, value_enum, default_value = "normal")]
    hand_map: HandArg,
    #[arg(long, value_enum, default_value = "born")]
    collapse_mode: ModeArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum HandArg {
    Normal,
    Swapped,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Born,
    Forced,
}

impl SessionArgs {
    fn config(&self) -> Result<SessionConfig> {
        let config = SessionConfig {
            omega: self.omega,
            collapse_threshold: self.collapse_threshold,
            seed: self.seed,
            hand_map: match self.hand_map {
                HandArg::Normal => HandMap::Normal,
                HandArg::Swapped => HandMap::Swapped,
            },
            collapse_mode: match self.collapse_mode {
                ModeArg::Born => CollapseMode::Born,
                ModeArg::Forced => CollapseMode::Forced,
            },
        };
        config.validate()?;
        Ok(config)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    let out = match cli.command {
        Command::Bloch {
            theta,
            phi,
            degrees,
            threshold,
        } => commands::bloch(theta, phi, degrees, threshold)?,
        Command::Circuit {
            action:
                CircuitAction::Run {
                    file,
                    input,
                    shots,
                    seed,
                },
        } => commands::circuit_run(&read(&file)?, input.as_deref(), shots, seed)?,
        Command::Table { which, json } => {
            let which = match which {
                TableArg::Traits => Table::Traits,
                TableArg::Satisfaction => Table::Satisfaction,
                TableArg::Hri => Table::Hri,
            };
            commands::table(which, json)?
        }
        Command::Network {
            action:
                NetworkAction::Check {
                    file,
                    builtin,
                    metric,
                    threshold,
                },
        } => {
            let text = file.as_deref().map(read).transpose()?;
            let network = commands::load_network(text.as_deref(), builtin.as_deref())?;
            commands::network_check(&network, &metric, threshold)?
        }
        Command::Predict { script, dt } => commands::predict(&read(&script)?, dt)?,
        Command::Compare { model, human } => commands::compare(&read(&model)?, &read(&human)?)?,
        Command::Replay { log, session } => {
            let (csv, collapses) = commands::replay(&read(&log)?, session.config()?)?;
            for (t, outcome) in collapses {
                eprintln!("collapse at t = {t}: |{outcome}⟩");
            }
            csv
        }
        Command::Serve {
            port,
            host,
            session,
            model,
            static_dir,
        } => {
            let model = match model {
                Some(path) => Some(parse_script_json(&read(&path)?)?.predict(None)?),
                None => None,
            };
            let opts = ServeOptions {
                config: session.config()?,
                model,
                static_dir,
            };
            return serve(SocketAddr::new(host, port), opts);
        }
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.as_bytes())?;
    stdout.flush()?;
    Ok(())
}

fn serve(addr: SocketAddr, opts: ServeOptions) -> Result<()> {
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        let (local, server) = server::bind(addr, opts)
            .await
            .with_context(|| format!("binding {addr}"))?;
        eprintln!("listening on ws://{local}/ws");
        tokio::select! {
            r = server => r?,
            _ = tokio::signal::ctrl_c() => eprintln!("shutting down"),
        }
        Ok(())
    })
}

fn main() -> ExitCode {
    // Usage errors exit with 2 inside `parse`.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
