//! Command-line front end: `run`, `calc` and `serve`.

use std::net::{IpAddr, Ipv4Addr};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use spraybot::calc::{calculate, CalcKind, Calculation};
use spraybot::export::write_mission_artifacts;
use spraybot::grid::DEFAULT_CELL_SIZE;
use spraybot::sim::{SimOptions, Simulator, DEFAULT_DT};
use spraybot::{FieldGrid, MissionReport, MissionScript, RobotConfig};

#[derive(Debug, Parser)]
#[command(name = "spraybot", version, about = "Sprayer/mower robot simulator and teleoperation station")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a mission script and write report, telemetry and coverage files.
    Run(RunArgs),
    /// Evaluate a closed-form design calculation.
    Calc(CalcArgs),
    /// Serve a live session over the network.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WorldArgs {
    /// Robot configuration (TOML). Defaults to the prototype.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Field size in metres, `WxH`.
    #[arg(long, default_value = "10x10")]
    pub field: String,
    /// Grid cell size, metres.
    #[arg(long, default_value_t = DEFAULT_CELL_SIZE)]
    pub cell: f64,
    /// Simulation time step, seconds.
    #[arg(long, default_value_t = DEFAULT_DT)]
    pub dt: f64,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Mission script.
    #[arg(long)]
    pub script: PathBuf,
    #[command(flatten)]
    pub world: WorldArgs,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CalcArgs {
    /// backup | charge | workspace | cone | mower | pitch | panel
    pub kind: String,
    #[arg(allow_negative_numbers = true)]
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    #[command(flatten)]
    pub world: WorldArgs,
    /// HTTP/websocket port; the raw serial link listens on port+1 and the
    /// raw directive channel on port+2.
    #[arg(long, env = "SPRAYBOT_PORT", default_value_t = 7878)]
    pub port: u16,
    /// Simulated seconds per wall-clock second.
    #[arg(long, default_value_t = 1.0)]
    pub pace: f64,
    /// Address to listen on.
    #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
    pub bind: IpAddr,
}

/// Failure with the process exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad or unreadable input: exit 2.
    #[error("{0}")]
    Input(String),
    /// Failure while producing output: exit 1.
    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => 2,
            Self::Output(_) => 1,
        }
    }
}

pub fn parse_field(spec: &str) -> Result<(f64, f64), String> {
    let (w, h) = spec
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("field must be WxH in metres (got `{spec}`)"))?;
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad field dimension `{s}`"))
    };
    Ok((num(w)?, num(h)?))
}

impl WorldArgs {
    pub fn load(&self) -> Result<(RobotConfig, FieldGrid, SimOptions), CliError> {
        let cfg = match &self.config {
            Some(p) => RobotConfig::load(p).map_err(|e| CliError::Input(e.to_string()))?,
            None => RobotConfig::prototype(),
        };
        let (w, h) = parse_field(&self.field).map_err(CliError::Input)?;
        let grid = FieldGrid::new(w, h, self.cell).map_err(|e| CliError::Input(e.to_string()))?;
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(CliError::Input(format!("dt must be positive (got {})", self.dt)));
        }
        let opts = SimOptions {
            dt: self.dt,
            ..SimOptions::default()
        };
        Ok((cfg, grid, opts))
    }
}

fn read_script(path: &Path) -> Result<MissionScript, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read script {}: {e}", path.display())))?;
    MissionScript::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Validates everything, runs the mission, then writes the artifact set.
pub fn run_mission(args: &RunArgs) -> Result<MissionReport, CliError> {
    let script = read_script(&args.script)?;
    let (cfg, grid, opts) = args.world.load()?;
    script
        .validate_for(&cfg, opts.dt)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.script.display())))?;
    let mut sim = Simulator::new(cfg, grid, opts).map_err(|e| CliError::Input(e.to_string()))?;
    let mut frames = Vec::new();
    let report = sim
        .run(&script, |f| frames.push(f.clone()))
        .map_err(|e| CliError::Input(e.to_string()))?;
    write_mission_artifacts(&args.out, &report, &frames, sim.grid())
        .map_err(|e| CliError::Output(format!("writing {}: {e}", args.out.display())))?;
    Ok(report)
}

pub fn run_calc(args: &CalcArgs) -> Result<Calculation, CliError> {
    let kind: CalcKind = args.kind.parse().map_err(|e| {
        let kinds: Vec<_> = CalcKind::ALL.iter().map(|k| k.usage()).collect();
        CliError::Input(format!("{e}\nusage:\n  {}", kinds.join("\n  ")))
    })?;
    calculate(kind, &args.params).map_err(|e| CliError::Input(e.to_string()))
}
