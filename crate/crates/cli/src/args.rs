use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Spacing;

#[derive(Debug, Parser)]
#[command(name = "wigner", version, about = "Wigner rotation calculator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wigner rotation produced by two successive boosts.
    WignerAngle(WignerAngleArgs),
    /// Discrete transport around a circular velocity loop.
    Orbit(OrbitArgs),
    /// Total spin rotation for one storage-ring configuration.
    Experiment(ExperimentArgs),
    /// Total rotation over a grid of radii and durations.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Units {
    /// Fractions of the speed of light.
    #[default]
    C,
    /// Metres per second.
    Mps,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output if omitted. Data files get a
    /// `<out>.manifest.json` sidecar.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct WignerAngleArgs {
    /// First boost velocity, applied first.
    #[arg(long, value_name = "X,Y,Z", value_parser = parse_triple, allow_hyphen_values = true)]
    pub v1: [f64; 3],
    /// Second boost velocity.
    #[arg(long, value_name = "X,Y,Z", value_parser = parse_triple, allow_hyphen_values = true)]
    pub v2: [f64; 3],
    #[arg(long, value_enum, default_value_t = Units::C)]
    pub units: Units,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Orbit speed as a fraction of c.
    #[arg(long)]
    pub speed: f64,
    #[arg(long, default_value_t = 1)]
    pub turns: u64,
    /// Boosts per turn.
    #[arg(long, default_value_t = 10_000)]
    pub steps: u64,
    /// Write every n-th step to the CSV; the last step is always written.
    #[arg(long, default_value_t = NonZeroUsize::MIN)]
    pub stride: NonZeroUsize,
    /// Largest residual boost speed accepted at loop closure.
    #[arg(long, default_value_t = wigner_core::holonomy::DEFAULT_CLOSURE_TOLERANCE)]
    pub closure_tol: f64,
    /// Re-project the frame onto the Lorentz group every n steps; 0 disables.
    #[arg(long, default_value_t = 1024)]
    pub reproject_every: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Particle speed, m/s.
    #[arg(long)]
    pub speed: f64,
    /// Ring radius, m.
    #[arg(long)]
    pub radius: f64,
    /// Storage time, s.
    #[arg(long)]
    pub duration: f64,
    /// Mean lifetime, s.
    #[arg(long, default_value_t = wigner_core::NEUTRON_LIFETIME_S)]
    pub lifetime: f64,
    /// Initial spin direction.
    #[arg(long, value_name = "X,Y,Z", value_parser = parse_triple, allow_hyphen_values = true, default_value = "1,0,0")]
    pub spin: [f64; 3],
    /// Emitted particles for simulated detector counts.
    #[arg(long)]
    pub counts: Option<u64>,
    #[arg(long, requires = "counts", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON sweep configuration; the grid flags below are ignored.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["speed", "radii", "radius_min", "radius_max", "radius_count", "spacing", "durations", "lifetime_multiples", "lifetime", "counts", "seed"])]
    pub config: Option<PathBuf>,
    /// Particle speed, m/s.
    #[arg(long)]
    pub speed: Option<f64>,
    /// Explicit radii in metres; overrides the range flags.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub radii: Option<Vec<f64>>,
    #[arg(long)]
    pub radius_min: Option<f64>,
    #[arg(long)]
    pub radius_max: Option<f64>,
    #[arg(long)]
    pub radius_count: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    /// Explicit durations in seconds.
    #[arg(long, value_delimiter = ',', conflicts_with = "lifetime_multiples")]
    pub durations: Option<Vec<f64>>,
    /// Durations as multiples of the lifetime.
    #[arg(long, value_delimiter = ',')]
    pub lifetime_multiples: Option<Vec<f64>>,
    #[arg(long)]
    pub lifetime: Option<f64>,
    #[arg(long)]
    pub counts: Option<u64>,
    #[arg(long, requires = "counts")]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y, z] = parts.as_slice() else {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    };
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    Ok([num(x)?, num(y)?, num(z)?])
}
