mod commands;
mod output;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use params::{parse_assignment, ParamError, Params};

/// Simulation experiments for analog multi-beam antenna arrays.
///
/// Parameters resolve in order: built-in defaults, `--config` file,
/// `--set key=value` overrides, then the dedicated flags. Every output file
/// starts with `#` comment lines listing the resolved parameters.
#[derive(Parser, Debug)]
#[command(name = "mbaa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat key=value configuration file (`#` starts a comment).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Seed for every random draw.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output CSV path; companion files are written next to it. Defaults to
    /// `<subcommand>.csv`.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Override any parameter; may be repeated.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Number of DFT beams (equal to the antenna count)
    #[arg(long, global = true)]
    n_beams: Option<usize>,

    /// Lowest normalized frequency of the band.
    #[arg(long, global = true)]
    rho: Option<f64>,

    /// Beam index that carries the communication link
    #[arg(long, global = true)]
    comm_beam: Option<usize>,

    /// Number of sensing beams selected next to the communication beam.
    #[arg(long, global = true)]
    x_sensing: Option<usize>,

    /// Number of time units in a schedule
    #[arg(long, global = true)]
    time_units: Option<usize>,

    /// SNR in dB; a comma-separated list for sweeps, `inf` for noiseless.
    #[arg(long, global = true, allow_hyphen_values = true)]
    snr_db: Option<String>,

    /// Number of sub-regions probed per search level.
    #[arg(long, global = true)]
    branching: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Gain pattern of one DFT beam or of a selection vector over a full
    /// turn of beamspace angle, with mainlobe width and first sidelobe.
    Pattern,
    /// Select beams with alternating signs so that the combined pattern
    /// covers target beam ranges (default: two lobes over beams 1-4 and
    /// 12-13 of 16), and report the in-lobe ripple.
    Synthesize,
    /// RMSE of the two-wide-beam power-ratio angle estimator versus SNR.
    Aoa,
    /// Logarithmic multi-section beam search over random path angles,
    /// compared against an exhaustive scan.
    Search,
    /// Angle-by-frequency gain map of a wide synthesized beam over a
    /// frequency band (default: beams 64-115 of 128, band [0.9, 1]), plus
    /// the gain-versus-frequency region label of every angle.
    Squint,
    /// Average power gain of regular (type-1) and random (type-2)
    /// communication-plus-sensing schedules.
    JcasApg,
    /// Communication-direction power and sensing-direction average power
    /// gain as the number of sensing beams grows.
    JcasTradeoff,
    /// Per-time-unit gain amplitude and phase of a random sensing
    /// schedule, with per-angle temporal statistics.
    JcasSecrecy,
    /// Bit error rate of beam-hopping index modulation over three
    /// path-covering beams.
    Bh,
    /// Analog beamforming power of the 1-bit selection network versus a
    /// multi-bit phase-shifter array.
    Power,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Pattern => "pattern",
            Command::Synthesize => "synthesize",
            Command::Aoa => "aoa",
            Command::Search => "search",
            Command::Squint => "squint",
            Command::JcasApg => "jcas-apg",
            Command::JcasTradeoff => "jcas-tradeoff",
            Command::JcasSecrecy => "jcas-secrecy",
            Command::Bh => "bh",
            Command::Power => "power",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        CliError::Usage(e.0)
    }
}

impl From<mbaa_core::Error> for CliError {
    fn from(e: mbaa_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn resolve(cli: &Cli) -> Result<(Params, u64), CliError> {
    let mut p = Params::new();
    if let Some(path) = &cli.config {
        p.load_config(path)?;
    }
    for s in &cli.set {
        let (k, v) = parse_assignment(s)?;
        p.set(&k, v);
    }
    let flags: [(&str, Option<String>); 8] = [
        ("seed", cli.seed.map(|v| v.to_string())),
        ("n_beams", cli.n_beams.map(|v| v.to_string())),
        ("rho", cli.rho.map(|v| v.to_string())),
        ("comm_beam", cli.comm_beam.map(|v| v.to_string())),
        ("x_sensing", cli.x_sensing.map(|v| v.to_string())),
        ("time_units", cli.time_units.map(|v| v.to_string())),
        ("snr_db", cli.snr_db.clone()),
        ("branching", cli.branching.map(|v| v.to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            p.set(k, v);
        }
    }
    let seed = p.get("seed", 0u64)?;
    Ok((p, seed))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (mut params, seed) = resolve(cli)?;
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from(format!("{}.csv", cli.command.name())));
    let ctx = commands::Context { name: cli.command.name(), seed, out };
    let written = match cli.command {
        Command::Pattern => commands::pattern(&ctx, &mut params),
        Command::Synthesize => commands::synthesize(&ctx, &mut params),
        Command::Aoa => commands::aoa(&ctx, &mut params),
        Command::Search => commands::search(&ctx, &mut params),
        Command::Squint => commands::squint(&ctx, &mut params),
        Command::JcasApg => commands::jcas_apg(&ctx, &mut params),
        Command::JcasTradeoff => commands::jcas_tradeoff(&ctx, &mut params),
        Command::JcasSecrecy => commands::jcas_secrecy(&ctx, &mut params),
        Command::Bh => commands::bh(&ctx, &mut params),
        Command::Power => commands::power(&ctx, &mut params),
    }?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("mbaa {}: {msg}", cli.command.name());
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("mbaa {}: {msg}", cli.command.name());
            ExitCode::from(1)
        }
    }
}
