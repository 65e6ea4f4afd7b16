use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nu_correlate::check::run_checks;
use nu_correlate::config::{
    parse_config, parse_sigma_list, GridScale, Mode, OutputFormat, SweepConfig,
};
use nu_correlate::output::{emit_to_bytes, emit_to_path};
use nu_correlate::sweep::run_sweep;
use nu_correlate::{Error, Flavor};

#[derive(Parser)]
#[command(
    name = "nu-correlate",
    version,
    about = "Coherence and flavor-mode entanglement in neutrino oscillation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep baselines (and wave-packet widths) and emit probabilities and correlations.
    Sweep(SweepArgs),
    /// Coherence vs distance for three wave-packet widths, reference parameters.
    Fig1 {
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite; exits non-zero on any violation.
    Check {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Key/value configuration file; flags below override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    flavor: Option<Flavor>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Effective widths with unit, e.g. `5e-17m`; repeat or comma-separate.
    #[arg(long = "sigma-x", num_args = 1..)]
    sigma_x: Vec<String>,
    #[arg(long)]
    l_min: Option<f64>,
    #[arg(long)]
    l_max: Option<f64>,
    #[arg(long)]
    l_points: Option<usize>,
    #[arg(long, value_enum)]
    l_scale: Option<ScaleArg>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plane,
    Wavepacket,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Lin,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn sweep_config(args: SweepArgs) -> Result<SweepConfig, Error> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => SweepConfig::default(),
    };
    if let Some(f) = args.flavor {
        config.initial_flavor = f;
    }
    if let Some(m) = args.mode {
        config.mode = match m {
            ModeArg::Plane => Mode::PlaneWave,
            ModeArg::Wavepacket => Mode::WavePacket,
        };
    }
    if !args.sigma_x.is_empty() {
        config.sigma_x =
            parse_sigma_list(&args.sigma_x.join(",")).map_err(|message| Error::InvalidKey {
                key: "--sigma-x".into(),
                message,
            })?;
    }
    if let Some(v) = args.l_min {
        config.grid.min_km = v;
    }
    if let Some(v) = args.l_max {
        config.grid.max_km = v;
    }
    if let Some(v) = args.l_points {
        config.grid.points = v;
    }
    if let Some(s) = args.l_scale {
        config.grid.scale = match s {
            ScaleArg::Lin => GridScale::Linear,
            ScaleArg::Log => GridScale::Log,
        };
    }
    if let Some(f) = args.format {
        config.format = f.into();
    }
    if args.out.is_some() {
        config.output = args.out;
    }
    config.validate()?;
    Ok(config)
}

fn write_sweep(config: &SweepConfig) -> Result<(), Error> {
    let records = run_sweep(config)?;
    match &config.output {
        Some(path) => emit_to_path(&records, config.format, path),
        None => {
            let bytes = emit_to_bytes(&records, config.format)?;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Sweep(args) => {
            write_sweep(&sweep_config(args)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fig1 { format, out } => {
            let mut config = SweepConfig::default();
            if let Some(f) = format {
                config.format = f.into();
            }
            config.output = out;
            write_sweep(&config)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { seed } => {
            let checks = run_checks(seed)?;
            let mut ok = true;
            for c in &checks {
                let status = if c.passed() { "ok  " } else { "FAIL" };
                println!(
                    "{status} {:<42} worst {:.3e} (tolerance {:.0e}, {} samples)",
                    c.name, c.worst, c.tolerance, c.samples
                );
                ok &= c.passed();
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Error::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
