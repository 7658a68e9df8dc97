use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use entdyn::config::{ConfigError, RawConfig, SEED_ENV};
use entdyn::report::{channel_report, sample_csv, state_report, Ensemble};
use entdyn::{format, presets, runner, CliError};
use entdyn_core::channels::{make_amplitude_damping, PauliField};
use entdyn_core::dynamics::InitialSpec;
use entdyn_core::sampling::RandomSource;

#[derive(Parser)]
#[command(name = "entdyn", version, about = "Entanglement and entropy of two qubits under local noise and coupling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file and/or flags; CSV to `output`.
    Simulate(Box<SimulateArgs>),
    /// Run a figure preset, writing one CSV per curve plus a manifest.
    Reproduce(ReproduceArgs),
    /// Report entanglement, entropies and Bloch data of one state.
    State(StateArgs),
    /// Check trace preservation and unitality of a channel.
    CheckChannel(ChannelArgs),
    /// Per-draw observables of a random-state ensemble.
    Sample(SampleArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Experiment file (`key = value` lines).
    config: Option<PathBuf>,
    #[arg(long)]
    initial: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    a_sq: Option<String>,
    #[arg(long)]
    channel: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long)]
    side: Option<String>,
    #[arg(long)]
    hamiltonian: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    steps: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    ensemble_size: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    record_every: Option<String>,
    #[arg(long)]
    output: Option<String>,
    /// Worker threads for the ensemble (default: one per core).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// One of fig2, fig3a, fig3b, fig4, fig5a, fig5b, fig6a, fig6b, fig7, fig8a, fig8b, fig9a, fig9b, fig10a, fig10b.
    figure: String,
    /// Directory receiving the curve files and the manifest.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["rho1", "rho2", "bell", "pure_random", "separable", "max_entangled"])))]
struct StateArgs {
    #[arg(long)]
    rho1: bool,
    #[arg(long)]
    rho2: bool,
    #[arg(long)]
    bell: bool,
    #[arg(long)]
    pure_random: bool,
    #[arg(long)]
    separable: bool,
    #[arg(long)]
    max_entangled: bool,
    #[arg(long, default_value_t = 0.6, allow_hyphen_values = true)]
    q: f64,
    #[arg(long, default_value_t = 0.75, allow_hyphen_values = true)]
    a_sq: f64,
    /// Seed for the random states.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["ref1", "ref2", "ref3", "damping"])))]
struct ChannelArgs {
    #[arg(long)]
    ref1: bool,
    #[arg(long)]
    ref2: bool,
    #[arg(long)]
    ref3: bool,
    #[arg(long)]
    damping: bool,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    epsilon: f64,
    /// Retention probability of the excited level.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    p: f64,
}

#[derive(Args)]
struct SampleArgs {
    /// pure, separable or max-entangled
    #[arg(long)]
    ensemble: String,
    #[arg(short = 'n', long = "count", default_value_t = 100)]
    count: usize,
    #[arg(long)]
    seed: Option<u64>,
}

/// flag > environment > `fallback`
fn resolve_seed(flag: Option<u64>, fallback: u64) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Config(ConfigError::Invalid {
                key: SEED_ENV.into(),
                value: v.clone(),
                reason: "not an unsigned 64-bit integer".into(),
            })
        }),
        Err(_) => Ok(fallback),
    }
}

fn write_stdout(text: &str) -> Result<(), CliError> {
    std::io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|source| CliError::Output { path: "<stdout>".into(), source })
}

fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    let mut raw = match &args.config {
        Some(path) => RawConfig::read(path)?,
        None => RawConfig::default(),
    };
    if let Ok(v) = std::env::var(SEED_ENV) {
        raw.set("seed", v)?;
    }
    let flags = [
        ("initial", args.initial),
        ("q", args.q),
        ("a_sq", args.a_sq),
        ("channel", args.channel),
        ("epsilon", args.epsilon),
        ("p", args.p),
        ("side", args.side),
        ("hamiltonian", args.hamiltonian),
        ("alpha", args.alpha),
        ("steps", args.steps),
        ("seed", args.seed),
        ("ensemble_size", args.ensemble_size),
        ("record_every", args.record_every),
        ("output", args.output),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            raw.set(key, v)?;
        }
    }
    let cfg = raw.build()?;
    let series = runner::run_ensemble(&cfg.dynamics, args.threads)?;
    let csv = format::series_csv(&series);
    match cfg.output {
        Some(path) => std::fs::write(&path, csv).map_err(|source| CliError::Output { path, source }),
        None => write_stdout(&csv),
    }
}

fn reproduce(args: ReproduceArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed, presets::DEFAULT_SEED)?;
    let written = presets::reproduce(&args.figure, &args.out_dir, seed, args.threads)?;
    let listing: String = written.iter().map(|p| format!("{}\n", p.display())).collect();
    write_stdout(&listing)
}

fn state(args: StateArgs) -> Result<(), CliError> {
    let (label, spec) = if args.rho1 {
        (format!("rho1(q={}, a_sq={})", args.q, args.a_sq), InitialSpec::Rho1 { q: args.q, a_sq: args.a_sq })
    } else if args.rho2 {
        (format!("rho2(q={}, a_sq={})", args.q, args.a_sq), InitialSpec::Rho2 { q: args.q, a_sq: args.a_sq })
    } else if args.bell {
        ("bell".to_string(), InitialSpec::Bell)
    } else if args.pure_random {
        ("pure_random".to_string(), InitialSpec::PureRandom)
    } else if args.separable {
        ("separable_random".to_string(), InitialSpec::SeparableRandom)
    } else {
        ("max_entangled_random".to_string(), InitialSpec::MaxEntangledRandom)
    };
    let seed = resolve_seed(args.seed, presets::DEFAULT_SEED)?;
    let rho = spec.prepare(&mut RandomSource::new(seed))?;
    write_stdout(&state_report(&label, &rho)?)
}

fn check_channel(args: ChannelArgs) -> Result<(), CliError> {
    let ch = if args.damping {
        make_amplitude_damping(args.p)?
    } else if args.ref1 {
        PauliField::Ref1.channel(args.epsilon)?
    } else if args.ref2 {
        PauliField::Ref2.channel(args.epsilon)?
    } else {
        PauliField::Ref3.channel(args.epsilon)?
    };
    write_stdout(&channel_report(&ch))
}

fn sample(args: SampleArgs) -> Result<(), CliError> {
    let ensemble = Ensemble::parse(&args.ensemble).ok_or_else(|| {
        CliError::Config(ConfigError::Invalid {
            key: "ensemble".into(),
            value: args.ensemble.clone(),
            reason: "expected pure, separable or max-entangled".into(),
        })
    })?;
    let seed = resolve_seed(args.seed, presets::DEFAULT_SEED)?;
    write_stdout(&sample_csv(ensemble, args.count, seed)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate(*a),
        Command::Reproduce(a) => reproduce(a),
        Command::State(a) => state(a),
        Command::CheckChannel(a) => check_channel(a),
        Command::Sample(a) => sample(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("entdyn: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
