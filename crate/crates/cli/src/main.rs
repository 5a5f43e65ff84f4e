use std::f64::consts::FRAC_PI_2;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qbc::adversary::{
    length_sweep, match_rate_study, optimize_measurements_with, optimize_triangle, simulate_eve_attack,
    MatchRateConfig, OptimizerConfig, Strategy, SweepConfig,
};
use qbc::cipher::keyfile::{export_vtable, pi_multiples, Angle, ModeName, VTableSpec};
use qbc::cipher::{
    builtin_blueprints, encode_text, transmit_message, u_bi, u_tri, KeyFile, KeySchedule, ScheduleMode,
    TransmitOptions, DEFAULT_PERIOD, DUMAS_MESSAGE,
};
use qbc::discrimination::{commutator_norm, cross_validate, DiscriminationInstance, Label};
use qbc::quantum::{ControlledRotation, Gate, GateSequence, NoiseModel, RotationParams};
use qbc::report;
use qbc::seed::SeedStream;
use rand::Rng;

#[derive(Parser)]
#[command(name = "qbc", version, about = "Quantum block cipher simulator")]
struct Cli {
    /// Master seed for every stochastic output.
    #[arg(long, global = true, env = "QBC_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a key file.
    Keygen(KeygenArgs),
    /// Send a message from Alice to Bob and write the per-block transcript.
    Transmit(TransmitArgs),
    /// Eavesdropper Monte-Carlo: error-count histogram.
    Attack(AttackArgs),
    /// Probability of recovering the first n bits, per strategy.
    Matchrate(MatchrateArgs),
    /// Eavesdropper error statistics versus message length.
    Sweep(SweepArgs),
    /// Which of two circuits encoded a single state.
    Discriminate(DiscriminateArgs),
    /// Best single-qubit measurement bases against the pair and triangle loops.
    Optimize(OptimizeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Parity,
    Table,
    SumPrev,
}

impl Mode {
    fn schedule_mode(self, t_prime: usize) -> ScheduleMode {
        match self {
            Mode::Parity => ScheduleMode::Parity,
            Mode::Table => ScheduleMode::Table,
            Mode::SumPrev => ScheduleMode::SumOfPrevious { t_prime },
        }
    }
}

#[derive(Args)]
struct KeyArgs {
    /// Key file (JSON).
    #[arg(long)]
    key: PathBuf,
}

impl KeyArgs {
    fn load(&self) -> Result<KeyFile> {
        KeyFile::load(&self.key).with_context(|| format!("reading key file {}", self.key.display()))
    }
}

#[derive(Args)]
struct ModeOverride {
    /// Override the key's selection rule.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Previous blocks summed by `sum-prev`.
    #[arg(long)]
    t_prime: Option<usize>,
}

impl ModeOverride {
    fn apply(&self, key: &KeyFile, default: Option<ScheduleMode>) -> Result<KeySchedule> {
        let schedule = key.to_schedule()?;
        let t_prime = self.t_prime.unwrap_or(match key.mode()? {
            ScheduleMode::SumOfPrevious { t_prime } => t_prime,
            _ => 2,
        });
        let mode = match (self.mode, default) {
            (Some(m), _) => m.schedule_mode(t_prime),
            (None, _) if self.t_prime.is_some() => ScheduleMode::SumOfPrevious { t_prime },
            (None, Some(d)) => d,
            (None, None) => return Ok(schedule),
        };
        Ok(schedule.with_mode(mode)?)
    }
}

#[derive(Args)]
struct MessageArgs {
    /// Message text (default: the reference sentence).
    #[arg(long, conflicts_with = "message_file")]
    message: Option<String>,
    /// Read the message from a UTF-8 file.
    #[arg(long)]
    message_file: Option<PathBuf>,
}

impl MessageArgs {
    fn text(&self) -> Result<String> {
        match (&self.message, &self.message_file) {
            (Some(m), _) => Ok(m.clone()),
            (None, Some(p)) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
            (None, None) => Ok(DUMAS_MESSAGE.to_string()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Angles of the reference eavesdropper experiment.
    Attack,
    /// Angles of the reference match-rate experiment.
    Matchrate,
}

#[derive(Args)]
struct KeygenArgs {
    #[arg(long, value_enum, default_value = "table")]
    mode: Mode,
    #[arg(long, default_value_t = 2)]
    t_prime: usize,
    /// Fixed angles instead of random ones.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Write the operation table as explicit gate lists instead of `builtin-64`.
    #[arg(long)]
    explicit_vtable: bool,
    #[arg(long, default_value_t = 0)]
    initial_op: usize,
    /// Output path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TransmitArgs {
    #[command(flatten)]
    key: KeyArgs,
    #[command(flatten)]
    message: MessageArgs,
    #[command(flatten)]
    mode: ModeOverride,
    /// Gate fidelity for encoding and decoding.
    #[arg(long, default_value_t = 1.0)]
    fidelity: f64,
    /// Insert auxiliary check characters (default).
    #[arg(long, overrides_with = "no_frame")]
    frame: bool,
    /// Send the message without auxiliary characters.
    #[arg(long)]
    no_frame: bool,
    #[arg(long, default_value_t = DEFAULT_PERIOD)]
    period: usize,
    /// Resends allowed per window before giving up.
    #[arg(long, default_value_t = qbc::cipher::transmit::DEFAULT_MAX_RETRANSMISSIONS)]
    max_retransmissions: usize,
    /// Transcript path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AttackArgs {
    #[command(flatten)]
    key: KeyArgs,
    #[command(flatten)]
    message: MessageArgs,
    #[command(flatten)]
    mode: ModeOverride,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    runs: u64,
    /// Histogram CSV (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-run error counts CSV.
    #[arg(long)]
    records: Option<PathBuf>,
}

#[derive(Args)]
struct MatchrateArgs {
    #[command(flatten)]
    key: KeyArgs,
    #[arg(long, value_delimiter = ',', default_value = "Z2,Z3,OP2,OP3,B1,B2")]
    strategies: Vec<String>,
    #[arg(long, default_value_t = 120)]
    max_bits: usize,
    #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0.995)]
    b1_fidelity: f64,
    #[arg(long, default_value_t = 0.9)]
    b2_fidelity: f64,
    #[arg(long, default_value_t = 32)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    key: KeyArgs,
    #[command(flatten)]
    mode: ModeOverride,
    #[arg(long, default_value_t = 10)]
    min_length: usize,
    #[arg(long, default_value_t = 300)]
    max_length: usize,
    #[arg(long, default_value_t = 10)]
    step: usize,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    runs: u64,
    /// Error-fraction thresholds.
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
    x: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pair {
    /// The two six-qubit parity-schedule operations (`U_tri` vs `U_bi`).
    Parity,
    /// Two-qubit pair: identity vs a half-mixing controlled rotation.
    Matched,
    /// Two-qubit pair of identical circuits.
    Identical,
}

#[derive(Args)]
struct DiscriminateArgs {
    #[command(flatten)]
    key: KeyArgs,
    #[arg(long, value_enum, default_value = "matched")]
    pair: Pair,
    /// Encoded inputs to test (default: all).
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,
    /// Trials per input (default: 10000 for two qubits, 20 for six).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: Option<u64>,
    /// Circuit that actually encoded the state.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    label: u8,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report with exact probabilities and discrepancy flags.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    key: KeyArgs,
    #[arg(long, default_value_t = 32)]
    grid: usize,
    #[arg(long, default_value_t = 8)]
    starts: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn keygen(args: &KeygenArgs, seeds: &SeedStream) -> Result<()> {
    use std::f64::consts::TAU;
    let (theta1, theta2): ([Angle; 4], [Angle; 4]) = match args.preset {
        Some(Preset::Attack) => (pi_multiples([0.0, 0.15, 0.72, 0.32]), pi_multiples([0.0, 0.45, 0.17, 1.64])),
        Some(Preset::Matchrate) => (
            [Angle::PiMultiple { pi: 0.45 }, Angle::Radians(4.04), Angle::Radians(1.04), Angle::Radians(0.92)],
            [Angle::Radians(0.0), Angle::Radians(0.35), Angle::PiMultiple { pi: 0.55 }, Angle::Radians(0.79)],
        ),
        None => {
            let mut rng = seeds.rng(0);
            let mut draw = || std::array::from_fn(|_| Angle::Radians(rng.random_range(0.0..TAU)));
            (draw(), draw())
        }
    };
    let mode = match args.mode {
        Mode::Parity => ModeName::Parity,
        Mode::Table => ModeName::Table,
        Mode::SumPrev => ModeName::SumPrev,
    };
    let vtable = if args.explicit_vtable {
        VTableSpec::Explicit(export_vtable(&builtin_blueprints()))
    } else {
        VTableSpec::Builtin(qbc::cipher::keyfile::BuiltinTable::Builtin64)
    };
    let key = KeyFile {
        mode,
        t_prime: args.t_prime,
        theta1,
        theta2,
        vtable,
        initial_op: args.initial_op,
    };
    key.validate()?;
    let mut out = output(args.out.as_deref())?;
    out.write_all(key.to_json()?.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Returns whether the transcript has no residual mismatches.
fn transmit(args: &TransmitArgs, seeds: &SeedStream) -> Result<bool> {
    let key = args.key.load()?;
    let schedule = args.mode.apply(&key, None)?;
    let options = TransmitOptions {
        noise: NoiseModel::new(args.fidelity)?,
        frame_period: (!args.no_frame).then_some(args.period),
        max_retransmissions: args.max_retransmissions,
    };
    let transcript = transmit_message(&args.message.text()?, &schedule, &options, &mut seeds.rng(0))?;
    let mut out = output(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &transcript)?;
    out.write_all(b"\n")?;
    out.flush()?;
    eprintln!(
        "{} blocks, {} retransmissions, {} mismatches",
        transcript.blocks.len(),
        transcript.retransmissions,
        transcript.mismatches
    );
    Ok(transcript.mismatches == 0)
}

fn attack(args: &AttackArgs, seeds: &SeedStream) -> Result<()> {
    let key = args.key.load()?;
    let schedule = args.mode.apply(&key, None)?;
    let message = encode_text(&args.message.text()?)?;
    let result = simulate_eve_attack(&message, &schedule, args.runs as usize, seeds)?;
    report::write_histogram(output(args.out.as_deref())?, &result.histogram)?;
    if let Some(path) = &args.records {
        report::write_records(output(Some(path))?, &result.records)?;
    }
    eprintln!(
        "mode {}: mean errors {:.3}, runs below 20 errors {:.3}",
        schedule.mode(),
        result.mean_errors(),
        result.fraction_below(20)
    );
    Ok(())
}

fn matchrate(args: &MatchrateArgs, seeds: &SeedStream) -> Result<()> {
    let key = args.key.load()?;
    let strategies = args
        .strategies
        .iter()
        .map(|s| s.parse::<Strategy>())
        .collect::<qbc::Result<Vec<_>>>()?;
    let config = MatchRateConfig {
        max_bits: args.max_bits,
        trials: args.trials as usize,
        b1_fidelity: args.b1_fidelity,
        b2_fidelity: args.b2_fidelity,
        optimizer: OptimizerConfig {
            grid: args.grid,
            ..Default::default()
        },
    };
    let curves = match_rate_study(&key.theta1(), &key.theta2(), &strategies, &config, seeds)?;
    report::write_match_rates(output(args.out.as_deref())?, &curves)?;
    Ok(())
}

fn sweep(args: &SweepArgs, seeds: &SeedStream) -> Result<()> {
    if args.step == 0 || args.min_length == 0 || args.min_length > args.max_length {
        bail!("lengths must satisfy 0 < min-length <= max-length with a positive step");
    }
    let key = args.key.load()?;
    let schedule = args.mode.apply(&key, Some(ScheduleMode::SumOfPrevious { t_prime: 2 }))?;
    let config = SweepConfig {
        lengths: (args.min_length..=args.max_length).step_by(args.step).collect(),
        runs: args.runs as usize,
        thresholds: args.x.clone(),
    };
    let rows = length_sweep(&schedule, &config, seeds)?;
    report::write_sweep(output(args.out.as_deref())?, &rows)?;
    Ok(())
}

fn matched_second_circuit(theta1: &RotationParams, theta2: &RotationParams) -> Result<GateSequence> {
    let half = |p: &RotationParams| {
        let mut a = p.to_array();
        a[2] = FRAC_PI_2;
        RotationParams::from_array(a)
    };
    let gate = Gate::rotation(&ControlledRotation::new(0, 1, half(theta1), half(theta2)))?;
    Ok(GateSequence::from_gates(2, [gate])?)
}

fn discriminate(args: &DiscriminateArgs, seeds: &SeedStream) -> Result<()> {
    let key = args.key.load()?;
    let (t1, t2) = (key.theta1(), key.theta2());
    let (u1, u2) = match args.pair {
        Pair::Parity => (u_tri(&t1, &t2)?, u_bi(&t1, &t2)?),
        Pair::Matched => (GateSequence::new(2), matched_second_circuit(&t1, &t2)?),
        Pair::Identical => {
            let u = matched_second_circuit(&t1, &t2)?;
            (u.clone(), u)
        }
    };
    let n = u1.n_qubits();
    let trials = args.trials.map_or(if n > 3 { 20 } else { 10_000 }, |t| t as usize);
    let label = if args.label == 1 { Label::Circuit1 } else { Label::Circuit2 };
    let ms: Vec<usize> = if args.m.is_empty() { (0..1 << n).collect() } else { args.m.clone() };
    let mut tallies = Vec::with_capacity(ms.len());
    let mut checks = Vec::with_capacity(ms.len());
    for &m in &ms {
        let inst = DiscriminationInstance::new(u1.clone(), u2.clone(), m, label)?;
        let d = cross_validate(&inst, trials, &seeds.child(&format!("m-{m}")))?;
        if d.flagged {
            eprintln!(
                "m={m}: frequency {:.4} differs from the printed probability {:.4} by {:.1} sigma (exact {:.4})",
                d.tally.frequency(),
                d.tally.analytic_p,
                d.z_printed,
                d.exact_p
            );
        }
        tallies.push(d.tally);
        checks.push(d);
    }
    report::write_discrimination(output(args.out.as_deref())?, &tallies)?;
    if let Some(path) = &args.report {
        let commutator = if n <= 3 { Some(commutator_norm(&u1, &u2)?) } else { None };
        let body = serde_json::json!({
            "n_qubits": n,
            "commutator_norm": commutator,
            "instances": checks,
        });
        let mut out = output(Some(path))?;
        serde_json::to_writer_pretty(&mut out, &body)?;
        out.write_all(b"\n")?;
        out.flush()?;
    }
    Ok(())
}

fn optimize(args: &OptimizeArgs) -> Result<()> {
    let key = args.key.load()?;
    let config = OptimizerConfig {
        grid: args.grid,
        starts: args.starts,
        ..Default::default()
    };
    let pair = optimize_measurements_with(&key.theta1(), &key.theta2(), &config)?;
    let triangle = optimize_triangle(&key.theta1(), &key.theta2(), &config)?;
    report::write_optima(output(args.out.as_deref())?, &[("pair", &pair), ("triangle", &triangle)])?;
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let label = match &cli.command {
        Command::Keygen(_) => "keygen",
        Command::Transmit(_) => "transmit",
        Command::Attack(_) => "attack",
        Command::Matchrate(_) => "matchrate",
        Command::Sweep(_) => "sweep",
        Command::Discriminate(_) => "discriminate",
        Command::Optimize(_) => "optimize",
    };
    let seeds = SeedStream::new(cli.seed, label);
    match &cli.command {
        Command::Keygen(a) => keygen(a, &seeds)?,
        Command::Transmit(a) => return transmit(a, &seeds),
        Command::Attack(a) => attack(a, &seeds)?,
        Command::Matchrate(a) => matchrate(a, &seeds)?,
        Command::Sweep(a) => sweep(a, &seeds)?,
        Command::Discriminate(a) => discriminate(a, &seeds)?,
        Command::Optimize(a) => optimize(a)?,
    }
    Ok(true)
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            bail!("--jobs must be at least 1");
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build()?;
    let ok = pool.install(|| run(&cli))?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
