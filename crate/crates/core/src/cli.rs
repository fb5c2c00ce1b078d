//! Command-line front end.
//!
//! A bare positional invocation behaves exactly like the reference program:
//!
//! ```text
//! khinchin games delta [rounds = 100] [seed = 1234567] [details = no]
//! ```
//!
//! Arguments are read leniently like C `atoi`/`atof`, so `khinchin oh ah oi`
//! parses as zeros and is then rejected by validation. Any sixth token turns
//! on the per-round `G = … A = …` lines. The words `sweep`, `threshold`,
//! `bound` and `buffon` select the additional modes.

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use thiserror::Error;

use crate::bounds::{prokhorov_bound, prokhorov_n0, ProkhorovQuery};
use crate::experiment::{
    buffon_preset, default_games_list, run_sweep, write_csv, SweepSpec, DEFAULT_DELTAS,
};
use crate::format::{format_details, format_g, format_summary};
use crate::khinchin::{
    find_threshold_n, simulate_rounds, FrequencyReport, Mode, SerialRounds, SimConfig,
};
use crate::{DEFAULT_ROUNDS, DEFAULT_SEED};

pub const PROGRAM: &str = "khinchin";

pub fn usage_line() -> String {
    format!(
        "Usage: {PROGRAM} games delta [rounds = {DEFAULT_ROUNDS}] [seed = {DEFAULT_SEED}] [details = no]"
    )
}

pub fn full_usage() -> String {
    let pad = " ".repeat("Usage: ".len());
    format!(
        "{}\n\
         {pad}{PROGRAM} sweep [--games <list>] [--delta <list>] [--rounds <int>] [--seed <int>] [--mode serial|parallel] [--out <path>]\n\
         {pad}{PROGRAM} threshold [--delta <real>] [--eta <real>] [--rounds <int>] [--max-games <int>] [--seed <int>]\n\
         {pad}{PROGRAM} bound --epsilon <real> --eta <real>\n\
         {pad}{PROGRAM} buffon [--rounds <int>] [--seed <int>] [--details]",
        usage_line()
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdQuery {
    pub delta: f64,
    pub eta: f64,
    pub rounds: u64,
    pub max_games: u64,
    pub seed: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedCommand {
    Simulate(SimConfig),
    Sweep {
        spec: SweepSpec,
        out: Option<PathBuf>,
    },
    Threshold(ThresholdQuery),
    Bound(ProkhorovQuery),
    Buffon {
        seed: u32,
        rounds: u64,
        details: bool,
    },
    /// Text to print on stdout before exiting successfully.
    Help(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Arguments parsed but violate a constraint.
    #[error("{0}")]
    Invalid(String),
    /// Arguments could not be parsed at all.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] crate::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Validation failures exit with 255, the reference program's `-1`.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Domain(_) => 255,
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Csv(_) => 254,
        }
    }
}

/// Parses the arguments that follow the program name.
pub fn parse_args<S: AsRef<str>>(args: &[S]) -> Result<ParsedCommand, CliError> {
    let args: Vec<&str> = args.iter().map(AsRef::as_ref).collect();
    match args.first().copied() {
        None => Ok(ParsedCommand::Help(usage_line())),
        Some("help" | "-h" | "--help") => Ok(ParsedCommand::Help(full_usage())),
        Some("sweep") => parse_sweep(&args),
        Some("threshold") => parse_threshold(&args),
        Some("bound") => parse_bound(&args),
        Some("buffon") => parse_buffon(&args),
        Some(_) => parse_simulate(&args),
    }
}

fn parse_simulate(args: &[&str]) -> Result<ParsedCommand, CliError> {
    if args.len() < 2 {
        return Ok(ParsedCommand::Help(usage_line()));
    }
    let games = c_atoi(args[0]);
    let delta = c_atof(args[1]);
    let rounds = args.get(2).map_or(DEFAULT_ROUNDS as i64, |s| c_atoi(s));
    let seed = args.get(3).map_or(i64::from(DEFAULT_SEED), |s| c_atoi(s));
    let details = args.len() > 4;

    if games < 3 || (delta.is_nan() || delta <= 0.0) || rounds < 1 {
        let rounds_text = args
            .get(2)
            .map_or_else(|| DEFAULT_ROUNDS.to_string(), |s| s.to_string());
        return Err(CliError::Invalid(format!(
            "games = {}, delta = {}, rounds = {} must be > 0 and games > 2",
            args[0], args[1], rounds_text
        )));
    }
    // Seeds wrap modulo 2^32 like an `int` handed to `std::mt19937`.
    let config = SimConfig::new(games as u64, delta, rounds as u64, seed as u32)?
        .with_details(details)
        .with_mode(Mode::Serial);
    Ok(ParsedCommand::Simulate(config))
}

/// C `atoi`: optional whitespace and sign, then as many digits as present.
/// Saturates instead of overflowing.
fn c_atoi(s: &str) -> i64 {
    let s = s.trim_start();
    let (negative, digits) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let mut value: i64 = 0;
    for b in digits.bytes().take_while(u8::is_ascii_digit) {
        value = value.saturating_mul(10).saturating_add(i64::from(b - b'0'));
    }
    if negative {
        -value
    } else {
        value
    }
}

/// C `atof`: the longest leading prefix that reads as a number, else 0.
fn c_atof(s: &str) -> f64 {
    let s = s.trim_start();
    (1..=s.len())
        .rev()
        .filter(|&end| s.is_char_boundary(end))
        .find_map(|end| s[..end].parse::<f64>().ok())
        .unwrap_or(0.0)
}

#[derive(Parser, Debug)]
#[command(
    name = "khinchin sweep",
    about = "Sweep f1/f2 over games and delta; writes CSV"
)]
struct SweepArgs {
    /// Comma-separated ascending games list (default 2^3..2^25).
    #[arg(long, value_delimiter = ',')]
    games: Option<Vec<u64>>,
    /// Comma-separated delta list.
    #[arg(long, value_delimiter = ',')]
    delta: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_ROUNDS)]
    rounds: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u32,
    #[arg(long, default_value_t = Mode::Parallel)]
    mode: Mode,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(
    name = "khinchin threshold",
    about = "Search the smallest power-of-two games with f1 >= 1 - eta"
)]
struct ThresholdArgs {
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 0.05)]
    eta: f64,
    #[arg(long, default_value_t = 1000)]
    rounds: u64,
    #[arg(long = "max-games", default_value_t = 1 << 25)]
    max_games: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u32,
}

#[derive(Parser, Debug)]
#[command(
    name = "khinchin bound",
    about = "Prokhorov sample size for the law of large numbers"
)]
struct BoundArgs {
    #[arg(long, allow_negative_numbers = true)]
    epsilon: f64,
    #[arg(long, allow_negative_numbers = true)]
    eta: f64,
}

#[derive(Parser, Debug)]
#[command(name = "khinchin buffon", about = "Rounds of Buffon's 2,048 games")]
struct BuffonArgs {
    #[arg(long, default_value_t = DEFAULT_ROUNDS)]
    rounds: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u32,
    /// Print each round's arithmetic mean.
    #[arg(long)]
    details: bool,
}

fn clap_parse<P: Parser>(args: &[&str]) -> Result<Result<P, ParsedCommand>, CliError> {
    match P::try_parse_from(args) {
        Ok(parsed) => Ok(Ok(parsed)),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                Ok(Err(ParsedCommand::Help(
                    e.render().to_string().trim_end().to_string(),
                )))
            }
            _ => Err(CliError::Usage(format!(
                "{}\n{}",
                e.render().to_string().trim_end(),
                full_usage()
            ))),
        },
    }
}

macro_rules! parse_or_help {
    ($ty:ty, $args:expr) => {
        match clap_parse::<$ty>($args)? {
            Ok(parsed) => parsed,
            Err(help) => return Ok(help),
        }
    };
}

fn parse_sweep(args: &[&str]) -> Result<ParsedCommand, CliError> {
    let a = parse_or_help!(SweepArgs, args);
    let spec = SweepSpec {
        games_list: a.games.unwrap_or_else(default_games_list),
        deltas: a.delta.unwrap_or_else(|| DEFAULT_DELTAS.to_vec()),
        rounds: a.rounds,
        seed: a.seed,
        mode: a.mode,
    };
    spec.validate()?;
    Ok(ParsedCommand::Sweep { spec, out: a.out })
}

fn parse_threshold(args: &[&str]) -> Result<ParsedCommand, CliError> {
    let a = parse_or_help!(ThresholdArgs, args);
    Ok(ParsedCommand::Threshold(ThresholdQuery {
        delta: a.delta,
        eta: a.eta,
        rounds: a.rounds,
        max_games: a.max_games,
        seed: a.seed,
    }))
}

fn parse_bound(args: &[&str]) -> Result<ParsedCommand, CliError> {
    let a = parse_or_help!(BoundArgs, args);
    Ok(ParsedCommand::Bound(ProkhorovQuery::new(a.epsilon, a.eta)?))
}

fn parse_buffon(args: &[&str]) -> Result<ParsedCommand, CliError> {
    let a = parse_or_help!(BuffonArgs, args);
    if a.rounds < 1 {
        return Err(CliError::Invalid("rounds must be >= 1".into()));
    }
    Ok(ParsedCommand::Buffon {
        seed: a.seed,
        rounds: a.rounds,
        details: a.details,
    })
}

/// Executes a parsed command, writing results to `out`.
pub fn run<W: Write>(command: &ParsedCommand, out: &mut W) -> Result<(), CliError> {
    match command {
        ParsedCommand::Help(text) => writeln!(out, "{text}")?,
        ParsedCommand::Simulate(config) => simulate(config, out)?,
        ParsedCommand::Sweep { spec, out: path } => {
            let rows = run_sweep(spec)?;
            match path {
                Some(path) => {
                    write_csv(&rows, std::io::BufWriter::new(std::fs::File::create(path)?))?
                }
                None => write_csv(&rows, &mut *out)?,
            }
        }
        ParsedCommand::Threshold(q) => {
            let est = find_threshold_n(q.delta, q.eta, q.rounds, q.seed, q.max_games)?;
            for (games, f1) in &est.trail {
                writeln!(out, "g = {games} f1 = {}", format_g(*f1))?;
            }
            let n_hat = est
                .n_hat
                .map_or_else(|| "NOT-FOUND".to_string(), |n| n.to_string());
            writeln!(
                out,
                "d = {} eta = {} r = {} n = {n_hat} max = {} s = {}",
                format_g(est.delta),
                format_g(est.eta),
                est.rounds,
                est.max_games,
                est.seed
            )?;
        }
        ParsedCommand::Bound(q) => {
            writeln!(
                out,
                "epsilon = {} eta = {} bound = {} n0 = {}",
                format_g(q.epsilon()),
                format_g(q.eta()),
                format_g(prokhorov_bound(q)),
                prokhorov_n0(q)?
            )?;
        }
        ParsedCommand::Buffon {
            seed,
            rounds,
            details,
        } => {
            let report = buffon_preset(*seed, *rounds)?;
            if *details {
                for a in &report.a_means {
                    writeln!(out, "A = {}", format_g(*a))?;
                }
            }
            writeln!(out, "{report}")?;
        }
    }
    Ok(())
}

fn simulate<W: Write>(config: &SimConfig, out: &mut W) -> Result<(), CliError> {
    let mut report =
        FrequencyReport::from_counts(config.games, config.delta, 0, config.seed, 0, 0, 0);
    let mut emit = |round: &crate::RoundSummary, out: &mut W| -> std::io::Result<()> {
        if config.details {
            writeln!(out, "{}", format_details(round))?;
        }
        report.record(round);
        Ok(())
    };
    match config.mode {
        Mode::Serial => {
            for round in SerialRounds::new(config.seed, config.games, config.rounds) {
                emit(&round, out)?;
            }
        }
        Mode::Parallel => {
            for round in &simulate_rounds(config) {
                emit(round, out)?;
            }
        }
    }
    writeln!(out, "{}", format_summary(&report))?;
    Ok(())
}
