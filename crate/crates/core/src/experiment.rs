//! Frequency sweeps over sample size and tolerance, the Buffon preset, and
//! per-round seed derivation.

use std::io::Write;

use rayon::prelude::*;

use crate::format::format_g;
use crate::game::RoundSummary;
use crate::khinchin::{simulate_rounds, tally, Mode, SimConfig};
use crate::{Error, Result};

const SPLITMIX_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Seed for round `round_index` of a parallel run.
///
/// This is output number `round_index + 1` of a SplitMix64 stream started at
/// `base_seed`, keeping the high 32 bits.
pub fn derive_round_seed(base_seed: u32, round_index: u64) -> u32 {
    let mut z =
        u64::from(base_seed).wrapping_add(round_index.wrapping_add(1).wrapping_mul(SPLITMIX_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    (z >> 32) as u32
}

/// `2^3, 2^4, …, 2^25`.
pub fn default_games_list() -> Vec<u64> {
    (3..=25).map(|k| 1u64 << k).collect()
}

pub const DEFAULT_DELTAS: [f64; 3] = [0.01, 0.05, 0.1];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub games_list: Vec<u64>,
    pub deltas: Vec<f64>,
    pub rounds: u64,
    pub seed: u32,
    pub mode: Mode,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            games_list: default_games_list(),
            deltas: DEFAULT_DELTAS.to_vec(),
            rounds: crate::DEFAULT_ROUNDS,
            seed: crate::DEFAULT_SEED,
            mode: Mode::Parallel,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.games_list.is_empty() || self.deltas.is_empty() {
            return Err(Error::InvalidSweep(
                "games and delta lists must be non-empty".into(),
            ));
        }
        if let Some(&g) = self.games_list.iter().find(|&&g| g < 3) {
            return Err(Error::InvalidSweep(format!("games = {g} must be > 2")));
        }
        if self.games_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSweep(
                "games list must be strictly ascending".into(),
            ));
        }
        if let Some(d) = self.deltas.iter().find(|&&d| d.is_nan() || d <= 0.0) {
            return Err(Error::InvalidSweep(format!("delta = {d} must be > 0")));
        }
        if self.rounds < 1 {
            return Err(Error::InvalidSweep("rounds must be >= 1".into()));
        }
        Ok(())
    }
}

/// One `(games, delta)` cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub games: u64,
    pub ln_games: f64,
    pub delta: f64,
    pub rounds: u64,
    pub f1: f64,
    pub f2: f64,
    pub seed: u32,
    pub saturated_rounds: u64,
}

pub const CSV_HEADER: [&str; 8] = [
    "games",
    "ln_games",
    "delta",
    "rounds",
    "f1",
    "f2",
    "seed",
    "saturated_rounds",
];

/// Runs every cell and returns rows ordered by `(delta, games)`.
///
/// All deltas at one `games` value are scored against the same simulated
/// rounds, and in parallel mode round `r` of every cell uses
/// `derive_round_seed(seed, r)`.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;

    let per_games: Vec<Vec<RoundSummary>> = spec
        .games_list
        .par_iter()
        .map(|&games| simulate_rounds(&cell_config(spec, games, spec.deltas[0])))
        .collect();

    let mut rows = Vec::with_capacity(spec.deltas.len() * spec.games_list.len());
    for &delta in &spec.deltas {
        for (&games, rounds) in spec.games_list.iter().zip(&per_games) {
            let report = tally(&cell_config(spec, games, delta), rounds);
            rows.push(SweepRow {
                games,
                ln_games: (games as f64).ln(),
                delta,
                rounds: report.rounds,
                f1: report.f1(),
                f2: report.f2(),
                seed: spec.seed,
                saturated_rounds: report.saturated_rounds,
            });
        }
    }
    Ok(rows)
}

fn cell_config(spec: &SweepSpec, games: u64, delta: f64) -> SimConfig {
    SimConfig {
        games,
        delta,
        rounds: spec.rounds,
        seed: spec.seed,
        details: false,
        mode: spec.mode,
    }
}

/// Writes rows as LF-terminated CSV with the [`CSV_HEADER`] columns.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.write_record([
            row.games.to_string(),
            format_g(row.ln_games),
            format_g(row.delta),
            row.rounds.to_string(),
            format_g(row.f1),
            format_g(row.f2),
            row.seed.to_string(),
            row.saturated_rounds.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Games per round in Buffon's experiment.
pub const BUFFON_GAMES: u64 = 2048;
/// Total crowns Buffon's 2,048 games paid out.
pub const BUFFON_TOTAL: u64 = 10_057;

#[derive(Debug, Clone, PartialEq)]
pub struct BuffonReport {
    pub seed: u32,
    /// Arithmetic mean payment of each round, in order.
    pub a_means: Vec<f64>,
    pub first_round_total: f64,
    pub first_round_per_game: f64,
    pub mean: f64,
    /// Sample standard deviation; `None` for a single round.
    pub sd: Option<f64>,
    pub median: f64,
}

impl BuffonReport {
    pub fn rounds(&self) -> usize {
        self.a_means.len()
    }

    pub fn reference_line() -> String {
        format!(
            "Buffon: {BUFFON_TOTAL} crowns in {BUFFON_GAMES} games = {} per game",
            format_g(BUFFON_TOTAL as f64 / BUFFON_GAMES as f64)
        )
    }
}

impl std::fmt::Display for BuffonReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", Self::reference_line())?;
        writeln!(
            f,
            "round 1: total = {} per game = {}",
            format_g(self.first_round_total),
            format_g(self.first_round_per_game)
        )?;
        write!(
            f,
            "r = {} s = {} mean A = {} sd A = {} median A = {}",
            self.rounds(),
            self.seed,
            format_g(self.mean),
            self.sd.map_or_else(|| "nan".to_string(), format_g),
            format_g(self.median)
        )
    }
}

/// Plays `rounds` rounds of 2,048 games from one stream seeded with `seed`.
pub fn buffon_preset(seed: u32, rounds: u64) -> Result<BuffonReport> {
    let config = SimConfig::new(BUFFON_GAMES, 1.0, rounds, seed)?;
    let a_means: Vec<f64> = simulate_rounds(&config).iter().map(|r| r.a_mean).collect();

    let n = a_means.len() as f64;
    let mean = a_means.iter().sum::<f64>() / n;
    let sd = (a_means.len() > 1).then(|| {
        let ss: f64 = a_means.iter().map(|a| (a - mean).powi(2)).sum();
        (ss / (n - 1.0)).sqrt()
    });
    let first_round_per_game = a_means[0];

    Ok(BuffonReport {
        seed,
        first_round_total: first_round_per_game * BUFFON_GAMES as f64,
        first_round_per_game,
        mean,
        sd,
        median: median(&a_means),
        a_means,
    })
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len().is_multiple_of(2) {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    }
}
