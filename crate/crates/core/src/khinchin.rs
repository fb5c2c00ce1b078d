//! Theorem predicates and their empirical frequencies over many rounds.
//!
//! Theorem I holds for a round when the geometric mean payment lies strictly
//! inside `(2 - δ, 2 + δ)`. Theorem II holds when the arithmetic mean lies
//! strictly inside `((ln n)^(1-δ), (ln n)^(1+δ))`. `f1` and `f2` are the
//! fractions of rounds for which each band held.

use rayon::prelude::*;

use crate::experiment::derive_round_seed;
use crate::game::{play_round, RoundSummary};
use crate::rng::Mt19937;
use crate::{Error, Result};

/// How rounds obtain their random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// All rounds read one generator seeded with the config seed, one after
    /// another. This is how the reference program runs.
    #[default]
    Serial,
    /// Round `r` gets its own generator seeded with
    /// `derive_round_seed(seed, r)`, so rounds can run concurrently.
    Parallel,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "serial" => Ok(Mode::Serial),
            "parallel" => Ok(Mode::Parallel),
            other => Err(format!(
                "unknown mode '{other}' (expected serial or parallel)"
            )),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Serial => "serial",
            Mode::Parallel => "parallel",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub games: u64,
    pub delta: f64,
    pub rounds: u64,
    pub seed: u32,
    pub details: bool,
    pub mode: Mode,
}

impl SimConfig {
    /// Rejects `games < 3`, `delta <= 0` (or NaN) and `rounds < 1`.
    pub fn new(games: u64, delta: f64, rounds: u64, seed: u32) -> Result<Self> {
        if games < 3 || (delta.is_nan() || delta <= 0.0) || rounds < 1 {
            return Err(Error::InvalidConfig {
                games,
                delta,
                rounds,
            });
        }
        Ok(SimConfig {
            games,
            delta,
            rounds,
            seed,
            details: false,
            mode: Mode::Serial,
        })
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_details(mut self, details: bool) -> Self {
        self.details = details;
        self
    }
}

/// Band counts over a run of rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyReport {
    pub games: u64,
    pub delta: f64,
    pub rounds: u64,
    pub seed: u32,
    /// Rounds inside the Theorem I band.
    pub theorem1_count: u64,
    /// Rounds inside the Theorem II band.
    pub theorem2_count: u64,
    /// Rounds in which at least one payout hit the `2^1023` cap.
    pub saturated_rounds: u64,
}

impl FrequencyReport {
    pub fn from_counts(
        games: u64,
        delta: f64,
        rounds: u64,
        seed: u32,
        theorem1_count: u64,
        theorem2_count: u64,
        saturated_rounds: u64,
    ) -> Self {
        FrequencyReport {
            games,
            delta,
            rounds,
            seed,
            theorem1_count,
            theorem2_count,
            saturated_rounds,
        }
    }

    fn empty(config: &SimConfig) -> Self {
        Self::from_counts(config.games, config.delta, 0, config.seed, 0, 0, 0)
    }

    /// Adds one round. `rounds` counts the rounds recorded so far.
    pub fn record(&mut self, round: &RoundSummary) {
        self.rounds += 1;
        self.theorem1_count += theorem1_holds(round.g_mean, self.delta) as u64;
        // games >= 3 is a SimConfig invariant, so the predicate cannot fail here.
        self.theorem2_count +=
            theorem2_holds(round.a_mean, self.games, self.delta).unwrap_or(false) as u64;
        self.saturated_rounds += round.saturated as u64;
    }

    pub fn f1(&self) -> f64 {
        self.theorem1_count as f64 / self.rounds as f64
    }

    pub fn f2(&self) -> f64 {
        self.theorem2_count as f64 / self.rounds as f64
    }
}

/// `|g_mean - 2| < delta`.
pub fn theorem1_holds(g_mean: f64, delta: f64) -> bool {
    (g_mean - 2.0).abs() < delta
}

/// Bounds `((ln games)^(1-δ), (ln games)^(1+δ))` of the Theorem II band.
pub fn theorem2_band(games: u64, delta: f64) -> Result<(f64, f64)> {
    if games < 3 {
        return Err(Error::LogLogUndefined { games });
    }
    let ln_games = (games as f64).ln();
    Ok((ln_games.powf(1.0 - delta), ln_games.powf(1.0 + delta)))
}

/// `(ln games)^(1-δ) < a_mean < (ln games)^(1+δ)`.
pub fn theorem2_holds(a_mean: f64, games: u64, delta: f64) -> Result<bool> {
    let (low, high) = theorem2_band(games, delta)?;
    Ok(low < a_mean && a_mean < high)
}

/// Consecutive rounds drawn from a single generator.
pub struct SerialRounds {
    generator: Mt19937,
    games: u64,
    remaining: u64,
}

impl SerialRounds {
    pub fn new(seed: u32, games: u64, rounds: u64) -> Self {
        SerialRounds {
            generator: Mt19937::new(seed),
            games,
            remaining: rounds,
        }
    }
}

impl Iterator for SerialRounds {
    type Item = RoundSummary;

    fn next(&mut self) -> Option<RoundSummary> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(play_round(&mut self.generator, self.games))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// Plays one round on the stream derived for `round` (parallel mode).
pub fn parallel_round(seed: u32, games: u64, round: u64) -> RoundSummary {
    play_round(&mut Mt19937::new(derive_round_seed(seed, round)), games)
}

/// Every round of `config`, in round order.
pub fn simulate_rounds(config: &SimConfig) -> Vec<RoundSummary> {
    match config.mode {
        Mode::Serial => SerialRounds::new(config.seed, config.games, config.rounds).collect(),
        Mode::Parallel => (0..config.rounds)
            .into_par_iter()
            .map(|r| parallel_round(config.seed, config.games, r))
            .collect(),
    }
}

/// Tallies already simulated rounds against `config`'s band.
pub fn tally<'a>(
    config: &SimConfig,
    rounds: impl IntoIterator<Item = &'a RoundSummary>,
) -> FrequencyReport {
    let mut report = FrequencyReport::empty(config);
    for round in rounds {
        report.record(round);
    }
    report
}

/// Runs every round of `config` and reports `f1` and `f2`.
pub fn estimate_frequencies(config: &SimConfig) -> FrequencyReport {
    match config.mode {
        Mode::Serial => {
            let mut report = FrequencyReport::empty(config);
            for round in SerialRounds::new(config.seed, config.games, config.rounds) {
                report.record(&round);
            }
            report
        }
        Mode::Parallel => tally(config, &simulate_rounds(config)),
    }
}

/// Result of an empirical search for the smallest sample size at which the
/// Theorem I band holds in at least `1 - eta` of the rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdEstimate {
    pub delta: f64,
    pub eta: f64,
    pub rounds: u64,
    pub seed: u32,
    pub max_games: u64,
    /// First qualifying power of two, or `None` if none up to `max_games` did.
    pub n_hat: Option<u64>,
    /// `(games, f1)` for every candidate evaluated, in order.
    pub trail: Vec<(u64, f64)>,
}

/// Doubles `games` from 8 up to `max_games` and stops at the first size
/// whose parallel-mode `f1` over `rounds` rounds reaches `1 - eta`.
///
/// The answer is a noisy empirical stand-in for `N(δ, η)`: with few rounds
/// it can land a doubling early or late.
pub fn find_threshold_n(
    delta: f64,
    eta: f64,
    rounds: u64,
    seed: u32,
    max_games: u64,
) -> Result<ThresholdEstimate> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::OutOfDomain(format!("delta = {delta} must be > 0")));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::OutOfDomain(format!(
            "eta = {eta} must lie in (0, 1)"
        )));
    }
    if rounds < 1 {
        return Err(Error::OutOfDomain("rounds must be >= 1".into()));
    }
    if max_games < 8 || !max_games.is_power_of_two() {
        return Err(Error::OutOfDomain(format!(
            "max_games = {max_games} must be a power of two >= 8"
        )));
    }

    let mut estimate = ThresholdEstimate {
        delta,
        eta,
        rounds,
        seed,
        max_games,
        n_hat: None,
        trail: Vec::new(),
    };
    let mut games = 8u64;
    while games <= max_games {
        let hits: u64 = (0..rounds)
            .into_par_iter()
            .filter(|&r| theorem1_holds(parallel_round(seed, games, r).g_mean, delta))
            .count() as u64;
        let f1 = hits as f64 / rounds as f64;
        estimate.trail.push((games, f1));
        if f1 >= 1.0 - eta {
            estimate.n_hat = Some(games);
            break;
        }
        games *= 2;
    }
    Ok(estimate)
}
