//! Single games and rounds of games.

use std::f64::consts::LN_2;

use crate::rng::{flip, Coin, WordSource};
use crate::{Error, Result};

/// Largest tail count whose payout `2^tails` is a finite `f64`.
pub const MAX_EXACT_TAILS: u64 = 1023;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameOutcome {
    /// Tails thrown before the first head.
    pub tails: u64,
    /// `2^tails` ducats, capped at `2^1023`.
    pub payout: f64,
}

impl GameOutcome {
    pub fn from_tails(tails: u64) -> Self {
        GameOutcome {
            tails,
            payout: pow2(tails.min(MAX_EXACT_TAILS)),
        }
    }

    pub fn saturated(&self) -> bool {
        self.tails > MAX_EXACT_TAILS
    }
}

/// Exact `2^k` for `k <= 1023`, built from the exponent field.
fn pow2(k: u64) -> f64 {
    debug_assert!(k <= MAX_EXACT_TAILS);
    f64::from_bits((k + 1023) << 52)
}

/// Geometric and arithmetic mean payment over one round of games.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundSummary {
    pub games: u64,
    pub sum_tails: u64,
    /// Geometric mean payment, `2^(sum_tails / games)`.
    pub g_mean: f64,
    /// Arithmetic mean payment.
    pub a_mean: f64,
    /// Whether any game hit the payout cap.
    pub saturated: bool,
}

impl RoundSummary {
    /// Base-2 logarithm of the geometric mean.
    pub fn mean_log2(&self) -> f64 {
        self.sum_tails as f64 / self.games as f64
    }
}

/// Payouts are summed scaled by `2^-64` so that up to `2^64` capped games
/// cannot overflow. Power-of-two scaling is exact, so the result is bit for
/// bit the unscaled sum whenever that sum is finite.
const PAYOUT_SCALE: f64 = 1.0 / 18_446_744_073_709_551_616.0;

/// Running sums for a round. Tails are summed exactly as integers.
#[derive(Debug, Clone, Default)]
pub struct RoundAccumulator {
    games: u64,
    sum_tails: u64,
    scaled_payout: f64,
    saturated: bool,
}

impl RoundAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, outcome: GameOutcome) {
        self.games += 1;
        self.sum_tails += outcome.tails;
        self.scaled_payout += outcome.payout * PAYOUT_SCALE;
        self.saturated |= outcome.saturated();
    }

    /// Returns `None` if no game was pushed.
    pub fn finish(&self) -> Option<RoundSummary> {
        if self.games == 0 {
            return None;
        }
        let n = self.games as f64;
        let g_mean = (self.sum_tails as f64 * LN_2 / n).exp();
        let a_mean = self.scaled_payout / n / PAYOUT_SCALE;
        Some(RoundSummary {
            games: self.games,
            sum_tails: self.sum_tails,
            // Both means coincide when every game paid the same; rounding in
            // exp() must not break g_mean <= a_mean there.
            g_mean: g_mean.min(a_mean),
            a_mean,
            saturated: self.saturated,
        })
    }
}

/// Flips until the first head.
pub fn play_game<S: WordSource>(source: &mut S) -> GameOutcome {
    let mut tails = 0u64;
    while flip(source) == Coin::Tail {
        tails += 1;
    }
    GameOutcome::from_tails(tails)
}

/// Plays `games` consecutive games from one continuous stream.
///
/// # Panics
///
/// If `games` is zero.
pub fn play_round<S: WordSource>(source: &mut S, games: u64) -> RoundSummary {
    assert!(games >= 1, "a round needs at least one game");
    let mut acc = RoundAccumulator::new();
    for _ in 0..games {
        acc.push(play_game(source));
    }
    acc.finish().expect("non-empty round")
}

/// `(Σ tails) / n`, the base-2 logarithm of the geometric mean payout.
pub fn mean_log2_payout(outcomes: &[GameOutcome]) -> Result<f64> {
    if outcomes.is_empty() {
        return Err(Error::EmptySample);
    }
    let total: u64 = outcomes.iter().map(|o| o.tails).sum();
    Ok(total as f64 / outcomes.len() as f64)
}
