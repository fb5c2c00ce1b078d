//! A deterministic Monte Carlo laboratory for the St. Petersburg game.
//!
//! Each game pays `2^k` ducats, where `k` is the number of tails thrown before
//! the first head. The expected payout is infinite, yet two of Khinchin's
//! limit theorems describe what happens to averages over `n` games:
//!
//! * the geometric mean payment converges in probability to 2;
//! * the arithmetic mean payment grows like `(ln n)^(1 ± δ)`.
//!
//! The crate plays games from a from-scratch MT19937 generator, estimates how
//! often each theorem's band holds over many rounds, sweeps those frequencies
//! across sample sizes for plotting, and evaluates Prokhorov's explicit sample
//! size bound for the law of large numbers.
//!
//! ```
//! use khinchin::{estimate_frequencies, Mode, SimConfig};
//!
//! let config = SimConfig::new(2048, 0.05, 10, 1234567)
//!     .unwrap()
//!     .with_mode(Mode::Serial);
//! let report = estimate_frequencies(&config);
//! assert_eq!(report.rounds, 10);
//! assert!((0.0..=1.0).contains(&report.f1()));
//! ```

pub mod bounds;
pub mod cli;
mod error;
pub mod experiment;
pub mod format;
pub mod game;
pub mod khinchin;
pub mod rng;

pub use bounds::{prokhorov_bound, prokhorov_n0, ProkhorovQuery};
pub use error::{Error, Result};
pub use experiment::{
    buffon_preset, derive_round_seed, run_sweep, write_csv, BuffonReport, SweepRow, SweepSpec,
};
pub use game::{mean_log2_payout, play_game, play_round, GameOutcome, RoundSummary};
pub use khinchin::{
    estimate_frequencies, find_threshold_n, simulate_rounds, theorem1_holds, theorem2_holds,
    FrequencyReport, Mode, SimConfig, ThresholdEstimate,
};
pub use rng::{flip, Coin, Mt19937, WordSource};

/// Seed used when none is given, as in the reference program.
pub const DEFAULT_SEED: u32 = 1_234_567;

/// Rounds per run when none are given, as in the reference program.
pub const DEFAULT_ROUNDS: u64 = 100;
