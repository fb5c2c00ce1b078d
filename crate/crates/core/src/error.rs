use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,

    #[error("log-log undefined or degenerate for games = {games} (need games > 2)")]
    LogLogUndefined { games: u64 },

    #[error("parameters out of domain: {0}")]
    OutOfDomain(String),

    #[error("games = {games}, delta = {delta}, rounds = {rounds} must be > 0 and games > 2")]
    InvalidConfig { games: u64, delta: f64, rounds: u64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}
