//! Economics of proof-of-work mining as a repeated allocation game.
//!
//! A miner's stage decision is a balance sheet `(E, L, M, F)`; one block
//! reward goes to a hash-share-weighted winner while everyone pays running
//! costs, and the payoff is the log return on equity. This crate provides:
//!
//! - the domain types and balance-sheet construction ([`types`]),
//! - the reward process with analytic moments and moment generating
//!   functions, including the Poisson reward comparator ([`reward`]),
//! - exact and approximate optimal leverage and the optimal balance sheet
//!   for a given mining scale ([`kelly`]),
//! - the hash-rate equilibrium among growth-rate miners, in closed form
//!   and by fixed-point iteration ([`equilibrium`]),
//! - risk-sharing and risk-free-reward mining pools ([`pools`]),
//! - a deterministic parallel Monte Carlo engine for the repeated game,
//!   the coin-flip betting game, and entry sweeps ([`sim`]),
//! - scenario file ingestion ([`scenario`]) and worked examples
//!   ([`presets`]).

pub mod equilibrium;
pub mod error;
pub mod kelly;
pub mod pools;
pub mod presets;
pub mod reward;
pub mod scenario;
pub mod sim;
pub mod stats;
pub mod types;

pub use error::{Error, Result};
pub use scenario::Scenario;
pub use types::{
    make_balance_sheet, BalanceSheet, Environment, EquilibriumResult, PlayerSpec, RewardMoments,
    Strategy, TwoPointReturn,
};
