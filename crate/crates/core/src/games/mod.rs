//! Nonlocal games: GHZ, parity-balanced sets and the two-player games `J_d` / `J'_d`.

pub mod ghz;
pub mod jgame;
pub mod parity;
pub mod strategy;

pub use ghz::{ghz4_closed_form, ghz_score, ghz_strategy_value, ghz_value_bruteforce, reduce_ghz4_to_ghz3, Repetition};
pub use jgame::{j_bias_bruteforce, j_bias_fourier_identity, j_sample_inputs, j_score, j_strategy_value};
pub use parity::{max_eta_parity_balanced, ParityBalancedSet};
pub use strategy::{DependentFamily, DeterministicStrategy, TimeOrderedStrategy};
