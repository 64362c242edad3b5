//! Referee orchestration, classical prover models, soundness experiments and the
//! rewinding attack.

pub mod attack;
pub mod experiments;
pub mod game_j;
pub mod game_r;
pub mod provers;
pub mod stats;
pub mod transcript;

pub use attack::{attack_plan, best_score, decode_error, sampling_bound, AttackPlan, BestScore};
pub use experiments::{experiment_e, experiment_s1, experiment_s2, experiment_s3, run_experiment_e, EReport};
pub use game_j::{run_game_j, JPlayer};
pub use game_r::{run_game_r, GameRReport, Prover};
pub use provers::{classical_prover, BlindProver, ClassicalProver, HashedProver, TrapdoorLeakProver};
pub use stats::ScoreStats;
pub use transcript::{Transcript, SUMMARY_HEADER};
