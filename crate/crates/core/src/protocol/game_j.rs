//! Direct play of `J_d` and `J'_d` without encryption.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::games::jgame::{j_sample_inputs, j_score};
use crate::protocol::game_r::{collect_trials, summarize, GameRReport};
use crate::protocol::transcript::Transcript;
use crate::quantum::{honest_j_sample, honest_j_statevector};
use crate::rng::stream;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JPlayer {
    /// The entangled strategy. Sequential play runs the statevector measurement by
    /// measurement; otherwise outcomes come from the closed-form joint distribution.
    Honest,
    /// Both players always answer zero.
    Blind,
}

impl JPlayer {
    pub fn parse(name: &str) -> Result<JPlayer> {
        match name {
            "honest" => Ok(JPlayer::Honest),
            "blind" => Ok(JPlayer::Blind),
            other => Err(Error::InvalidConfig(format!("game J supports honest or blind players, not {other:?}"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            JPlayer::Honest => "honest",
            JPlayer::Blind => "blind",
        }
    }
}

pub fn run_game_j(player: JPlayer, d: usize, trials: u64, seed: u64, sequential: bool) -> Result<GameRReport> {
    if d == 0 {
        return Err(Error::InvalidConfig("d must be at least 1".into()));
    }
    let game = if sequential { "Jseq" } else { "J" };
    let transcripts = collect_trials(trials, |trial| {
        let mut rng = stream(seed, game, trial);
        let (x, y) = j_sample_inputs(d, &mut rng);
        let (a, b) = match (player, sequential) {
            (JPlayer::Honest, false) => honest_j_sample(d, &x, &y, &mut rng)?,
            (JPlayer::Honest, true) => honest_j_statevector(d, &x, &y, &mut rng)?,
            (JPlayer::Blind, _) => (BitString::zeros(d + 1), BitString::zeros(d + 1)),
        };
        let score = j_score(&x, &y, &a, &b)?;
        Ok(Transcript {
            game: game.into(),
            trial,
            x,
            y,
            a,
            b,
            w: None,
            ells: None,
            score,
            e_flag: None,
            f_flag: None,
            seed,
            invert_fail: None,
        })
    })?;
    Ok(summarize(game, player.name(), transcripts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn honest_statevector_and_sampler_agree() {
        let a = run_game_j(JPlayer::Honest, 2, 4000, 9, false).unwrap();
        let b = run_game_j(JPlayer::Honest, 2, 4000, 9, true).unwrap();
        assert!((a.stats.mean - b.stats.mean).abs() < 5.0 * (a.stats.stderr + b.stats.stderr));
        assert!(a.stats.within(std::f64::consts::FRAC_1_SQRT_2, 5.0));
    }

    #[test]
    fn blind_transcripts_rescore() {
        let r = run_game_j(JPlayer::Blind, 3, 50, 1, false).unwrap();
        assert!(r.transcripts.iter().all(|t| t.is_consistent()));
        assert!(r.conditional.is_none());
    }
}
