//! Referee orchestration for Games `R` and `R'`.
//!
//! Each trial draws, from its own stream, in this order: `x`, `y`, the encryption of
//! `x_1..x_d`, the prover's coins, round one, the referee's fallback `a` (only when
//! inversion fails) and round two.

use rayon::prelude::*;

use crate::algebra::ZqVec;
use crate::bits::BitString;
use crate::error::Result;
use crate::games::jgame::j_score;
use crate::lattice::{encrypt, invert, Ciphertext, TrapdoorKey};
use crate::params::Params;
use crate::protocol::provers::{random_coins, ClassicalProver, FirstMessage, FirstRoundInput};
use crate::protocol::stats::ScoreStats;
use crate::protocol::transcript::Transcript;
use crate::quantum::{honest_first_round, honest_second_round, measured_positions};
use crate::rng::stream;

pub enum Prover {
    Honest,
    Classical(Box<dyn ClassicalProver>),
}

impl Prover {
    pub fn name(&self) -> &str {
        match self {
            Prover::Honest => "honest",
            Prover::Classical(p) => p.name(),
        }
    }
}

/// Number of round-one bits `ells`.
pub fn measured_count(params: &Params) -> usize {
    params.n * params.big_q - params.d
}

/// The referee's `a`: `a_j` is the parity of `z_{n-d+j}` with `z = Invert(w)`, and
/// `a_{d+1}` is the parity of `ells` against the bits where `z` and `z' = Invert(w + v)`
/// differ. `None` when either inversion fails.
pub fn referee_answer(
    ct: &Ciphertext,
    key: &TrapdoorKey,
    params: &Params,
    msg: &FirstMessage,
) -> Result<Option<BitString>> {
    let z = match invert(&ct.a, key, &msg.w, params.tau)? {
        Some(z) => z,
        None => return Ok(None),
    };
    let z1 = match invert(&ct.a, key, &msg.w.add(&ct.v)?, params.tau)? {
        Some(z) => z,
        None => return Ok(None),
    };
    Ok(Some(answer_from_preimages(&z, &z1, params, &msg.ells)))
}

fn answer_from_preimages(z: &ZqVec, z1: &ZqVec, params: &Params, ells: &BitString) -> BitString {
    let off = params.message_offset();
    let mut a = BitString::from_bits((0..params.d).map(|j| (z.get(off + j) & 1) as u8));
    let (bz, bz1) = (z.binary_repr(), z1.binary_repr());
    let last = measured_positions(params)
        .iter()
        .zip(ells.iter())
        .fold(0u8, |acc, (&p, l)| acc ^ (l & (bz.get(p) ^ bz1.get(p))));
    a.push(last);
    a
}

#[derive(Clone, Debug)]
pub struct GameRReport {
    pub game: String,
    pub prover: String,
    pub stats: ScoreStats,
    /// Score over trials where both `E` and `F` held (honest prover only).
    pub conditional: Option<ScoreStats>,
    pub e_rate: Option<f64>,
    pub f_rate: Option<f64>,
    pub invert_fail_rate: f64,
    pub transcripts: Vec<Transcript>,
}

/// Everything a single trial needs, shared by Game R and Experiment `S_1`.
pub(crate) fn play_trial(
    prover: &Prover,
    params: &Params,
    seed: u64,
    label: &str,
    trial: u64,
    sequential: bool,
) -> Result<Transcript> {
    let d = params.d;
    let mut rng = stream(seed, label, trial);
    let mut x = BitString::random(d, &mut rng);
    x.push(1);
    let mut y = BitString::random(d, &mut rng);
    y.push(1);
    let enc = encrypt(&x.prefix(d), params, &mut rng)?;
    let ct = &enc.ciphertext;
    let coins = random_coins(&mut rng);

    let (msg, honest_state, mem) = match prover {
        Prover::Honest => {
            let hr = honest_first_round(&enc, params, &mut rng)?;
            let ells = BitString::from_bits(measured_positions(params).iter().map(|&p| hr.ells.get(p)));
            (FirstMessage { w: hr.w.clone(), ells }, Some(hr), None)
        }
        Prover::Classical(p) => {
            let input = FirstRoundInput {
                ciphertext: ct,
                params,
                coins: &coins,
                leaked_trapdoor: if p.wants_trapdoor() { Some(&enc.trapdoor) } else { None },
            };
            let (msg, mem) = p.first_response(&input)?;
            (msg, None, Some(mem))
        }
    };

    let answer = referee_answer(ct, &enc.trapdoor, params, &msg)?;
    let invert_fail = answer.is_none();
    let a = answer.unwrap_or_else(|| BitString::random(d + 1, &mut rng));

    let b = match (prover, &honest_state, &mem) {
        (Prover::Honest, Some(hr), _) => honest_second_round(&hr.claw, &y, &mut rng)?,
        (Prover::Classical(p), _, Some(mem)) if sequential => {
            BitString::from_bits((1..=d + 1).map(|i| p.next_bit(&y.prefix(i), d, mem)))
        }
        (Prover::Classical(p), _, Some(mem)) => p.second_response(&y, mem),
        _ => unreachable!("prover state matches prover kind"),
    };
    let score = j_score(&x, &y, &a, &b)?;
    Ok(Transcript {
        game: label.to_string(),
        trial,
        x,
        y,
        a,
        b,
        w: Some(msg.w.entries().to_vec()),
        ells: Some(msg.ells),
        score,
        e_flag: honest_state.as_ref().map(|h| h.e_held),
        f_flag: honest_state.as_ref().map(|h| h.f_held),
        seed,
        invert_fail: Some(invert_fail),
    })
}

pub(crate) fn collect_trials<F>(trials: u64, f: F) -> Result<Vec<Transcript>>
where
    F: Fn(u64) -> Result<Transcript> + Sync + Send,
{
    (0..trials).into_par_iter().map(f).collect()
}

fn rate(ts: &[Transcript], pick: impl Fn(&Transcript) -> Option<bool>) -> Option<f64> {
    let flags: Option<Vec<bool>> = ts.iter().map(pick).collect();
    flags.filter(|f| !f.is_empty()).map(|f| f.iter().filter(|&&b| b).count() as f64 / f.len() as f64)
}

/// Plays `trials` rounds of Game `R` (or `R'` when `sequential`).
pub fn run_game_r(prover: &Prover, params: &Params, trials: u64, seed: u64, sequential: bool) -> Result<GameRReport> {
    params.check_runnable()?;
    let game = if sequential { "Rseq" } else { "R" };
    let transcripts = collect_trials(trials, |t| play_trial(prover, params, seed, game, t, sequential))?;
    Ok(summarize(game, prover.name(), transcripts))
}

pub(crate) fn summarize(game: &str, prover: &str, transcripts: Vec<Transcript>) -> GameRReport {
    let stats = ScoreStats::from_scores(transcripts.iter().map(|t| t.score as f64));
    let e_rate = rate(&transcripts, |t| t.e_flag);
    let f_rate = rate(&transcripts, |t| t.f_flag);
    let conditional = e_rate.map(|_| {
        ScoreStats::from_scores(
            transcripts.iter().filter(|t| t.e_flag == Some(true) && t.f_flag == Some(true)).map(|t| t.score as f64),
        )
    });
    let fails = transcripts.iter().filter(|t| t.invert_fail == Some(true)).count();
    let invert_fail_rate = if transcripts.is_empty() { 0.0 } else { fails as f64 / transcripts.len() as f64 };
    GameRReport {
        game: game.to_string(),
        prover: prover.to_string(),
        stats,
        conditional,
        e_rate,
        f_rate,
        invert_fail_rate,
        transcripts,
    }
}
