//! The soundness experiments `S_1`, `S_2`, `S_3` and the distinguishers `E` and `E'`.

use rand::Rng;
use rayon::prelude::*;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::games::jgame::j_score;
use crate::lattice::{encrypt, uniform_ciphertext, Ciphertext};
use crate::params::Params;
use crate::protocol::attack::best_score;
use crate::protocol::game_r::{collect_trials, play_trial, summarize, GameRReport, Prover};
use crate::protocol::provers::{random_coins, ClassicalProver, FirstRoundInput, ProverMemory};
use crate::protocol::stats::ScoreStats;
use crate::protocol::transcript::Transcript;
use crate::rng::{stream, StreamRng};

/// Largest `d` for which the experiments enumerate all `2^d` challenges.
pub const MAX_REWIND_D: usize = 14;

fn check_rewind(d: usize) -> Result<()> {
    if d > MAX_REWIND_D {
        return Err(Error::DTooLarge { d, max: MAX_REWIND_D });
    }
    Ok(())
}

/// Every challenge `y` in `{0,1}^d x {1}`.
pub fn all_challenges(d: usize) -> Vec<BitString> {
    (0..1u64 << d).map(|m| BitString::from_mask(m | 1 << d, d + 1)).collect()
}

fn sample_input(d: usize, rng: &mut StreamRng) -> BitString {
    let mut x = BitString::random(d, rng);
    x.push(1);
    x
}

fn answers(prover: &dyn ClassicalProver, ys: Vec<BitString>, mem: &ProverMemory) -> Vec<(BitString, BitString)> {
    ys.into_iter()
        .map(|y| {
            let b = prover.second_response(&y, mem);
            (y, b)
        })
        .collect()
}

/// `S_1`: the referee's procedure with the trapdoor handed to Alice. Same draws as Game R.
pub fn experiment_s1(prover: Box<dyn ClassicalProver>, params: &Params, trials: u64, seed: u64) -> Result<GameRReport> {
    params.check_runnable()?;
    let prover = Prover::Classical(prover);
    let transcripts = collect_trials(trials, |t| play_trial(&prover, params, seed, "S1", t, false))?;
    Ok(summarize("S1", prover.name(), transcripts))
}

fn rewound_trial(
    prover: &dyn ClassicalProver,
    params: &Params,
    seed: u64,
    label: &str,
    trial: u64,
    real: bool,
) -> Result<Transcript> {
    let d = params.d;
    let mut rng = stream(seed, label, trial);
    let x = sample_input(d, &mut rng);
    let y = sample_input(d, &mut rng);
    let (ct, key) = if real {
        let enc = encrypt(&x.prefix(d), params, &mut rng)?;
        (enc.ciphertext, Some(enc.trapdoor))
    } else {
        (uniform_ciphertext(params, &mut rng), None)
    };
    let coins = random_coins(&mut rng);
    let input = FirstRoundInput {
        ciphertext: &ct,
        params,
        coins: &coins,
        leaked_trapdoor: key.as_ref().filter(|_| prover.wants_trapdoor()),
    };
    let (msg, mem) = prover.first_response(&input)?;
    let best = best_score(&x, &answers(prover, all_challenges(d), &mem))?;
    let b = prover.second_response(&y, &mem);
    let score = j_score(&x, &y, &best.a, &b)?;
    Ok(Transcript {
        game: label.into(),
        trial,
        x,
        y,
        a: best.a,
        b,
        w: Some(msg.w.entries().to_vec()),
        ells: Some(msg.ells),
        score,
        e_flag: None,
        f_flag: None,
        seed,
        invert_fail: None,
    })
}

/// `S_2`: Alice rewinds the prover over all `2^d` challenges and answers the best `a`.
pub fn experiment_s2(prover: Box<dyn ClassicalProver>, params: &Params, trials: u64, seed: u64) -> Result<GameRReport> {
    params.check_runnable()?;
    check_rewind(params.d)?;
    let ts = collect_trials(trials, |t| rewound_trial(prover.as_ref(), params, seed, "S2", t, true))?;
    Ok(summarize("S2", prover.name(), ts))
}

/// `S_3`: as `S_2`, but `(A, v)` is uniform.
pub fn experiment_s3(prover: Box<dyn ClassicalProver>, params: &Params, trials: u64, seed: u64) -> Result<GameRReport> {
    params.check_runnable()?;
    check_rewind(params.d)?;
    let ts = collect_trials(trials, |t| rewound_trial(prover.as_ref(), params, seed, "S3", t, false))?;
    Ok(summarize("S3", prover.name(), ts))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EOutcome {
    /// 0: real encryption, 1: uniform `(A, v)`.
    pub b: u8,
    pub rho: f64,
    pub r: i8,
    /// 0 exactly when `r = +1`.
    pub guess: u8,
}

/// One run of Experiment `E` (`alpha = None`) or `E'` (`alpha = Some(_)` sampled challenges,
/// with replacement).
pub fn experiment_e<R: Rng + ?Sized>(
    prover: &dyn ClassicalProver,
    params: &Params,
    alpha: Option<usize>,
    rng: &mut R,
) -> Result<EOutcome> {
    params.check_runnable()?;
    let d = params.d;
    let ys = match alpha {
        None => {
            check_rewind(d)?;
            None
        }
        Some(0) => return Err(Error::InvalidConfig("alpha must be at least 1".into())),
        Some(a) => Some(a),
    };
    let b: u8 = rng.gen_range(0..2);
    let mut x = BitString::random(d, rng);
    x.push(1);
    let (ct, key): (Ciphertext, _) = if b == 0 {
        let enc = encrypt(&x.prefix(d), params, rng)?;
        (enc.ciphertext, Some(enc.trapdoor))
    } else {
        (uniform_ciphertext(params, rng), None)
    };
    let coins = random_coins(rng);
    let input = FirstRoundInput {
        ciphertext: &ct,
        params,
        coins: &coins,
        leaked_trapdoor: key.as_ref().filter(|_| prover.wants_trapdoor()),
    };
    let (_, mem) = prover.first_response(&input)?;
    let challenges = match ys {
        None => all_challenges(d),
        Some(a) => (0..a)
            .map(|_| {
                let mut y = BitString::random(d, rng);
                y.push(1);
                y
            })
            .collect(),
    };
    let rho = best_score(&x, &answers(prover, challenges, &mem))?.value;
    let r = if rng.gen::<f64>() < (1.0 + rho) / 2.0 { 1 } else { -1 };
    Ok(EOutcome { b, rho, r, guess: if r == 1 { 0 } else { 1 } })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EReport {
    pub reps: u64,
    pub alpha: Option<usize>,
    /// `r` given `b = 0`.
    pub arm0: ScoreStats,
    /// `r` given `b = 1`.
    pub arm1: ScoreStats,
    pub rho0: f64,
    pub rho1: f64,
    /// `P[guess 0 | b = 0] - P[guess 0 | b = 1] = (E[r | b=0] - E[r | b=1]) / 2`.
    pub advantage: f64,
    pub stderr: f64,
    pub outcomes: Vec<EOutcome>,
}

impl EReport {
    pub fn ci95(&self) -> (f64, f64) {
        (self.advantage - 1.96 * self.stderr, self.advantage + 1.96 * self.stderr)
    }
}

pub fn run_experiment_e(
    prover: &dyn ClassicalProver,
    params: &Params,
    alpha: Option<usize>,
    reps: u64,
    seed: u64,
) -> Result<EReport> {
    let label = if alpha.is_some() { "Eprime" } else { "E" };
    let outcomes: Vec<EOutcome> = (0..reps)
        .into_par_iter()
        .map(|i| experiment_e(prover, params, alpha, &mut stream(seed, label, i)))
        .collect::<Result<_>>()?;
    let arm = |b: u8| ScoreStats::from_scores(outcomes.iter().filter(|o| o.b == b).map(|o| o.r as f64));
    let rho = |b: u8| {
        let v: Vec<f64> = outcomes.iter().filter(|o| o.b == b).map(|o| o.rho).collect();
        if v.is_empty() {
            0.0
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    let (arm0, arm1) = (arm(0), arm(1));
    Ok(EReport {
        reps,
        alpha,
        advantage: (arm0.mean - arm1.mean) / 2.0,
        stderr: (arm0.stderr.powi(2) + arm1.stderr.powi(2)).sqrt() / 2.0,
        rho0: rho(0),
        rho1: rho(1),
        arm0,
        arm1,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::provers::{BlindProver, TrapdoorLeakProver};

    fn small() -> Params {
        Params::desk_default().with_d(3).unwrap()
    }

    #[test]
    fn challenges_end_in_one() {
        let ys = all_challenges(3);
        assert_eq!(ys.len(), 8);
        assert!(ys.iter().all(|y| y.get(3) == 1));
    }

    #[test]
    fn leak_prover_in_rewound_experiments() {
        let s2 = experiment_s2(Box::new(TrapdoorLeakProver), &small(), 30, 3).unwrap();
        assert_eq!(s2.stats.mean, 1.0);
        let s3 = experiment_s3(Box::new(TrapdoorLeakProver), &small(), 30, 3).unwrap();
        assert!(s3.stats.mean < 1.0);
    }

    #[test]
    fn rewinding_budget() {
        let p = Params::desk(16, 4_294_967_311, 15, 2.0);
        if let Ok(p) = p {
            assert!(matches!(experiment_s2(Box::new(BlindProver), &p, 1, 0), Err(Error::DTooLarge { .. })));
        }
        assert!(matches!(check_rewind(15), Err(Error::DTooLarge { d: 15, max: 14 })));
    }

    #[test]
    fn leak_prover_distinguishes() {
        let r = run_experiment_e(&TrapdoorLeakProver, &small(), Some(8), 200, 4).unwrap();
        assert_eq!(r.rho0, 1.0);
        assert!(r.advantage > 0.1);
    }

    #[test]
    fn alpha_zero_rejected() {
        let mut rng = stream(0, "t", 0);
        assert!(experiment_e(&BlindProver, &small(), Some(0), &mut rng).is_err());
    }
}
