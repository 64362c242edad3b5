//! Classical prover models for Games `R` / `R'` and the soundness experiments.
//!
//! A classical prover is a pair of deterministic algorithms. `first_response` sees the
//! ciphertext and a 32-byte coin string and returns the round-one message together with a
//! private memory; `second_response` maps a second-round challenge `y` and that memory to
//! `b`. Running `second_response` on many `y` with the same memory is how the experiments
//! rewind a prover.

use rand::{Rng, SeedableRng};
use sha2::{Digest, Sha256};

use crate::algebra::ZqVec;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::games::jgame::uv_mod4;
use crate::lattice::{decrypt, Ciphertext, TrapdoorKey};
use crate::params::Params;
use crate::protocol::game_r::{measured_count, referee_answer};
use crate::rng::StreamRng;

pub type Coins = [u8; 32];
pub type ProverMemory = Vec<u8>;

pub struct FirstRoundInput<'a> {
    pub ciphertext: &'a Ciphertext,
    pub params: &'a Params,
    pub coins: &'a Coins,
    /// Set only for provers that ask for it and only when a trapdoor exists.
    pub leaked_trapdoor: Option<&'a TrapdoorKey>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstMessage {
    pub w: ZqVec,
    /// One bit per measured position, in increasing position order.
    pub ells: BitString,
}

pub trait ClassicalProver: Send + Sync {
    fn name(&self) -> &str;

    fn wants_trapdoor(&self) -> bool {
        false
    }

    fn first_response(&self, input: &FirstRoundInput<'_>) -> Result<(FirstMessage, ProverMemory)>;

    /// `b` for the full challenge `y` (length `d + 1`).
    fn second_response(&self, y: &BitString, mem: &ProverMemory) -> BitString;

    /// Bit `b_i` after seeing `y_1..y_i` (`y_prefix` has length `i`). The default runs
    /// [`ClassicalProver::second_response`] on the prefix padded with zeros (and the fixed
    /// final one), so `b_i` never depends on unseen bits.
    fn next_bit(&self, y_prefix: &BitString, d: usize, mem: &ProverMemory) -> u8 {
        let i = y_prefix.len();
        let mut y = y_prefix.clone();
        while y.len() < d {
            y.push(0);
        }
        if y.len() == d {
            y.push(1);
        }
        self.second_response(&y, mem).get(i - 1)
    }
}

fn coin_rng(coins: &Coins, label: &[u8]) -> StreamRng {
    let mut h = Sha256::new();
    h.update(label);
    h.update(coins);
    StreamRng::from_seed(h.finalize().into())
}

fn random_ells(params: &Params, rng: &mut StreamRng) -> BitString {
    BitString::random(measured_count(params), rng)
}

/// `d + 1` pseudo-random bits keyed by `(key, y)`.
fn hashed_bits(key: &[u8], y: &BitString) -> BitString {
    let mut h = Sha256::new();
    h.update(b"answer");
    h.update(key);
    h.update(y.as_slice());
    let digest = h.finalize();
    BitString::from_bits((0..y.len()).map(|i| (digest[(i / 8) % 32] >> (i % 8)) & 1))
}

/// Ignores the ciphertext: sends a random `w` and always answers `b = 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BlindProver;

impl ClassicalProver for BlindProver {
    fn name(&self) -> &str {
        "blind"
    }

    fn first_response(&self, input: &FirstRoundInput<'_>) -> Result<(FirstMessage, ProverMemory)> {
        let p = input.params;
        let mut rng = coin_rng(input.coins, b"blind");
        let w = ZqVec::random(p.m, p.q, &mut rng);
        let ells = random_ells(p, &mut rng);
        Ok((FirstMessage { w, ells }, Vec::new()))
    }

    fn second_response(&self, y: &BitString, _mem: &ProverMemory) -> BitString {
        BitString::zeros(y.len())
    }
}

/// Sends `w = A r` for coin-derived `r`, so the referee's inversion always succeeds, and
/// answers with bits hashed from `(coins, y)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct HashedProver;

impl ClassicalProver for HashedProver {
    fn name(&self) -> &str {
        "hashed"
    }

    fn first_response(&self, input: &FirstRoundInput<'_>) -> Result<(FirstMessage, ProverMemory)> {
        let p = input.params;
        let mut rng = coin_rng(input.coins, b"hashed");
        let r = ZqVec::random(p.n, p.q, &mut rng);
        let w = input.ciphertext.a.mul_vec(&r)?;
        let ells = random_ells(p, &mut rng);
        Ok((FirstMessage { w, ells }, input.coins.to_vec()))
    }

    fn second_response(&self, y: &BitString, mem: &ProverMemory) -> BitString {
        hashed_bits(mem, y)
    }
}

/// Test prover that is handed the trapdoor out of band.
///
/// With the trapdoor it decrypts `x`, sends a noiseless `w = A r`, predicts the referee's
/// `a` exactly and answers `b_1..b_d = 0` with `b_{d+1}` chosen to win. This wins every
/// round and never reads `y_i` before `b_i`. Without a trapdoor it behaves like
/// [`HashedProver`].
#[derive(Clone, Copy, Debug, Default)]
pub struct TrapdoorLeakProver;

// memory layout: [has_key, d, x_1..x_d, a_1..a_{d+1}] or [0, coins...]
impl ClassicalProver for TrapdoorLeakProver {
    fn name(&self) -> &str {
        "leak"
    }

    fn wants_trapdoor(&self) -> bool {
        true
    }

    fn first_response(&self, input: &FirstRoundInput<'_>) -> Result<(FirstMessage, ProverMemory)> {
        let p = input.params;
        let ct = input.ciphertext;
        let mut rng = coin_rng(input.coins, b"leak");
        let r = ZqVec::random(p.n, p.q, &mut rng);
        let w = ct.a.mul_vec(&r)?;
        let ells = random_ells(p, &mut rng);
        let msg = FirstMessage { w, ells };
        let keyed = match input.leaked_trapdoor {
            Some(key) => match decrypt(ct, key, p)? {
                Some(x) => referee_answer(ct, key, p, &msg)?.map(|a| (x, a)),
                None => None,
            },
            None => None,
        };
        let mem = match keyed {
            Some((x, a)) => {
                let mut mem = vec![1u8, p.d as u8];
                mem.extend(x.iter());
                mem.extend(a.iter());
                mem
            }
            None => {
                let mut mem = vec![0u8];
                mem.extend_from_slice(input.coins);
                mem
            }
        };
        Ok((msg, mem))
    }

    fn second_response(&self, y: &BitString, mem: &ProverMemory) -> BitString {
        if mem[0] == 0 {
            return hashed_bits(&mem[1..], y);
        }
        let d = mem[1] as usize;
        let mut x = BitString::from_bits(mem[2..2 + d].iter().copied());
        x.push(1);
        let a = BitString::from_bits(mem[2 + d..3 + 2 * d].iter().copied());
        let mut b = BitString::zeros(d + 1);
        if uv_mod4(x.to_mask(), y.to_mask(), a.to_mask(), 0) > 1 {
            // x_{d+1} = y_{d+1} = 1: flipping b_{d+1} shifts u.v by 2
            b.set(d, 1);
        }
        b
    }
}

/// Looks a prover up by name: `blind`, `hashed` or `leak`.
pub fn classical_prover(name: &str) -> Result<Box<dyn ClassicalProver>> {
    match name {
        "blind" => Ok(Box::new(BlindProver)),
        "hashed" => Ok(Box::new(HashedProver)),
        "leak" => Ok(Box::new(TrapdoorLeakProver)),
        other => Err(Error::InvalidConfig(format!("unknown classical prover {other:?}"))),
    }
}

pub fn random_coins<R: Rng + ?Sized>(rng: &mut R) -> Coins {
    rng.gen()
}
