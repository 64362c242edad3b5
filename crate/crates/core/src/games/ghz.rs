//! The `k`-player GHZ game and its `d`-fold parallel and sequential repetitions.
//!
//! Each player receives one bit per round and answers one bit per round. A round is won
//! when `x_1 + ... + x_k + 2(a_1 + ... + a_k) = 0 (mod 4)`; inputs are uniform over tuples
//! with an even number of ones. The repeated game is won when every round is won.

use rayon::prelude::*;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::games::strategy::{DependentFamily, DeterministicStrategy};
use crate::Rational;

/// Largest number of strategy tuples the brute-force search will visit.
pub const SEARCH_LIMIT: u128 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repetition {
    Single,
    Parallel(usize),
    /// Every player must be time-ordered.
    Sequential(usize),
}

impl Repetition {
    pub fn rounds(&self) -> usize {
        match *self {
            Repetition::Single => 1,
            Repetition::Parallel(d) | Repetition::Sequential(d) => d,
        }
    }

    fn family(&self) -> DependentFamily {
        match *self {
            Repetition::Sequential(d) => DependentFamily::time_ordered(d),
            other => DependentFamily::unrestricted(other.rounds(), other.rounds()),
        }
    }
}

/// `+1` if the round is won, `-1` otherwise.
pub fn ghz_score(k: usize, x: &BitString, a: &BitString) -> Result<i8> {
    if k < 3 {
        return Err(Error::InvalidConfig(format!("GHZ needs at least 3 players, got {k}")));
    }
    if x.len() != k || a.len() != k {
        return Err(Error::LengthMismatch(format!("expected {k} input and output bits")));
    }
    if x.parity() != 0 {
        return Err(Error::OddParityInput);
    }
    let s = x.weight() + 2 * a.weight();
    Ok(if s.is_multiple_of(4) { 1 } else { -1 })
}

/// All joint inputs of the `d`-round game: per player a `d`-bit mask, even parity in
/// every round.
pub fn joint_inputs(k: usize, d: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(1 << ((k - 1) * d));
    for free in 0u64..1 << ((k - 1) * d) {
        let mut xs: Vec<u64> = (0..k - 1).map(|j| (free >> (j * d)) & ((1 << d) - 1)).collect();
        let last = xs.iter().fold(0, |acc, x| acc ^ x);
        xs.push(last);
        out.push(xs);
    }
    out
}

/// Exact winning probability of a strategy tuple (one table per player, `d` bits in and out).
pub fn ghz_strategy_value(strategies: &[DeterministicStrategy]) -> Result<Rational> {
    let k = strategies.len();
    if k < 3 {
        return Err(Error::InvalidConfig(format!("GHZ needs at least 3 players, got {k}")));
    }
    let d = strategies[0].input_bits();
    if strategies.iter().any(|s| s.input_bits() != d || s.output_bits() != d) {
        return Err(Error::LengthMismatch("every player needs d input and d output bits".into()));
    }
    let inputs = joint_inputs(k, d);
    let wins = inputs
        .iter()
        .filter(|xs| {
            let outs: Vec<u64> = xs.iter().zip(strategies).map(|(&x, s)| s.eval_mask(x)).collect();
            (0..d).all(|r| {
                let s: u64 =
                    xs.iter().map(|x| (x >> r) & 1).sum::<u64>() + 2 * outs.iter().map(|a| (a >> r) & 1).sum::<u64>();
                s.is_multiple_of(4)
            })
        })
        .count();
    Ok(Rational::new(wins as i128, inputs.len() as i128))
}

/// The last player's best total win count, given `counts[x][a]` wins for answering `a` on `x`.
fn best_last_player(counts: &[[u32; 16]], d: usize, sequential: bool) -> u32 {
    if !sequential {
        return counts[..1 << d].iter().map(|row| *row[..1 << d].iter().max().unwrap()).sum();
    }
    // a_r may read x_0..x_r: recurse over input prefixes, choosing output bits as we go
    fn rec(counts: &[[u32; 16]], d: usize, r: usize, x: u64, a: u64) -> u32 {
        if r == d {
            return counts[x as usize][a as usize];
        }
        (0..2u64)
            .map(|xr| {
                let x = x | (xr << r);
                (0..2u64).map(|ar| rec(counts, d, r + 1, x, a | (ar << r))).max().unwrap()
            })
            .sum()
    }
    rec(counts, d, 0, 0, 0)
}

/// Exact classical value `omega^c` by exhaustive search: the first `k - 1` players are
/// enumerated and the last player's answer table is optimized directly.
pub fn ghz_value_bruteforce(k: usize, mode: Repetition) -> Result<Rational> {
    if k < 3 {
        return Err(Error::InvalidConfig(format!("GHZ needs at least 3 players, got {k}")));
    }
    let d = mode.rounds();
    if d == 0 {
        return Err(Error::InvalidConfig("at least one round is required".into()));
    }
    let family = mode.family();
    let per_player = family.count();
    let size = per_player.checked_pow(k as u32).unwrap_or(u128::MAX);
    if d > 4 || size > SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge { size, limit: SEARCH_LIMIT });
    }
    let sequential = matches!(mode, Repetition::Sequential(_));
    let tables: Vec<DeterministicStrategy> = family.iter().collect();
    let inputs = joint_inputs(k, d);
    let outer = per_player.pow(k as u32 - 1) as u64;
    let best = (0..outer)
        .into_par_iter()
        .map(|idx| {
            let mut rest = idx;
            let players: Vec<&DeterministicStrategy> = (0..k - 1)
                .map(|_| {
                    let t = &tables[(rest % per_player as u64) as usize];
                    rest /= per_player as u64;
                    t
                })
                .collect();
            let mut counts = [[0u32; 16]; 16];
            for xs in &inputs {
                let mut need = 0u64;
                for r in 0..d {
                    let mut s = (xs[k - 1] >> r) & 1;
                    for (j, p) in players.iter().enumerate() {
                        s += ((xs[j] >> r) & 1) + 2 * ((p.eval_mask(xs[j]) >> r) & 1);
                    }
                    // s is even; the last player must contribute 2 a = -s (mod 4)
                    need |= (((4 - s % 4) % 4) / 2) << r;
                }
                counts[xs[k - 1] as usize][need as usize] += 1;
            }
            best_last_player(&counts, d, sequential)
        })
        .max()
        .unwrap_or(0);
    Ok(Rational::new(best as i128, inputs.len() as i128))
}

/// Winning probability of single-round GHZ_4 from the product
/// `v_1 v_2 v_3 v_4` with `v_j = ((-1)^{F_j(0)} + i (-1)^{F_j(1)}) / sqrt 2`.
///
/// `tables[j]` packs `F_j(0)` in bit 0 and `F_j(1)` in bit 1. The product is evaluated in
/// Gaussian integers, so the result is exact.
pub fn ghz4_closed_form(tables: [u8; 4]) -> Rational {
    let (mut re, mut im) = (1i64, 0i64);
    for t in tables {
        let a = if t & 1 == 0 { 1 } else { -1 };
        let b = if t & 2 == 0 { 1 } else { -1 };
        (re, im) = (re * a - im * b, re * b + im * a);
    }
    // (sqrt 2)^4 = 4, and the real part enters with weight 1/4
    Rational::new(1, 2) + Rational::new(re as i128, 16)
}

/// Single-bit table `F_j` packed as in [`ghz4_closed_form`], as a strategy.
pub fn single_bit_strategy(table: u8) -> DeterministicStrategy {
    DeterministicStrategy::from_fn(1, 1, |x| ((table >> x) & 1) as u64)
}

/// Three-player strategy built from a four-player one: the third player answers
/// `F_t(z) = U(t) xor V(t xor z) xor (not z and t)`.
pub fn reduce_ghz4_to_ghz3(
    s: &DeterministicStrategy,
    t_strat: &DeterministicStrategy,
    u: &DeterministicStrategy,
    v: &DeterministicStrategy,
    t: u64,
) -> [DeterministicStrategy; 3] {
    let d = s.input_bits();
    let full = (1u64 << d) - 1;
    let f = DeterministicStrategy::from_fn(d, d, |z| u.eval_mask(t) ^ v.eval_mask(t ^ z) ^ (!z & t & full));
    [s.clone(), t_strat.clone(), f]
}
