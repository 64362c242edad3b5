//! The two-player games `J_d` and `J'_d`.
//!
//! Alice gets `x`, Bob gets `y`, both in `{0,1}^d x {1}`; they answer `a, b in {0,1}^{d+1}`.
//! With `u_i = x_i (-1)^{a_i}` and `v_i = y_i + 2 b_i` the score is `+1` when
//! `u.v mod 4` is 0 or 1 and `-1` otherwise. In `J'_d` Bob is time-ordered: `b_i` reads
//! only `y_1..y_i` (and `b_{d+1}` may read all of `y`).
//!
//! Deterministic strategies here are tables indexed by the first `d` input bits, since the
//! last input bit is always one.

use num_complex::Complex64;
use rand::Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fourier::SubsetOfGroup;
use crate::games::strategy::{DependentFamily, DeterministicStrategy};
use crate::Rational;

/// Largest `alice_tables * bob_tables * 4^d` the bias search accepts.
pub const J_SEARCH_LIMIT: u128 = 1 << 28;

pub fn j_sample_inputs<R: Rng + ?Sized>(d: usize, rng: &mut R) -> (BitString, BitString) {
    let mut x = BitString::random(d, rng);
    let mut y = BitString::random(d, rng);
    x.push(1);
    y.push(1);
    (x, y)
}

/// `u.v mod 4` for masks of length `d + 1`.
#[inline]
pub fn uv_mod4(x: u64, y: u64, a: u64, b: u64) -> u32 {
    // where y_i = 1 the term is (-1)^{a_i} (1 + 2 b_i) = 1 + 2 (a_i xor b_i) mod 4;
    // where y_i = 0 it is 2 b_i whatever the sign
    let act = x & y;
    (act.count_ones() + 2 * ((act & (a ^ b)).count_ones() + (x & !y & b).count_ones())) % 4
}

#[inline]
pub fn j_score_mask(x: u64, y: u64, a: u64, b: u64) -> i8 {
    if uv_mod4(x, y, a, b) <= 1 {
        1
    } else {
        -1
    }
}

pub fn j_score(x: &BitString, y: &BitString, a: &BitString, b: &BitString) -> Result<i8> {
    let len = x.len();
    if y.len() != len || a.len() != len || b.len() != len {
        return Err(Error::LengthMismatch(format!(
            "x, y, a, b have lengths {}, {}, {}, {}",
            x.len(),
            y.len(),
            a.len(),
            b.len()
        )));
    }
    if len > 64 {
        return Err(Error::LengthMismatch("strings longer than 64 bits".into()));
    }
    Ok(j_score_mask(x.to_mask(), y.to_mask(), a.to_mask(), b.to_mask()))
}

/// A `J_d` strategy: table from the first `d` input bits to `d + 1` answer bits.
pub fn j_strategy_family(d: usize) -> DependentFamily {
    DependentFamily::unrestricted(d, d + 1)
}

/// Bob's `J'_d` family: `b_i` reads `y_1..y_i` for `i <= d`, `b_{d+1}` reads all of `y`.
pub fn j_sequential_family(d: usize) -> DependentFamily {
    let mut deps: Vec<usize> = (1..=d).collect();
    deps.push(d);
    DependentFamily::new(d, deps)
}

/// Exact expected score of `(alice, bob)` over uniform inputs.
pub fn j_strategy_value(d: usize, alice: &DeterministicStrategy, bob: &DeterministicStrategy) -> Rational {
    let top = 1u64 << d;
    let mut total = 0i128;
    for xs in 0..top {
        let a = alice.eval_mask(xs);
        for ys in 0..top {
            total += j_score_mask(xs | top, ys | top, a, bob.eval_mask(ys)) as i128;
        }
    }
    Rational::new(total, 1i128 << (2 * d))
}

/// Exact classical bias `max |E[score]|` over deterministic strategy pairs. Bob's tables are
/// enumerated; Alice's best and worst replies are chosen per input.
pub fn j_bias_bruteforce(d: usize, sequential: bool) -> Result<Rational> {
    if d == 0 {
        return Err(Error::InvalidConfig("d must be at least 1".into()));
    }
    let alice_count = DeterministicStrategy::count(d, d + 1);
    let bob_family = if sequential { j_sequential_family(d) } else { j_strategy_family(d) };
    let size = alice_count.saturating_mul(bob_family.count()).saturating_mul(1u128 << (2 * d).min(127));
    if size > J_SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge { size, limit: J_SEARCH_LIMIT });
    }
    let top = 1u64 << d;
    let best = bob_family
        .iter()
        .map(|bob| {
            let (mut hi, mut lo) = (0i128, 0i128);
            for xs in 0..top {
                let sums = (0..1u64 << (d + 1)).map(|a| {
                    (0..top).map(|ys| j_score_mask(xs | top, ys | top, a, bob.eval_mask(ys)) as i128).sum::<i128>()
                });
                let (mx, mn) = sums.fold((i128::MIN, i128::MAX), |(mx, mn), s| (mx.max(s), mn.min(s)));
                hi += mx;
                lo += mn;
            }
            hi.max(-lo)
        })
        .max()
        .expect("nonempty family");
    Ok(Rational::new(best, 1i128 << (2 * d)))
}

/// Result of comparing the direct expected score with its Fourier expression.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierIdentity {
    pub direct: Rational,
    /// `2 Re[(1 - i) <f^, g>]`.
    pub fourier: f64,
    /// `|<f^, g>|`.
    pub inner_abs: f64,
    pub eta_v: Rational,
    pub eta_v_prime: Rational,
}

impl FourierIdentity {
    pub fn identity_error(&self) -> f64 {
        (to_f64(self.direct) - self.fourier).abs()
    }

    /// `|direct| <= 2 sqrt 2 |<f^, g>| <= 2 eta(V)^{1/4} <= 2 eta(V')^{1/4}`, with `1e-9` slack.
    pub fn chain_holds(&self) -> bool {
        let tol = 1e-9;
        let a = to_f64(self.direct).abs();
        let b = 2.0 * std::f64::consts::SQRT_2 * self.inner_abs;
        let c = 2.0 * to_f64(self.eta_v).powf(0.25);
        let e = 2.0 * to_f64(self.eta_v_prime).powf(0.25);
        a <= b + tol && b <= c + tol && c <= e + tol
    }
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Alice's vectors `u(x)` in `Z_4^{d+1}` (entries `-1, 0, 1` stored as `3, 0, 1`).
pub fn alice_set(d: usize, alice: &DeterministicStrategy) -> SubsetOfGroup {
    let top = 1u64 << d;
    let elems: Vec<Vec<usize>> = (0..top)
        .map(|xs| {
            let x = xs | top;
            let a = alice.eval_mask(xs);
            (0..=d)
                .map(|i| match ((x >> i) & 1, (a >> i) & 1) {
                    (0, _) => 0,
                    (_, 0) => 1,
                    _ => 3,
                })
                .collect()
        })
        .collect();
    SubsetOfGroup::from_elements(4, d + 1, elems.iter().map(|e| e.as_slice()))
}

/// Bob's vectors `v(y) = y + 2 b(y)` in `Z_4^{d+1}`.
pub fn bob_set(d: usize, bob: &DeterministicStrategy) -> SubsetOfGroup {
    let top = 1u64 << d;
    let elems: Vec<Vec<usize>> = (0..top)
        .map(|ys| {
            let y = ys | top;
            let b = bob.eval_mask(ys);
            (0..=d).map(|i| (((y >> i) & 1) + 2 * ((b >> i) & 1)) as usize).collect()
        })
        .collect();
    SubsetOfGroup::from_elements(4, d + 1, elems.iter().map(|e| e.as_slice()))
}

/// Evaluates the expected score of `(alice, bob)` both directly and as
/// `2 Re[(1 - i) <f^, g>]`, where `f` and `g` are the `2^{-d/2}`-scaled indicators of Bob's
/// and Alice's vector sets.
pub fn j_bias_fourier_identity(
    alice: &DeterministicStrategy,
    bob: &DeterministicStrategy,
    d: usize,
) -> Result<FourierIdentity> {
    if d == 0 || d > 3 {
        return Err(Error::InvalidConfig(format!("the Fourier identity is checked for 1 <= d <= 3, got {d}")));
    }
    for s in [alice, bob] {
        if s.input_bits() != d || s.output_bits() != d + 1 {
            return Err(Error::LengthMismatch(format!("strategies must map {d} bits to {} bits", d + 1)));
        }
    }
    let u = alice_set(d, alice);
    let v = bob_set(d, bob);
    let scale = Complex64::new((2.0f64).powf(-(d as f64) / 2.0), 0.0);
    let f = v.indicator().scale(scale);
    let g = u.indicator().scale(scale);
    let inner = f.dft().inner(&g)?;
    let fourier = 2.0 * (Complex64::new(1.0, -1.0) * inner).re;
    Ok(FourierIdentity {
        direct: j_strategy_value(d, alice, bob),
        fourier,
        inner_abs: inner.norm(),
        eta_v: v.eta()?,
        eta_v_prime: v.drop_last_coordinate()?.eta()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn score_examples() {
        assert_eq!(j_score(&bits("11"), &bits("01"), &bits("00"), &bits("00")), Ok(1));
        assert_eq!(j_score(&bits("11"), &bits("11"), &bits("00"), &bits("01")), Ok(1));
        assert_eq!(j_score(&bits("01"), &bits("01"), &bits("00"), &bits("01")), Ok(-1));
        assert!(matches!(j_score(&bits("1"), &bits("01"), &bits("00"), &bits("01")), Err(Error::LengthMismatch(_))));
    }

    #[test]
    fn uv_matches_integer_arithmetic() {
        for x in 0..8u64 {
            for y in 0..8u64 {
                for a in 0..8u64 {
                    for b in 0..8u64 {
                        let dot: i64 = (0..3)
                            .map(|i| {
                                let u = ((x >> i) & 1) as i64 * if (a >> i) & 1 == 1 { -1 } else { 1 };
                                let v = ((y >> i) & 1) as i64 + 2 * ((b >> i) & 1) as i64;
                                u * v
                            })
                            .sum();
                        assert_eq!(uv_mod4(x, y, a, b), dot.rem_euclid(4) as u32);
                    }
                }
            }
        }
    }

    #[test]
    fn sequential_family_shape() {
        assert_eq!(j_sequential_family(1).count(), 16);
        assert_eq!(j_sequential_family(2).count(), 1024);
        assert!(j_sequential_family(2).iter().all(|s| s.is_time_ordered()));
    }

    #[test]
    fn bias_search_ceiling() {
        assert!(matches!(j_bias_bruteforce(3, false), Err(Error::SearchSpaceTooLarge { .. })));
    }

    #[test]
    fn all_zero_identity() {
        let z = DeterministicStrategy::constant(1, 2, 0);
        let id = j_bias_fourier_identity(&z, &z, 1).unwrap();
        assert!(id.identity_error() < 1e-9);
        assert!(id.chain_holds());
    }
}
