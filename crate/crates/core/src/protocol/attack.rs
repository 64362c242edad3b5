//! Rewinding attack machinery: `DecodeError`, `BestScore`, the sampling bound and the
//! attack-plan arithmetic.

use rand::Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::games::jgame::uv_mod4;

/// Minimum over `z` of the Hamming weight of `B z + w` over GF(2).
///
/// `rows[j]` is row `j` of `B` packed as a mask. Columns that are zero in every row cannot
/// change `B z`, so only assignments to the nonzero columns are enumerated. Returns the
/// minimum and a minimizing `z` (zero outside the nonzero columns).
pub fn decode_error_with_witness(rows: &[u64], w: &[u8]) -> (usize, u64) {
    assert_eq!(rows.len(), w.len(), "B and w must have the same number of rows");
    let support = rows.iter().fold(0u64, |acc, r| acc | r);
    let mut best = (w.iter().filter(|&&b| b != 0).count(), 0u64);
    // walk every submask of `support`
    let mut z = support;
    loop {
        let err = rows.iter().zip(w).filter(|(r, &wj)| ((*r & z).count_ones() as u8 & 1) != (wj & 1)).count();
        if err < best.0 || (err == best.0 && z < best.1) {
            best = (err, z);
        }
        if z == 0 {
            break;
        }
        z = (z - 1) & support;
    }
    best
}

pub fn decode_error(rows: &[u64], w: &[u8]) -> usize {
    decode_error_with_witness(rows, w).0
}

#[derive(Clone, Debug, PartialEq)]
pub struct BestScore {
    /// `1 - 2 errors / pairs`.
    pub value: f64,
    pub errors: usize,
    pub pairs: usize,
    /// An answer achieving `value`.
    pub a: BitString,
}

/// Best average score an answer `a` can reach against the listed `(y, b)` pairs for input
/// `x`.
///
/// Row `j` of `B` is `x & y_j` and `w_j = 0` exactly when `(x, y_j, a = 0, b_j)` wins.
/// Answering `a = z` flips the outcome of pair `j` exactly when `<x & y_j, z>` is odd.
pub fn best_score(x: &BitString, pairs: &[(BitString, BitString)]) -> Result<BestScore> {
    if pairs.is_empty() {
        return Err(Error::EmptyPairs);
    }
    let len = x.len();
    if len > 64 {
        return Err(Error::LengthMismatch("strings longer than 64 bits".into()));
    }
    let xm = x.to_mask();
    let mut rows = Vec::with_capacity(pairs.len());
    let mut w = Vec::with_capacity(pairs.len());
    for (y, b) in pairs {
        if y.len() != len || b.len() != len {
            return Err(Error::LengthMismatch(format!("pair lengths {}, {} differ from x ({len})", y.len(), b.len())));
        }
        let (ym, bm) = (y.to_mask(), b.to_mask());
        rows.push(xm & ym);
        w.push((uv_mod4(xm, ym, 0, bm) > 1) as u8);
    }
    let (errors, z) = decode_error_with_witness(&rows, &w);
    let c = pairs.len();
    Ok(BestScore { value: 1.0 - 2.0 * errors as f64 / c as f64, errors, pairs: c, a: BitString::from_mask(z, len) })
}

/// `(2 + sqrt(log alpha + 2 log |S|)) / sqrt alpha`, with natural or base-2 logarithms.
pub fn sampling_bound(alpha: u64, log2_set_size: f64, base2: bool) -> f64 {
    let a = alpha.max(1) as f64;
    let (log_a, log_s) =
        if base2 { (a.log2(), log2_set_size) } else { (a.ln(), log2_set_size * std::f64::consts::LN_2) };
    (2.0 + (log_a + 2.0 * log_s).sqrt()) / a.sqrt()
}

/// `2 (3/4)^{d/4}`, the classical ceiling for `J'_d`.
pub fn classical_ceiling(d: usize) -> f64 {
    2.0 * 0.75f64.powf(d as f64 / 4.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttackPlan {
    pub d: usize,
    pub epsilon: f64,
    pub alpha: u64,
    pub base2: bool,
    pub ceiling: f64,
    /// `ceiling` rounded up to 4 decimals.
    pub ceiling_rounded: f64,
    pub slack: f64,
    /// Score a cheating prover must reach: `ceiling + epsilon`.
    pub threshold: f64,
    /// The same threshold computed from the rounded ceiling.
    pub threshold_from_rounded: f64,
    /// Guaranteed gap `E[r | b=0] - E[r | b=1]` above zero: `epsilon - 2 slack`.
    pub gap: f64,
    /// Upper bound for `E[r | b=1]`: `ceiling + slack`.
    pub arm1_bound: f64,
    /// Lower bound for `E[r | b=0]`: `ceiling + epsilon - slack`.
    pub arm0_bound: f64,
    /// Bit operations for the decoder over all `2^{d+1}` candidates: `2^{d+1} alpha (d+1)`.
    pub decode_work: f64,
    /// The same when only `stripped_columns` nonzero columns remain.
    pub decode_work_stripped: f64,
    /// `ceil(3d/4)`: a cap on the weight of `x`, which bounds the nonzero columns of `B`.
    pub stripped_columns: usize,
    /// Probability that `x` (uniform first `d` bits, last bit one) exceeds that weight.
    pub weight_tail: f64,
}

fn round_up4(x: f64) -> f64 {
    (x * 1e4).ceil() / 1e4
}

fn binomial_tail(n: usize, k: usize) -> f64 {
    // P[Bin(n, 1/2) > k]
    let mut c = 1.0f64;
    let mut total = 0.0;
    for i in 0..=n {
        if i > k {
            total += c;
        }
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    total / 2f64.powi(n as i32)
}

/// Arithmetic for the rewinding distinguisher at secret length `d`, target advantage
/// `epsilon` and `alpha` sampled challenges.
pub fn attack_plan(d: usize, epsilon: f64, alpha: u64, base2: bool) -> AttackPlan {
    let ceiling = classical_ceiling(d);
    let slack = sampling_bound(alpha, d as f64, base2);
    let ceiling_rounded = round_up4(ceiling);
    let cols = (d * 3).div_ceil(4).min(d + 1);
    let candidates = 2f64.powi(d as i32 + 1);
    AttackPlan {
        d,
        epsilon,
        alpha,
        base2,
        ceiling,
        ceiling_rounded,
        slack,
        threshold: ceiling + epsilon,
        threshold_from_rounded: ceiling_rounded + epsilon,
        gap: epsilon - 2.0 * slack,
        arm1_bound: ceiling + slack,
        arm0_bound: ceiling + epsilon - slack,
        decode_work: candidates * alpha as f64 * (d + 1) as f64,
        decode_work_stripped: 2f64.powi(cols as i32) * alpha as f64 * cols as f64,
        stripped_columns: cols,
        weight_tail: binomial_tail(d, cols.saturating_sub(1)),
    }
}

/// `max_s mean_t F(s, t)` for a row-major `|S| x |T|` table.
pub fn max_average(table: &[f64], t_count: usize) -> f64 {
    table.chunks(t_count).map(|row| row.iter().sum::<f64>() / t_count as f64).fold(f64::NEG_INFINITY, f64::max)
}

/// `max_s` of the average of `F(s, t_i)` over `alpha` uniform draws `t_i` shared by all `s`.
pub fn sampled_max_average<R: Rng + ?Sized>(table: &[f64], t_count: usize, alpha: usize, rng: &mut R) -> f64 {
    let ts: Vec<usize> = (0..alpha).map(|_| rng.gen_range(0..t_count)).collect();
    table
        .chunks(t_count)
        .map(|row| ts.iter().map(|&t| row[t]).sum::<f64>() / alpha as f64)
        .fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingCheck {
    pub lambda: f64,
    pub mean_lambda_prime: f64,
    pub gap: f64,
    pub bound: f64,
}

impl SamplingCheck {
    pub fn holds(&self) -> bool {
        self.gap <= self.bound
    }
}

/// Compares the exact maximum average of `table` with the mean of `reps` sampled maxima.
pub fn sampling_check<R: Rng + ?Sized>(
    table: &[f64],
    t_count: usize,
    alpha: usize,
    reps: usize,
    base2: bool,
    rng: &mut R,
) -> SamplingCheck {
    let s_count = table.len() / t_count;
    let lambda = max_average(table, t_count);
    let mean_lambda_prime =
        (0..reps).map(|_| sampled_max_average(table, t_count, alpha, rng)).sum::<f64>() / reps as f64;
    SamplingCheck {
        lambda,
        mean_lambda_prime,
        gap: (mean_lambda_prime - lambda).abs(),
        bound: sampling_bound(alpha as u64, (s_count as f64).log2(), base2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(rows: &[u64], w: &[u8], cols: usize) -> usize {
        (0..1u64 << cols)
            .map(|z| rows.iter().zip(w).filter(|(r, &wj)| ((*r & z).count_ones() as u8 & 1) != wj).count())
            .min()
            .unwrap()
    }

    #[test]
    fn trivial_instances() {
        assert_eq!(decode_error(&[0, 0, 0], &[0, 0, 0]), 0);
        assert_eq!(decode_error(&[0, 0, 0], &[1, 1, 1]), 3);
    }

    #[test]
    fn matches_unstripped_search() {
        let rows = [0b101, 0b001, 0b100, 0b111, 0b000, 0b101, 0b011, 0b001];
        let w = [1, 0, 1, 1, 1, 0, 0, 1];
        assert_eq!(decode_error(&rows, &w), brute(&rows, &w, 3));
    }

    #[test]
    fn single_pair_scores_one() {
        let x: BitString = "11".parse().unwrap();
        let r = best_score(&x, &[("11".parse().unwrap(), "00".parse().unwrap())]).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(best_score(&x, &[]), Err(Error::EmptyPairs));
    }

    #[test]
    fn plan_arithmetic() {
        let p = attack_plan(40, 0.05, 400_000, true);
        assert!(p.ceiling < 0.1127);
        assert!((p.slack - 0.01886).abs() < 5e-6);
        assert!((p.threshold - 0.16263).abs() < 1e-5);
        assert_eq!(p.stripped_columns, 30);
        assert!(p.weight_tail < 0.0012 && p.weight_tail > 0.001);
    }

    #[test]
    fn bound_shrinks() {
        let mut last = f64::INFINITY;
        for k in 0..20 {
            let b = sampling_bound(1 << k, 8.0, false);
            assert!(b < last);
            last = b;
        }
    }
}
