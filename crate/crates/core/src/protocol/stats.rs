//! Summary statistics for ±1 scores.

use std::fmt;

/// Normal quantile used for the 95% interval.
pub const Z95: f64 = 1.96;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScoreStats {
    pub trials: u64,
    pub mean: f64,
    /// Standard error of the mean (sample standard deviation over `sqrt(trials)`).
    pub stderr: f64,
    pub ci95_lo: f64,
    pub ci95_hi: f64,
}

impl ScoreStats {
    pub fn from_scores<I: IntoIterator<Item = f64>>(scores: I) -> ScoreStats {
        let (mut n, mut sum, mut sq) = (0u64, 0.0f64, 0.0f64);
        for s in scores {
            n += 1;
            sum += s;
            sq += s * s;
        }
        ScoreStats::from_sums(n, sum, sq)
    }

    pub fn from_sums(trials: u64, sum: f64, sum_sq: f64) -> ScoreStats {
        if trials == 0 {
            return ScoreStats { trials, mean: 0.0, stderr: 0.0, ci95_lo: 0.0, ci95_hi: 0.0 };
        }
        let n = trials as f64;
        let mean = sum / n;
        let var = if trials > 1 { ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
        let stderr = (var / n).sqrt();
        ScoreStats { trials, mean, stderr, ci95_lo: mean - Z95 * stderr, ci95_hi: mean + Z95 * stderr }
    }

    /// Does `value` lie within `k` standard errors of the mean?
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.stderr
    }

    pub fn overlaps(&self, other: &ScoreStats) -> bool {
        self.ci95_lo <= other.ci95_hi && other.ci95_lo <= self.ci95_hi
    }

    /// One summary row, without the experiment column.
    pub fn csv_fields(&self) -> String {
        format!("{},{:.6},{:.6},{:.6},{:.6}", self.trials, self.mean, self.stderr, self.ci95_lo, self.ci95_hi)
    }
}

impl fmt::Display for ScoreStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mean {:.4} ± {:.4} (95% CI [{:.4}, {:.4}], {} trials)",
            self.mean, self.stderr, self.ci95_lo, self.ci95_hi, self.trials
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_scores() {
        let s = ScoreStats::from_scores([1.0; 10]);
        assert_eq!(s.mean, 1.0);
        assert_eq!(s.stderr, 0.0);
    }

    #[test]
    fn balanced_scores() {
        let s = ScoreStats::from_scores((0..100).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }));
        assert_eq!(s.mean, 0.0);
        // sample sd = sqrt(100/99)
        assert!((s.stderr - (100.0f64 / 99.0).sqrt() / 10.0).abs() < 1e-12);
        assert!(s.ci95_lo < 0.0 && s.ci95_hi > 0.0);
    }

    #[test]
    fn empty() {
        assert_eq!(ScoreStats::from_scores(std::iter::empty()).trials, 0);
    }
}
