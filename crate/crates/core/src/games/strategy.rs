//! Lookup-table strategies.
//!
//! Inputs and outputs are bit masks: bit `i` of a mask is position `i + 1` of the
//! corresponding bit string.

use crate::bits::BitString;
use crate::error::{Error, Result};

/// A total map from `input_bits`-bit strings to `output_bits`-bit strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    input_bits: usize,
    output_bits: usize,
    table: Vec<u64>,
}

impl DeterministicStrategy {
    pub fn new(input_bits: usize, output_bits: usize, table: Vec<u64>) -> Result<Self> {
        if input_bits > 20 || output_bits > 63 {
            return Err(Error::InvalidConfig(format!(
                "strategy with {input_bits} input / {output_bits} output bits is too large"
            )));
        }
        if table.len() != 1 << input_bits {
            return Err(Error::DimensionMismatch { expected: 1 << input_bits, got: table.len() });
        }
        if table.iter().any(|&o| o >> output_bits != 0) {
            return Err(Error::LengthMismatch(format!("outputs must fit in {output_bits} bits")));
        }
        Ok(DeterministicStrategy { input_bits, output_bits, table })
    }

    pub fn constant(input_bits: usize, output_bits: usize, out: u64) -> Self {
        DeterministicStrategy::new(input_bits, output_bits, vec![out; 1 << input_bits])
            .expect("valid constant strategy")
    }

    pub fn from_fn(input_bits: usize, output_bits: usize, f: impl Fn(u64) -> u64) -> Self {
        let mask = if output_bits == 64 { u64::MAX } else { (1u64 << output_bits) - 1 };
        let table = (0..1u64 << input_bits).map(|x| f(x) & mask).collect();
        DeterministicStrategy { input_bits, output_bits, table }
    }

    pub fn input_bits(&self) -> usize {
        self.input_bits
    }

    pub fn output_bits(&self) -> usize {
        self.output_bits
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn eval_mask(&self, x: u64) -> u64 {
        self.table[x as usize]
    }

    pub fn eval(&self, x: &BitString) -> Result<BitString> {
        if x.len() != self.input_bits {
            return Err(Error::LengthMismatch(format!(
                "strategy expects {} input bits, got {}",
                self.input_bits,
                x.len()
            )));
        }
        Ok(BitString::from_mask(self.eval_mask(x.to_mask()), self.output_bits))
    }

    /// Number of distinct tables, saturating at `u128::MAX`.
    pub fn count(input_bits: usize, output_bits: usize) -> u128 {
        let exp = (output_bits as u32).saturating_mul(1u32 << input_bits);
        1u128.checked_shl(exp).unwrap_or(u128::MAX)
    }

    /// The `index`-th table in lexicographic order of base-`2^output_bits` digits.
    pub fn nth(input_bits: usize, output_bits: usize, mut index: u128) -> Self {
        let radix = 1u128 << output_bits;
        let table = (0..1usize << input_bits)
            .map(|_| {
                let digit = (index % radix) as u64;
                index /= radix;
                digit
            })
            .collect();
        DeterministicStrategy { input_bits, output_bits, table }
    }

    /// True when output bit `i` is unaffected by input bits beyond `deps[i]` leading bits.
    pub fn respects_dependencies(&self, deps: &[usize]) -> bool {
        (0..self.output_bits).all(|i| {
            let keep = (1u64 << deps[i]) - 1;
            (0..1u64 << self.input_bits).all(|x| {
                let bit = (self.eval_mask(x) >> i) & 1;
                (self.eval_mask(x & keep) >> i) & 1 == bit
            })
        })
    }

    /// Exhaustive single-bit perturbation test for time ordering: flipping input bit `j`
    /// never changes output bits `i < j`.
    pub fn is_time_ordered(&self) -> bool {
        (0..1u64 << self.input_bits).all(|x| {
            (0..self.input_bits).all(|j| {
                let below = (1u64 << j.min(self.output_bits)) - 1;
                (self.eval_mask(x) ^ self.eval_mask(x ^ (1 << j))) & below == 0
            })
        })
    }
}

/// A strategy whose output bit `i` depends only on input bits `0..=i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TimeOrderedStrategy(DeterministicStrategy);

impl TimeOrderedStrategy {
    pub fn new(inner: DeterministicStrategy) -> Result<Self> {
        if inner.is_time_ordered() {
            Ok(TimeOrderedStrategy(inner))
        } else {
            Err(Error::InvalidConfig("strategy is not time-ordered".into()))
        }
    }

    pub fn inner(&self) -> &DeterministicStrategy {
        &self.0
    }

    pub fn into_inner(self) -> DeterministicStrategy {
        self.0
    }
}

/// Enumerates every strategy whose output bit `i` reads only the first `deps[i]` input bits.
#[derive(Clone, Debug)]
pub struct DependentFamily {
    input_bits: usize,
    deps: Vec<usize>,
}

impl DependentFamily {
    pub fn new(input_bits: usize, deps: Vec<usize>) -> Self {
        assert!(deps.iter().all(|&k| k <= input_bits));
        DependentFamily { input_bits, deps }
    }

    /// Time-ordered family with `bits` inputs and outputs.
    pub fn time_ordered(bits: usize) -> Self {
        DependentFamily::new(bits, (1..=bits).collect())
    }

    /// Family of unrestricted strategies.
    pub fn unrestricted(input_bits: usize, output_bits: usize) -> Self {
        DependentFamily::new(input_bits, vec![input_bits; output_bits])
    }

    pub fn count(&self) -> u128 {
        let exp: u32 = self.deps.iter().map(|&k| 1u32 << k).sum();
        1u128.checked_shl(exp).unwrap_or(u128::MAX)
    }

    pub fn nth(&self, mut index: u128) -> DeterministicStrategy {
        let truth: Vec<u64> = self
            .deps
            .iter()
            .map(|&k| {
                let size = 1u32 << k;
                let t = (index & ((1u128 << size) - 1)) as u64;
                index >>= size;
                t
            })
            .collect();
        DeterministicStrategy::from_fn(self.input_bits, self.deps.len(), |x| {
            self.deps.iter().enumerate().fold(0, |acc, (i, &k)| {
                let sub = x & ((1u64 << k) - 1);
                acc | (((truth[i] >> sub) & 1) << i)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = DeterministicStrategy> + '_ {
        (0..self.count()).map(move |i| self.nth(i))
    }
}
