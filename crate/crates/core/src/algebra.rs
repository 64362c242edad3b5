//! Arithmetic in `Z_q`, balanced representatives, big-endian bit representations
//! and deterministic primality for 64-bit moduli.

use rand::Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};

#[inline]
pub fn add_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 + b as u128) % q as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        q - (b - a)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Modular inverse for prime `q` via Fermat.
pub fn inv_mod(a: u64, q: u64) -> Option<u64> {
    if a.is_multiple_of(q) {
        None
    } else {
        Some(pow_mod(a, q - 2, q))
    }
}

/// Reduces a signed integer into `[0, q)`.
#[inline]
pub fn from_signed(x: i64, q: u64) -> u64 {
    x.rem_euclid(q as i64) as u64
}

/// Representative of `x` in `(-q/2, q/2]`.
#[inline]
pub fn to_signed(x: u64, q: u64) -> i64 {
    if x > q / 2 {
        x as i64 - q as i64
    } else {
        x as i64
    }
}

/// `min(x, q - x)`: the distance from `x` to zero on the cycle `Z_q`.
#[inline]
pub fn balanced_abs(x: u64, q: u64) -> u64 {
    let x = x % q;
    x.min(q - x)
}

/// Number of bits needed for residues mod `q`, i.e. `ceil(log2 q)`.
pub fn bit_width(q: u64) -> u32 {
    assert!(q >= 2);
    64 - (q - 1).leading_zeros()
}

/// Big-endian binary representation of `x` with `width` bits.
pub fn binary_repr(x: u64, width: u32) -> BitString {
    BitString::from_bits((0..width).rev().map(|k| ((x >> k) & 1) as u8))
}

/// Parses a big-endian bit string back into an integer.
pub fn parse_binary(bits: &BitString) -> u64 {
    bits.iter().fold(0u64, |acc, b| (acc << 1) | b as u64)
}

/// Bit `j` (1-based) of the big-endian representation.
pub fn bit_select(bits: &BitString, j: usize) -> u8 {
    bits.get(j - 1)
}

/// Bits at the given 1-based positions, in order.
pub fn bit_select_many(bits: &BitString, js: &[usize]) -> BitString {
    BitString::from_bits(js.iter().map(|&j| bits.get(j - 1)))
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest odd prime in `[lo, hi]`.
pub fn find_prime(lo: u64, hi: u64) -> Result<u64> {
    let start = lo.max(3);
    let mut c = if start.is_multiple_of(2) { start + 1 } else { start };
    while c <= hi {
        if is_prime(c) {
            return Ok(c);
        }
        c = match c.checked_add(2) {
            Some(next) => next,
            None => break,
        };
    }
    Err(Error::NoPrimeInRange { lo, hi })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZqVec {
    q: u64,
    entries: Vec<u64>,
}

impl ZqVec {
    pub fn zeros(len: usize, q: u64) -> Self {
        ZqVec { q, entries: vec![0; len] }
    }

    /// Entries are reduced mod `q`.
    pub fn new(entries: Vec<u64>, q: u64) -> Self {
        ZqVec { q, entries: entries.into_iter().map(|e| e % q).collect() }
    }

    pub fn from_signed(entries: &[i64], q: u64) -> Self {
        ZqVec { q, entries: entries.iter().map(|&e| from_signed(e, q)).collect() }
    }

    pub fn random<R: Rng + ?Sized>(len: usize, q: u64, rng: &mut R) -> Self {
        ZqVec { q, entries: (0..len).map(|_| rng.gen_range(0..q)).collect() }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u64 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: u64) {
        self.entries[i] = value % self.q;
    }

    pub fn signed(&self) -> Vec<i64> {
        self.entries.iter().map(|&e| to_signed(e, self.q)).collect()
    }

    fn check(&self, other: &ZqVec) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: other.len() });
        }
        Ok(())
    }

    pub fn add(&self, other: &ZqVec) -> Result<ZqVec> {
        self.check(other)?;
        let q = self.q;
        Ok(ZqVec { q, entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| add_mod(a, b, q)).collect() })
    }

    pub fn sub(&self, other: &ZqVec) -> Result<ZqVec> {
        self.check(other)?;
        let q = self.q;
        Ok(ZqVec { q, entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| sub_mod(a, b, q)).collect() })
    }

    pub fn scale(&self, c: u64) -> ZqVec {
        let q = self.q;
        ZqVec { q, entries: self.entries.iter().map(|&a| mul_mod(a, c % q, q)).collect() }
    }

    pub fn dot(&self, other: &ZqVec) -> Result<u64> {
        self.check(other)?;
        let q = self.q as u128;
        let s = self.entries.iter().zip(&other.entries).fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % q);
        Ok(s as u64)
    }

    pub fn norm1(&self) -> u64 {
        self.entries.iter().map(|&e| balanced_abs(e, self.q)).sum()
    }

    pub fn norminf(&self) -> u64 {
        self.entries.iter().map(|&e| balanced_abs(e, self.q)).max().unwrap_or(0)
    }

    /// Concatenation of the per-coordinate big-endian blocks of width `ceil(log2 q)`.
    pub fn binary_repr(&self) -> BitString {
        let w = bit_width(self.q);
        self.entries.iter().fold(BitString::zeros(0), |acc, &e| acc.concat(&binary_repr(e, w)))
    }
}

/// Row-major matrix over `Z_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZqMat {
    q: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ZqMat {
    pub fn zeros(rows: usize, cols: usize, q: u64) -> Self {
        ZqMat { q, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, q: u64) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            entries.extend(r.into_iter().map(|e| e % q));
        }
        Ok(ZqMat { q, rows: n, cols, entries })
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, q: u64, rng: &mut R) -> Self {
        ZqMat { q, rows, cols, entries: (0..rows * cols).map(|_| rng.gen_range(0..q)).collect() }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.entries[r * self.cols + c] = value % self.q;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &ZqVec) -> Result<ZqVec> {
        if v.modulus() != self.q {
            return Err(Error::ModulusMismatch(self.q, v.modulus()));
        }
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let q = self.q as u128;
        let out = (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v.entries()).fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % q)
                    as u64
            })
            .collect();
        Ok(ZqVec { q: self.q, entries: out })
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &ZqMat) -> Result<ZqMat> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(ZqMat { q: self.q, rows: self.rows + other.rows, cols: self.cols, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
    }

    #[test]
    fn balanced_abs_examples() {
        assert_eq!(balanced_abs(1, 5), 1);
        assert_eq!(balanced_abs(4, 5), 1);
        assert_eq!(balanced_abs(3, 5), 2);
        assert_eq!(balanced_abs(0, 13), 0);
    }

    #[test]
    fn norms() {
        let v = ZqVec::new(vec![1, 4, 2], 5);
        assert_eq!((v.norm1(), v.norminf()), (4, 2));
        let z = ZqVec::zeros(3, 5);
        assert_eq!((z.norm1(), z.norminf()), (0, 0));
        let v = ZqVec::new(vec![6], 7);
        assert_eq!((v.norm1(), v.norminf()), (1, 1));
    }

    #[test]
    fn binary_examples() {
        assert_eq!(bit_width(11), 4);
        assert_eq!(binary_repr(5, 4).to_string(), "0101");
        assert_eq!(binary_repr(0, 4).to_string(), "0000");
        assert_eq!(ZqVec::new(vec![5, 1], 11).binary_repr().to_string(), "01010001");
        let b = binary_repr(5, 4);
        assert_eq!(bit_select(&b, 2), 1);
        assert_eq!(bit_select_many(&b, &[1, 2, 4]).to_string(), "011");
    }

    #[test]
    fn bit_width_edges() {
        assert_eq!(bit_width(2), 1);
        assert_eq!(bit_width(3), 2);
        assert_eq!(bit_width(4), 2);
        assert_eq!(bit_width(5), 3);
        assert_eq!(bit_width(67), 7);
        assert_eq!(bit_width(262147), 19);
    }

    #[test]
    fn find_prime_examples() {
        assert_eq!(find_prime(64, 128), Ok(67));
        assert_eq!(find_prime(8, 16), Ok(11));
        assert_eq!(find_prime(90, 96), Err(Error::NoPrimeInRange { lo: 90, hi: 96 }));
        let oracle = (64..=128u64).find(|&n| n % 2 == 1 && trial_division(n)).unwrap();
        assert_eq!(oracle, 67);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
        // strong pseudoprimes to several small bases
        for n in [3_215_031_751u64, 2_152_302_898_747, 3_474_749_660_383, 341_550_071_728_321] {
            assert!(!is_prime(n));
        }
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn mixed_modulus_rejected() {
        let a = ZqVec::zeros(2, 5);
        let b = ZqVec::zeros(2, 7);
        assert!(matches!(a.add(&b), Err(Error::ModulusMismatch(5, 7))));
    }

    #[test]
    fn triangle_inequality_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let q = 101;
            let v = ZqVec::random(6, q, &mut rng);
            let w = ZqVec::random(6, q, &mut rng);
            assert!(v.add(&w).unwrap().norm1() <= v.norm1() + w.norm1());
        }
    }

    #[test]
    fn mat_vec_small() {
        let a = ZqMat::from_rows(vec![vec![1, 2], vec![3, 4]], 5).unwrap();
        let v = ZqVec::new(vec![1, 1], 5);
        assert_eq!(a.mul_vec(&v).unwrap().entries(), &[3, 2]);
    }
}
