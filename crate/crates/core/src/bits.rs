//! Bit strings.
//!
//! Position `i` (0-based) of a [`BitString`] corresponds to the 1-based index `i + 1`.
//! When a string is packed into an integer mask, position `i` is bit `i` of the mask.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<u8>);

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString(vec![0; len])
    }

    pub fn ones(len: usize) -> Self {
        BitString(vec![1; len])
    }

    /// Builds a string from 0/1 values; anything nonzero counts as 1.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        BitString(bits.into_iter().map(|b| (b != 0) as u8).collect())
    }

    pub fn from_mask(mask: u64, len: usize) -> Self {
        BitString((0..len).map(|i| ((mask >> i) & 1) as u8).collect())
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        BitString((0..len).map(|_| rng.gen_range(0..2u8)).collect())
    }

    /// Packs the string into a mask. Panics for strings longer than 64 bits.
    pub fn to_mask(&self) -> u64 {
        assert!(self.0.len() <= 64, "bit string too long for a mask");
        self.0.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, bit: u8) {
        self.0[i] = (bit != 0) as u8;
    }

    pub fn push(&mut self, bit: u8) {
        self.0.push((bit != 0) as u8);
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.0.iter().copied()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn parity(&self) -> u8 {
        self.0.iter().fold(0, |acc, &b| acc ^ b)
    }

    pub fn xor(&self, other: &BitString) -> BitString {
        assert_eq!(self.len(), other.len());
        BitString(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    pub fn and(&self, other: &BitString) -> BitString {
        assert_eq!(self.len(), other.len());
        BitString(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BitString(v)
    }

    pub fn prefix(&self, len: usize) -> BitString {
        BitString(self.0[..len].to_vec())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BitString)
    }
}

impl From<Vec<u8>> for BitString {
    fn from(v: Vec<u8>) -> Self {
        BitString::from_bits(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_round_trip() {
        let b: BitString = "1101".parse().unwrap();
        assert_eq!(b.to_mask(), 0b1011);
        assert_eq!(BitString::from_mask(0b1011, 4), b);
    }

    #[test]
    fn rejects_garbage() {
        assert!("10x".parse::<BitString>().is_err());
    }

    #[test]
    fn logic_ops() {
        let a: BitString = "1100".parse().unwrap();
        let b: BitString = "1010".parse().unwrap();
        assert_eq!(a.xor(&b).to_string(), "0110");
        assert_eq!(a.and(&b).to_string(), "1000");
        assert_eq!(a.weight(), 2);
        assert_eq!(a.parity(), 0);
    }
}
