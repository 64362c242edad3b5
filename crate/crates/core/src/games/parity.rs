//! Parity-balanced subsets of `Z_4^d`: `2^d` points whose reductions mod 2 are all distinct.
//!
//! Such a set is the same thing as a single-player GHZ strategy: on input `x` the player
//! answers the unique `a` with `x + 2a` in the set.

use crate::error::{Error, Result};
use crate::fourier::{element, SubsetOfGroup};
use crate::games::ghz::ghz_strategy_value;
use crate::games::strategy::{DependentFamily, DeterministicStrategy};
use crate::Rational;

/// Largest family the `max_eta` enumeration will visit.
pub const ETA_SEARCH_LIMIT: u128 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityBalancedSet {
    d: usize,
    /// `answers[x]` is the mask `a` with `s_x = x + 2a`.
    answers: Vec<u64>,
}

/// Coordinates of `x + 2a` in `Z_4^d`.
fn lift(d: usize, x: u64, a: u64) -> Vec<usize> {
    (0..d).map(|i| (((x >> i) & 1) + 2 * ((a >> i) & 1)) as usize).collect()
}

impl ParityBalancedSet {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn from_strategy(s: &DeterministicStrategy) -> Result<Self> {
        if s.input_bits() != s.output_bits() {
            return Err(Error::LengthMismatch("strategy must map d bits to d bits".into()));
        }
        Ok(ParityBalancedSet { d: s.input_bits(), answers: s.table().to_vec() })
    }

    pub fn strategy(&self) -> DeterministicStrategy {
        DeterministicStrategy::new(self.d, self.d, self.answers.clone()).expect("valid table")
    }

    pub fn from_subset(set: &SubsetOfGroup) -> Result<Self> {
        if set.modulus() != 4 {
            return Err(Error::NotParityBalanced);
        }
        let d = set.arity();
        let mut answers = vec![None; 1 << d];
        for e in set.elements() {
            let x = e.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (((c & 1) as u64) << i));
            let a = e.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (((c >> 1) as u64) << i));
            if answers[x as usize].replace(a).is_some() {
                return Err(Error::NotParityBalanced);
            }
        }
        let answers = answers.into_iter().collect::<Option<Vec<u64>>>().ok_or(Error::NotParityBalanced)?;
        Ok(ParityBalancedSet { d, answers })
    }

    pub fn to_subset(&self) -> SubsetOfGroup {
        let elems: Vec<Vec<usize>> = (0..1u64 << self.d).map(|x| lift(self.d, x, self.answers[x as usize])).collect();
        SubsetOfGroup::from_elements(4, self.d, elems.iter().map(|e| e.as_slice()))
    }

    /// The element congruent to `x` mod 2.
    pub fn element_for(&self, x: u64) -> Vec<usize> {
        lift(self.d, x, self.answers[x as usize])
    }

    /// `-T`. Per coordinate `-(x + 2a) = x + 2(a xor x) (mod 4)`.
    pub fn negate(&self) -> Self {
        let answers = self.answers.iter().enumerate().map(|(x, a)| a ^ x as u64).collect();
        ParityBalancedSet { d: self.d, answers }
    }

    pub fn eta(&self) -> Rational {
        self.to_subset().eta().expect("parity-balanced sets are nonempty")
    }

    /// Winning probability of `(T, T, -T, -T)` in the `d`-fold GHZ_4 game.
    pub fn ghz4_score(&self) -> Rational {
        let s = self.strategy();
        let neg = self.negate().strategy();
        ghz_strategy_value(&[s.clone(), s, neg.clone(), neg]).expect("consistent tables")
    }
}

/// The exact maximum of `eta` over all (or all time-ordered) parity-balanced subsets of `Z_4^d`.
pub fn max_eta_parity_balanced(d: usize, time_ordered: bool) -> Result<Rational> {
    let family = if time_ordered { DependentFamily::time_ordered(d) } else { DependentFamily::unrestricted(d, d) };
    let size = family.count();
    if d == 0 || d > 4 || size > ETA_SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge { size, limit: ETA_SEARCH_LIMIT });
    }
    Ok(family
        .iter()
        .map(|s| ParityBalancedSet::from_strategy(&s).expect("square table").eta())
        .max()
        .expect("family is nonempty"))
}

/// Every element of `Z_4^d` in index order, for tests and examples.
pub fn all_elements(d: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1usize << (2 * d)).map(move |i| element(4, d, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_cube_answers_zero() {
        let set = SubsetOfGroup::from_elements(4, 2, [&[0usize, 0][..], &[1, 0], &[0, 1], &[1, 1]]);
        let t = ParityBalancedSet::from_subset(&set).unwrap();
        assert!(t.strategy().table().iter().all(|&a| a == 0));
    }

    #[test]
    fn one_dimensional_example() {
        let set = SubsetOfGroup::from_elements(4, 1, [&[2usize][..], &[1]]);
        let t = ParityBalancedSet::from_subset(&set).unwrap();
        assert_eq!(t.strategy().table(), &[1, 0]);
        assert_eq!(t.to_subset(), set);
    }

    #[test]
    fn rejects_unbalanced() {
        let set = SubsetOfGroup::from_elements(4, 1, [&[0usize][..], &[2]]);
        assert_eq!(ParityBalancedSet::from_subset(&set), Err(Error::NotParityBalanced));
    }

    #[test]
    fn eta_is_ghz_score() {
        for d in 1..=2 {
            for s in DependentFamily::unrestricted(d, d).iter() {
                let t = ParityBalancedSet::from_strategy(&s).unwrap();
                assert_eq!(t.eta(), t.ghz4_score());
                assert_eq!(t.to_subset().nu().unwrap(), Rational::from_integer(1));
            }
        }
    }

    #[test]
    fn negation_matches_group_negation() {
        for s in DependentFamily::unrestricted(2, 2).iter() {
            let t = ParityBalancedSet::from_strategy(&s).unwrap();
            let neg = t.negate();
            for x in 0..4 {
                let e = t.element_for(x);
                let ne: Vec<usize> = e.iter().map(|c| (4 - c) % 4).collect();
                assert_eq!(neg.element_for(x), ne);
            }
        }
    }
}
