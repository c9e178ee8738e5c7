//! Strategy tables and quinary history patterns.
//!
//! A pattern of M digits `d_1 .. d_M` (oldest first, each in `-2..=2`) is
//! packed as the base-5 integer `sum (d_k + 2) * 5^(M-k)`, so the newest digit
//! is the least significant one.

use rand::Rng;

use super::types::{Action, Digit};
use crate::rng;

/// An immutable map from each of the 5^M patterns to an action.
///
/// Entries are i.i.d. uniform over {Buy, Sell, Hold}: entry `k` is element
/// `k` of the SplitMix64 sequence started at the table key, reduced onto the
/// three actions. Tables therefore cost one word regardless of M.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyTable {
    key: u64,
    memory: u32,
}

impl StrategyTable {
    pub fn from_key(key: u64, memory: u32) -> Self {
        StrategyTable { key, memory }
    }

    pub fn random<R: Rng + ?Sized>(memory: u32, rng: &mut R) -> Self {
        StrategyTable { key: rng.next_u64(), memory }
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn memory(&self) -> u32 {
        self.memory
    }

    pub fn len(&self) -> u64 {
        5u64.pow(self.memory)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Recommended action for a packed pattern index.
    #[inline]
    pub fn action(&self, pattern: u64) -> Action {
        debug_assert!(pattern < self.len());
        match rng::reduce(rng::splitmix_at(self.key, pattern), 3) {
            0 => Action::Buy,
            1 => Action::Sell,
            _ => Action::Hold,
        }
    }

    /// Recommended action as a sign: +1 buy, -1 sell, 0 hold.
    #[inline]
    pub fn sign(&self, pattern: u64) -> i64 {
        recommended_sign(self.key, pattern)
    }

    /// Recommended action for an explicit digit pattern of length M.
    pub fn lookup(&self, digits: &[Digit]) -> Action {
        assert_eq!(digits.len(), self.memory as usize, "pattern length must equal memory");
        self.action(pack_pattern(digits))
    }

    /// All entries in pattern-index order.
    pub fn entries(&self) -> impl Iterator<Item = Action> + '_ {
        (0..self.len()).map(move |k| self.action(k))
    }
}

#[inline]
pub(crate) fn recommended_sign(key: u64, pattern: u64) -> i64 {
    let r = rng::reduce(rng::splitmix_at(key, pattern), 3);
    (r == 0) as i64 - (r == 1) as i64
}

/// Packs digits (oldest first) into a pattern index.
pub fn pack_pattern(digits: &[Digit]) -> u64 {
    digits.iter().fold(0u64, |acc, &d| {
        debug_assert!((-2..=2).contains(&d));
        acc * 5 + (d + 2) as u64
    })
}

/// Unpacks a pattern index into `memory` digits, oldest first.
pub fn unpack_pattern(mut index: u64, memory: u32) -> Vec<Digit> {
    let mut digits = vec![0; memory as usize];
    for slot in digits.iter_mut().rev() {
        *slot = (index % 5) as Digit - 2;
        index /= 5;
    }
    digits
}

/// Drops the oldest digit and appends `digit`.
#[inline]
pub fn push_digit(pattern: u64, digit: Digit, pattern_count: u64) -> u64 {
    (pattern % (pattern_count / 5)) * 5 + (digit + 2) as u64
}

/// A pattern of `memory` uniform random digits.
pub fn random_pattern<R: Rng + ?Sized>(memory: u32, rng: &mut R) -> u64 {
    let count = 5u64.pow(memory);
    (0..memory).fold(0, |p, _| push_digit(p, random_digit(rng), count))
}

pub fn random_digit<R: Rng + ?Sized>(rng: &mut R) -> Digit {
    rng.random_range(-2..=2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn packing_orders_newest_last() {
        assert_eq!(pack_pattern(&[-2, -2]), 0);
        assert_eq!(pack_pattern(&[2, 2]), 24);
        assert_eq!(pack_pattern(&[0, 1]), 2 * 5 + 3);
        assert_eq!(push_digit(pack_pattern(&[0, 1]), -1, 25), pack_pattern(&[1, -1]));
    }

    #[test]
    fn table_is_deterministic_and_roughly_uniform() {
        let t = StrategyTable::from_key(42, 5);
        assert_eq!(t.len(), 3125);
        let first: Vec<Action> = t.entries().collect();
        let second: Vec<Action> = StrategyTable::from_key(42, 5).entries().collect();
        assert_eq!(first, second);
        let buys = first.iter().filter(|a| **a == Action::Buy).count();
        let sells = first.iter().filter(|a| **a == Action::Sell).count();
        let holds = first.len() - buys - sells;
        for c in [buys, sells, holds] {
            // Binomial(3125, 1/3): sd ~ 26.
            assert!((3125 / 3 - 130..3125 / 3 + 130).contains(&c), "{buys} {sells} {holds}");
        }
        assert_ne!(first, StrategyTable::from_key(43, 5).entries().collect::<Vec<_>>());
        for (k, a) in first.iter().enumerate() {
            assert_eq!(t.sign(k as u64), a.sign());
        }
    }

    proptest! {
        #[test]
        fn pack_unpack_round_trip(digits in proptest::collection::vec(-2i8..=2, 1..12)) {
            let m = digits.len() as u32;
            let p = pack_pattern(&digits);
            prop_assert!(p < 5u64.pow(m));
            prop_assert_eq!(unpack_pattern(p, m), digits);
        }

        #[test]
        fn push_matches_shifted_window(digits in proptest::collection::vec(-2i8..=2, 2..10), d in -2i8..=2) {
            let m = digits.len() as u32;
            let mut shifted = digits[1..].to_vec();
            shifted.push(d);
            prop_assert_eq!(push_digit(pack_pattern(&digits), d, 5u64.pow(m)), pack_pattern(&shifted));
        }
    }
}
