//! Fixed-length binary solution vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{LonError, Result};

/// A binary solution vector. Displays and parses as a `0`/`1` string with
/// gene 0 first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn zeros(n: usize) -> Self {
        Bits(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Bits(vec![true; n])
    }

    pub fn from_bools(v: Vec<bool>) -> Self {
        Bits(v)
    }

    /// Gene `i` is bit `i` of `value`.
    pub fn from_u64(value: u64, n: usize) -> Self {
        assert!(n <= 64);
        Bits((0..n).map(|i| (value >> i) & 1 == 1).collect())
    }

    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Bits((0..n).map(|_| rng.gen::<bool>()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        self.0[i] = v;
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    pub fn flipped(&self, genes: &[usize]) -> Bits {
        let mut out = self.clone();
        for &g in genes {
            out.flip(g);
        }
        out
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn hamming(&self, other: &Bits) -> usize {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Indices where `self` and `other` disagree, ascending.
    pub fn differing(&self, other: &Bits) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != other.0[i]).collect()
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl FromStr for Bits {
    type Err = LonError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(LonError::InvalidArgument(format!(
                    "bit string contains {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parse_roundtrip() {
        let b: Bits = "0110100".parse().unwrap();
        assert_eq!(b.to_string(), "0110100");
        assert_eq!(b.count_ones(), 3);
        assert!("01x".parse::<Bits>().is_err());
    }

    #[test]
    fn hamming_and_differing() {
        let a: Bits = "000111".parse().unwrap();
        let b: Bits = "010101".parse().unwrap();
        assert_eq!(a.hamming(&b), 2);
        assert_eq!(a.differing(&b), vec![1, 4]);
        assert_eq!(Bits::from_u64(0b101, 3).to_string(), "101");
    }
}
