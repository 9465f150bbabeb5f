use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

/// A fixed-length bit string.
///
/// Bits are stored 0-based: documentation bit `x_i` (1-based) lives at
/// index `i - 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Genotype {
    bits: Box<[bool]>,
}

impl Genotype {
    pub fn from_bits(bits: impl Into<Box<[bool]>>) -> Self {
        Self { bits: bits.into() }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_bits(alloc::vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self::from_bits(alloc::vec![true; n])
    }

    /// Parses a string of `0` and `1` characters.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::from_bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `|x|_1`
    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// `|x|_0`
    pub fn count_zeros(&self) -> usize {
        self.len() - self.count_ones()
    }

    pub fn hamming_distance(&self, other: &Genotype) -> usize {
        assert_eq!(self.len(), other.len(), "genotype length mismatch");
        self.bits
            .iter()
            .zip(other.bits.iter())
            .filter(|(a, b)| a != b)
            .count()
    }

    pub(crate) fn flip(&mut self, index: usize) {
        self.bits[index] = !self.bits[index];
    }
}

impl fmt::Display for Genotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.bits.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Objective values `(f_1(x), …, f_m(x))`, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FitnessVector(Box<[u32]>);

impl FitnessVector {
    pub fn new(values: impl Into<Box<[u32]>>) -> Self {
        Self(values.into())
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&v| u64::from(v)).sum()
    }
}

impl core::ops::Index<usize> for FitnessVector {
    type Output = u32;

    fn index(&self, index: usize) -> &u32 {
        &self.0[index]
    }
}

impl<const N: usize> From<[u32; N]> for FitnessVector {
    fn from(values: [u32; N]) -> Self {
        Self::new(Box::from(values.as_slice()))
    }
}

impl From<&[u32]> for FitnessVector {
    fn from(values: &[u32]) -> Self {
        Self::new(Box::from(values))
    }
}

impl From<Vec<u32>> for FitnessVector {
    fn from(values: Vec<u32>) -> Self {
        Self::new(values)
    }
}

impl AsRef<FitnessVector> for FitnessVector {
    fn as_ref(&self) -> &FitnessVector {
        self
    }
}

impl fmt::Display for FitnessVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}
