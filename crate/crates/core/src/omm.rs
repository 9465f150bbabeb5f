//! The m-objective OneMinMax benchmark.
//!
//! The bit string is cut into `m/2` blocks of `2n/m` bits. Block `j`
//! (0-based) contributes objective `2j` = its number of ones and objective
//! `2j + 1` = its number of zeros. In 1-based documentation terms this is
//! `f_{2j-1}` and `f_{2j}` for block `j = 1..m/2`.

use alloc::vec::Vec;

use crate::genotype::{FitnessVector, Genotype};
use crate::population::{cover_numbers, Individual, Population};
use crate::{Error, Result};

/// Largest Pareto front the crate will enumerate.
pub const MAX_FRONT_SIZE: u128 = 10_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OmmProblem {
    n: usize,
    m: usize,
}

impl OmmProblem {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(2) {
            return Err(Error::ObjectiveCount(m));
        }
        if n == 0 {
            return Err(Error::EmptyGenotype);
        }
        if !n.is_multiple_of(m / 2) {
            return Err(Error::SizeNotMultiple { n, half: m / 2 });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Bits per block, `2n/m`.
    pub fn block_len(&self) -> usize {
        2 * self.n / self.m
    }

    /// Largest value any objective attains; equals `n` for `m = 2`.
    /// As in the literature, `f_max` is taken to be `n` for every `m`,
    /// which is the sum of all objectives.
    pub fn f_max(&self) -> usize {
        self.n
    }

    /// `S_m = (2n/m + 1)^(m/2)`, saturating at `u128::MAX`.
    pub fn front_size(&self) -> u128 {
        let base = self.block_len() as u128 + 1;
        (0..self.m / 2)
            .try_fold(1u128, |acc, _| acc.checked_mul(base))
            .unwrap_or(u128::MAX)
    }

    pub fn evaluate(&self, x: &Genotype) -> FitnessVector {
        assert_eq!(
            x.len(),
            self.n,
            "genotype length does not match problem size"
        );
        let block = self.block_len();
        let mut values = Vec::with_capacity(self.m);
        for chunk in x.bits().chunks(block) {
            let ones = chunk.iter().filter(|&&b| b).count() as u32;
            values.push(ones);
            values.push(block as u32 - ones);
        }
        FitnessVector::new(values)
    }

    pub fn individual(&self, genotype: Genotype) -> Individual {
        let fitness = self.evaluate(&genotype);
        Individual::new(genotype, fitness)
    }

    /// Every attainable fitness vector, in lexicographic order.
    pub fn pareto_front(&self) -> Result<ParetoFront> {
        let size = self.front_size();
        if size > MAX_FRONT_SIZE {
            return Err(Error::TooLarge {
                what: "Pareto front",
                size,
                limit: MAX_FRONT_SIZE,
            });
        }
        let block = self.block_len() as u32;
        let blocks = self.m / 2;
        let mut digits = alloc::vec![0u32; blocks];
        let mut vectors = Vec::with_capacity(size as usize);
        loop {
            vectors.push(FitnessVector::new(
                digits
                    .iter()
                    .flat_map(|&a| [a, block - a])
                    .collect::<Vec<_>>(),
            ));
            // odometer, last block fastest
            let mut pos = blocks;
            loop {
                if pos == 0 {
                    return Ok(ParetoFront { vectors });
                }
                pos -= 1;
                if digits[pos] < block {
                    digits[pos] += 1;
                    digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
                    break;
                }
            }
        }
    }
}

/// The Pareto front of an [`OmmProblem`], sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParetoFront {
    vectors: Vec<FitnessVector>,
}

impl ParetoFront {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &FitnessVector) -> bool {
        self.vectors.binary_search(v).is_ok()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, FitnessVector> {
        self.vectors.iter()
    }

    pub fn as_slice(&self) -> &[FitnessVector] {
        &self.vectors
    }
}

/// Outcome of comparing `u` against `v` under maximization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dominance {
    /// `u ≥ v` componentwise with at least one strict inequality.
    Strict,
    Equal,
    /// `v` strictly dominates `u`.
    Dominated,
    Incomparable,
}

impl Dominance {
    /// `u` weakly dominates `v`: equal or strict.
    pub fn is_weak(self) -> bool {
        matches!(self, Dominance::Strict | Dominance::Equal)
    }
}

pub fn dominates(u: &FitnessVector, v: &FitnessVector) -> Dominance {
    assert_eq!(u.len(), v.len(), "fitness vectors of different lengths");
    let (mut greater, mut less) = (false, false);
    for (a, b) in u.values().iter().zip(v.values()) {
        match a.cmp(b) {
            core::cmp::Ordering::Less => less = true,
            core::cmp::Ordering::Greater => greater = true,
            core::cmp::Ordering::Equal => {}
        }
    }
    match (greater, less) {
        (true, false) => Dominance::Strict,
        (false, false) => Dominance::Equal,
        (false, true) => Dominance::Dominated,
        (true, true) => Dominance::Incomparable,
    }
}

/// `true` iff `u` strictly dominates `v`.
pub(crate) fn strictly_dominates(u: &FitnessVector, v: &FitnessVector) -> bool {
    dominates(u, v) == Dominance::Strict
}

/// How much of a front a population covers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Coverage {
    pub covered: usize,
    pub total: usize,
}

impl Coverage {
    pub fn fraction(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.covered as f64 / self.total as f64
        }
    }

    pub fn is_complete(&self) -> bool {
        self.covered == self.total
    }
}

pub fn coverage(pop: &Population, front: &ParetoFront) -> Coverage {
    let covered = cover_numbers(pop)
        .iter()
        .filter(|(v, _)| front.contains(v))
        .count();
    Coverage {
        covered,
        total: front.len(),
    }
}
