use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::genotype::{FitnessVector, Genotype};
use crate::omm::OmmProblem;
use crate::{Error, Result, RunRng};

/// A genotype with its cached objective values.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Individual {
    genotype: Genotype,
    fitness: FitnessVector,
}

impl Individual {
    /// Pairs a genotype with its fitness. The caller is responsible for
    /// `fitness` being the evaluation of `genotype`; use
    /// [`OmmProblem::individual`] to evaluate on the fly.
    pub fn new(genotype: Genotype, fitness: FitnessVector) -> Self {
        Self { genotype, fitness }
    }

    pub fn genotype(&self) -> &Genotype {
        &self.genotype
    }

    pub fn fitness(&self) -> &FitnessVector {
        &self.fitness
    }
}

impl AsRef<FitnessVector> for Individual {
    fn as_ref(&self) -> &FitnessVector {
        &self.fitness
    }
}

/// An ordered multiset of individuals.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Population {
    members: Vec<Individual>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Individual> {
        self.members.iter()
    }

    pub fn fitness(&self) -> impl Iterator<Item = &FitnessVector> + '_ {
        self.members.iter().map(Individual::fitness)
    }

    /// `self` followed by `other`.
    pub fn merge(mut self, other: Population) -> Population {
        self.members.extend(other.members);
        self
    }

    /// Members at `indices`, in that order.
    pub fn select(&self, indices: impl IntoIterator<Item = usize>) -> Population {
        Population::new(
            indices
                .into_iter()
                .map(|i| self.members[i].clone())
                .collect(),
        )
    }
}

impl core::ops::Index<usize> for Population {
    type Output = Individual;

    fn index(&self, index: usize) -> &Individual {
        &self.members[index]
    }
}

impl FromIterator<Individual> for Population {
    fn from_iter<I: IntoIterator<Item = Individual>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Population {
    type Item = &'a Individual;
    type IntoIter = core::slice::Iter<'a, Individual>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Cover numbers: how many individuals carry each fitness vector.
///
/// Serializes as a list of `(vector, count)` pairs so that formats with
/// string-only map keys can hold it.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoverMap {
    #[cfg_attr(feature = "serde", serde(with = "pairs"))]
    counts: BTreeMap<FitnessVector, usize>,
}

#[cfg(feature = "serde")]
mod pairs {
    use alloc::collections::BTreeMap;
    use alloc::vec::Vec;

    use serde::{Deserialize, Deserializer, Serializer};

    use crate::genotype::FitnessVector;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<FitnessVector, usize>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<FitnessVector, usize>, D::Error> {
        Ok(Vec::<(FitnessVector, usize)>::deserialize(d)?
            .into_iter()
            .collect())
    }
}

impl CoverMap {
    pub fn from_fitness<'a>(fitness: impl IntoIterator<Item = &'a FitnessVector>) -> Self {
        let mut counts = BTreeMap::new();
        for v in fitness {
            *counts.entry(v.clone()).or_insert(0) += 1;
        }
        Self { counts }
    }

    /// `c(v)`; zero for vectors not present.
    pub fn get(&self, v: &FitnessVector) -> usize {
        self.counts.get(v).copied().unwrap_or(0)
    }

    pub fn is_covered(&self, v: &FitnessVector) -> bool {
        self.counts.contains_key(v)
    }

    /// Number of distinct fitness vectors present.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Largest cover number, zero for an empty map.
    pub fn max(&self) -> usize {
        self.counts.values().copied().max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FitnessVector, usize)> + '_ {
        self.counts.iter().map(|(v, &c)| (v, c))
    }
}

/// Draws `mu` uniform random bit strings and evaluates them.
pub fn random_population(problem: &OmmProblem, mu: usize, rng: &mut RunRng) -> Result<Population> {
    if mu == 0 {
        return Err(Error::EmptyPopulation);
    }
    let n = problem.n();
    Ok((0..mu)
        .map(|_| {
            let bits: Vec<bool> = (0..n).map(|_| rng.coin()).collect();
            problem.individual(Genotype::from_bits(bits))
        })
        .collect())
}

pub fn cover_numbers(pop: &Population) -> CoverMap {
    CoverMap::from_fitness(pop.fitness())
}

/// `β`, the maximum cover number. Panics on an empty population.
pub fn max_cover_number(pop: &Population) -> usize {
    assert!(!pop.is_empty(), "max cover number of an empty population");
    cover_numbers(pop).max()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pop_of(vectors: &[[u32; 2]]) -> Population {
        vectors
            .iter()
            .map(|v| Individual::new(Genotype::zeros(0), FitnessVector::from(*v)))
            .collect()
    }

    #[test]
    fn random_population_sizes() {
        let problem = OmmProblem::new(4, 2).unwrap();
        let pop = random_population(&problem, 3, &mut RunRng::from_seed(7)).unwrap();
        assert_eq!(pop.len(), 3);
        assert!(pop.iter().all(|x| x.genotype().len() == 4));

        let problem = OmmProblem::new(1, 2).unwrap();
        let pop = random_population(&problem, 1, &mut RunRng::from_seed(7)).unwrap();
        assert_eq!(pop.len(), 1);
        assert_eq!(pop[0].genotype().len(), 1);

        assert_eq!(
            random_population(&problem, 0, &mut RunRng::from_seed(7)),
            Err(Error::EmptyPopulation)
        );
    }

    #[test]
    fn random_population_ones_are_binomial() {
        let n = 32;
        let samples = 100_000;
        let problem = OmmProblem::new(n, 2).unwrap();
        let pop = random_population(&problem, samples, &mut RunRng::from_seed(11)).unwrap();
        let mean = pop
            .iter()
            .map(|x| x.genotype().count_ones() as f64)
            .sum::<f64>()
            / samples as f64;
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((mean - 16.0).abs() <= 3.0 * sigma);
        // the sample mean of 10^5 draws is far tighter than one individual's spread
        assert!((mean - 16.0).abs() <= 3.0 * sigma / (samples as f64).sqrt());
    }

    #[test]
    fn cover_numbers_direct_count() {
        let pop = pop_of(&[[2, 2], [2, 2], [3, 1], [1, 3]]);
        let cover = cover_numbers(&pop);
        assert_eq!(cover.get(&FitnessVector::from([2, 2])), 2);
        assert_eq!(cover.get(&FitnessVector::from([3, 1])), 1);
        assert_eq!(cover.get(&FitnessVector::from([1, 3])), 1);
        assert_eq!(cover.get(&FitnessVector::from([0, 4])), 0);
        assert_eq!(cover.distinct(), 3);
        assert_eq!(cover.total(), 4);
    }

    #[test]
    fn max_cover_number_cases() {
        assert_eq!(max_cover_number(&pop_of(&[[0, 4], [1, 3], [2, 2]])), 1);
        let same = pop_of(&[[2, 2]; 5]);
        assert_eq!(max_cover_number(&same), 5);
        assert_eq!(cover_numbers(&same).distinct(), 1);
        assert_eq!(max_cover_number(&pop_of(&[[2, 2], [2, 2], [3, 1]])), 2);
    }

    #[test]
    fn cover_numbers_match_pairwise_tally() {
        let mut rng = RunRng::from_seed(3);
        for _ in 0..1000 {
            let mu = 1 + rng.index(20);
            let vectors: Vec<[u32; 2]> = (0..mu)
                .map(|_| {
                    let a = rng.index(5) as u32;
                    [a, 4 - a]
                })
                .collect();
            let pop = pop_of(&vectors);
            let cover = cover_numbers(&pop);
            assert_eq!(cover.total(), mu);
            for v in &vectors {
                let tally = vectors.iter().filter(|w| *w == v).count();
                assert_eq!(cover.get(&FitnessVector::from(*v)), tally);
            }
        }
    }
}
