//! Offspring creation: uniform parent draw followed by standard bit mutation.

use crate::genotype::Genotype;
use crate::omm::OmmProblem;
use crate::population::{Individual, Population};
use crate::RunRng;

/// Uniform draw with replacement.
pub fn sample_parent<'a>(pop: &'a Population, rng: &mut RunRng) -> &'a Individual {
    assert!(!pop.is_empty(), "cannot sample from an empty population");
    &pop[rng.index(pop.len())]
}

/// Flips every bit independently with probability `1/n`, one draw per bit.
pub fn standard_bit_mutation(x: &Genotype, rng: &mut RunRng) -> Genotype {
    let n = x.len();
    assert!(n > 0, "cannot mutate an empty genotype");
    let mut child = x.clone();
    for i in 0..n {
        if rng.one_in(n) {
            child.flip(i);
        }
    }
    child
}

/// Creates `|pop|` offspring, each from its own parent draw and mutation.
pub fn produce_offspring(problem: &OmmProblem, pop: &Population, rng: &mut RunRng) -> Population {
    (0..pop.len())
        .map(|_| {
            let parent = sample_parent(pop, rng);
            problem.individual(standard_bit_mutation(parent.genotype(), rng))
        })
        .collect()
}
