//! The generational loop: offspring, merge, survival.

use crate::nsga3::{self, NormalizationState, ReferencePointSet};
use crate::omm::OmmProblem;
use crate::population::{random_population, Population};
use crate::variation::produce_offspring;
use crate::{nsga2, Error, Result, RunRng};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Algorithm {
    Nsga3,
    Nsga2,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nsga3 => "nsga3",
            Algorithm::Nsga2 => "nsga2",
        }
    }
}

impl core::str::FromStr for Algorithm {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "nsga3" => Ok(Algorithm::Nsga3),
            "nsga2" => Ok(Algorithm::Nsga2),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug)]
enum Survival {
    Nsga3 {
        rps: ReferencePointSet,
        state: NormalizationState,
    },
    Nsga2,
}

/// What one generation looked like from inside survival selection.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StepReport {
    /// Generation index of the population just created.
    pub t: u64,
    /// Number of non-dominated layers in the merged pool.
    pub front_count: usize,
}

/// One run of NSGA-III or NSGA-II on an m-OMM instance.
#[derive(Clone, Debug)]
pub struct Optimizer {
    problem: OmmProblem,
    mu: usize,
    population: Population,
    rng: RunRng,
    survival: Survival,
    t: u64,
}

impl Optimizer {
    /// NSGA-III with reference resolution `p` and nadir floor `eps_nad`.
    pub fn nsga3(problem: OmmProblem, mu: usize, p: u32, eps_nad: f64, seed: u64) -> Result<Self> {
        let rps = nsga3::generate_reference_points(problem.m(), p)?;
        let state = NormalizationState::new(problem.m(), eps_nad)?;
        Self::start(problem, mu, seed, Survival::Nsga3 { rps, state })
    }

    pub fn nsga2(problem: OmmProblem, mu: usize, seed: u64) -> Result<Self> {
        Self::start(problem, mu, seed, Survival::Nsga2)
    }

    fn start(problem: OmmProblem, mu: usize, seed: u64, survival: Survival) -> Result<Self> {
        if mu == 0 {
            return Err(Error::EmptyPopulation);
        }
        let mut rng = RunRng::from_seed(seed);
        let population = random_population(&problem, mu, &mut rng)?;
        Ok(Self {
            problem,
            mu,
            population,
            rng,
            survival,
            t: 0,
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        match self.survival {
            Survival::Nsga3 { .. } => Algorithm::Nsga3,
            Survival::Nsga2 => Algorithm::Nsga2,
        }
    }

    pub fn problem(&self) -> &OmmProblem {
        &self.problem
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// Index of the current population `P_t`.
    pub fn generation(&self) -> u64 {
        self.t
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    /// Smallest and largest normalized objective value NSGA-III has
    /// computed so far; `None` for NSGA-II.
    pub fn normalized_range(&self) -> Option<(f64, f64)> {
        match &self.survival {
            Survival::Nsga3 { state, .. } => state.observed_range(),
            Survival::Nsga2 => None,
        }
    }

    /// Advances from `P_t` to `P_{t+1}`.
    pub fn step(&mut self) -> StepReport {
        let offspring = produce_offspring(&self.problem, &self.population, &mut self.rng);
        let pool = core::mem::take(&mut self.population).merge(offspring);
        let (survivors, partition) = match &mut self.survival {
            Survival::Nsga3 { rps, state } => {
                nsga3::select_survivors(&pool, self.mu, rps, state, &mut self.rng)
            }
            Survival::Nsga2 => nsga2::select_survivors(&pool, self.mu, &mut self.rng),
        };
        self.population = pool.select(survivors);
        self.t += 1;
        StepReport {
            t: self.t,
            front_count: partition.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_keep_population_size_and_are_reproducible() {
        let problem = OmmProblem::new(8, 2).unwrap();
        let run = |seed| {
            let mut opt = Optimizer::nsga3(problem, 9, 46, 8.0, seed).unwrap();
            for _ in 0..20 {
                let report = opt.step();
                assert_eq!(report.front_count, 1);
                assert_eq!(opt.population().len(), 9);
            }
            opt.population().clone()
        };
        assert_eq!(run(5), run(5));
        assert_eq!(
            Algorithm::Nsga3.name().parse::<Algorithm>(),
            Ok(Algorithm::Nsga3)
        );
    }

    #[test]
    fn nsga2_runs() {
        let problem = OmmProblem::new(8, 2).unwrap();
        let mut opt = Optimizer::nsga2(problem, 12, 1).unwrap();
        for _ in 0..10 {
            opt.step();
        }
        assert_eq!(opt.population().len(), 12);
        assert_eq!(opt.generation(), 10);
        assert!(opt.normalized_range().is_none());
        assert!(Optimizer::nsga2(problem, 0, 1).is_err());
    }
}
