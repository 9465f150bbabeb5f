use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("number of objectives must be a positive even integer, got {0}")]
    ObjectiveCount(usize),
    #[error("problem size must be positive")]
    EmptyGenotype,
    #[error("problem size {n} is not a multiple of m/2 = {half}")]
    SizeNotMultiple { n: usize, half: usize },
    #[error("population size must be positive")]
    EmptyPopulation,
    #[error("reference point resolution must be positive")]
    ZeroResolution,
    #[error("nadir threshold must be positive and finite, got {0}")]
    NadirThreshold(f64),
    #[error("{what} has {size} elements, more than the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
}
