//! Evolutionary multi-objective optimization on the m-objective OneMinMax
//! benchmark (m-OMM).
//!
//! The crate is `no_std` (it needs `alloc`) and holds the algorithmic core:
//!
//! - [`genotype`] and [`population`]: bit strings, fitness vectors and cover numbers
//! - [`omm`]: the benchmark, its Pareto front and the domination relation
//! - [`variation`]: uniform parent selection and standard bit mutation
//! - [`nds`]: non-dominated sorting and the critical front
//! - [`nsga3`]: reference points, normalization, association and niching
//! - [`nsga2`]: crowding distance survival, used as a baseline
//! - [`metrics`]: per-generation observables and the cover-number invariant checker
//! - [`optimizer`]: the generational loop tying everything together
//!
//! Every run draws all randomness from a single [`RunRng`]. Within one
//! generation the stream is consumed in a fixed order: the parent draw and
//! mutation mask of each of the μ offspring in turn, then the tie-breaks of
//! survival selection in the order the selection meets them.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod genotype;
pub mod metrics;
pub mod nds;
pub mod nsga2;
pub mod nsga3;
pub mod omm;
pub mod optimizer;
pub mod population;
mod rng;
pub mod variation;

pub use error::Error;
pub use genotype::{FitnessVector, Genotype};
pub use metrics::{
    check_cover_invariants, distance_to_target, snapshot, CoverViolation, GenerationMetrics,
};
pub use nds::{critical_front_index, non_dominated_sort, FrontPartition};
pub use nsga2::{crowding_distance, nsga2_survival};
pub use nsga3::{
    associate, generate_reference_points, niching_select, nsga3_survival, perpendicular_distance,
    update_and_normalize, Association, NicheMember, NormalizationState, ReferencePointSet,
};
pub use omm::{coverage, dominates, Coverage, Dominance, OmmProblem, ParetoFront};
pub use optimizer::{Algorithm, Optimizer, StepReport};
pub use population::{
    cover_numbers, max_cover_number, random_population, CoverMap, Individual, Population,
};
pub use rng::{mix_seed, RunRng};

pub type Result<T, E = Error> = core::result::Result<T, E>;
