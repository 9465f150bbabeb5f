//! Per-generation observables and the cover-number invariant checker.

use alloc::vec::Vec;

use crate::genotype::FitnessVector;
use crate::omm::ParetoFront;
use crate::population::{cover_numbers, CoverMap, Population};

#[derive(Clone, PartialEq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GenerationMetrics {
    pub t: u64,
    /// Maximum cover number.
    pub beta: usize,
    /// Front vectors present in the population.
    pub covered: usize,
    pub front_size: usize,
    pub max_ones: usize,
    pub min_ones: usize,
    pub distinct_fitness: usize,
    pub cover_histogram: Option<CoverMap>,
}

impl GenerationMetrics {
    pub fn coverage_fraction(&self) -> f64 {
        self.covered as f64 / self.front_size as f64
    }

    pub fn is_fully_covered(&self) -> bool {
        self.covered == self.front_size
    }
}

/// Computes every observable of `pop`. The cover map is kept only when
/// `keep_histogram` is set.
pub fn snapshot(
    pop: &Population,
    front: &ParetoFront,
    t: u64,
    keep_histogram: bool,
) -> GenerationMetrics {
    assert!(!pop.is_empty(), "snapshot of an empty population");
    let cover = cover_numbers(pop);
    let ones = pop.iter().map(|x| x.genotype().count_ones());
    let (min_ones, max_ones) = ones.fold((usize::MAX, 0), |(lo, hi), k| (lo.min(k), hi.max(k)));
    GenerationMetrics {
        t,
        beta: cover.max(),
        covered: cover.iter().filter(|(v, _)| front.contains(v)).count(),
        front_size: front.len(),
        max_ones,
        min_ones,
        distinct_fitness: cover.distinct(),
        cover_histogram: keep_histogram.then_some(cover),
    }
}

/// A broken cover-number property between two consecutive populations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoverViolation {
    /// A covered front vector is no longer covered.
    CoverageLost { vector: FitnessVector },
    /// A cover number fell below `min(previous, ⌊μ/S_m⌋)`.
    FloorBroken {
        vector: FitnessVector,
        previous: usize,
        next: usize,
        floor: usize,
    },
    /// `dropped` lost members, yet `other` ended above `dropped`'s old count.
    DropExceeded {
        dropped: FitnessVector,
        dropped_previous: usize,
        other: FitnessVector,
        other_next: usize,
    },
    /// The maximum cover number increased.
    BetaIncreased { previous: usize, next: usize },
}

impl core::fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::CoverageLost { vector } => write!(f, "front vector {vector} lost its cover"),
            Self::FloorBroken {
                vector,
                previous,
                next,
                floor,
            } => write!(
                f,
                "cover number of {vector} fell from {previous} to {next}, below floor {floor}"
            ),
            Self::DropExceeded {
                dropped,
                dropped_previous,
                other,
                other_next,
            } => write!(
                f,
                "{dropped} dropped from {dropped_previous} while {other} rose to {other_next}"
            ),
            Self::BetaIncreased { previous, next } => {
                write!(
                    f,
                    "maximum cover number increased from {previous} to {next}"
                )
            }
        }
    }
}

/// Checks the cover-number properties of one survival step on a problem
/// whose every search point is Pareto-optimal:
///
/// 1. covered front vectors stay covered;
/// 2. `c_{t+1}(v) ≥ min(c_t(v), ⌊μ/S_m⌋)`, i.e. for every `α ≤ ⌊μ/S_m⌋`,
///    `c_t(v) ≥ α` implies `c_{t+1}(v) ≥ α`;
/// 3. if some `v` lost members, no `w` ends above `c_t(v)`;
/// 4. the maximum cover number does not increase.
pub fn check_cover_invariants(
    prev: &Population,
    next: &Population,
    front: &ParetoFront,
    mu: usize,
) -> Vec<CoverViolation> {
    let before = cover_numbers(prev);
    let after = cover_numbers(next);
    let floor = mu / front.len();
    let mut violations = Vec::new();

    for (v, previous) in before.iter().filter(|(v, _)| front.contains(v)) {
        let now = after.get(v);
        if now == 0 {
            violations.push(CoverViolation::CoverageLost { vector: v.clone() });
        }
        if now < previous.min(floor) {
            violations.push(CoverViolation::FloorBroken {
                vector: v.clone(),
                previous,
                next: now,
                floor,
            });
        }
    }

    // the binding case of (3) is the dropped vector with the smallest old count
    let dropped = before
        .iter()
        .filter(|(v, c)| front.contains(v) && after.get(v) < *c)
        .min_by_key(|&(_, c)| c);
    if let Some((dropped, dropped_previous)) = dropped {
        if let Some((other, other_next)) = after
            .iter()
            .filter(|(w, _)| front.contains(w))
            .find(|&(_, c)| c > dropped_previous)
        {
            violations.push(CoverViolation::DropExceeded {
                dropped: dropped.clone(),
                dropped_previous,
                other: other.clone(),
                other_next,
            });
        }
    }

    if after.max() > before.max() {
        violations.push(CoverViolation::BetaIncreased {
            previous: before.max(),
            next: after.max(),
        });
    }
    violations
}

/// `min over x of Σ_j |f_{2j-1}(x) - v_{2j-1}|`, the 1-norm distance in the
/// ones-count objectives to `target`. Zero iff `target` is covered (on
/// m-OMM).
pub fn distance_to_target(pop: &Population, target: &FitnessVector) -> u64 {
    pop.fitness()
        .map(|f| {
            f.values()
                .iter()
                .zip(target.values())
                .step_by(2)
                .map(|(&a, &b)| u64::from(a.abs_diff(b)))
                .sum()
        })
        .min()
        .expect("distance of an empty population")
}
