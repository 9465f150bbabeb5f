//! Single runs.

use std::time::Instant;

use nsga3_core::{
    check_cover_invariants, snapshot, Algorithm, GenerationMetrics, Optimizer, Population,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{HarnessError, Result};

/// A broken invariant observed during a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantRecord {
    /// Generation of the population in which the violation shows.
    pub t: u64,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunResult {
    /// The configuration with every default filled in.
    pub config: RunConfig,
    /// Generations executed.
    pub generations: u64,
    /// The coverage target was not reached within the generation cap.
    pub capped: bool,
    /// `mu * generations`.
    pub fitness_evaluations: u64,
    pub wall_time_ms: u64,
    pub final_beta: usize,
    pub final_coverage: f64,
    /// Extremes of every normalized objective value NSGA-III computed.
    pub normalized_range: Option<(f64, f64)>,
    pub violations: Vec<InvariantRecord>,
    pub trace: Vec<GenerationMetrics>,
}

impl RunResult {
    /// Generations until the coverage target, `None` when capped.
    pub fn generations_to_coverage(&self) -> Option<u64> {
        (!self.capped).then_some(self.generations)
    }
}

/// Runs one configuration until the coverage target or the generation cap.
///
/// With `check_invariants` or `strict_invariants`, every generation is
/// checked for: a single non-dominated layer in the merged pool (every
/// m-OMM point is Pareto-optimal), and for NSGA-III additionally the
/// cover-number properties of [`check_cover_invariants`] and, when `eps_nad ≥ n`,
/// normalized values inside `[0, 1]`.
pub fn run_single(config: &RunConfig) -> Result<RunResult> {
    config.validate()?;
    let config = config.resolved();
    let problem = config.problem()?;
    let front = problem.pareto_front()?;
    let started = Instant::now();

    let mut optimizer = match config.algo {
        Algorithm::Nsga3 => Optimizer::nsga3(
            problem,
            config.mu,
            config.resolution(),
            config.nadir_floor(),
            config.seed,
        )?,
        Algorithm::Nsga2 => Optimizer::nsga2(problem, config.mu, config.seed)?,
    };

    let cap = config.generation_cap();
    let checking = config.check_invariants || config.strict_invariants;
    let target = (config.stop_at_coverage * front.len() as f64).ceil() as usize;
    let mut trace = Vec::new();
    let mut violations = Vec::new();

    let observe = |pop: &Population, t: u64, trace: &mut Vec<GenerationMetrics>| {
        let keep = config.trace_every > 0 && t.is_multiple_of(config.trace_every);
        let metrics = snapshot(pop, &front, t, keep && config.trace_histograms);
        if keep {
            trace.push(metrics.clone());
        }
        metrics
    };

    let mut metrics = observe(optimizer.population(), 0, &mut trace);
    while metrics.covered < target && optimizer.generation() < cap {
        let previous = checking.then(|| optimizer.population().clone());
        let report = optimizer.step();
        let t = report.t;
        if let Some(previous) = previous {
            let mut found = Vec::new();
            if report.front_count != 1 {
                found.push(format!(
                    "merged pool split into {} fronts",
                    report.front_count
                ));
            }
            if config.algo == Algorithm::Nsga3 {
                found.extend(
                    check_cover_invariants(&previous, optimizer.population(), &front, config.mu)
                        .iter()
                        .map(ToString::to_string),
                );
                if config.nadir_floor() >= config.n as f64 {
                    if let Some((lo, hi)) = optimizer.normalized_range() {
                        if lo < 0.0 || hi > 1.0 {
                            found.push(format!("normalized values span [{lo}, {hi}]"));
                        }
                    }
                }
            }
            if config.strict_invariants {
                if let Some(first) = found.first() {
                    return Err(HarnessError::InvariantViolation {
                        t,
                        details: first.clone(),
                    });
                }
            }
            violations.extend(
                found
                    .into_iter()
                    .map(|message| InvariantRecord { t, message }),
            );
        }
        metrics = observe(optimizer.population(), t, &mut trace);
    }
    if trace.last().map(|m| m.t) != Some(metrics.t) {
        trace.push(metrics.clone());
    }

    let generations = optimizer.generation();
    Ok(RunResult {
        generations,
        capped: metrics.covered < target,
        fitness_evaluations: config.mu as u64 * generations,
        wall_time_ms: started.elapsed().as_millis() as u64,
        final_beta: metrics.beta,
        final_coverage: metrics.coverage_fraction(),
        normalized_range: optimizer.normalized_range(),
        violations,
        trace,
        config,
    })
}
