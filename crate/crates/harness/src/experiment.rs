//! Repeated runs over a grid, persisted as CSV.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;

use nsga3_core::{mix_seed, Algorithm};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{HarnessError, Result};
use crate::run::run_single;

pub const EXPERIMENT_HEADER: &str =
    "algo,m,n,mu,p,eps_nad,seed,repetition,generations,capped,fitness_evals,final_beta,wall_ms";

/// One row of the experiment CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub algo: Algorithm,
    pub m: usize,
    pub n: usize,
    pub mu: usize,
    pub p: u32,
    pub eps_nad: f64,
    pub seed: u64,
    pub repetition: usize,
    pub generations: u64,
    pub capped: bool,
    pub fitness_evals: u64,
    pub final_beta: usize,
    pub wall_ms: u64,
}

impl ExperimentRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.algo.name(),
            self.m,
            self.n,
            self.mu,
            self.p,
            self.eps_nad,
            self.seed,
            self.repetition,
            self.generations,
            self.capped,
            self.fitness_evals,
            self.final_beta,
            self.wall_ms
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExperimentOptions {
    pub reps: usize,
    pub master_seed: u64,
    pub jobs: usize,
    /// Write measured wall times; when off the column is 0 and the CSV is
    /// byte-reproducible.
    pub record_wall_time: bool,
}

/// Runs every `(config, repetition)` pair and writes one CSV row each, in
/// `(config index, repetition)` order regardless of completion order.
/// Rows are flushed as soon as all earlier rows are written.
///
/// Run `i = config_index * reps + repetition` uses seed
/// `mix_seed(master_seed, i)`.
pub fn run_experiment<W: Write>(
    grid: &[RunConfig],
    options: ExperimentOptions,
    out: W,
) -> Result<Vec<ExperimentRow>> {
    if options.reps == 0 {
        return Err(HarnessError::Config("reps must be at least 1".into()));
    }
    for config in grid {
        config.validate()?;
    }
    let total = grid.len() * options.reps;
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(usize, Result<ExperimentRow>)>();

    let write_err = |e| HarnessError::io("<experiment output>", e);
    let mut out = out;
    writeln!(out, "{EXPERIMENT_HEADER}").map_err(write_err)?;
    out.flush().map_err(write_err)?;

    std::thread::scope(|scope| {
        for _ in 0..options.jobs.clamp(1, total.max(1)) {
            let tx = tx.clone();
            let (next, stop) = (&next, &stop);
            scope.spawn(move || loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= total || stop.load(Ordering::Relaxed) {
                    break;
                }
                let row = run_row(&grid[index / options.reps], index, options);
                if tx.send((index, row)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut rows = Vec::with_capacity(total);
        let mut failure = None;
        for (index, row) in rx {
            match row {
                Ok(row) => {
                    pending.insert(index, row);
                }
                Err(e) => {
                    stop.store(true, Ordering::Relaxed);
                    failure.get_or_insert(e);
                }
            }
            while let Some(row) = pending.remove(&rows.len()) {
                writeln!(out, "{}", row.to_csv_line()).map_err(write_err)?;
                out.flush().map_err(write_err)?;
                rows.push(row);
            }
        }
        match failure {
            Some(e) => Err(e),
            None => Ok(rows),
        }
    })
}

fn run_row(config: &RunConfig, index: usize, options: ExperimentOptions) -> Result<ExperimentRow> {
    let mut config = config.clone();
    config.seed = mix_seed(options.master_seed, index as u64);
    config.trace_every = 0;
    let result = run_single(&config)?;
    let c = &result.config;
    Ok(ExperimentRow {
        algo: c.algo,
        m: c.m,
        n: c.n,
        mu: c.mu,
        p: c.resolution(),
        eps_nad: c.nadir_floor(),
        seed: c.seed,
        repetition: index % options.reps,
        generations: result.generations,
        capped: result.capped,
        fitness_evals: result.fitness_evaluations,
        final_beta: result.final_beta,
        wall_ms: if options.record_wall_time {
            result.wall_time_ms
        } else {
            0
        },
    })
}

pub fn read_experiment_csv<R: Read>(input: R) -> Result<Vec<ExperimentRow>> {
    let mut reader = csv::Reader::from_reader(input);
    let rows = reader
        .deserialize()
        .collect::<std::result::Result<Vec<ExperimentRow>, _>>()?;
    if rows.is_empty() {
        return Err(HarnessError::EmptyTable);
    }
    Ok(rows)
}

/// Generation statistics of one `(algo, m, n, mu)` group. Capped runs are
/// excluded from the statistics and counted separately.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupSummary {
    pub algo: Algorithm,
    pub m: usize,
    pub n: usize,
    pub mu: usize,
    pub runs: usize,
    pub capped: usize,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub stddev: Option<f64>,
}

pub fn summarize(rows: &[ExperimentRow]) -> Vec<GroupSummary> {
    let mut groups: BTreeMap<(&str, usize, usize, usize), Vec<&ExperimentRow>> = BTreeMap::new();
    for row in rows {
        groups
            .entry((row.algo.name(), row.m, row.n, row.mu))
            .or_default()
            .push(row);
    }
    groups
        .into_values()
        .map(|group| {
            let first = group[0];
            let mut done: Vec<f64> = group
                .iter()
                .filter(|r| !r.capped)
                .map(|r| r.generations as f64)
                .collect();
            done.sort_by(f64::total_cmp);
            let count = done.len() as f64;
            let mean = (!done.is_empty()).then(|| done.iter().sum::<f64>() / count);
            let median = (!done.is_empty()).then(|| {
                let mid = done.len() / 2;
                if done.len().is_multiple_of(2) {
                    (done[mid - 1] + done[mid]) / 2.0
                } else {
                    done[mid]
                }
            });
            let stddev = mean.filter(|_| done.len() > 1).map(|mean| {
                (done.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1.0)).sqrt()
            });
            GroupSummary {
                algo: first.algo,
                m: first.m,
                n: first.n,
                mu: first.mu,
                runs: group.len(),
                capped: group.len() - done.len(),
                mean,
                median,
                stddev,
            }
        })
        .collect()
}
