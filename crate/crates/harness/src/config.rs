//! Run and experiment configuration.
//!
//! The same key names are used in TOML files and (kebab-cased) as CLI
//! flags.

use std::path::Path;

use nsga3_core::nsga3::ReferencePointSet;
use nsga3_core::{Algorithm, OmmProblem};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Configuration of one run. Unset optional values fall back to the
/// defaults documented on the accessors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_algo")]
    pub algo: Algorithm,
    #[serde(default = "default_m")]
    pub m: usize,
    pub n: usize,
    pub mu: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_nad: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_gens: Option<u64>,
    /// Record a trace row every this many generations; 0 disables tracing.
    #[serde(default = "default_trace_every")]
    pub trace_every: u64,
    /// Keep cover-number histograms in traced rows.
    #[serde(default)]
    pub trace_histograms: bool,
    /// Check the cover-number invariants every generation and record
    /// violations.
    #[serde(default)]
    pub check_invariants: bool,
    /// Like `check_invariants`, but abort the run on the first violation.
    #[serde(default)]
    pub strict_invariants: bool,
    /// Stop once this fraction of the Pareto front is covered.
    #[serde(default = "default_stop")]
    pub stop_at_coverage: f64,
}

fn default_algo() -> Algorithm {
    Algorithm::Nsga3
}

fn default_m() -> usize {
    2
}

fn default_trace_every() -> u64 {
    1
}

fn default_stop() -> f64 {
    1.0
}

impl RunConfig {
    pub fn new(algo: Algorithm, m: usize, n: usize, mu: usize, seed: u64) -> Self {
        Self {
            algo,
            m,
            n,
            mu,
            p: None,
            eps_nad: None,
            seed,
            max_gens: None,
            trace_every: default_trace_every(),
            trace_histograms: false,
            check_invariants: false,
            strict_invariants: false,
            stop_at_coverage: default_stop(),
        }
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Ok(toml::from_str(&text)?)
    }

    pub fn problem(&self) -> Result<OmmProblem> {
        Ok(OmmProblem::new(self.n, self.m)?)
    }

    /// Reference point resolution; defaults to `⌈2 m^{3/2} n⌉`.
    pub fn resolution(&self) -> u32 {
        self.p
            .unwrap_or_else(|| ReferencePointSet::default_resolution(self.m, self.n))
    }

    /// Nadir floor; defaults to `n`.
    pub fn nadir_floor(&self) -> f64 {
        self.eps_nad.unwrap_or(self.n as f64)
    }

    /// Generation cap; defaults to `⌈50 n² ln(n) / μ⌉`, at least 1.
    pub fn generation_cap(&self) -> u64 {
        self.max_gens.unwrap_or_else(|| {
            let n = self.n as f64;
            let cap = (50.0 * n * n * n.ln() / self.mu as f64).ceil();
            (cap as u64).max(1)
        })
    }

    /// Fills every defaulted value in, so the config documents the run.
    pub fn resolved(&self) -> RunConfig {
        RunConfig {
            p: Some(self.resolution()),
            eps_nad: Some(self.nadir_floor()),
            max_gens: Some(self.generation_cap()),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.problem()?;
        if self.mu == 0 {
            return Err(HarnessError::Config("mu must be at least 1".into()));
        }
        if self.p == Some(0) {
            return Err(HarnessError::Config("p must be at least 1".into()));
        }
        if self.max_gens == Some(0) {
            return Err(HarnessError::Config("max_gens must be at least 1".into()));
        }
        if let Some(eps) = self.eps_nad {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(HarnessError::Config(format!(
                    "eps_nad must be positive, got {eps}"
                )));
            }
        }
        if !(self.stop_at_coverage > 0.0 && self.stop_at_coverage <= 1.0) {
            return Err(HarnessError::Config(format!(
                "stop_at_coverage must lie in (0, 1], got {}",
                self.stop_at_coverage
            )));
        }
        Ok(())
    }
}

/// Either a single value or a list of values in a grid block.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn values(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// Population size in a grid: a number, `"front"` for `S_m`, or `"k*front"`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum MuSpec {
    Fixed(usize),
    Rule(String),
}

impl MuSpec {
    pub fn resolve(&self, problem: &OmmProblem) -> Result<usize> {
        match self {
            MuSpec::Fixed(mu) => Ok(*mu),
            MuSpec::Rule(rule) => {
                let factor = match rule.trim().strip_suffix("front") {
                    Some("") => 1,
                    Some(prefix) => prefix
                        .trim()
                        .strip_suffix('*')
                        .and_then(|k| k.trim().parse::<usize>().ok())
                        .ok_or_else(|| HarnessError::Config(format!("bad mu rule {rule:?}")))?,
                    None => return Err(HarnessError::Config(format!("bad mu rule {rule:?}"))),
                };
                let size = usize::try_from(problem.front_size())
                    .map_err(|_| HarnessError::Config("front too large".into()))?;
                Ok(factor * size)
            }
        }
    }
}

/// One cartesian block of an experiment grid.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub algo: Option<OneOrMany<Algorithm>>,
    pub m: Option<OneOrMany<usize>>,
    pub n: OneOrMany<usize>,
    pub mu: OneOrMany<MuSpec>,
    pub p: Option<u32>,
    pub eps_nad: Option<f64>,
    pub max_gens: Option<u64>,
    pub stop_at_coverage: Option<f64>,
    pub strict_invariants: Option<bool>,
}

/// An experiment file: repetition settings plus grid blocks.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    pub grid: Vec<GridBlock>,
}

fn default_reps() -> usize {
    1
}

fn default_jobs() -> usize {
    1
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// Expands every block in order; within a block the order is
    /// algo, m, n, mu (last varies fastest).
    pub fn expand(&self) -> Result<Vec<RunConfig>> {
        let mut out = Vec::new();
        for block in &self.grid {
            let algos = block
                .algo
                .as_ref()
                .map_or(vec![Algorithm::Nsga3], OneOrMany::values);
            let ms = block.m.as_ref().map_or(vec![2], OneOrMany::values);
            for &algo in &algos {
                for &m in &ms {
                    for n in block.n.values() {
                        let problem = OmmProblem::new(n, m)?;
                        for mu in block.mu.values() {
                            let mut config = RunConfig::new(algo, m, n, mu.resolve(&problem)?, 0);
                            config.p = block.p;
                            config.eps_nad = block.eps_nad;
                            config.max_gens = block.max_gens;
                            config.trace_every = 0;
                            if let Some(stop) = block.stop_at_coverage {
                                config.stop_at_coverage = stop;
                            }
                            config.strict_invariants = block.strict_invariants.unwrap_or(false);
                            config.validate()?;
                            out.push(config);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::new(Algorithm::Nsga3, 2, 32, 33, 1);
        assert_eq!(c.resolution(), 182);
        assert_eq!(c.nadir_floor(), 32.0);
        // ⌈50 · 1024 · ln 32 / 33⌉ = ⌈5377.3⌉
        assert_eq!(c.generation_cap(), 5378);
        let r = c.resolved();
        assert_eq!(
            (r.p, r.eps_nad, r.max_gens),
            (Some(182), Some(32.0), Some(5378))
        );
        assert_eq!(
            RunConfig::new(Algorithm::Nsga3, 2, 1, 1, 1).generation_cap(),
            1
        );
    }

    #[test]
    fn validation() {
        assert!(RunConfig::new(Algorithm::Nsga3, 3, 6, 4, 0)
            .validate()
            .is_err());
        assert!(RunConfig::new(Algorithm::Nsga3, 4, 5, 4, 0)
            .validate()
            .is_err());
        assert!(RunConfig::new(Algorithm::Nsga3, 2, 6, 0, 0)
            .validate()
            .is_err());
        let mut c = RunConfig::new(Algorithm::Nsga2, 2, 6, 4, 0);
        assert!(c.validate().is_ok());
        c.stop_at_coverage = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn run_config_from_toml() {
        let c: RunConfig =
            toml::from_str("algo = \"nsga2\"\nn = 8\nmu = 9\nseed = 3\nstrict_invariants = true\n")
                .unwrap();
        assert_eq!(c.algo, Algorithm::Nsga2);
        assert_eq!((c.m, c.n, c.mu, c.seed), (2, 8, 9, 3));
        assert!(c.strict_invariants);
        assert!(toml::from_str::<RunConfig>("n = 8\nmu = 9\nbogus = 1\n").is_err());
    }

    #[test]
    fn grid_expansion() {
        let text = r#"
            master_seed = 5
            reps = 3
            [[grid]]
            algo = ["nsga3", "nsga2"]
            n = [8, 16]
            mu = "front"
            [[grid]]
            m = 4
            n = 4
            mu = [9, "2*front"]
            max_gens = 100
        "#;
        let exp = ExperimentConfig::from_toml_str(text).unwrap();
        let configs = exp.expand().unwrap();
        let shapes: Vec<_> = configs.iter().map(|c| (c.algo, c.m, c.n, c.mu)).collect();
        assert_eq!(
            shapes,
            vec![
                (Algorithm::Nsga3, 2, 8, 9),
                (Algorithm::Nsga3, 2, 16, 17),
                (Algorithm::Nsga2, 2, 8, 9),
                (Algorithm::Nsga2, 2, 16, 17),
                (Algorithm::Nsga3, 4, 4, 9),
                (Algorithm::Nsga3, 4, 4, 18),
            ]
        );
        assert_eq!(configs[5].max_gens, Some(100));
        assert_eq!(exp.reps, 3);
    }

    #[test]
    fn bad_mu_rule() {
        let problem = OmmProblem::new(4, 2).unwrap();
        assert!(MuSpec::Rule("lots".into()).resolve(&problem).is_err());
        assert!(MuSpec::Rule("x*front".into()).resolve(&problem).is_err());
        assert_eq!(
            MuSpec::Rule("4*front".into()).resolve(&problem).unwrap(),
            20
        );
    }
}
