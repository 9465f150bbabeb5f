//! Log-log least-squares fits of generation counts against problem size.

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::experiment::{summarize, ExperimentRow};

/// Predictor `x` for the regression `ln T = a + b ln x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    /// `x = n`; the slope is the polynomial exponent of `T` in `n`.
    NPow,
    /// `x = S · n ln n / mu` with `S` the Pareto front size.
    NLogNOverMu,
}

impl FitModel {
    pub fn name(self) -> &'static str {
        match self {
            FitModel::NPow => "n_pow",
            FitModel::NLogNOverMu => "n_log_n_over_mu",
        }
    }

    pub fn predictor(self, m: usize, n: usize, mu: usize) -> f64 {
        let n_f = n as f64;
        match self {
            FitModel::NPow => n_f,
            FitModel::NLogNOverMu => {
                let front = (2.0 * n_f / m as f64 + 1.0).powf(m as f64 / 2.0);
                front * n_f * n_f.ln() / mu as f64
            }
        }
    }
}

impl std::str::FromStr for FitModel {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n_pow" => Ok(FitModel::NPow),
            "n_log_n_over_mu" => Ok(FitModel::NLogNOverMu),
            other => Err(HarnessError::Config(format!(
                "unknown fit model `{other}` (expected n_pow or n_log_n_over_mu)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitPoint {
    pub x: f64,
    pub mean_generations: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub model: FitModel,
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
    pub points: Vec<FitPoint>,
}

impl ScalingFit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Fits `ln(mean T) = a + b ln x` over `(x, mean T)` pairs.
pub fn fit_points(model: FitModel, points: &[(f64, f64)]) -> Result<ScalingFit> {
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 3 {
        return Err(HarnessError::TooFewPoints(xs.len()));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(HarnessError::Config(
            "fit needs positive predictors and means".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residuals: Vec<f64> = logs
        .iter()
        .map(|p| p.1 - (intercept + slope * p.0))
        .collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(ScalingFit {
        model,
        intercept,
        slope,
        r_squared,
        points: points
            .iter()
            .zip(residuals)
            .map(|(&(x, y), residual)| FitPoint {
                x,
                mean_generations: y,
                residual,
            })
            .collect(),
    })
}

/// Groups `rows` by `(algo, m, n, mu)`, averages uncapped generation counts
/// and fits them. Groups in which every run was capped are skipped. All
/// rows must share one algorithm and one `m`.
pub fn fit_experiment(rows: &[ExperimentRow], model: FitModel) -> Result<ScalingFit> {
    let first = rows.first().ok_or(HarnessError::EmptyTable)?;
    if rows.iter().any(|r| r.algo != first.algo || r.m != first.m) {
        return Err(HarnessError::Config(
            "table mixes algorithms or objective counts; select one series".into(),
        ));
    }
    let points: Vec<(f64, f64)> = summarize(rows)
        .iter()
        .filter_map(|g| g.mean.map(|mean| (model.predictor(g.m, g.n, g.mu), mean)))
        .collect();
    fit_points(model, &points)
}
