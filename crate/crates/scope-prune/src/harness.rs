//! Benchmark harness: runs the selectors on a bundle, times the selector
//! call only (I/O excluded), and assembles sweep tables over
//! (alpha, k, seed) grids.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::metrics::{self, MetricsError};
use crate::model::{SaliencyVector, SelectionConfig, SelectionResult, SimilarityMatrix};
use crate::selection::{self, SelectionError};
use crate::synth::{self, SynthError, SynthSpec};

/// Theta thresholds reported by the sweep.
pub const SWEEP_THETAS: [f64; 3] = [0.3, 0.5, 0.7];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Selection(#[from] SelectionError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error("UnknownMethod: {0} (expected scope|saliency|coverage|random)")]
    UnknownMethod(String),
    #[error("MissingSeed: method `random` requires an explicit seed")]
    MissingSeed,
    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Scope,
    Saliency,
    Coverage,
    Random,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Scope,
        Method::Saliency,
        Method::Coverage,
        Method::Random,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Scope => "scope",
            Method::Saliency => "saliency",
            Method::Coverage => "coverage",
            Method::Random => "random",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scope" => Ok(Method::Scope),
            "saliency" => Ok(Method::Saliency),
            "coverage" => Ok(Method::Coverage),
            "random" => Ok(Method::Random),
            other => Err(HarnessError::UnknownMethod(other.to_string())),
        }
    }
}

/// Result of one timed selector run.
#[derive(Debug, Clone)]
pub struct PruneOutcome {
    pub result: SelectionResult,
    pub wall: Duration,
    pub set_coverage: f64,
}

/// Runs one selector and times the selection call only. `random` draws its
/// seed from `config.seed` and fails without one.
pub fn run_method(
    method: Method,
    sim: &SimilarityMatrix,
    saliency: &SaliencyVector,
    config: &SelectionConfig,
) -> Result<PruneOutcome, HarnessError> {
    let start = Instant::now();
    let result = match method {
        Method::Scope => selection::scope_select(sim, saliency, config)?,
        Method::Coverage => selection::coverage_only_select(sim, config)?,
        Method::Saliency => {
            let indices = selection::saliency_topk_select(saliency, config.k)?;
            selection::result_from_indices(&indices, sim)?
        }
        Method::Random => {
            let seed = config.seed.ok_or(HarnessError::MissingSeed)?;
            let indices = selection::random_select(sim.n(), config.k, seed)?;
            selection::result_from_indices(&indices, sim)?
        }
    };
    let wall = start.elapsed();
    let set_coverage = metrics::set_coverage(result.selected(), sim)?;
    Ok(PruneOutcome {
        result,
        wall,
        set_coverage,
    })
}

/// One sweep cell result. `failed` rows carry NaN metrics and mark partial
/// output.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub alpha: f64,
    pub k: usize,
    pub seed: u64,
    pub method: Method,
    pub set_coverage: f64,
    pub theta_coverage: [f64; 3],
    pub wall_ms: f64,
    pub failed: bool,
}

pub const SWEEP_CSV_HEADER: &str =
    "alpha,k,seed,method,set_coverage,theta_0.3,theta_0.5,theta_0.7,wall_ms,status";

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.3},{}",
            self.alpha,
            self.k,
            self.seed,
            self.method,
            self.set_coverage,
            self.theta_coverage[0],
            self.theta_coverage[1],
            self.theta_coverage[2],
            self.wall_ms,
            if self.failed { "failed" } else { "ok" }
        )
    }
}

/// The input a sweep runs over: a fixed bundle, or a synthetic spec
/// regenerated per seed.
pub enum SweepInput<'a> {
    Bundle {
        sim: &'a SimilarityMatrix,
        saliency: &'a SaliencyVector,
    },
    Synth(SynthSpec),
}

fn sweep_cell(
    sim: &SimilarityMatrix,
    saliency: &SaliencyVector,
    alpha: f64,
    k: usize,
    seed: u64,
    method: Method,
) -> Result<SweepRow, HarnessError> {
    let config = SelectionConfig::new(k, alpha)
        .map_err(|e| HarnessError::InvalidConfig(e.to_string()))?
        .with_seed(seed);
    let outcome = run_method(method, sim, saliency, &config)?;
    let mut theta_cov = [0.0; 3];
    for (slot, &theta) in theta_cov.iter_mut().zip(&SWEEP_THETAS) {
        *slot = metrics::theta_coverage(outcome.result.selected(), sim, theta)?;
    }
    Ok(SweepRow {
        alpha,
        k,
        seed,
        method,
        set_coverage: outcome.set_coverage,
        theta_coverage: theta_cov,
        wall_ms: outcome.wall.as_secs_f64() * 1e3,
        failed: false,
    })
}

/// Runs all four selectors over the (alpha, k, seed) grid. Rows are ordered
/// by (alpha, k, seed, method). A failing cell produces a marker row
/// instead of aborting the sweep; the first error is returned alongside the
/// rows collected so far.
pub fn run_sweep(
    input: &SweepInput<'_>,
    alphas: &[f64],
    ks: &[usize],
    seeds: &[u64],
) -> (Vec<SweepRow>, Option<HarnessError>) {
    let mut rows = Vec::new();
    let mut first_error = None;
    for &alpha in alphas {
        for &k in ks {
            for &seed in seeds {
                // regenerate per-seed for synthetic input; reuse for bundles
                let generated;
                let (sim, saliency): (&SimilarityMatrix, &SaliencyVector) = match input {
                    SweepInput::Bundle { sim, saliency } => (sim, saliency),
                    SweepInput::Synth(spec) => {
                        let mut spec = spec.clone();
                        spec.seed = seed;
                        match synth::generate(&spec) {
                            Ok((tokens, sal, _)) => {
                                let sim = crate::similarity::similarity_from_tokens(&tokens);
                                generated = (sim, sal);
                                (&generated.0, &generated.1)
                            }
                            Err(e) => {
                                if first_error.is_none() {
                                    first_error = Some(HarnessError::Synth(e));
                                }
                                for method in Method::ALL {
                                    rows.push(failed_row(alpha, k, seed, method));
                                }
                                continue;
                            }
                        }
                    }
                };
                for method in Method::ALL {
                    match sweep_cell(sim, saliency, alpha, k, seed, method) {
                        Ok(row) => rows.push(row),
                        Err(e) => {
                            if first_error.is_none() {
                                first_error = Some(e);
                            }
                            rows.push(failed_row(alpha, k, seed, method));
                        }
                    }
                }
            }
        }
    }
    (rows, first_error)
}

fn failed_row(alpha: f64, k: usize, seed: u64, method: Method) -> SweepRow {
    SweepRow {
        alpha,
        k,
        seed,
        method,
        set_coverage: f64::NAN,
        theta_coverage: [f64::NAN; 3],
        wall_ms: f64::NAN,
        failed: true,
    }
}

/// Uniform per-grid-point mean of several coverage curves.
pub fn mean_curve(curves: &[Vec<f64>]) -> Vec<f64> {
    if curves.is_empty() {
        return Vec::new();
    }
    let len = curves[0].len();
    let mut out = vec![0.0; len];
    for curve in curves {
        for (o, &c) in out.iter_mut().zip(curve) {
            *o += c;
        }
    }
    for o in &mut out {
        *o /= curves.len() as f64;
    }
    out
}
