//! Coverage metrics: theta-coverage, clamped set coverage, and the
//! per-method coverage-curve report.

use thiserror::Error;

use crate::model::{CoverageReport, MethodCoverage, SimilarityMatrix};

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("EmptySelection: theta-coverage requires at least one selected index")]
    EmptySelection,
    #[error("ThetaOutOfRange: theta={0} must lie in [0, 1]")]
    ThetaOutOfRange(f64),
    #[error("IndexOutOfRange: index {index} with n={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("InvalidGrid: {0}")]
    InvalidGrid(&'static str),
}

/// Ascending list of similarity thresholds in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaGrid {
    thetas: Vec<f64>,
}

impl ThetaGrid {
    pub fn new(thetas: Vec<f64>) -> Result<Self, MetricsError> {
        if thetas.is_empty() {
            return Err(MetricsError::InvalidGrid("grid must be non-empty"));
        }
        for &t in &thetas {
            if !t.is_finite() || !(0.0..=1.0).contains(&t) {
                return Err(MetricsError::InvalidGrid("thresholds must lie in [0, 1]"));
            }
        }
        if thetas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MetricsError::InvalidGrid("thresholds must be strictly ascending"));
        }
        Ok(Self { thetas })
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }
}

impl Default for ThetaGrid {
    /// Eleven evenly spaced thresholds 0.0, 0.1, ..., 1.0.
    fn default() -> Self {
        Self {
            thetas: (0..=10).map(|i| i as f64 / 10.0).collect(),
        }
    }
}

fn check_indices(selected: &[usize], n: usize) -> Result<(), MetricsError> {
    for &i in selected {
        if i >= n {
            return Err(MetricsError::IndexOutOfRange { index: i, n });
        }
    }
    Ok(())
}

/// Fraction of all tokens whose best similarity to the selected set is at
/// least `theta`. Comparison is exact `>=` on clamped similarities.
pub fn theta_coverage(
    selected: &[usize],
    sim: &SimilarityMatrix,
    theta: f64,
) -> Result<f64, MetricsError> {
    if selected.is_empty() {
        return Err(MetricsError::EmptySelection);
    }
    if !theta.is_finite() || !(0.0..=1.0).contains(&theta) {
        return Err(MetricsError::ThetaOutOfRange(theta));
    }
    let n = sim.n();
    check_indices(selected, n)?;
    let covered = (0..n)
        .filter(|&u| selected.iter().any(|&v| sim.get(u, v) >= theta))
        .count();
    Ok(covered as f64 / n as f64)
}

/// Clamped set coverage `sum_u max(0, max_{s in selected} S_us)`; the empty
/// set scores 0.
pub fn set_coverage(selected: &[usize], sim: &SimilarityMatrix) -> Result<f64, MetricsError> {
    let n = sim.n();
    check_indices(selected, n)?;
    if selected.is_empty() {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for u in 0..n {
        let best = selected
            .iter()
            .map(|&s| sim.get(u, s))
            .fold(f64::NEG_INFINITY, f64::max);
        if best > 0.0 {
            total += best;
        }
    }
    Ok(total)
}

/// Evaluates each named selection over the grid, one curve per method.
pub fn coverage_curve(
    methods: &[(&str, &[usize])],
    sim: &SimilarityMatrix,
    grid: &ThetaGrid,
) -> Result<CoverageReport, MetricsError> {
    let mut rows = Vec::with_capacity(methods.len());
    for (name, selected) in methods {
        let coverage = grid
            .thetas()
            .iter()
            .map(|&theta| theta_coverage(selected, sim, theta))
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(MethodCoverage {
            name: (*name).to_string(),
            coverage,
        });
    }
    Ok(CoverageReport {
        thetas: grid.thetas().to_vec(),
        rows,
    })
}
