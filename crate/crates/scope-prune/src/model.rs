//! Shared domain types and their construction-time invariants.
//!
//! Every type here validates its data on construction and never repairs it;
//! malformed input is an error, not a warning. All types are immutable after
//! construction and safe to share across threads.

use thiserror::Error;

/// Tolerance used when validating externally supplied similarity matrices.
const SYMMETRY_TOL: f64 = 1e-6;
const RANGE_TOL: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("DimensionMismatch: {context} expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("NonFinite: non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("NegativeSaliency: score {value} at index {index}")]
    NegativeSaliency { index: usize, value: f64 },
    #[error("InvalidShape: {0}")]
    InvalidShape(&'static str),
    #[error("NotSymmetric: |S[{u},{v}] - S[{v},{u}]| = {delta} exceeds tolerance")]
    NotSymmetric { u: usize, v: usize, delta: f64 },
    #[error("OutOfRange: similarity {value} at ({u},{v}) outside [-1, 1]")]
    SimilarityOutOfRange { u: usize, v: usize, value: f64 },
    #[error("InvalidSelection: {0}")]
    InvalidSelection(&'static str),
    #[error("InvalidConfig: {0}")]
    InvalidConfig(&'static str),
}

/// An `n x d` matrix of token embeddings, row-major; row `i` is token `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenMatrix {
    n: usize,
    d: usize,
    data: Vec<f64>,
}

impl TokenMatrix {
    pub fn new(n: usize, d: usize, data: Vec<f64>) -> Result<Self, ModelError> {
        if n == 0 || d == 0 {
            return Err(ModelError::InvalidShape("token matrix requires n >= 1 and d >= 1"));
        }
        if data.len() != n * d {
            return Err(ModelError::DimensionMismatch {
                context: "token matrix data length",
                expected: n * d,
                actual: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|x| !x.is_finite()) {
            return Err(ModelError::NonFinite { index });
        }
        Ok(Self { n, d, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Per-token non-negative importance scores, one per row of the paired
/// [`TokenMatrix`]. Scores are attention-derived in practice, so negatives
/// are rejected; zeros are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct SaliencyVector {
    scores: Vec<f64>,
}

impl SaliencyVector {
    pub fn new(scores: Vec<f64>) -> Result<Self, ModelError> {
        if scores.is_empty() {
            return Err(ModelError::InvalidShape("saliency vector must be non-empty"));
        }
        for (index, &value) in scores.iter().enumerate() {
            if !value.is_finite() {
                return Err(ModelError::NonFinite { index });
            }
            if value < 0.0 {
                return Err(ModelError::NegativeSaliency { index, value });
            }
        }
        Ok(Self { scores })
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }
}

/// Dense `n x n` cosine-similarity matrix, symmetric with entries in [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    /// Validates symmetry (within 1e-6) and value range before accepting
    /// externally supplied data.
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::InvalidShape("similarity matrix requires n >= 1"));
        }
        if values.len() != n * n {
            return Err(ModelError::DimensionMismatch {
                context: "similarity matrix data length",
                expected: n * n,
                actual: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|x| !x.is_finite()) {
            return Err(ModelError::NonFinite { index });
        }
        for u in 0..n {
            for v in u..n {
                let a = values[u * n + v];
                if a < -1.0 - RANGE_TOL || a > 1.0 + RANGE_TOL {
                    return Err(ModelError::SimilarityOutOfRange { u, v, value: a });
                }
                let delta = (a - values[v * n + u]).abs();
                if delta > SYMMETRY_TOL {
                    return Err(ModelError::NotSymmetric { u, v, delta });
                }
            }
        }
        Ok(Self { n, values })
    }

    /// Internal constructor for matrices built by the similarity module,
    /// which guarantees exact symmetry and clamped range by construction.
    pub(crate) fn from_raw(n: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), n * n);
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.values[u * self.n + v]
    }

    /// Row `u` of the matrix: similarities of token `u` against all tokens.
    #[inline]
    pub fn row(&self, u: usize) -> &[f64] {
        &self.values[u * self.n..(u + 1) * self.n]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Deterministic tie-break rule applied when several candidates attain the
/// maximal gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestIndex,
}

/// Parameters for a selection run: retained count `k`, saliency exponent
/// `alpha`, and an optional seed for randomized selectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionConfig {
    pub k: usize,
    pub alpha: f64,
    pub tie_break: TieBreak,
    pub seed: Option<u64>,
}

impl SelectionConfig {
    pub fn new(k: usize, alpha: f64) -> Result<Self, ModelError> {
        if k == 0 {
            return Err(ModelError::InvalidConfig("k must be >= 1"));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(ModelError::InvalidConfig("alpha must be finite and >= 0"));
        }
        Ok(Self {
            k,
            alpha,
            tie_break: TieBreak::LowestIndex,
            seed: None,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// The outcome of a greedy selection run: picked indices in pick order, the
/// winning weighted gain at each step, and the final per-token coverage
/// state.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    selected: Vec<usize>,
    step_gains: Vec<f64>,
    final_coverage: Vec<f64>,
}

impl SelectionResult {
    pub fn new(
        selected: Vec<usize>,
        step_gains: Vec<f64>,
        final_coverage: Vec<f64>,
    ) -> Result<Self, ModelError> {
        if selected.is_empty() {
            return Err(ModelError::InvalidSelection("selection must contain at least one index"));
        }
        if selected.len() != step_gains.len() {
            return Err(ModelError::InvalidSelection(
                "step_gains length must equal number of selected indices",
            ));
        }
        let n = final_coverage.len();
        let mut seen = vec![false; n];
        for &i in &selected {
            if i >= n {
                return Err(ModelError::InvalidSelection("selected index out of range"));
            }
            if seen[i] {
                return Err(ModelError::InvalidSelection("duplicate selected index"));
            }
            seen[i] = true;
        }
        for &g in &step_gains {
            if !g.is_finite() || g < 0.0 {
                return Err(ModelError::InvalidSelection("step gains must be finite and >= 0"));
            }
        }
        for &c in &final_coverage {
            if !c.is_finite() || !(0.0..=1.0).contains(&c) {
                return Err(ModelError::InvalidSelection("final coverage entries must lie in [0, 1]"));
            }
        }
        Ok(Self {
            selected,
            step_gains,
            final_coverage,
        })
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn step_gains(&self) -> &[f64] {
        &self.step_gains
    }

    pub fn final_coverage(&self) -> &[f64] {
        &self.final_coverage
    }

    pub fn k(&self) -> usize {
        self.selected.len()
    }
}

/// One method's coverage curve over a theta grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodCoverage {
    pub name: String,
    pub coverage: Vec<f64>,
}

/// Theta-coverage comparison table: one row per method, one column per
/// threshold. Serializes to CSV with a `theta,<method>,...` header.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub thetas: Vec<f64>,
    pub rows: Vec<MethodCoverage>,
}

impl CoverageReport {
    /// CSV rendering: header `theta,<method1>,<method2>,...`, one line per
    /// theta, values with 6 decimal places.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta");
        for row in &self.rows {
            out.push(',');
            out.push_str(&row.name);
        }
        out.push('\n');
        for (j, theta) in self.thetas.iter().enumerate() {
            out.push_str(&format!("{theta:.6}"));
            for row in &self.rows {
                out.push_str(&format!(",{:.6}", row.coverage[j]));
            }
            out.push('\n');
        }
        out
    }
}

/// Checks that a token matrix and saliency vector form a consistent bundle.
pub fn validate_bundle<'a>(
    tokens: &'a TokenMatrix,
    saliency: &'a SaliencyVector,
) -> Result<(&'a TokenMatrix, &'a SaliencyVector), ModelError> {
    if saliency.len() != tokens.n() {
        return Err(ModelError::DimensionMismatch {
            context: "saliency length vs token count",
            expected: tokens.n(),
            actual: saliency.len(),
        });
    }
    Ok((tokens, saliency))
}
