//! Greedy token selection: the saliency-weighted coverage maximizer, a
//! from-scratch oracle variant, and the ablation baselines.
//!
//! The objective is the clamped facility-location coverage
//! `f(S) = sum_u max(0, max_{s in S} S_us)` with `f(empty) = 0`. Each round
//! the selector picks the unselected token maximizing the weighted marginal
//! gain `delta(v; S) * A_v^alpha`, ties broken by lowest index, and updates
//! the running coverage state `c_u = max(c_u, S_uv*)`.
//!
//! Weighted gains are never negative, so when coverage saturates (or all
//! remaining saliencies are zero) selection keeps returning exactly `k`
//! tokens in tie-break order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{SaliencyVector, SelectionConfig, SelectionResult, SimilarityMatrix};

#[derive(Debug, Error, PartialEq)]
pub enum SelectionError {
    #[error("KTooLarge: requested k={k} but only n={n} tokens")]
    KTooLarge { k: usize, n: usize },
    #[error("DimensionMismatch: {context} expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("IndexOutOfRange: index {index} with n={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("AlreadySelected: candidate {0} is already in the selection")]
    AlreadySelected(usize),
}

/// Running best-similarity state `c_u` between each token and the selected
/// set, initialized to 0. Entries only grow under updates and stay in
/// [0, 1] because similarities are clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageState {
    c: Vec<f64>,
}

impl CoverageState {
    pub fn new(n: usize) -> Self {
        Self { c: vec![0.0; n] }
    }

    pub fn coverage(&self) -> &[f64] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Folds the newly selected token `v` into the state.
    pub fn update(&mut self, v: usize, sim: &SimilarityMatrix) {
        let row = sim.row(v);
        for (c, &s) in self.c.iter_mut().zip(row) {
            if s > *c {
                *c = s;
            }
        }
    }

    pub fn into_coverage(self) -> Vec<f64> {
        self.c
    }
}

/// Marginal coverage gain of adding candidate `v` given the current state:
/// `sum_u (max(S_uv, c_u) - c_u)`. Always >= 0.
pub fn marginal_gain(
    v: usize,
    state: &CoverageState,
    sim: &SimilarityMatrix,
) -> Result<f64, SelectionError> {
    let n = sim.n();
    if v >= n {
        return Err(SelectionError::IndexOutOfRange { index: v, n });
    }
    if state.len() != n {
        return Err(SelectionError::DimensionMismatch {
            context: "coverage state length",
            expected: n,
            actual: state.len(),
        });
    }
    Ok(gain_unchecked(v, state.coverage(), sim))
}

#[inline]
fn gain_unchecked(v: usize, c: &[f64], sim: &SimilarityMatrix) -> f64 {
    sim.row(v)
        .iter()
        .zip(c)
        .map(|(&s, &cu)| if s > cu { s - cu } else { 0.0 })
        .sum()
}

/// `a^alpha` in f64, with `0^0 = 1` so alpha = 0 reproduces the unweighted
/// selector exactly.
#[inline]
fn saliency_weight(a: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        1.0
    } else {
        a.powf(alpha)
    }
}

fn check_args(
    sim: &SimilarityMatrix,
    saliency_len: Option<usize>,
    k: usize,
) -> Result<(), SelectionError> {
    let n = sim.n();
    if let Some(len) = saliency_len {
        if len != n {
            return Err(SelectionError::DimensionMismatch {
                context: "saliency length",
                expected: n,
                actual: len,
            });
        }
    }
    if k > n {
        return Err(SelectionError::KTooLarge { k, n });
    }
    Ok(())
}

/// Shared greedy loop over weighted incremental gains. `weights[v]` is the
/// multiplicative factor applied to the coverage gain of candidate `v`.
fn greedy_core(sim: &SimilarityMatrix, weights: &[f64], k: usize) -> SelectionResult {
    let n = sim.n();
    let mut state = CoverageState::new(n);
    let mut selected = Vec::with_capacity(k);
    let mut step_gains = Vec::with_capacity(k);
    let mut taken = vec![false; n];
    for _ in 0..k {
        let mut best_idx = usize::MAX;
        let mut best_val = f64::NEG_INFINITY;
        for v in 0..n {
            if taken[v] {
                continue;
            }
            let g = gain_unchecked(v, state.coverage(), sim) * weights[v];
            // strict > keeps the lowest index among maxima
            if g > best_val {
                best_val = g;
                best_idx = v;
            }
        }
        taken[best_idx] = true;
        selected.push(best_idx);
        step_gains.push(best_val);
        state.update(best_idx, sim);
    }
    SelectionResult::new(selected, step_gains, state.into_coverage())
        .expect("greedy output satisfies selection invariants")
}

/// Greedy selection by saliency-weighted coverage gain, using the
/// incremental coverage state. O(k * n^2) total.
pub fn scope_select(
    sim: &SimilarityMatrix,
    saliency: &SaliencyVector,
    config: &SelectionConfig,
) -> Result<SelectionResult, SelectionError> {
    check_args(sim, Some(saliency.len()), config.k)?;
    let weights: Vec<f64> = saliency
        .scores()
        .iter()
        .map(|&a| saliency_weight(a, config.alpha))
        .collect();
    Ok(greedy_core(sim, &weights, config.k))
}

/// Same contract as [`scope_select`], but every round recomputes the
/// clamped per-token coverage of `S` from scratch and evaluates
/// `f(S + v) - f(S)` token by token, with no carried state. Serves as the
/// correctness oracle for the incremental selector. Gains for exact
/// algebraic ties match the incremental path bitwise because the per-token
/// terms are the same subtractions in the same order.
pub fn scope_select_naive(
    sim: &SimilarityMatrix,
    saliency: &SaliencyVector,
    config: &SelectionConfig,
) -> Result<SelectionResult, SelectionError> {
    check_args(sim, Some(saliency.len()), config.k)?;
    let n = sim.n();
    let mut selected: Vec<usize> = Vec::with_capacity(config.k);
    let mut step_gains = Vec::with_capacity(config.k);
    let mut taken = vec![false; n];
    for _ in 0..config.k {
        let mut best_idx = usize::MAX;
        let mut best_val = f64::NEG_INFINITY;
        for v in 0..n {
            if taken[v] {
                continue;
            }
            let mut delta = 0.0;
            for u in 0..n {
                // clamped coverage of u by S, recomputed from scratch
                let mut cov = 0.0_f64;
                for &s in &selected {
                    cov = cov.max(sim.get(u, s));
                }
                let cov_with = cov.max(sim.get(u, v));
                delta += cov_with - cov;
            }
            let g = delta * saliency_weight(saliency.scores()[v], config.alpha);
            if g > best_val {
                best_val = g;
                best_idx = v;
            }
        }
        taken[best_idx] = true;
        selected.push(best_idx);
        step_gains.push(best_val);
    }
    let final_coverage: Vec<f64> = (0..n)
        .map(|u| {
            selected
                .iter()
                .map(|&s| sim.get(u, s))
                .fold(0.0_f64, f64::max)
        })
        .collect();
    Ok(SelectionResult::new(selected, step_gains, final_coverage)
        .expect("naive greedy output satisfies selection invariants"))
}

/// Coverage-only greedy: identical to [`scope_select`] with the saliency
/// factor removed (alpha = 0).
pub fn coverage_only_select(
    sim: &SimilarityMatrix,
    config: &SelectionConfig,
) -> Result<SelectionResult, SelectionError> {
    check_args(sim, None, config.k)?;
    let weights = vec![1.0; sim.n()];
    Ok(greedy_core(sim, &weights, config.k))
}

/// Indices of the `k` largest saliency scores, descending, ties broken by
/// lowest index.
pub fn saliency_topk_select(
    saliency: &SaliencyVector,
    k: usize,
) -> Result<Vec<usize>, SelectionError> {
    let n = saliency.len();
    if k > n {
        return Err(SelectionError::KTooLarge { k, n });
    }
    let scores = saliency.scores();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .expect("saliency scores are finite")
            .then(a.cmp(&b))
    });
    order.truncate(k);
    Ok(order)
}

/// `k` distinct indices drawn uniformly without replacement from a
/// deterministic seeded generator.
pub fn random_select(n: usize, k: usize, seed: u64) -> Result<Vec<usize>, SelectionError> {
    if k > n {
        return Err(SelectionError::KTooLarge { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(rand::seq::index::sample(&mut rng, n, k).into_vec())
}

/// Builds a [`SelectionResult`] for a selector that only produces indices
/// (saliency top-k, random): step gains are the unweighted incremental
/// coverage gains of the picks in their given order.
pub fn result_from_indices(
    indices: &[usize],
    sim: &SimilarityMatrix,
) -> Result<SelectionResult, SelectionError> {
    let n = sim.n();
    let mut state = CoverageState::new(n);
    let mut step_gains = Vec::with_capacity(indices.len());
    let mut seen = vec![false; n];
    for &v in indices {
        if v >= n {
            return Err(SelectionError::IndexOutOfRange { index: v, n });
        }
        if seen[v] {
            return Err(SelectionError::AlreadySelected(v));
        }
        seen[v] = true;
        step_gains.push(gain_unchecked(v, state.coverage(), sim));
        state.update(v, sim);
    }
    SelectionResult::new(indices.to_vec(), step_gains, state.into_coverage()).map_err(|_| {
        SelectionError::DimensionMismatch {
            context: "selection result assembly",
            expected: n,
            actual: indices.len(),
        }
    })
}
