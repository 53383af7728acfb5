//! Saliency-coverage oriented token subset selection.
//!
//! Given a matrix of token embeddings and a per-token saliency score, this
//! crate selects a fixed-size subset of tokens that balances two criteria:
//! how salient each token is, and how well the chosen subset covers the
//! full token set under cosine similarity.
//!
//! The main entry point is [`selection::scope_select`], a greedy maximizer
//! of the saliency-weighted facility-location coverage gain. Baselines used
//! for ablation (saliency top-k, coverage-only, random) live alongside it,
//! and [`metrics`] provides the theta-coverage metric for comparing the
//! resulting selections.
//!
//! A typical flow:
//!
//! ```
//! use scope_prune::model::{SaliencyVector, SelectionConfig, TokenMatrix};
//! use scope_prune::similarity;
//! use scope_prune::selection;
//!
//! let tokens = TokenMatrix::new(3, 2, vec![1.0, 0.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
//! let saliency = SaliencyVector::new(vec![0.5, 0.3, 0.2]).unwrap();
//! let unit = similarity::normalize_rows(&tokens, similarity::DEFAULT_ZERO_THRESHOLD);
//! let sim = similarity::cosine_similarity_matrix(&unit);
//! let config = SelectionConfig::new(2, 1.0).unwrap();
//! let result = selection::scope_select(&sim, &saliency, &config).unwrap();
//! assert_eq!(result.selected().len(), 2);
//! ```
//!
//! See the crate examples for end-to-end usage, including the synthetic
//! bundle generator and the coverage-curve report.

pub mod harness;
pub mod io;
pub mod metrics;
pub mod model;
pub mod selection;
pub mod similarity;
pub mod synth;

pub use model::{
    CoverageReport, SaliencyVector, SelectionConfig, SelectionResult, SimilarityMatrix,
    TokenMatrix,
};
