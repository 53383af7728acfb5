//! Shared helpers for integration tests: seeded random instances and small
//! brute-force oracles kept independent of the library's incremental paths.
//!
//! Each test binary compiles its own copy, so not every helper is used by
//! every binary.
#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use scope_prune::model::{SaliencyVector, SimilarityMatrix, TokenMatrix};
use scope_prune::similarity::similarity_from_tokens;

pub fn random_tokens(n: usize, d: usize, rng: &mut ChaCha8Rng) -> TokenMatrix {
    let data: Vec<f64> = (0..n * d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    TokenMatrix::new(n, d, data).unwrap()
}

pub fn random_saliency(n: usize, rng: &mut ChaCha8Rng) -> SaliencyVector {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let total: f64 = raw.iter().sum();
    SaliencyVector::new(raw.iter().map(|x| x / total).collect()).unwrap()
}

pub fn random_instance(
    n: usize,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> (SimilarityMatrix, SaliencyVector) {
    let tokens = random_tokens(n, d, rng);
    (similarity_from_tokens(&tokens), random_saliency(n, rng))
}

/// Brute-force clamped set coverage, written independently of the library.
pub fn oracle_set_coverage(selected: &[usize], sim: &SimilarityMatrix) -> f64 {
    let n = sim.n();
    let mut total = 0.0;
    for u in 0..n {
        let mut best = f64::NEG_INFINITY;
        for &s in selected {
            if sim.get(u, s) > best {
                best = sim.get(u, s);
            }
        }
        if !selected.is_empty() && best > 0.0 {
            total += best;
        }
    }
    total
}

/// Brute-force theta-coverage count oracle.
pub fn oracle_theta_coverage(selected: &[usize], sim: &SimilarityMatrix, theta: f64) -> f64 {
    let n = sim.n();
    let mut covered = 0usize;
    for u in 0..n {
        for &v in selected {
            if sim.get(u, v) >= theta {
                covered += 1;
                break;
            }
        }
    }
    covered as f64 / n as f64
}
