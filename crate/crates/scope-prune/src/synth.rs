//! Deterministic synthetic token-set generator.
//!
//! Produces clustered embeddings with a skewed saliency distribution: a few
//! clusters receive almost all of the saliency mass while the geometric
//! spread of the tokens stays balanced. This is the shape of input on which
//! pure saliency top-k selection leaves most of the token set uncovered.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::model::{SaliencyVector, TokenMatrix};

#[derive(Debug, Error, PartialEq)]
pub enum SynthError {
    #[error("SpecInvalid: {0}")]
    SpecInvalid(String),
}

/// Parameters for the synthetic generator.
///
/// `cluster_spread` is an angular noise scale: a token deviates from its
/// cluster center by roughly that many radians. `saliency_skew` is the
/// exponent gamma; the saliency weight of cluster `j` decays as
/// `exp(-gamma * j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub n: usize,
    pub d: usize,
    pub clusters: usize,
    pub cluster_spread: f64,
    pub saliency_skew: f64,
    pub seed: u64,
}

impl SynthSpec {
    pub fn validate(&self) -> Result<(), SynthError> {
        if self.n == 0 || self.d == 0 {
            return Err(SynthError::SpecInvalid("n and d must be >= 1".into()));
        }
        if self.clusters == 0 || self.clusters > self.n {
            return Err(SynthError::SpecInvalid(format!(
                "clusters must satisfy 1 <= clusters <= n, got {} with n={}",
                self.clusters, self.n
            )));
        }
        if !self.cluster_spread.is_finite() || self.cluster_spread < 0.0 {
            return Err(SynthError::SpecInvalid(
                "cluster_spread must be finite and >= 0".into(),
            ));
        }
        if !self.saliency_skew.is_finite() || self.saliency_skew < 0.0 {
            return Err(SynthError::SpecInvalid(
                "saliency_skew must be finite and >= 0".into(),
            ));
        }
        Ok(())
    }
}

fn unit_gaussian_vector(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

/// Generates `(tokens, saliency, cluster_labels)` deterministically from the
/// spec.
///
/// Cluster centers are random unit vectors; tokens are assigned round-robin
/// and perturbed by Gaussian noise of expected norm `cluster_spread`.
/// Saliency for a token in cluster `j` is `exp(-gamma * j)` times a uniform
/// jitter in [0.5, 1.5], normalized to sum to 1.
pub fn generate(
    spec: &SynthSpec,
) -> Result<(TokenMatrix, SaliencyVector, Vec<usize>), SynthError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let centers: Vec<Vec<f64>> = (0..spec.clusters)
        .map(|_| unit_gaussian_vector(spec.d, &mut rng))
        .collect();

    // per-coordinate sigma so the noise vector's norm is ~cluster_spread
    let sigma = spec.cluster_spread / (spec.d as f64).sqrt();
    let mut data = Vec::with_capacity(spec.n * spec.d);
    let mut labels = Vec::with_capacity(spec.n);
    for i in 0..spec.n {
        let label = i % spec.clusters;
        labels.push(label);
        for j in 0..spec.d {
            let noise: f64 = rng.sample(StandardNormal);
            data.push(centers[label][j] + sigma * noise);
        }
    }

    let mut saliency: Vec<f64> = labels
        .iter()
        .map(|&label| {
            let jitter: f64 = rng.gen_range(0.5..1.5);
            (-spec.saliency_skew * label as f64).exp() * jitter
        })
        .collect();
    let total: f64 = saliency.iter().sum();
    for s in &mut saliency {
        *s /= total;
    }

    let tokens = TokenMatrix::new(spec.n, spec.d, data)
        .map_err(|e| SynthError::SpecInvalid(format!("generated matrix invalid: {e}")))?;
    let saliency = SaliencyVector::new(saliency)
        .map_err(|e| SynthError::SpecInvalid(format!("generated saliency invalid: {e}")))?;
    Ok((tokens, saliency, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::similarity_from_tokens;

    fn spec(n: usize, clusters: usize, spread: f64, skew: f64, seed: u64) -> SynthSpec {
        SynthSpec {
            n,
            d: 8,
            clusters,
            cluster_spread: spread,
            saliency_skew: skew,
            seed,
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(spec(0, 1, 0.0, 0.0, 0).validate().is_err());
        assert!(spec(4, 5, 0.0, 0.0, 0).validate().is_err());
        assert!(spec(4, 2, -1.0, 0.0, 0).validate().is_err());
        assert!(spec(4, 2, 0.0, f64::NAN, 0).validate().is_err());
    }

    #[test]
    fn single_cluster_zero_spread_is_all_ones_similarity() {
        let (tokens, _, _) = generate(&spec(6, 1, 0.0, 0.0, 42)).unwrap();
        for i in 1..6 {
            assert_eq!(tokens.row(i), tokens.row(0));
        }
        let sim = similarity_from_tokens(&tokens);
        for v in sim.values() {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let a = generate(&spec(20, 4, 0.3, 2.0, 7)).unwrap();
        let b = generate(&spec(20, 4, 0.3, 2.0, 7)).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
        assert_eq!(a.2, b.2);
        let c = generate(&spec(20, 4, 0.3, 2.0, 8)).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn saliency_is_a_positive_simplex() {
        let (_, saliency, _) = generate(&spec(50, 5, 0.4, 3.0, 1)).unwrap();
        let total: f64 = saliency.scores().iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(saliency.scores().iter().all(|&s| s > 0.0));
    }

    #[test]
    fn flat_skew_bounds_saliency_ratio() {
        // gamma = 0: only jitter differentiates tokens
        for seed in 0..100 {
            let (_, saliency, _) = generate(&spec(40, 4, 0.2, 0.0, seed)).unwrap();
            let max = saliency.scores().iter().cloned().fold(f64::MIN, f64::max);
            let min = saliency.scores().iter().cloned().fold(f64::MAX, f64::min);
            assert!(max / min < 10.0, "seed {seed}: ratio {}", max / min);
        }
    }

    #[test]
    fn strong_skew_concentrates_mass_on_first_cluster() {
        let mut total = 0.0;
        for seed in 0..100 {
            let (_, saliency, labels) = generate(&spec(48, 4, 0.2, 5.0, seed)).unwrap();
            let cluster0: f64 = saliency
                .scores()
                .iter()
                .zip(&labels)
                .filter(|(_, &l)| l == 0)
                .map(|(s, _)| s)
                .sum();
            total += cluster0;
        }
        let mean = total / 100.0;
        assert!(mean >= 0.8, "mean cluster-0 mass {mean}");
    }

    #[test]
    fn zero_spread_gives_exactly_c_distinct_rows() {
        let (tokens, _, labels) = generate(&spec(12, 3, 0.0, 1.0, 9)).unwrap();
        let sim = similarity_from_tokens(&tokens);
        for u in 0..12 {
            for v in 0..12 {
                if labels[u] == labels[v] {
                    assert!((sim.get(u, v) - 1.0).abs() < 1e-9);
                }
            }
        }
        // three distinct similarity rows up to tolerance
        let mut distinct: Vec<&[f64]> = Vec::new();
        'outer: for u in 0..12 {
            let row = sim.row(u);
            for r in &distinct {
                if row.iter().zip(*r).all(|(a, b)| (a - b).abs() < 1e-9) {
                    continue 'outer;
                }
            }
            distinct.push(row);
        }
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn round_robin_labels() {
        let (_, _, labels) = generate(&spec(7, 3, 0.1, 0.0, 2)).unwrap();
        assert_eq!(labels, vec![0, 1, 2, 0, 1, 2, 0]);
    }
}
