//! Compares all four selection methods on one synthetic instance and prints
//! a theta-coverage table.
//!
//! ```sh
//! cargo run --example compare_methods
//! ```

use scope_prune::metrics::{coverage_curve, ThetaGrid};
use scope_prune::model::SelectionConfig;
use scope_prune::selection::{
    coverage_only_select, random_select, saliency_topk_select, scope_select,
};
use scope_prune::similarity::similarity_from_tokens;
use scope_prune::synth::{generate, SynthSpec};

fn main() {
    let spec = SynthSpec {
        n: 240,
        d: 32,
        clusters: 6,
        cluster_spread: 0.6,
        saliency_skew: 2.0,
        seed: 11,
    };
    let (tokens, saliency, _) = generate(&spec).unwrap();
    let sim = similarity_from_tokens(&tokens);

    let k = 24;
    let config = SelectionConfig::new(k, 1.0).unwrap();
    let scope = scope_select(&sim, &saliency, &config).unwrap();
    let coverage = coverage_only_select(&sim, &config).unwrap();
    let topk = saliency_topk_select(&saliency, k).unwrap();
    let random = random_select(spec.n, k, 0).unwrap();

    let grid = ThetaGrid::new(vec![0.1, 0.3, 0.5, 0.7, 0.9]).unwrap();
    let report = coverage_curve(
        &[
            ("scope", scope.selected()),
            ("coverage", coverage.selected()),
            ("saliency", &topk),
            ("random", &random),
        ],
        &sim,
        &grid,
    )
    .unwrap();
    print!("{}", report.to_csv());
}
