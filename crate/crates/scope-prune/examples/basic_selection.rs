//! Minimal end-to-end use of the saliency-weighted coverage selector.
//!
//! Builds a tiny hand-written token matrix, normalizes it into a cosine
//! similarity matrix, and selects a 2-token subset. Run with:
//!
//! ```sh
//! cargo run --example basic_selection
//! ```

use scope_prune::model::{SaliencyVector, SelectionConfig, TokenMatrix};
use scope_prune::selection::scope_select;
use scope_prune::similarity::similarity_from_tokens;

fn main() {
    // Four 3-d tokens: two near-duplicates along x, one along y, one along z.
    let tokens = TokenMatrix::new(
        4,
        3,
        vec![
            1.0, 0.05, 0.0, //
            0.98, 0.0, 0.05, //
            0.0, 1.0, 0.0, //
            0.0, 0.0, 1.0,
        ],
    )
    .unwrap();
    let saliency = SaliencyVector::new(vec![0.50, 0.30, 0.15, 0.05]).unwrap();

    let sim = similarity_from_tokens(&tokens);
    let config = SelectionConfig::new(2, 1.0).unwrap();
    let result = scope_select(&sim, &saliency, &config).unwrap();

    println!("selected indices: {:?}", result.selected());
    println!("weighted step gains: {:?}", result.step_gains());
    println!("per-token coverage after selection:");
    for (u, c) in result.final_coverage().iter().enumerate() {
        println!("  token {u}: {c:.4}");
    }
    // The two x-axis tokens are near-duplicates, so the selector keeps the
    // more salient one and spends the second pick on a new direction even
    // though token 1 has higher saliency than tokens 2 and 3.
    assert_eq!(result.selected()[0], 0);
    assert_ne!(result.selected()[1], 1);
}
