//! Generates a synthetic bundle, writes it to disk with checksums, reads it
//! back, and verifies that a selection computed before and after the
//! round-trip is identical.
//!
//! ```sh
//! cargo run --example synth_bundle_roundtrip
//! ```

use scope_prune::io::{load_bundle, load_selection, save_bundle, save_selection};
use scope_prune::model::SelectionConfig;
use scope_prune::selection::scope_select;
use scope_prune::similarity::similarity_from_tokens;
use scope_prune::synth::{generate, SynthSpec};

fn main() {
    let spec = SynthSpec {
        n: 64,
        d: 16,
        clusters: 4,
        cluster_spread: 0.5,
        saliency_skew: 2.0,
        seed: 3,
    };
    let (tokens, saliency, _) = generate(&spec).unwrap();

    let dir = std::env::temp_dir().join("scope_prune_example_bundle");
    std::fs::create_dir_all(&dir).unwrap();
    let manifest = save_bundle(&tokens, &saliency, &dir).unwrap();
    println!("wrote bundle manifest: {}", manifest.display());

    // Storage is 32-bit; quantize the in-memory copy the same way before
    // comparing selections.
    let (tokens2, saliency2) = load_bundle(&manifest).unwrap();
    let config = SelectionConfig::new(8, 1.0).unwrap();
    let before = scope_select(
        &similarity_from_tokens(&tokens2),
        &saliency2,
        &config,
    )
    .unwrap();

    let sel_path = dir.join("selection.json");
    save_selection(&before, &sel_path).unwrap();
    let after = load_selection(&sel_path).unwrap();
    assert_eq!(before, after);
    println!("selection round-trip exact: {:?}", after.selected());
}
