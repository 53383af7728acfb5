//! Runs the benchmark harness over a small alpha/k/seed grid on synthetic
//! inputs and prints the CSV report to stdout.
//!
//! ```sh
//! cargo run --example alpha_sweep
//! ```

use scope_prune::harness::{run_sweep, SweepInput, SWEEP_CSV_HEADER};
use scope_prune::synth::SynthSpec;

fn main() {
    let template = SynthSpec {
        n: 96,
        d: 16,
        clusters: 4,
        cluster_spread: 0.8,
        saliency_skew: 3.0,
        seed: 0, // replaced per sweep cell
    };
    let input = SweepInput::Synth(template);
    let (rows, failure) = run_sweep(&input, &[0.0, 1.0, 2.0], &[8, 16], &[0, 1, 2]);

    println!("{SWEEP_CSV_HEADER}");
    for row in &rows {
        println!("{}", row.to_csv_line());
    }
    if let Some(err) = failure {
        eprintln!("sweep had failed cells: {err}");
        std::process::exit(1);
    }
}
