//! Thin CLI over the library: prune a bundle, analyze selections against a
//! theta grid, generate synthetic bundles, and sweep parameter grids.
//!
//! Machine-parsable stdout lines use a space-separated `key=value` schema.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use scope_prune::harness::{self, Method, SweepInput, SWEEP_CSV_HEADER};
use scope_prune::io;
use scope_prune::metrics::{self, ThetaGrid};
use scope_prune::model::SelectionConfig;
use scope_prune::similarity;
use scope_prune::synth::{self, SynthSpec};

#[derive(Parser)]
#[command(name = "scope", about = "Saliency-coverage token subset selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SynthFlags {
    /// Token count
    #[arg(long)]
    n: usize,
    /// Embedding dimension
    #[arg(long)]
    d: usize,
    /// Number of cluster centers
    #[arg(long, default_value_t = 8)]
    clusters: usize,
    /// Within-cluster angular noise scale
    #[arg(long, default_value_t = 0.3)]
    spread: f64,
    /// Saliency skew exponent gamma
    #[arg(long, default_value_t = 4.0)]
    skew: f64,
    /// Generator seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SynthFlags {
    fn to_spec(&self) -> SynthSpec {
        SynthSpec {
            n: self.n,
            d: self.d,
            clusters: self.clusters,
            cluster_spread: self.spread,
            saliency_skew: self.skew,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a selector on a bundle and write a selection file
    Prune {
        /// Bundle manifest path
        #[arg(long)]
        bundle: PathBuf,
        /// Number of tokens to retain
        #[arg(long)]
        k: usize,
        /// Saliency exponent
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Selector: scope|saliency|coverage|random
        #[arg(long, default_value = "scope")]
        method: String,
        /// Seed for the random selector
        #[arg(long)]
        seed: Option<u64>,
        /// Output selection file
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare selection files on a theta grid, emitting CSV
    Analyze {
        /// Bundle manifest path
        #[arg(long)]
        bundle: PathBuf,
        /// Comma-separated ascending thresholds in [0, 1]
        #[arg(long)]
        thetas: Option<String>,
        /// Output CSV path (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Selection files to compare
        #[arg(required = true)]
        selections: Vec<PathBuf>,
    },
    /// Generate a synthetic bundle
    Synth {
        #[command(flatten)]
        flags: SynthFlags,
        /// Output bundle directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Run all selectors over an (alpha, k, seed) grid, emitting CSV
    Sweep {
        /// Bundle manifest path (mutually exclusive with synth flags)
        #[arg(long, conflicts_with_all = ["n", "d"])]
        bundle: Option<PathBuf>,
        #[arg(long, required_unless_present = "bundle")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "bundle")]
        d: Option<usize>,
        #[arg(long, default_value_t = 8)]
        clusters: usize,
        #[arg(long, default_value_t = 0.3)]
        spread: f64,
        #[arg(long, default_value_t = 4.0)]
        skew: f64,
        /// Comma-separated alpha values
        #[arg(long, default_value = "1.0")]
        alphas: String,
        /// Comma-separated k values
        #[arg(long)]
        ks: String,
        /// Comma-separated seeds
        #[arg(long, default_value = "0")]
        seeds: String,
        /// Output CSV path (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    let items: Result<Vec<T>> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .with_context(|| format!("invalid {what} entry {x:?}"))
        })
        .collect();
    let items = items?;
    if items.is_empty() {
        bail!("{what} list must be non-empty");
    }
    Ok(items)
}

fn load_bundle_as_sim(
    path: &PathBuf,
) -> Result<(scope_prune::SimilarityMatrix, scope_prune::SaliencyVector)> {
    let (tokens, saliency) =
        io::load_bundle(path).with_context(|| format!("loading bundle {}", path.display()))?;
    Ok((similarity::similarity_from_tokens(&tokens), saliency))
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Prune {
            bundle,
            k,
            alpha,
            method,
            seed,
            out,
        } => {
            let method: Method = method.parse()?;
            let (sim, saliency) = load_bundle_as_sim(&bundle)?;
            let mut config = SelectionConfig::new(k, alpha)?;
            if let Some(seed) = seed {
                config = config.with_seed(seed);
            }
            let outcome = harness::run_method(method, &sim, &saliency, &config)?;
            io::save_selection(&outcome.result, &out)
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "n={} k={} method={} ms={:.3} coverage={:.6}",
                sim.n(),
                k,
                method,
                outcome.wall.as_secs_f64() * 1e3,
                outcome.set_coverage
            );
        }
        Command::Analyze {
            bundle,
            thetas,
            out,
            selections,
        } => {
            let (sim, _) = load_bundle_as_sim(&bundle)?;
            let grid = match thetas {
                Some(s) => ThetaGrid::new(parse_list(&s, "theta")?)?,
                None => ThetaGrid::default(),
            };
            let mut named: Vec<(String, Vec<usize>)> = Vec::new();
            for path in &selections {
                let result = io::load_selection(path)
                    .with_context(|| format!("loading selection {}", path.display()))?;
                for &i in result.selected() {
                    if i >= sim.n() {
                        bail!(
                            "selection {} index {} out of range for bundle with n={}",
                            path.display(),
                            i,
                            sim.n()
                        );
                    }
                }
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                named.push((name, result.selected().to_vec()));
            }
            let methods: Vec<(&str, &[usize])> = named
                .iter()
                .map(|(name, sel)| (name.as_str(), sel.as_slice()))
                .collect();
            let report = metrics::coverage_curve(&methods, &sim, &grid)?;
            let csv = report.to_csv();
            match out {
                Some(path) => fs::write(&path, csv)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{csv}"),
            }
        }
        Command::Synth { flags, out } => {
            let spec = flags.to_spec();
            let (tokens, saliency, _) = synth::generate(&spec)?;
            let manifest = io::save_bundle(&tokens, &saliency, &out)?;
            println!("manifest={}", manifest.display());
        }
        Command::Sweep {
            bundle,
            n,
            d,
            clusters,
            spread,
            skew,
            alphas,
            ks,
            seeds,
            out,
        } => {
            let alphas: Vec<f64> = parse_list(&alphas, "alpha")?;
            let ks: Vec<usize> = parse_list(&ks, "k")?;
            let seeds: Vec<u64> = parse_list(&seeds, "seed")?;

            let loaded;
            let input = match bundle {
                Some(path) => {
                    loaded = load_bundle_as_sim(&path)?;
                    SweepInput::Bundle {
                        sim: &loaded.0,
                        saliency: &loaded.1,
                    }
                }
                None => SweepInput::Synth(SynthSpec {
                    n: n.expect("clap enforces n without --bundle"),
                    d: d.expect("clap enforces d without --bundle"),
                    clusters,
                    cluster_spread: spread,
                    saliency_skew: skew,
                    seed: 0,
                }),
            };
            let (rows, first_error) = harness::run_sweep(&input, &alphas, &ks, &seeds);
            let mut csv = String::from(SWEEP_CSV_HEADER);
            csv.push('\n');
            for row in &rows {
                csv.push_str(&row.to_csv_line());
                csv.push('\n');
            }
            match out {
                Some(path) => fs::write(&path, &csv)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{csv}"),
            }
            if let Some(e) = first_error {
                bail!("sweep had failing cells: {e}");
            }
        }
    }
    Ok(())
}
