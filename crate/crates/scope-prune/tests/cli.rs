//! End-to-end tests of the `scope` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn scope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scope"))
        .args(args)
        .output()
        .expect("failed to spawn scope binary")
}

fn synth_bundle(dir: &Path, extra: &[&str]) -> String {
    let out = dir.join("bundle");
    let mut args = vec![
        "synth",
        "--n",
        "24",
        "--d",
        "6",
        "--clusters",
        "3",
        "--seed",
        "7",
        "--out",
    ];
    let out_str = out.to_str().unwrap().to_string();
    args.push(&out_str);
    args.extend_from_slice(extra);
    let output = scope(&args);
    assert!(output.status.success(), "synth failed: {output:?}");
    out.join("manifest.json").to_str().unwrap().to_string()
}

#[test]
fn prune_writes_selection_and_machine_line() {
    let dir = tempdir().unwrap();
    let manifest = synth_bundle(dir.path(), &[]);
    let sel = dir.path().join("sel.json");
    let output = scope(&[
        "prune",
        "--bundle",
        &manifest,
        "--k",
        "4",
        "--method",
        "scope",
        "--out",
        sel.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let line = String::from_utf8_lossy(&output.stdout);
    assert!(line.contains("n=24"), "line: {line}");
    assert!(line.contains("k=4"));
    assert!(line.contains("method=scope"));
    assert!(line.contains("ms="));
    assert!(line.contains("coverage="));
    assert!(sel.exists());
}

#[test]
fn prune_orthonormal_fixture_matches_hand_example() {
    // three orthonormal tokens, saliency (0.5, 0.3, 0.2): picks [0, 1]
    let dir = tempdir().unwrap();
    use scope_prune::io::save_bundle;
    use scope_prune::model::{SaliencyVector, TokenMatrix};
    let tokens = TokenMatrix::new(
        3,
        3,
        vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
    )
    .unwrap();
    let saliency = SaliencyVector::new(vec![0.5, 0.3, 0.2]).unwrap();
    let manifest = save_bundle(&tokens, &saliency, dir.path()).unwrap();
    let sel = dir.path().join("sel.json");
    let output = scope(&[
        "prune",
        "--bundle",
        manifest.to_str().unwrap(),
        "--k",
        "2",
        "--alpha",
        "1.0",
        "--method",
        "scope",
        "--out",
        sel.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let loaded = scope_prune::io::load_selection(&sel).unwrap();
    assert_eq!(loaded.selected(), &[0, 1]);
}

#[test]
fn prune_k_too_large_names_the_error() {
    let dir = tempdir().unwrap();
    let manifest = synth_bundle(dir.path(), &[]);
    let sel = dir.path().join("sel.json");
    let output = scope(&[
        "prune",
        "--bundle",
        &manifest,
        "--k",
        "99",
        "--out",
        sel.to_str().unwrap(),
    ]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("KTooLarge"), "stderr: {stderr}");
}

#[test]
fn coverage_equals_scope_alpha_zero_byte_identical() {
    let dir = tempdir().unwrap();
    let manifest = synth_bundle(dir.path(), &[]);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = scope(&[
        "prune", "--bundle", &manifest, "--k", "5", "--alpha", "0.0", "--method", "scope",
        "--out", a.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = scope(&[
        "prune", "--bundle", &manifest, "--k", "5", "--method", "coverage",
        "--out", b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn analyze_full_selection_is_all_ones() {
    let dir = tempdir().unwrap();
    let manifest = synth_bundle(dir.path(), &[]);
    let sel = dir.path().join("full.json");
    let out = scope(&[
        "prune", "--bundle", &manifest, "--k", "24", "--method", "coverage",
        "--out", sel.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let output = scope(&[
        "analyze",
        "--bundle",
        &manifest,
        "--thetas",
        "0.0,0.5,1.0",
        sel.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let csv = String::from_utf8_lossy(&output.stdout);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,full"));
    for line in lines {
        assert!(line.ends_with(",1.000000"), "line: {line}");
    }
}

#[test]
fn analyze_superset_dominates() {
    let dir = tempdir().unwrap();
    let manifest = synth_bundle(dir.path(), &[]);
    let small = dir.path().join("small.json");
    let big = dir.path().join("big.json");
    for (k, path) in [("3", &small), ("9", &big)] {
        let out = scope(&[
            "prune", "--bundle", &manifest, "--k", k, "--method", "coverage",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    // greedy selections are prefixes, so big is a superset of small
    let output = scope(&[
        "analyze",
        "--bundle",
        &manifest,
        big.to_str().unwrap(),
        small.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let csv = String::from_utf8_lossy(&output.stdout);
    for line in csv.lines().skip(1) {
        let fields: Vec<f64> = line.split(',').skip(1).map(|f| f.parse().unwrap()).collect();
        assert!(fields[0] >= fields[1], "dominance violated: {line}");
    }
}

#[test]
fn analyze_rejects_mismatched_selection() {
    let dir = tempdir().unwrap();
    let manifest = synth_bundle(dir.path(), &[]);
    let sel = dir.path().join("sel.json");
    fs::write(
        &sel,
        r#"{"format_version":1,"selected":[50],"step_gains":[1.0],"final_coverage":[]}"#,
    )
    .unwrap();
    let output = scope(&["analyze", "--bundle", &manifest, sel.to_str().unwrap()]);
    assert!(!output.status.success());
}

#[test]
fn synth_is_deterministic_byte_for_byte() {
    let dir = tempdir().unwrap();
    let args = |out: &str| {
        vec![
            "synth", "--n", "16", "--d", "4", "--clusters", "2", "--spread", "0.2",
            "--skew", "1.0", "--seed", "5", "--out", out,
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()
    };
    for out in ["a", "b"] {
        let path = dir.path().join(out);
        let argv = args(path.to_str().unwrap());
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        assert!(scope(&argv).status.success());
    }
    for file in ["manifest.json", "embeddings.bin", "saliency.bin"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(file)).unwrap(),
            fs::read(dir.path().join("b").join(file)).unwrap(),
            "{file} differs between identical synth runs"
        );
    }
}

#[test]
fn synth_single_cluster_zero_spread_fully_covered() {
    let dir = tempdir().unwrap();
    let bundle = dir.path().join("bundle");
    let out = scope(&[
        "synth", "--n", "8", "--d", "4", "--clusters", "1", "--spread", "0.0",
        "--seed", "3", "--out", bundle.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let manifest = bundle.join("manifest.json");
    let sel = dir.path().join("one.json");
    let out = scope(&[
        "prune", "--bundle", manifest.to_str().unwrap(), "--k", "1", "--method", "coverage",
        "--out", sel.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // one token covers everything when all rows are identical
    let output = scope(&[
        "analyze", "--bundle", manifest.to_str().unwrap(), "--thetas", "0.5,0.9",
        sel.to_str().unwrap(),
    ]);
    let csv = String::from_utf8_lossy(&output.stdout);
    for line in csv.lines().skip(1) {
        assert!(line.ends_with(",1.000000"), "line: {line}");
    }
}

#[test]
fn synth_invalid_spec_fails() {
    let dir = tempdir().unwrap();
    let out = scope(&[
        "synth", "--n", "4", "--d", "2", "--clusters", "9", "--out",
        dir.path().join("x").to_str().unwrap(),
    ]);
    assert!(!out.status.success());
}

#[test]
fn sweep_on_bundle_emits_ordered_csv() {
    let dir = tempdir().unwrap();
    let manifest = synth_bundle(dir.path(), &[]);
    let csv_path = dir.path().join("sweep.csv");
    let out = scope(&[
        "sweep",
        "--bundle",
        &manifest,
        "--alphas",
        "0.0,1.0",
        "--ks",
        "2,4,8",
        "--seeds",
        "0,1",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let csv = fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "alpha,k,seed,method,set_coverage,theta_0.3,theta_0.5,theta_0.7,wall_ms,status");
    assert_eq!(lines.len(), 1 + 2 * 3 * 2 * 4);

    // alpha=0 scope rows match coverage rows
    for chunk in lines[1..].chunks(4) {
        let alpha: f64 = chunk[0].split(',').next().unwrap().parse().unwrap();
        if alpha == 0.0 {
            let field = |line: &str, i: usize| line.split(',').nth(i).unwrap().to_string();
            let scope_row = chunk.iter().find(|l| l.contains(",scope,")).unwrap();
            let cov_row = chunk.iter().find(|l| l.contains(",coverage,")).unwrap();
            for i in 4..8 {
                assert_eq!(field(scope_row, i), field(cov_row, i));
            }
        }
    }

    // coverage columns non-decreasing in k for the greedy prefix methods
    for method in ["scope", "coverage"] {
        for alpha in ["0", "1"] {
            for seed in ["0", "1"] {
                let mut prev = -1.0;
                for k in ["2", "4", "8"] {
                    let prefix = format!("{alpha},{k},{seed},{method},");
                    let row = lines[1..]
                        .iter()
                        .find(|l| l.starts_with(&prefix))
                        .unwrap_or_else(|| panic!("missing row {prefix}"));
                    let cov: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
                    assert!(cov >= prev, "coverage decreased in k for {prefix}");
                    prev = cov;
                }
            }
        }
    }
}

#[test]
fn sweep_synth_mode_works() {
    let dir = tempdir().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let out = scope(&[
        "sweep", "--n", "32", "--d", "6", "--clusters", "4", "--ks", "4",
        "--seeds", "0,1,2", "--out", csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let csv = fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 4);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",ok")));
}

#[test]
fn sweep_failure_flushes_marker_rows() {
    let dir = tempdir().unwrap();
    let manifest = synth_bundle(dir.path(), &[]);
    let csv_path = dir.path().join("sweep.csv");
    let out = scope(&[
        "sweep", "--bundle", &manifest, "--ks", "999", "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    let csv = fs::read_to_string(&csv_path).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",failed")));
}
