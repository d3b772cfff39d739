use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const TOY: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/toy.csv");
const MODEL: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/mixed.toml");

fn fxmst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fxmst")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn files(root: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(dir).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

#[test]
fn toy_single_base() {
    let dir = tempfile::tempdir().unwrap();
    let out = fxmst(&["run", TOY, "--base", "EUR", "--out", path(dir.path())]);
    // three nodes leave too few multiplicity values for a fit
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));

    let spectrum = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert_eq!(spectrum.lines().count(), 2);
    assert!(spectrum.lines().nth(1).unwrap().starts_with("EUR,"));

    let edges = fs::read_to_string(dir.path().join("EUR/edges.csv")).unwrap();
    assert_eq!(edges.lines().count(), 3);
    let multiplicity = fs::read_to_string(dir.path().join("EUR/multiplicity.csv")).unwrap();
    assert_eq!(multiplicity.lines().count(), 4);
    for code in ["USD", "GBP", "JPY"] {
        assert!(multiplicity.contains(code));
    }
}

#[test]
fn toy_all_bases_exclude_the_base_from_its_tree() {
    let dir = tempfile::tempdir().unwrap();
    let out = fxmst(&["run", TOY, "--all-bases", "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    for base in ["USD", "EUR", "GBP", "JPY"] {
        let edges = fs::read_to_string(dir.path().join(base).join("edges.csv")).unwrap();
        assert_eq!(edges.lines().count(), 3, "{base}");
        assert!(!edges.contains(base), "{base} appears in its own tree");
        let dot = fs::read_to_string(dir.path().join(base).join("tree.dot")).unwrap();
        assert!(!dot.contains(&format!("\"{base}\" [")), "{base}");
    }
}

#[test]
fn generated_panel_runs_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let panel = dir.path().join("panel.csv");
    let out = fxmst(&["gen", MODEL, "--seed", "9", "--out", path(&panel)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let runs: Vec<PathBuf> = ["a", "b"].iter().map(|r| dir.path().join(r)).collect();
    for run in &runs {
        let out = fxmst(&[
            "run",
            path(&panel),
            "--base",
            "CHF",
            "--shuffle-seed",
            "42",
            "--fict",
            "--fict-seed",
            "3",
            "--out",
            path(run),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let listing = files(&runs[0]);
    assert_eq!(listing, files(&runs[1]));
    assert!(listing.contains(&PathBuf::from("CHF/shuffled/edges.csv")));
    assert!(listing.contains(&PathBuf::from("FIC/edges.csv")));
    for f in &listing {
        assert_eq!(fs::read(runs[0].join(f)).unwrap(), fs::read(runs[1].join(f)).unwrap(), "{}", f.display());
    }
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = path(dir.path());
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "# base: USD\ndate,currency,rate\n2004-03-01,EUR,not-a-number\n").unwrap();
    let bad_model = dir.path().join("bad.toml");
    fs::write(&bad_model, "n_currencies = 2\nhub_strength = 0.5\nT = 10\n").unwrap();

    for args in [
        vec!["run", path(&bad), "--base", "EUR", "--out", out_dir],
        vec!["run", TOY, "--out", out_dir],
        vec!["run", TOY, "--base", "EUR", "--all-bases", "--out", out_dir],
        vec!["run", TOY, "--base", "GBX", "--out", out_dir],
        vec!["run", TOY, "--all-bases", "--tau", "0", "--out", out_dir],
        vec!["run", "/nonexistent/rates.csv", "--all-bases", "--out", out_dir],
        vec!["gen", path(&bad_model), "--seed", "1", "--out", path(&dir.path().join("x.csv"))],
    ] {
        assert_eq!(fxmst(&args).status.code(), Some(2), "{args:?}");
    }
}
