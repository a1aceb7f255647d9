use std::path::PathBuf;
use std::process::{Command, Output};

use dolbeault_cli::literal::parse_form;
use dolbeault_cli::presets::PRESETS;
use dolbeault_cli::report::Report;
use dolbeault_core::{rat, Form, GaussRat, Monomial, Universe};
use proptest::prelude::*;
use serde_json::Value;

fn dolbeault(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dolbeault")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn write_manifest(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("dolbeault-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn example1a() -> &'static str {
    PRESETS.iter().find(|p| p.name == "example1A").unwrap().manifest
}

fn table_of(v: &Value) -> Vec<Vec<usize>> {
    serde_json::from_value(v.clone()).unwrap()
}

/// Reads a `(p,q)` grid back from its text rendering into `[p][q]` form.
fn parse_grid(text: &str) -> Vec<Vec<usize>> {
    let rows: Vec<Vec<usize>> = text
        .lines()
        .skip(1)
        .take_while(|l| l.starts_with("q="))
        .map(|l| l.split_whitespace().skip(1).map(|t| t.parse().unwrap()).collect())
        .collect();
    let top = rows.len();
    (0..top).map(|p| (0..top).map(|q| rows[top - 1 - q][p]).collect()).collect()
}

#[test]
fn report_for_example1c() {
    let out = dolbeault(&["report", "--preset", "example1C", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["hodge"][1][1], 3);
    let symmetric: Vec<Vec<bool>> = serde_json::from_value(v["flags"]["hodge_symmetry"].clone()).unwrap();
    assert!(symmetric.iter().flatten().all(|&b| b));
    assert_eq!(v["flags"]["hodge_sum"], true);
    assert_eq!(v["flags"]["serre_duality"], true);
    assert_eq!(v["flags"]["star_condition"], true);
    assert!(v.get("representatives").is_none());
}

#[test]
fn generic_example2_is_row_constant() {
    let out = dolbeault(&["cohomology", "--preset", "example2-generic", "--format", "json"]);
    assert!(out.status.success());
    let t = table_of(&json(&out)["table"]);
    for (p, row) in t.iter().enumerate() {
        assert!(row.iter().all(|&h| h == binom(3, p)), "row {p}: {row:?}");
    }
}

#[test]
fn torus_has_binomial_table() {
    let t = table_of(&json(&dolbeault(&["cohomology", "--preset", "torus3", "--format", "json"]))["table"]);
    for p in 0..=3 {
        for q in 0..=3 {
            assert_eq!(t[p][q], binom(3, p) * binom(3, q));
        }
    }
}

#[test]
fn non_unimodular_manifest_is_rejected() {
    let text = example1a().replace("[[-1, 0, 0, 0]]", "[[1, 0, 0, 0]]");
    assert_ne!(text, example1a());
    let path = write_manifest("nonunimodular", &text);
    let out = dolbeault(&["validate", "--manifest", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["status"], "error");
    assert_eq!(err["kind"], "validation");
    assert!(err["errors"].as_array().unwrap().iter().any(|e| e["condition"] == "unimodularity"));
    let text_out = dolbeault(&["validate", "--manifest", path.to_str().unwrap()]);
    assert_eq!(text_out.status.code(), Some(2));
    assert!(stderr(&text_out).contains("unimodularity"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn schema_errors_carry_paths() {
    let text = example1a().replace(",\n  \"assert_nilmanifold_dolbeault\": true", "");
    assert_ne!(text, example1a());
    let path = write_manifest("noflag", &text);
    let out = dolbeault(&["report", "--manifest", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "schema");
    assert_eq!(err["errors"][0]["path"], "assert_nilmanifold_dolbeault");
    std::fs::remove_file(path).unwrap();

    let path = write_manifest("broken", "{\"schema_version\": 1, ");
    let out = dolbeault(&["cohomology", "--manifest", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn short_lattice_is_a_rank_error() {
    let text = example1a().replace(r#"[["a", "0"], ["0", "2*pi"]]"#, r#"[["a", "0"]]"#);
    assert_ne!(text, example1a());
    let path = write_manifest("short", &text);
    let out = dolbeault(&["validate", "--manifest", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["errors"].as_array().unwrap().iter().any(|e| e["condition"] == "lattice rank"), "{err}");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn every_preset_validates() {
    let listed = json(&dolbeault(&["presets", "--format", "json"]));
    let names: Vec<&str> = listed.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["example1A", "example1B", "example1C", "example2-pi", "example2-generic", "torus3"]);
    for name in names {
        let out = dolbeault(&["validate", "--preset", name]);
        assert!(out.status.success(), "{name}: {}", stderr(&out));
        assert_eq!(stdout(&out), "valid\n");
        assert!(out.stderr.is_empty());
    }
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    for preset in ["example1A", "example1B", "example2-pi"] {
        let args = ["report", "--preset", preset, "--format", "json", "--with-representatives"];
        let first = dolbeault(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, dolbeault(&args).stdout);
        let report: Report = serde_json::from_slice(&first.stdout).unwrap();
        assert_eq!(report.to_json() + "\n", stdout(&first));
        assert!(report.representatives.is_some());
        assert_eq!(report.provenance.manifest_sha256.len(), 64);
    }
}

#[test]
fn text_and_json_agree() {
    for preset in ["example1A", "example1B", "example1C", "example2-generic"] {
        let text = stdout(&dolbeault(&["report", "--preset", preset]));
        let report: Report =
            serde_json::from_slice(&dolbeault(&["report", "--preset", preset, "--format", "json"]).stdout).unwrap();
        let sections: Vec<&str> = text.split("\n\n").collect();
        assert_eq!(parse_grid(sections[1]), report.hodge, "{preset}");
        assert_eq!(parse_grid(sections[2]), report.harmonic, "{preset}");
        let betti_line = text.lines().find(|l| l.starts_with("betti:")).unwrap();
        let betti: Vec<usize> = betti_line[6..].split_whitespace().map(|t| t.parse().unwrap()).collect();
        assert_eq!(betti, report.betti);

        let cohomology = stdout(&dolbeault(&["cohomology", "--preset", preset]));
        assert_eq!(parse_grid(&cohomology), report.hodge);
    }
}

#[test]
fn text_grid_is_aligned() {
    let text = stdout(&dolbeault(&["cohomology", "--preset", "example1B"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    assert!(lines[0].starts_with("h(B)"));
    assert!(lines[1].starts_with("q=3"));
}

#[test]
fn harmonic_and_lie_subcommands() {
    let v = json(&dolbeault(&["harmonic", "--preset", "example1B", "--format", "json"]));
    assert_eq!(table_of(&v["table"])[2][1], 5);
    let g = json(&dolbeault(&["dolbeault-lie", "--preset", "example1C", "--which", "g", "--format", "json"]));
    let b = json(&dolbeault(&["cohomology", "--preset", "example1C", "--format", "json"]));
    assert_eq!(g["table"], b["table"]);
    let n = json(&dolbeault(&["dolbeault-lie", "--preset", "example1C", "--which", "n", "--format", "json"]));
    assert_eq!(table_of(&n["table"]), vec![vec![1, 2, 1], vec![2, 4, 2], vec![1, 2, 1]]);
    let dr = json(&dolbeault(&["de-rham", "--preset", "example1C", "--format", "json"]));
    assert_eq!(dr["betti"], serde_json::json!([1, 2, 5, 8, 5, 2, 1]));
}

#[test]
fn representatives_only_on_request() {
    let plain = json(&dolbeault(&["cohomology", "--preset", "example1C", "--bidegree", "1,1", "--format", "json"]));
    assert_eq!(plain["dimension"], 3);
    assert!(plain.get("representatives").is_none());
    let with = json(&dolbeault(&[
        "cohomology",
        "--preset",
        "example1C",
        "--bidegree",
        "1,1",
        "--with-representatives",
        "--format",
        "json",
    ]));
    let reps: Vec<String> = serde_json::from_value(with["representatives"]["1,1"].clone()).unwrap();
    let u = Universe::new(1, 2);
    let mut mons: Vec<String> = reps
        .iter()
        .map(|r| {
            let f = parse_form(r, u).unwrap();
            assert_eq!(f.terms().len(), 1);
            f.terms().keys().next().unwrap().display(&u).to_string()
        })
        .collect();
    mons.sort();
    assert_eq!(mons, ["w1^wb2", "w2^wb1", "x1^xb1"]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn form_literals_round_trip(
        terms in proptest::collection::vec((0u64..64, -5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4), 0..6),
    ) {
        let u = Universe::new(1, 2);
        let mut f = Form::zero(u);
        for (bits, a, b, c, d) in terms {
            f.add_term(Monomial::from_bits(bits), &GaussRat::new(rat(a, b), rat(c, d)));
        }
        prop_assert_eq!(parse_form(&f.to_string(), u).unwrap(), f);
    }
}
