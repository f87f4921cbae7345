use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use essnorm::boundary::{compactness_verdict, Verdict};
use essnorm_cli::report::{AnalysisReport, VerifyReport};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn essnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_essnorm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn analyze(name: &str, extra: &[&str]) -> (AnalysisReport, Output) {
    let path = config(name);
    let mut args = vec!["analyze", "--config", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = essnorm(&args);
    let report = AnalysisReport::from_toml(&stdout(&out)).unwrap_or_else(|e| panic!("{e}\n{}", stdout(&out)));
    (report, out)
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn identity_against_negation() {
    let (r, out) = analyze("identity_vs_negation.toml", &[]);
    assert_eq!(out.status.code(), Some(0));
    let lambda = r.lambda_union.as_ref().unwrap().lambda;
    assert!((lambda - 1.0).abs() <= 2e-3);
    assert!((r.bounds.lower - 1.0).abs() <= 2e-3);
    assert!((r.bounds.upper - 4.0).abs() <= 1e-2);
    assert_eq!(r.bounds.verdict, Verdict::NotCompact);
    assert!(r.operator_norm.sampled.unwrap() <= r.operator_norm.closed_form + 1e-9);
    assert!(!r.witnesses.is_empty());
}

#[test]
fn interior_constants_are_compact() {
    let (r, out) = analyze("interior_constants.toml", &[]);
    assert_eq!(out.status.code(), Some(0));
    let union = r.lambda_union.as_ref().unwrap();
    assert_eq!(union.lambda, 0.0);
    assert_eq!(union.empty_from, Some(1));
    assert_eq!((r.bounds.lower, r.bounds.upper, r.bounds.verdict), (0.0, 0.0, Verdict::Compact));
}

#[test]
fn variants_disagree_on_the_diagonal_pair() {
    let (r, _) = analyze("diagonal_pair.toml", &["--schedule-min-exp", "6"]);
    assert!((r.bounds.lower - 0.2).abs() <= 1e-3);
    assert_eq!(r.lambda_per_coordinate.as_ref().unwrap().max, 0.0);
    assert!(r.notes.iter().any(|n| n.contains("disagree")));

    let (perj, _) = analyze("diagonal_pair.toml", &["--schedule-min-exp", "6", "--variant", "perj"]);
    assert!(perj.lambda_union.is_none());
    assert_eq!(perj.bounds.source, "per_coordinate");
    assert_eq!(perj.bounds.verdict, Verdict::Compact);
}

#[test]
fn verdict_follows_the_compactness_rule() {
    for name in ["identity_vs_negation.toml", "interior_constants.toml", "mixed.toml"] {
        let (r, _) = analyze(name, &["--schedule-min-exp", "6", "--starts", "8"]);
        let u = r.lambda_union.as_ref().unwrap();
        assert_eq!(r.bounds.lower, u.lambda);
        assert_eq!(r.bounds.verdict, compactness_verdict(u.lambda, u.converged, r.bounds.tolerance));
    }
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = config("mixed.toml");
    let outputs: Vec<String> = (0..2)
        .map(|k| {
            let out = dir.path().join(format!("r{k}.toml"));
            let o = essnorm(&[
                "analyze",
                "--config",
                path.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--schedule-min-exp",
                "6",
                "--seed",
                "17",
            ]);
            assert!(o.stdout.is_empty());
            std::fs::read_to_string(out).unwrap()
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    let parsed = AnalysisReport::from_toml(&outputs[0]).unwrap();
    assert_eq!(parsed.to_toml(), outputs[0]);
    assert_eq!(parsed.input.seed, 17);
}

#[test]
fn seed_changes_the_search_but_not_the_verdict() {
    let (a, _) = analyze("identity_vs_negation.toml", &["--seed", "1", "--schedule-min-exp", "6"]);
    let (b, _) = analyze("identity_vs_negation.toml", &["--seed", "2", "--schedule-min-exp", "6"]);
    assert_ne!(a.to_toml(), b.to_toml());
    assert_eq!(a.bounds.verdict, b.bounds.verdict);
}

#[test]
fn lemma_reports_on_request() {
    let (r, out) = analyze("identity_vs_negation.toml", &["--lemmas", "on", "--oracle", "off"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(r.lemmas.len(), 4);
    assert!(r.lemmas.iter().all(|l| l.report.pass));
    assert!(r.witnesses.is_empty() && r.operator_norm.sampled.is_none());
}

#[test]
fn timing_is_opt_in() {
    let (r, _) = analyze("interior_constants.toml", &[]);
    assert!(r.timing.is_none());
    let (r, _) = analyze("interior_constants.toml", &["--timing", "on"]);
    assert!(r.timing.unwrap().total_seconds >= 0.0);
}

#[test]
fn invalid_self_map_exits_with_validation_status() {
    let path = config("invalid_shift.toml");
    let out = essnorm(&["analyze", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("phi coordinate 1"), "{err}");
}

#[test]
fn config_errors_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("garbage.toml", "n = [\n"),
        ("unknown.toml", "n = 1\nphi = [{ kind = \"constant\", value = [0, 0], extra = 1 }]\npsi = [{ kind = \"constant\", value = [0, 0] }]\n"),
        (
            "mismatch.toml",
            "n = 2\nphi = [{ kind = \"constant\", value = [0, 0] }]\npsi = [{ kind = \"constant\", value = [0, 0] }, { kind = \"constant\", value = [0, 0] }]\n",
        ),
        ("source.toml", "n = 1\nphi = [{ kind = \"mobius\", a = [0, 0], source = 2 }]\npsi = [{ kind = \"constant\", value = [0, 0] }]\n"),
    ];
    for (name, text) in cases {
        let p = write_config(&dir, name, text);
        let out = essnorm(&["analyze", "--config", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = essnorm(&["analyze", "--config", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn curve_output() {
    let dir = tempfile::tempdir().unwrap();
    let same = write_config(
        &dir,
        "same.toml",
        "n = 1\nphi = [{ kind = \"affine\", c = [[0.8, 0]] }]\npsi = [{ kind = \"affine\", c = [[0.8, 0]] }]\n",
    );
    let out = essnorm(&["curve", "--config", same.to_str().unwrap(), "--schedule-min-exp", "4"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("delta,sup_beta,empty"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() == 0.0));

    let neg = config("identity_vs_negation.toml");
    let text = stdout(&essnorm(&["curve", "--config", neg.to_str().unwrap()]));
    let values: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 10);
    assert!(values.windows(2).all(|w| w[1] <= w[0]));
    assert!(*values.last().unwrap() >= 0.99);
    assert_eq!(text.lines().nth(10).unwrap().split(',').next().unwrap(), "0.000976562500");

    let k = config("interior_constants.toml");
    let text = stdout(&essnorm(&["curve", "--config", k.to_str().unwrap()]));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn verify_suites() {
    let a = essnorm(&["verify", "--size", "3", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    let ra = VerifyReport::from_toml(&stdout(&a)).unwrap();
    assert!(ra.pass);
    let b = essnorm(&["verify", "--size", "3", "--seed", "6"]);
    let rb = VerifyReport::from_toml(&stdout(&b)).unwrap();
    assert!(rb.pass);
    assert_ne!(stdout(&a), stdout(&b));

    let empty = essnorm(&["verify", "--size", "0"]);
    assert_eq!(empty.status.code(), Some(2));
    assert!(String::from_utf8(empty.stderr).unwrap().contains("empty suite"));
    let none = essnorm(&["verify", "--metrics", "off", "--lemmas", "off"]);
    assert_eq!(none.status.code(), Some(2));
}
