//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use essnorm::boundary::{RegionStatus, Verdict};
use essnorm::random;
use essnorm::symbols::{default_resolution, SymbolConfig};
use essnorm_cli::analyze::{analyze, run_analysis, AnalyzeOptions, Problem, VariantChoice};
use essnorm_cli::report::{AnalysisReport, SuiteResult};
use essnorm_cli::verify::{lemma_suites, metric_identities, profile_inequality, schwarz_pick};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    pass: bool,
    detail: String,
}

fn config(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn suites_outcome(suites: &[SuiteResult]) -> Outcome {
    let detail = suites
        .iter()
        .map(|s| format!("{} {}/{} ok, worst margin {:.3e}", s.name, s.samples - s.failures, s.samples, s.worst_margin))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { pass: suites.iter().all(|s| s.pass), detail }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn metric_identity() -> Outcome {
    suites_outcome(&metric_identities(SEED, 10_000))
}

fn profile_bounds() -> Outcome {
    suites_outcome(&[profile_inequality(10_000)])
}

fn schwarz_pick_contraction() -> Outcome {
    suites_outcome(&[schwarz_pick(SEED, 1000, 100)])
}

fn report_for(name: &str) -> (AnalysisReport, Duration) {
    let t = Instant::now();
    let a = analyze(&config(name), &AnalyzeOptions::default()).unwrap();
    (a.report, t.elapsed())
}

fn known_verdicts() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    let mut check = |label: &str, ok: bool, r: &AnalysisReport, took: Duration| {
        let ok = ok && took < Duration::from_secs(30);
        pass &= ok;
        parts.push(format!(
            "({label}) Λ = {:.6}, lower {:.6}, upper {:.6}, {:?}, {:.2}s{}",
            r.lambda_union.as_ref().map_or(f64::NAN, |u| u.lambda),
            r.bounds.lower,
            r.bounds.upper,
            r.bounds.verdict,
            took.as_secs_f64(),
            if ok { "" } else { " FAILED" }
        ));
    };

    let (r, t) = report_for("interior_constants.toml");
    let u = r.lambda_union.as_ref().unwrap();
    let ok = u.lambda == 0.0
        && u.curve.last().is_some_and(|c| c.status == RegionStatus::Empty)
        && r.bounds.verdict == Verdict::Compact;
    check("a", ok, &r, t);

    let (r, t) = report_for("identity_vs_negation.toml");
    let lambda = r.lambda_union.as_ref().unwrap().lambda;
    let ok = (0.997..=1.0).contains(&lambda)
        && within(r.bounds.lower, 1.0, 3e-3)
        && within(r.bounds.upper, 4.0, 1.5e-2)
        && r.bounds.verdict == Verdict::NotCompact;
    check("b", ok, &r, t);

    let (r, t) = report_for("diagonal_pair.toml");
    let lambda = r.lambda_union.as_ref().unwrap().lambda;
    let ok =
        within(lambda, 0.2, 1e-3) && within(r.bounds.upper, 0.404082, 2e-3) && r.bounds.verdict == Verdict::NotCompact;
    check("c", ok, &r, t);

    let half = "n = 1\nphi = [{ kind = \"affine\", c = [[1, 0]] }]\npsi = [{ kind = \"affine\", c = [[0.5, 0]] }]\n";
    let t0 = Instant::now();
    let r = analyze(half, &AnalyzeOptions::default()).unwrap().report;
    let lambda = r.lambda_union.as_ref().unwrap().lambda;
    check("d", within(lambda, 1.0, 3e-3), &r, t0.elapsed());

    Outcome { pass, detail: parts.join("; ") }
}

fn sandwich_audit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let opts = AnalyzeOptions { variant: VariantChoice::Union, ..AnalyzeOptions::default() };
    let (mut worst_lambda, mut worst_sampled) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut failures = Vec::new();
    for k in 0..50 {
        let n = rng.random_range(1..=3);
        let phi = random::symbol_map::<f64, _>(&mut rng, n).validated(default_resolution(n)).unwrap();
        let psi = random::symbol_map::<f64, _>(&mut rng, n).validated(default_resolution(n)).unwrap();
        let problem = Problem { config: SymbolConfig::from_maps(&phi, &psi), phi, psi };
        let r = run_analysis(&problem, &opts, Instant::now()).unwrap().report;
        let closed = r.operator_norm.closed_form;
        let lambda_gap = r.bounds.lower - closed;
        let sampled_gap = r.operator_norm.sampled.unwrap() - closed;
        worst_lambda = worst_lambda.max(lambda_gap);
        worst_sampled = worst_sampled.max(sampled_gap);
        if lambda_gap > 5e-3 || sampled_gap > 1e-9 {
            failures.push(format!(
                "pair {k} (n = {n}): Λ − closed = {lambda_gap:.3e}, sampled − closed = {sampled_gap:.3e}"
            ));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "50 pairs, max Λ − closed form {worst_lambda:.3e}, max sampled − closed form {worst_sampled:.3e}{}",
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        ),
    }
}

fn lemma_verifiers() -> Outcome {
    suites_outcome(&lemma_suites(SEED, 100).unwrap())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("pair.toml");
    std::fs::write(&cfg, config("identity_vs_negation.toml")).unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|k| {
            let out = dir.path().join(format!("report{k}.toml"));
            let status = Command::new(env!("CARGO_BIN_EXE_essnorm"))
                .args(["analyze", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "7"])
                .status()
                .unwrap();
            assert!(status.success());
            std::fs::read(out).unwrap()
        })
        .collect();
    let same = runs[0] == runs[1] && !runs[0].is_empty();
    Outcome { pass: same, detail: format!("two reports of {} bytes, identical: {same}", runs[0].len()) }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("metric identities", metric_identity, Duration::from_secs(1)),
        ("profile inequality", profile_bounds, Duration::from_secs(1)),
        ("Schwarz-Pick contraction", schwarz_pick_contraction, Duration::from_secs(5)),
        ("known verdicts", known_verdicts, Duration::from_secs(120)),
        ("sandwich audit", sandwich_audit, Duration::from_secs(600)),
        ("lemma verifiers", lemma_verifiers, Duration::from_secs(120)),
        ("determinism", determinism, Duration::from_secs(120)),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let took = t.elapsed();
        let pass = outcome.pass && took <= *limit;
        all &= pass;
        println!(
            "criterion {}: {} [{name}] {:.2}s (limit {}s): {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs(),
            outcome.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
