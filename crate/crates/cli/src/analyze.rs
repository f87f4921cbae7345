//! The full analysis pipeline behind `analyze` and `curve`.

use std::time::Instant;

use essnorm::boundary::{
    bounds_from_lambda, lambda_estimate, lambda_per_coordinate, DeltaSchedule, LambdaEstimate, PerCoordinateLambda,
    RegionStatus, Variant, Verdict, VARIANT_DISAGREEMENT,
};
use essnorm::metrics::PolyPoint;
use essnorm::oracle::{
    best_witness, operator_norm_closed_form, operator_norm_sampled, verify_lemma_cauchy, verify_lemma_radial,
    FunctionFamily, LemmaSampling,
};
use essnorm::symbols::{default_resolution, SymbolConfig, SymbolMap};
use essnorm::{Error, SearchBudget};

use crate::error::{exit, CliError};
use crate::report::*;

/// Restricted to closed-form values above this margin, a sampled norm means the
/// closed-form search missed a better point.
const ORDERING_SLACK: f64 = 1e-9;

/// Λ may exceed the closed-form operator norm by at most this much.
const SANDWICH_SLACK: f64 = 5e-3;

const SAMPLED_POINTS: usize = 2000;
const SAMPLED_FAMILY: usize = 256;
const SAMPLED_MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantChoice {
    Union,
    PerCoordinate,
    Both,
}

impl VariantChoice {
    pub fn name(self) -> &'static str {
        match self {
            Self::Union => "union",
            Self::PerCoordinate => "perj",
            Self::Both => "both",
        }
    }

    fn union(self) -> bool {
        self != Self::PerCoordinate
    }

    fn per_coordinate(self) -> bool {
        self != Self::Union
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub schedule_min_exp: u32,
    pub budget: SearchBudget,
    pub tolerance: f64,
    pub variant: VariantChoice,
    pub oracle: bool,
    pub lemmas: bool,
    pub timing: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            schedule_min_exp: 10,
            budget: SearchBudget::default(),
            tolerance: essnorm::boundary::DEFAULT_COMPACT_TOLERANCE,
            variant: VariantChoice::Both,
            oracle: true,
            lemmas: false,
            timing: false,
        }
    }
}

/// Parsed, validated input.
pub struct Problem {
    pub config: SymbolConfig,
    pub phi: SymbolMap<f64>,
    pub psi: SymbolMap<f64>,
}

fn validation_message(which: &str, e: &Error) -> String {
    match e {
        Error::InvalidSelfMap { coordinate, .. } => format!("{which} coordinate {coordinate}: {e}"),
        _ => format!("{which}: {e}"),
    }
}

/// Parses the configuration (exit status 2 on failure) and validates both maps
/// as self-maps of the polydisc (exit status 3).
pub fn load_problem(text: &str) -> Result<Problem, CliError> {
    let config = SymbolConfig::from_toml(text).map_err(|e| CliError::Config(e.to_string()))?;
    let (phi, psi) = config.to_maps::<f64>().map_err(|e| CliError::Config(e.to_string()))?;
    let res = default_resolution(config.n);
    let phi = phi.validated(res).map_err(|e| CliError::Validation(validation_message("phi", &e)))?;
    let psi = psi.validated(res).map_err(|e| CliError::Validation(validation_message("psi", &e)))?;
    Ok(Problem { config, phi, psi })
}

pub fn schedule(min_exp: u32) -> Result<DeltaSchedule<f64>, CliError> {
    DeltaSchedule::geometric(min_exp).map_err(|e| CliError::Config(format!("--schedule-min-exp: {e}")))
}

fn internal(e: Error) -> CliError {
    CliError::Internal(e.to_string())
}

fn lemma_rows(problem: &Problem, seed: u64) -> Result<Vec<LemmaRow>, CliError> {
    let n = problem.config.n;
    let sampling = LemmaSampling { seed, ..LemmaSampling::default() };
    let mut rows = Vec::new();
    for (which, map) in [("phi", &problem.phi), ("psi", &problem.psi)] {
        for (j, f) in map.coords().iter().enumerate() {
            let Some(p) = f.as_polynomial(n) else { continue };
            let target = format!("{which}[{}]", j + 1);
            let cauchy = verify_lemma_cauchy(n, &p, 0.5, 0.9, &sampling).map_err(internal)?;
            rows.push(LemmaRow { target: target.clone(), report: cauchy });
            let radial = verify_lemma_radial(n, &p, 0.25, 0.99, &sampling).map_err(internal)?;
            rows.push(LemmaRow { target, report: radial });
        }
    }
    Ok(rows)
}

fn per_coordinate_section(per: &PerCoordinateLambda<f64>) -> PerCoordinateSection {
    PerCoordinateSection {
        values: per.per_coordinate.iter().map(|e| e.lambda).collect(),
        max: per.max,
        converged: per.converged,
        coordinates: per.per_coordinate.iter().map(LambdaSection::from).collect(),
    }
}

/// Per-coordinate limits folded into one estimate so the same bound and verdict
/// rules apply.
fn per_coordinate_as_estimate(per: &PerCoordinateLambda<f64>) -> LambdaEstimate<f64> {
    let best =
        per.per_coordinate
            .iter()
            .enumerate()
            .fold(0, |b, (j, e)| if e.lambda > per.per_coordinate[b].lambda { j } else { b });
    let mut est = per.per_coordinate[best].clone();
    est.lambda = per.max;
    est.converged = per.converged;
    est
}

fn curve_violations(est: &LambdaEstimate<f64>) -> Option<String> {
    est.curve.windows(2).find(|w| w[1].sup_value > w[0].sup_value).map(|w| {
        format!(
            "curve increased from {} at δ = {} to {} at δ = {}",
            w[0].sup_value, w[0].delta, w[1].sup_value, w[1].delta
        )
    })
}

/// Outcome of `analyze`: the report plus the exit status it implies.
pub struct Analysis {
    pub report: AnalysisReport,
    pub status: u8,
    pub violations: Vec<String>,
}

pub fn analyze(text: &str, opts: &AnalyzeOptions) -> Result<Analysis, CliError> {
    let started = Instant::now();
    let problem = load_problem(text)?;
    run_analysis(&problem, opts, started)
}

pub fn run_analysis(problem: &Problem, opts: &AnalyzeOptions, started: Instant) -> Result<Analysis, CliError> {
    if !(opts.tolerance > 0.0 && opts.tolerance.is_finite()) {
        return Err(CliError::Config(format!("--tolerance must be positive, got {}", opts.tolerance)));
    }
    if opts.budget.starts == 0 {
        return Err(CliError::Config("--starts must be at least 1".into()));
    }
    let (phi, psi) = (&problem.phi, &problem.psi);
    let schedule = schedule(opts.schedule_min_exp)?;
    let budget = &opts.budget;
    let mut violations = Vec::new();
    let mut notes = vec![LOWER_BOUND_NOTE.to_string()];

    let union = if opts.variant.union() {
        Some(lambda_estimate(phi, psi, &schedule, Variant::Union, budget).map_err(internal)?)
    } else {
        None
    };
    let per = if opts.variant.per_coordinate() {
        Some(lambda_per_coordinate(phi, psi, &schedule, budget).map_err(internal)?)
    } else {
        None
    };
    if let (Some(u), Some(p)) = (&union, &per) {
        if (u.lambda - p.max).abs() > VARIANT_DISAGREEMENT {
            notes.push(format!(
                "union and per-coordinate estimates disagree: sup over E_δ of max_j β gives {}, max_j a_j gives {}",
                u.lambda, p.max
            ));
        }
    }

    let mut anchors: Vec<(String, PolyPoint<f64>)> = Vec::new();
    if let Some(z) = union.as_ref().and_then(|u| u.best_point()) {
        anchors.push(("lambda_union".into(), z.clone()));
    }
    if let Some(p) = &per {
        for (j, e) in p.per_coordinate.iter().enumerate() {
            if let Some(z) = e.best_point() {
                anchors.push((format!("lambda_coordinate_{}", j + 1), z.clone()));
            }
        }
    }

    let sampled = if opts.oracle {
        let family =
            FunctionFamily::RandomBlaschke { count: SAMPLED_FAMILY, max_degree: SAMPLED_MAX_DEGREE, seed: budget.seed };
        let s = operator_norm_sampled(phi, psi, &family, SAMPLED_POINTS, budget.seed).map_err(internal)?;
        if let Some(z) = &s.best_point {
            anchors.push(("sampled".into(), z.clone()));
        }
        Some(s)
    } else {
        None
    };

    let warm: Vec<PolyPoint<f64>> = anchors.iter().map(|(_, z)| z.clone()).collect();
    let closed = operator_norm_closed_form(phi, psi, budget, &warm).map_err(internal)?;
    if let Some(z) = &closed.argmax {
        anchors.push(("closed_form".into(), z.clone()));
    }

    let (source, estimate) = match (&union, &per) {
        (Some(u), _) => ("union", u.clone()),
        (None, Some(p)) => ("per_coordinate", per_coordinate_as_estimate(p)),
        (None, None) => unreachable!("at least one variant is selected"),
    };
    let bounds = bounds_from_lambda(&estimate, closed.value, opts.tolerance).map_err(internal)?;

    if bounds.lower > bounds.operator_norm + SANDWICH_SLACK {
        violations.push(format!("Λ = {} exceeds the operator norm {}", bounds.lower, bounds.operator_norm));
    }
    if let Some(s) = &sampled {
        if s.value > closed.value + ORDERING_SLACK {
            violations.push(format!("sampled norm {} exceeds closed form {}", s.value, closed.value));
        }
    }
    for est in union.iter().chain(per.iter().flat_map(|p| p.per_coordinate.iter())) {
        violations.extend(curve_violations(est));
    }

    let witnesses = if opts.oracle {
        anchors
            .iter()
            .map(|(origin, z)| {
                let (j, value) = best_witness(phi, psi, z).map_err(internal)?;
                if value > closed.value + ORDERING_SLACK {
                    violations.push(format!("witness value {value} at {origin} exceeds closed form {}", closed.value));
                }
                Ok(WitnessRow { origin: origin.clone(), anchor: point_pairs(z), coordinate: j + 1, value })
            })
            .collect::<Result<Vec<_>, CliError>>()?
    } else {
        Vec::new()
    };

    let lemmas = if opts.lemmas { lemma_rows(problem, budget.seed)? } else { Vec::new() };
    for row in lemmas.iter().filter(|r| !r.report.pass) {
        violations.push(format!("{:?} check failed for {}", row.report.lemma, row.target));
    }
    if union.as_ref().is_some_and(|u| u.curve.iter().all(|c| c.status == RegionStatus::Empty)) {
        notes.push("every boundary region in the schedule is certified empty; Λ = 0 by convention".into());
    }
    for v in &violations {
        notes.push(format!("invariant violation: {v}"));
    }

    let report = AnalysisReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        input: InputEcho {
            config: problem.config.clone(),
            schedule: schedule.deltas().to_vec(),
            starts: budget.starts,
            max_rounds: budget.max_rounds,
            seed: budget.seed,
            tolerance: opts.tolerance,
            variant: opts.variant.name().to_string(),
            oracle: opts.oracle,
            lemmas: opts.lemmas,
        },
        lambda_union: union.as_ref().map(LambdaSection::from),
        lambda_per_coordinate: per.as_ref().map(per_coordinate_section),
        bounds: BoundsSection {
            source: source.to_string(),
            lower: bounds.lower,
            upper: bounds.upper,
            operator_norm: bounds.operator_norm,
            verdict: bounds.verdict,
            tolerance: bounds.tolerance,
        },
        operator_norm: OperatorNormSection {
            closed_form: closed.value,
            closed_form_converged: closed.converged,
            closed_form_argmax: closed.argmax.as_ref().map(point_pairs),
            sampled: sampled.as_ref().map(|s| s.value),
            sampled_point: sampled.as_ref().and_then(|s| s.best_point.as_ref()).map(point_pairs),
            sampled_description: sampled.as_ref().map(|_| {
                format!("{SAMPLED_POINTS} points, {SAMPLED_FAMILY} Blaschke products of degree ≤ {SAMPLED_MAX_DEGREE}")
            }),
        },
        witnesses,
        lemmas,
        timing: opts.timing.then(|| Timing { total_seconds: started.elapsed().as_secs_f64() }),
        notes,
    };

    let status = if !violations.is_empty() {
        exit::VIOLATION
    } else if report.bounds.verdict == Verdict::Inconclusive {
        exit::INCONCLUSIVE
    } else {
        exit::OK
    };
    Ok(Analysis { report, status, violations })
}
