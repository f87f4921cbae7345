//! Report documents written by `analyze` and `verify`.

use essnorm::boundary::{CurvePoint, LambdaEstimate, RegionStatus, Verdict};
use essnorm::metrics::PolyPoint;
use essnorm::oracle::LemmaReport;
use essnorm::symbols::{ComplexPair, SymbolConfig};
use serde::{Deserialize, Serialize};

/// Always attached to analysis reports.
pub const LOWER_BOUND_NOTE: &str =
    "lower bound reported as Λ; the lower-bound construction also carries a factor 1/M from \
     an interpolating-sequence constant M, which is not computed";

pub fn point_pairs(p: &PolyPoint<f64>) -> Vec<ComplexPair> {
    p.coords().iter().map(|c| [c.value().re, c.value().im]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputEcho {
    pub config: SymbolConfig,
    pub schedule: Vec<f64>,
    pub starts: usize,
    pub max_rounds: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub variant: String,
    pub oracle: bool,
    pub lemmas: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRow {
    pub delta: f64,
    pub sup_beta: f64,
    pub status: RegionStatus,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub argmax: Option<Vec<ComplexPair>>,
}

impl From<&CurvePoint<f64>> for CurveRow {
    fn from(p: &CurvePoint<f64>) -> Self {
        Self {
            delta: p.delta,
            sup_beta: p.sup_value,
            status: p.status,
            converged: p.converged,
            argmax: p.argmax.as_ref().map(point_pairs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaSection {
    pub lambda: f64,
    pub converged: bool,
    /// 1-based index into the schedule of the first certified-empty region.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empty_from: Option<usize>,
    pub curve: Vec<CurveRow>,
}

impl From<&LambdaEstimate<f64>> for LambdaSection {
    fn from(e: &LambdaEstimate<f64>) -> Self {
        Self {
            lambda: e.lambda,
            converged: e.converged,
            empty_from: e.empty_from.map(|k| k + 1),
            curve: e.curve.iter().map(CurveRow::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerCoordinateSection {
    pub values: Vec<f64>,
    pub max: f64,
    pub converged: bool,
    pub coordinates: Vec<LambdaSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    /// Which estimate of Λ the bounds are built from: `union` or `per_coordinate`.
    pub source: String,
    pub lower: f64,
    pub upper: f64,
    pub operator_norm: f64,
    pub verdict: Verdict,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorNormSection {
    pub closed_form: f64,
    pub closed_form_converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form_argmax: Option<Vec<ComplexPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampled: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampled_point: Option<Vec<ComplexPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampled_description: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRow {
    /// Where the anchor came from, e.g. `lambda_union` or `closed_form`.
    pub origin: String,
    pub anchor: Vec<ComplexPair>,
    /// 1-based coordinate of the best witness at this anchor.
    pub coordinate: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaRow {
    /// `phi[j]` or `psi[j]` (1-based).
    pub target: String,
    pub report: LemmaReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub total_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub version: String,
    pub input: InputEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_union: Option<LambdaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_per_coordinate: Option<PerCoordinateSection>,
    pub bounds: BoundsSection,
    pub operator_norm: OperatorNormSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lemmas: Vec<LemmaRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("analysis report serialises")
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteResult {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Smallest slack observed (bound minus checked quantity); negative on failure.
    pub worst_margin: f64,
    pub pass: bool,
    /// Description of the first failing sample, for reproduction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub version: String,
    pub seed: u64,
    pub size: usize,
    pub pass: bool,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("verify report serialises")
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}
