//! Delimited-text table of the δ-sweep, for external plotting.

use essnorm::boundary::{lambda_estimate, lambda_per_coordinate, RegionStatus, Variant};

use crate::analyze::{schedule, AnalyzeOptions, Problem, VariantChoice};
use crate::error::CliError;

pub const HEADER: &str = "delta,sup_beta,empty";

/// Fixed-point decimal with 9 significant digits.
pub fn sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{:.8}", v);
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (8 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // Rounding may carry into a new leading digit (9.9999999996 → 10.00000000).
    let digits = s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count();
    if digits > 9 && decimals > 0 {
        let d = decimals - 1;
        format!("{v:.d$}")
    } else {
        s
    }
}

pub struct CurveRow {
    pub delta: f64,
    pub sup_beta: f64,
    pub empty: bool,
}

/// Union curve, or for `perj` the per-δ maximum of the coordinate curves
/// (empty when every coordinate region is empty).
pub fn curve_rows(problem: &Problem, opts: &AnalyzeOptions) -> Result<Vec<CurveRow>, CliError> {
    let schedule = schedule(opts.schedule_min_exp)?;
    let internal = |e: essnorm::Error| CliError::Internal(e.to_string());
    if opts.budget.starts == 0 {
        return Err(CliError::Config("--starts must be at least 1".into()));
    }
    if opts.variant == VariantChoice::PerCoordinate {
        let per = lambda_per_coordinate(&problem.phi, &problem.psi, &schedule, &opts.budget).map_err(internal)?;
        Ok(schedule
            .deltas()
            .iter()
            .enumerate()
            .map(|(k, &delta)| CurveRow {
                delta,
                sup_beta: per.per_coordinate.iter().map(|e| e.curve[k].sup_value).fold(0.0, f64::max),
                empty: per.per_coordinate.iter().all(|e| e.curve[k].status == RegionStatus::Empty),
            })
            .collect())
    } else {
        let est =
            lambda_estimate(&problem.phi, &problem.psi, &schedule, Variant::Union, &opts.budget).map_err(internal)?;
        Ok(est
            .curve
            .iter()
            .map(|c| CurveRow { delta: c.delta, sup_beta: c.sup_value, empty: c.status == RegionStatus::Empty })
            .collect())
    }
}

pub fn render(rows: &[CurveRow]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{}\n", sig9(r.delta), sig9(r.sup_beta), r.empty));
    }
    out
}
