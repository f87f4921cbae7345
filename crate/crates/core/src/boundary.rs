//! Boundary regions, the boundary quantity Λ and the two-sided essential-norm
//! estimate for `C_φ − C_ψ` on bounded analytic functions of `Uⁿ`.
//!
//! For `0 < δ < 1` the region `E^j_δ` collects the points where
//! `max(|φ_j(z)|, |ψ_j(z)|) > 1 − δ`, and `E_δ` is their union. The boundary
//! quantity is
//!
//! ```text
//! Λ = lim_{δ→0} sup_{z ∈ E_δ} max_j β(φ_j(z), ψ_j(z))
//! ```
//!
//! and the essential norm satisfies `Λ ≤ ‖C_φ − C_ψ‖_e ≤ 2·g(Λ)`. The
//! difference is compact exactly when `Λ = 0`. When every coordinate of both
//! maps stays inside a disc of radius `< 1`, `E_δ` is empty for small `δ` and
//! `Λ` is taken to be 0.
//!
//! The supremum over `E_δ` is estimated from below by feasible points found by
//! multistart search, swept along a decreasing `δ` schedule.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{beta_raw, upper_bound_profile, PolyPoint};
use crate::oracle::operator_norm_closed_form;
use crate::scalar::Scalar;
use crate::search::{maximize, Landscape, SearchBudget, StartPlan};
use crate::symbols::SymbolMap;

/// Images `(φ(z), ψ(z))`.
type Images<T> = (Vec<Complex<T>>, Vec<Complex<T>>);

/// Two consecutive curve values closer than this count as converged.
pub const CURVE_TOLERANCE: f64 = 1e-3;

/// Default threshold below which Λ is treated as zero.
pub const DEFAULT_COMPACT_TOLERANCE: f64 = 1e-2;

/// Union and per-coordinate estimates further apart than this are flagged.
pub const VARIANT_DISAGREEMENT: f64 = 1e-3;

/// Strictly decreasing list of `δ ∈ (0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSchedule<T: Scalar> {
    deltas: Vec<T>,
}

impl<T: Scalar> DeltaSchedule<T> {
    pub fn new(deltas: Vec<T>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::Domain("empty δ schedule".into()));
        }
        if deltas.iter().any(|&d| !(d > T::zero() && d < T::one())) {
            return Err(Error::Domain("every δ must lie in (0, 1)".into()));
        }
        if deltas.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::Domain("δ schedule must be strictly decreasing".into()));
        }
        Ok(Self { deltas })
    }

    /// `δ_k = 2^{−k}` for `k = 1..=min_exp`.
    pub fn geometric(min_exp: u32) -> Result<Self> {
        if min_exp == 0 {
            return Err(Error::Domain("schedule needs at least one δ".into()));
        }
        Self::new((1..=min_exp).map(|k| T::lit(0.5f64.powi(k as i32))).collect())
    }

    pub fn deltas(&self) -> &[T] {
        &self.deltas
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

impl<T: Scalar> Default for DeltaSchedule<T> {
    fn default() -> Self {
        Self::geometric(10).expect("default schedule")
    }
}

/// Which form of the boundary supremum is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "form", content = "coordinate")]
pub enum Variant {
    /// `sup over E_δ of max_j β(φ_j, ψ_j)`.
    Union,
    /// `sup over E^j_δ of β(φ_j, ψ_j)` for one 0-based coordinate `j`.
    Coordinate(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionStatus {
    /// Certified empty from the torus sups.
    Empty,
    Found,
    /// Not certified empty, but no feasible point was found.
    NoFeasiblePoint,
}

/// One entry of the δ-sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint<T: Scalar> {
    pub delta: T,
    pub sup_value: T,
    pub argmax: Option<PolyPoint<T>>,
    pub status: RegionStatus,
    pub converged: bool,
}

impl<T: Scalar> CurvePoint<T> {
    fn empty(delta: T) -> Self {
        Self { delta, sup_value: T::zero(), argmax: None, status: RegionStatus::Empty, converged: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaEstimate<T: Scalar> {
    pub lambda: T,
    pub variant: Variant,
    pub curve: Vec<CurvePoint<T>>,
    pub converged: bool,
    /// Index of the first schedule entry certified empty; all later ones are too.
    pub empty_from: Option<usize>,
}

impl<T: Scalar> LambdaEstimate<T> {
    /// Argmax at the smallest δ with a feasible point, if any.
    pub fn best_point(&self) -> Option<&PolyPoint<T>> {
        self.curve.iter().rev().find_map(|c| c.argmax.as_ref())
    }
}

/// Per-coordinate boundary limits `a_j` and their maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct PerCoordinateLambda<T: Scalar> {
    pub per_coordinate: Vec<LambdaEstimate<T>>,
    pub max: T,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Compact,
    NotCompact,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EssentialNormBounds<T: Scalar> {
    pub lower: T,
    pub upper: T,
    pub operator_norm: T,
    pub verdict: Verdict,
    pub tolerance: T,
}

fn check_pair<T: Scalar>(phi: &SymbolMap<T>, psi: &SymbolMap<T>) -> Result<()> {
    if phi.n() != psi.n() {
        return Err(Error::DimensionMismatch { expected: phi.n(), actual: psi.n() });
    }
    if !(phi.is_validated() && psi.is_validated()) {
        return Err(Error::Structure("both symbol maps must be validated".into()));
    }
    Ok(())
}

fn check_delta<T: Scalar>(delta: T) -> Result<()> {
    if delta > T::zero() && delta < T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("δ = {delta} outside (0, 1)")))
    }
}

fn check_variant<T: Scalar>(phi: &SymbolMap<T>, variant: Variant) -> Result<()> {
    match variant {
        Variant::Coordinate(j) if j >= phi.n() => Err(Error::IndexOutOfRange { index: j + 1, n: phi.n() }),
        _ => Ok(()),
    }
}

/// Membership in `E^j_δ` (with `j`, 0-based) or in the union `E_δ` (without).
pub fn in_e_delta<T: Scalar>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    z: &PolyPoint<T>,
    delta: T,
    j: Option<usize>,
) -> Result<bool> {
    check_pair(phi, psi)?;
    check_delta(delta)?;
    if z.n() != phi.n() {
        return Err(Error::DimensionMismatch { expected: phi.n(), actual: z.n() });
    }
    let zc = z.to_complex();
    let threshold = T::one() - delta;
    let hit = |j: usize| phi.eval_coord(j, &zc).norm().max(psi.eval_coord(j, &zc).norm()) > threshold;
    match j {
        Some(j) if j >= phi.n() => Err(Error::IndexOutOfRange { index: j + 1, n: phi.n() }),
        Some(j) => Ok(hit(j)),
        None => Ok((0..phi.n()).any(hit)),
    }
}

/// Whether the torus sups certify that the region is empty for this δ.
fn certified_empty<T: Scalar>(phi: &SymbolMap<T>, psi: &SymbolMap<T>, delta: T, variant: Variant) -> bool {
    let threshold = T::one() - delta;
    let coord_inside = |j: usize| [phi, psi].iter().all(|m| m.certified_sup(j).is_some_and(|s| s <= threshold));
    match variant {
        Variant::Union => (0..phi.n()).all(coord_inside),
        Variant::Coordinate(j) => coord_inside(j),
    }
}

struct BoundaryLandscape<'a, T: Scalar> {
    phi: &'a SymbolMap<T>,
    psi: &'a SymbolMap<T>,
    threshold: T,
    variant: Variant,
    deps: Vec<Vec<usize>>,
}

impl<'a, T: Scalar> BoundaryLandscape<'a, T> {
    fn new(phi: &'a SymbolMap<T>, psi: &'a SymbolMap<T>, delta: T, variant: Variant) -> Self {
        let n = phi.n();
        let deps = (0..n)
            .map(|j| (0..n).filter(|&k| phi.coords()[j].depends_on(k) || psi.coords()[j].depends_on(k)).collect())
            .collect();
        Self { phi, psi, threshold: T::one() - delta, variant, deps }
    }

    fn images(&self, z: &[Complex<T>]) -> Option<Images<T>> {
        let n = self.phi.n();
        let mut a = vec![Complex::new(T::zero(), T::zero()); n];
        let mut b = a.clone();
        self.phi.eval_raw(z, &mut a);
        self.psi.eval_raw(z, &mut b);
        let inside = a.iter().chain(&b).all(|w| w.norm() < T::one());
        inside.then_some((a, b))
    }
}

impl<T: Scalar> Landscape<T> for BoundaryLandscape<'_, T> {
    fn n(&self) -> usize {
        self.phi.n()
    }

    fn value(&self, z: &[Complex<T>]) -> Option<T> {
        let (a, b) = self.images(z)?;
        let hit = |j: usize| a[j].norm().max(b[j].norm()) > self.threshold;
        match self.variant {
            Variant::Union => {
                if !(0..a.len()).any(hit) {
                    return None;
                }
                Some(a.iter().zip(&b).map(|(&x, &y)| beta_raw(x, y)).fold(T::zero(), T::max))
            }
            Variant::Coordinate(j) => hit(j).then(|| beta_raw(a[j], b[j])),
        }
    }

    fn push_vars(&self, z: &[Complex<T>]) -> Vec<usize> {
        let j = match self.variant {
            Variant::Coordinate(j) => j,
            Variant::Union => {
                let Some((a, b)) = self.images(z) else {
                    return Vec::new();
                };
                let mut best = 0;
                let mut best_m = T::neg_infinity();
                for j in 0..a.len() {
                    let m = a[j].norm().max(b[j].norm());
                    if m > best_m && !self.deps[j].is_empty() {
                        best_m = m;
                        best = j;
                    }
                }
                best
            }
        };
        self.deps[j].clone()
    }
}

/// Result of one supremum search over `E_δ` (or `E^j_δ`).
#[derive(Debug, Clone, PartialEq)]
pub enum RegionSup<T: Scalar> {
    /// The region is certified empty; the supremum is taken as 0.
    Empty,
    Found {
        value: T,
        argmax: PolyPoint<T>,
        converged: bool,
    },
    /// Not certified empty, but the search found no feasible point.
    NoFeasiblePoint,
}

fn variant_tag(variant: Variant) -> u64 {
    match variant {
        Variant::Union => 0x75_6e69_6f6e,
        Variant::Coordinate(j) => 0x636f_6f72_6400 + j as u64,
    }
}

/// Certified-feasible lower estimate of the boundary supremum for one δ.
///
/// `warm` points (e.g. argmaxes of neighbouring δ) seed the search alongside
/// starts at radii `1 − δ/2`, `1 − δ/8` and random radii.
pub fn sup_beta_on_e_delta<T: Scalar>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    delta: T,
    variant: Variant,
    budget: &SearchBudget,
    warm: &[PolyPoint<T>],
) -> Result<RegionSup<T>> {
    check_pair(phi, psi)?;
    check_delta(delta)?;
    check_variant(phi, variant)?;
    sup_search(phi, psi, delta, variant, budget, warm, 0)
}

fn sup_search<T: Scalar>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    delta: T,
    variant: Variant,
    budget: &SearchBudget,
    warm: &[PolyPoint<T>],
    index: u64,
) -> Result<RegionSup<T>> {
    if certified_empty(phi, psi, delta, variant) {
        return Ok(RegionSup::Empty);
    }
    let land = BoundaryLandscape::new(phi, psi, delta, variant);
    let plan = StartPlan {
        radii: vec![T::one() - delta / T::lit(2.0), T::one() - delta / T::lit(8.0)],
        warm: warm.iter().map(PolyPoint::to_complex).collect(),
        tag: variant_tag(variant) ^ (index << 40),
    };
    let out = maximize(&land, &plan, budget);
    match out.best {
        None => Ok(RegionSup::NoFeasiblePoint),
        Some((value, z)) => {
            Ok(RegionSup::Found { value, argmax: PolyPoint::from_complex(&z)?, converged: out.converged })
        }
    }
}

/// Sweeps the schedule and estimates the boundary limit for one variant.
pub fn lambda_estimate<T: Scalar>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    schedule: &DeltaSchedule<T>,
    variant: Variant,
    budget: &SearchBudget,
) -> Result<LambdaEstimate<T>> {
    check_pair(phi, psi)?;
    check_variant(phi, variant)?;

    let mut curve: Vec<CurvePoint<T>> = Vec::with_capacity(schedule.len());
    let mut warm: Vec<PolyPoint<T>> = Vec::new();
    for (k, &delta) in schedule.deltas().iter().enumerate() {
        let point = match sup_search(phi, psi, delta, variant, budget, &warm, k as u64 + 1)? {
            RegionSup::Empty => CurvePoint::empty(delta),
            RegionSup::NoFeasiblePoint => CurvePoint {
                delta,
                sup_value: T::zero(),
                argmax: None,
                status: RegionStatus::NoFeasiblePoint,
                converged: false,
            },
            RegionSup::Found { value, argmax, converged } => {
                warm = vec![argmax.clone()];
                CurvePoint { delta, sup_value: value, argmax: Some(argmax), status: RegionStatus::Found, converged }
            }
        };
        curve.push(point);
    }

    // A feasible point for a smaller δ is feasible for every larger δ.
    for k in (0..curve.len().saturating_sub(1)).rev() {
        let (head, tail) = curve.split_at_mut(k + 1);
        let (cur, next) = (&mut head[k], &tail[0]);
        if next.status == RegionStatus::Found && next.sup_value > cur.sup_value {
            cur.sup_value = next.sup_value;
            cur.argmax.clone_from(&next.argmax);
            cur.status = RegionStatus::Found;
        }
    }

    let empty_from = curve.iter().position(|c| c.status == RegionStatus::Empty);
    let last = curve.last().expect("schedule is nonempty");
    let (lambda, curve_converged) = if last.status == RegionStatus::Empty {
        (T::zero(), true)
    } else {
        let nonempty: Vec<&CurvePoint<T>> = curve.iter().filter(|c| c.status != RegionStatus::Empty).collect();
        let settled = nonempty.len() >= 2 && {
            let a = nonempty[nonempty.len() - 1].sup_value;
            let b = nonempty[nonempty.len() - 2].sup_value;
            (a - b).abs().to_f64_lossy() < CURVE_TOLERANCE
        };
        (last.sup_value, settled && last.status == RegionStatus::Found)
    };
    let searches_converged = curve.iter().all(|c| c.converged || c.status == RegionStatus::Empty);

    Ok(LambdaEstimate { lambda, variant, curve, converged: curve_converged && searches_converged, empty_from })
}

/// All per-coordinate limits `a_j` and `max_j a_j`.
pub fn lambda_per_coordinate<T: Scalar>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    schedule: &DeltaSchedule<T>,
    budget: &SearchBudget,
) -> Result<PerCoordinateLambda<T>> {
    let per_coordinate = (0..phi.n())
        .map(|j| lambda_estimate(phi, psi, schedule, Variant::Coordinate(j), budget))
        .collect::<Result<Vec<_>>>()?;
    let max = per_coordinate.iter().map(|e| e.lambda).fold(T::zero(), T::max);
    let converged = per_coordinate.iter().all(|e| e.converged);
    Ok(PerCoordinateLambda { per_coordinate, max, converged })
}

/// Compactness rule: `Λ < tolerance` means compact; otherwise the verdict
/// needs a converged estimate.
pub fn compactness_verdict<T: Scalar>(lambda: T, converged: bool, tolerance: T) -> Verdict {
    if lambda < tolerance {
        Verdict::Compact
    } else if converged {
        Verdict::NotCompact
    } else {
        Verdict::Inconclusive
    }
}

/// Assembles the two-sided estimate from an already computed Λ.
pub fn bounds_from_lambda<T: Scalar>(
    lambda: &LambdaEstimate<T>,
    operator_norm: T,
    tolerance: T,
) -> Result<EssentialNormBounds<T>> {
    if !(tolerance > T::zero()) {
        return Err(Error::Domain(format!("tolerance {tolerance} must be positive")));
    }
    let lower = lambda.lambda;
    Ok(EssentialNormBounds {
        lower,
        upper: upper_bound_profile(lower)?,
        operator_norm,
        verdict: compactness_verdict(lower, lambda.converged, tolerance),
        tolerance,
    })
}

/// `Λ ≤ ‖C_φ − C_ψ‖_e ≤ 2·g(Λ)` with the compactness verdict, using the union form of Λ.
pub fn essential_norm_bounds<T: Scalar>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    schedule: &DeltaSchedule<T>,
    budget: &SearchBudget,
    tolerance: T,
) -> Result<EssentialNormBounds<T>> {
    if !(tolerance > T::zero()) {
        return Err(Error::Domain(format!("tolerance {tolerance} must be positive")));
    }
    let lambda = lambda_estimate(phi, psi, schedule, Variant::Union, budget)?;
    let warm: Vec<PolyPoint<T>> = lambda.best_point().cloned().into_iter().collect();
    let op = operator_norm_closed_form(phi, psi, budget, &warm)?;
    bounds_from_lambda(&lambda, op.value, tolerance)
}
