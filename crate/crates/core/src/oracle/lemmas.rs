use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::search::derive_seed;
use crate::symbols::{default_resolution, torus_sup_estimate, CoordinateFunction, Polynomial};

/// Dilation radii at which the radial check records its decay.
pub const DECAY_RADII: [f64; 3] = [0.9, 0.99, 0.999];

/// Added to the torus estimate of `‖f‖_∞` before forming the radial bound.
const SUP_SAFETY: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    /// `sup_K |∂f/∂z_j| ≤ (√n/ρ) sup_G |f|`.
    CauchyEstimate,
    /// `sup_{F_δ^c} |f(z) − f(rz)| ≤ 2(1−r) n^{3/2}/δ · ‖f‖_∞`.
    RadialConvergence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayPoint {
    pub r: f64,
    pub lhs: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub lhs: f64,
    pub bound: f64,
    pub margin: f64,
    pub pass: bool,
    pub samples: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub decay: Vec<DecayPoint>,
}

impl LemmaReport {
    fn new(lemma: LemmaId, lhs: f64, bound: f64, samples: String, decay: Vec<DecayPoint>) -> Self {
        let margin = bound - lhs;
        Self { lemma, lhs, bound, margin, pass: margin >= 0.0, samples, decay }
    }
}

/// Tensor grid (`grid_per_dim` points per real dimension) for `n ≤ 2`,
/// Monte Carlo with `mc_points` points above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaSampling {
    pub grid_per_dim: usize,
    pub mc_points: usize,
    pub seed: u64,
}

impl Default for LemmaSampling {
    fn default() -> Self {
        Self { grid_per_dim: 32, mc_points: 100_000, seed: 0x1e33a }
    }
}

/// A sampled closed polydisc of radius `radius`.
struct SampleSet {
    n: usize,
    radius: f64,
    grid: Option<usize>,
    count: usize,
    seed: u64,
}

impl SampleSet {
    fn new(n: usize, radius: f64, sampling: &LemmaSampling, stream: u64) -> Result<Self> {
        if n <= 2 {
            let k = sampling.grid_per_dim.max(2);
            let count = k.checked_pow(2 * n as u32).ok_or_else(|| Error::Domain("sample grid too large".into()))?;
            Ok(Self { n, radius, grid: Some(k), count, seed: 0 })
        } else {
            if sampling.mc_points == 0 {
                return Err(Error::Domain("at least one Monte Carlo point is required".into()));
            }
            Ok(Self { n, radius, grid: None, count: sampling.mc_points, seed: derive_seed(sampling.seed, &[stream]) })
        }
    }

    fn describe(&self) -> String {
        match self.grid {
            Some(k) => format!("grid {k}^{} on radius {}", 2 * self.n, self.radius),
            None => format!("monte carlo {} points on radius {} (seed {})", self.count, self.radius, self.seed),
        }
    }

    /// Grid radii run over `0..=radius` inclusive; Monte Carlo puts half the
    /// points on the distinguished boundary torus and half area-uniformly.
    fn point<T: Scalar>(&self, idx: usize, out: &mut [Complex<T>]) {
        let tau = std::f64::consts::TAU;
        match self.grid {
            Some(k) => {
                let mut rest = idx;
                for z in out.iter_mut() {
                    let ri = rest % k;
                    rest /= k;
                    let ti = rest % k;
                    rest /= k;
                    let r = self.radius * ri as f64 / (k - 1) as f64;
                    *z = Complex::from_polar(T::lit(r), T::lit(tau * ti as f64 / k as f64));
                }
            }
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(self.seed, &[idx as u64]));
                let on_torus = idx.is_multiple_of(2);
                for z in out.iter_mut() {
                    let r = if on_torus { self.radius } else { self.radius * rng.random::<f64>().sqrt() };
                    *z = Complex::from_polar(T::lit(r), T::lit(rng.random_range(0.0..tau)));
                }
            }
        }
    }

    fn sup<T: Scalar, F>(&self, f: F) -> f64
    where
        F: Fn(&[Complex<T>]) -> f64 + Sync,
    {
        (0..self.count)
            .into_par_iter()
            .map_init(
                || vec![Complex::new(T::zero(), T::zero()); self.n],
                |z, i| {
                    self.point(i, z);
                    f(z)
                },
            )
            .reduce(|| 0.0, f64::max)
    }
}

fn check_dims<T: Scalar>(n: usize, f: &Polynomial<T>) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    if f.n() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: f.n() });
    }
    Ok(())
}

/// Checks `|∂f/∂z_j| ≤ (√n/(t−s))·sup_G |f|` on the closed polydisc of radius
/// `s` for every `j`, with `G` the polydisc of radius `t`.
pub fn verify_lemma_cauchy<T: Scalar>(
    n: usize,
    f: &Polynomial<T>,
    s: f64,
    t: f64,
    sampling: &LemmaSampling,
) -> Result<LemmaReport> {
    check_dims(n, f)?;
    if !(s > 0.0 && s < t && t < 1.0) {
        return Err(Error::Domain(format!("radii must satisfy 0 < s < t < 1, got s = {s}, t = {t}")));
    }
    let derivs = (0..n).map(|j| f.derivative(j)).collect::<Result<Vec<_>>>()?;
    let inner = SampleSet::new(n, s, sampling, 1)?;
    let outer = SampleSet::new(n, t, sampling, 2)?;
    let lhs = inner.sup::<T, _>(|z| derivs.iter().map(|d| d.eval(z).norm().to_f64_lossy()).fold(0.0, f64::max));
    let sup_g = outer.sup::<T, _>(|z| f.eval(z).norm().to_f64_lossy());
    let bound = (n as f64).sqrt() / (t - s) * sup_g;
    let samples = format!("K: {}; G: {}", inner.describe(), outer.describe());
    Ok(LemmaReport::new(LemmaId::CauchyEstimate, lhs, bound, samples, Vec::new()))
}

fn radial_gap<T: Scalar>(f: &Polynomial<T>, set: &SampleSet, r: f64) -> f64 {
    let r = T::lit(r);
    set.sup::<T, _>(|z| {
        let scaled: Vec<Complex<T>> = z.iter().map(|w| *w * r).collect();
        (f.eval(z) - f.eval(&scaled)).norm().to_f64_lossy()
    })
}

/// Checks `|f(z) − f(rz)| ≤ 2(1−r)·n^{3/2}/δ·‖f‖_∞` on `max_j |z_j| ≤ 1 − δ`,
/// and records the same comparison at each of [`DECAY_RADII`].
pub fn verify_lemma_radial<T: Scalar>(
    n: usize,
    f: &Polynomial<T>,
    delta: f64,
    r: f64,
    sampling: &LemmaSampling,
) -> Result<LemmaReport> {
    check_dims(n, f)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r must lie in (0, 1), got {r}")));
    }
    let coord = CoordinateFunction::Polynomial(f.clone());
    let norm = torus_sup_estimate(&coord, n, default_resolution(n))?.to_f64_lossy() + SUP_SAFETY;
    let factor = 2.0 * (n as f64).powf(1.5) / delta * norm;
    let set = SampleSet::new(n, 1.0 - delta, sampling, 3)?;
    let lhs = radial_gap(f, &set, r);
    let decay = DECAY_RADII
        .iter()
        .map(|&rr| DecayPoint { r: rr, lhs: radial_gap(f, &set, rr), bound: (1.0 - rr) * factor })
        .collect();
    let samples = format!("{}; sup norm {norm:.9e}", set.describe());
    Ok(LemmaReport::new(LemmaId::RadialConvergence, lhs, (1.0 - r) * factor, samples, decay))
}
