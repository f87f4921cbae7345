use num_complex::Complex;

use super::coordinate::CoordinateFunction;
use crate::error::{Error, Result};
use crate::metrics::PolyPoint;
use crate::scalar::Scalar;

/// Smallest torus grid accepted by the sup-norm estimator.
pub const MIN_RESOLUTION: usize = 8;

/// Slack allowed above 1 for a coordinate's torus sup.
pub const SELF_MAP_SLACK: f64 = 1e-9;

/// Validation grid size per angular dimension: 256 for `n ≤ 2`, 64 for `n = 3`, 32 beyond.
pub fn default_resolution(n: usize) -> usize {
    match n {
        0..=2 => 256,
        3 => 64,
        _ => 32,
    }
}

/// Outcome of a successful self-map validation.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<T: Scalar> {
    pub validated: bool,
    pub torus_sup: Vec<T>,
    pub resolution: usize,
}

/// A holomorphic map `Uⁿ → ℂⁿ` given by `n` coordinate functions, optionally
/// scaled by a radial dilation factor and carrying a self-map certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolMap<T: Scalar> {
    coords: Vec<CoordinateFunction<T>>,
    dilation: T,
    certificate: Option<Certificate<T>>,
}

impl<T: Scalar> SymbolMap<T> {
    /// Builds an unvalidated map; checks that every coordinate fits dimension `coords.len()`.
    pub fn new(coords: Vec<CoordinateFunction<T>>) -> Result<Self> {
        let n = coords.len();
        if n == 0 {
            return Err(Error::Structure("a symbol map needs at least one coordinate".into()));
        }
        for (j, f) in coords.iter().enumerate() {
            f.check_structure(n).map_err(|e| Error::Structure(format!("coordinate {}: {e}", j + 1)))?;
        }
        Ok(Self { coords, dilation: T::one(), certificate: None })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).map(|k| CoordinateFunction::projection(n, k)).collect())
    }

    /// `z ↦ c` for every `z`.
    pub fn constant(values: &[Complex<T>]) -> Result<Self> {
        Self::new(values.iter().map(|&v| CoordinateFunction::constant(v)).collect())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[CoordinateFunction<T>] {
        &self.coords
    }

    pub fn dilation(&self) -> T {
        self.dilation
    }

    pub fn certificate(&self) -> Option<&Certificate<T>> {
        self.certificate.as_ref()
    }

    pub fn is_validated(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| c.validated)
    }

    /// Torus sup of coordinate `j` from the certificate, if validated.
    pub fn certified_sup(&self, j: usize) -> Option<T> {
        self.certificate.as_ref().map(|c| c.torus_sup[j])
    }

    /// Evaluates coordinate `j` at a raw point (interior or torus) without checks.
    #[inline]
    pub fn eval_coord(&self, j: usize, z: &[Complex<T>]) -> Complex<T> {
        self.coords[j].eval(z) * self.dilation
    }

    /// Evaluates all coordinates at a raw point into `out` without checks.
    #[inline]
    pub fn eval_raw(&self, z: &[Complex<T>], out: &mut [Complex<T>]) {
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.eval_coord(j, z);
        }
    }

    /// `φ(z)` for a validated map at an interior point.
    pub fn evaluate(&self, z: &PolyPoint<T>) -> Result<PolyPoint<T>> {
        self.require_validated()?;
        if z.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), actual: z.n() });
        }
        let zc = z.to_complex();
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.n()];
        self.eval_raw(&zc, &mut out);
        for (j, w) in out.iter().enumerate() {
            if !(w.norm() < T::one()) {
                return Err(Error::EvaluationEscape { coordinate: j + 1, modulus: w.norm().to_f64_lossy() });
            }
        }
        PolyPoint::from_complex(&out)
    }

    fn require_validated(&self) -> Result<()> {
        if self.is_validated() {
            Ok(())
        } else {
            Err(Error::Structure("symbol map has not been validated".into()))
        }
    }

    /// The map `z ↦ r·φ(z)`.
    pub fn radial_dilate(&self, r: T) -> Result<Self> {
        self.require_validated()?;
        if !(r >= T::zero() && r <= T::one()) {
            return Err(Error::Domain(format!("dilation factor {r} outside [0, 1]")));
        }
        let certificate = self.certificate.as_ref().map(|c| Certificate {
            validated: c.validated,
            torus_sup: c.torus_sup.iter().map(|&s| s * r).collect(),
            resolution: c.resolution,
        });
        Ok(Self { coords: self.coords.clone(), dilation: self.dilation * r, certificate })
    }

    /// Lower estimate of `sup |φ_j|` over the torus `|z_k| = 1`.
    ///
    /// Grid of `resolution` angles per variable the coordinate depends on, then
    /// compass ascent from the best grid node. For even resolutions the result
    /// also includes the estimate at half the resolution, so doubling the grid
    /// never lowers the value.
    pub fn sup_norm_coordinate(&self, j: usize, resolution: usize) -> Result<T> {
        Ok(self.torus_sup_with_argmax(j, resolution)?.0)
    }

    fn torus_sup_with_argmax(&self, j: usize, resolution: usize) -> Result<(T, Vec<T>)> {
        if j >= self.n() {
            return Err(Error::IndexOutOfRange { index: j + 1, n: self.n() });
        }
        if resolution < MIN_RESOLUTION {
            return Err(Error::Domain(format!("torus resolution {resolution} below minimum {MIN_RESOLUTION}")));
        }
        let n = self.n();
        let f = &self.coords[j];
        if let Some(c) = f.constant_value(n) {
            return Ok(((c * self.dilation).norm(), vec![T::zero(); n]));
        }
        let deps = f.dependencies(n);
        Ok(torus_sup_recursive(&|z: &[Complex<T>]| (f.eval(z) * self.dilation).norm(), n, &deps, resolution))
    }

    /// Certifies the self-map property on the torus via the maximum-modulus principle.
    pub fn validate(&self, resolution: usize) -> Result<Certificate<T>> {
        let n = self.n();
        let limit = T::one() + T::tol(SELF_MAP_SLACK);
        let mut torus_sup = Vec::with_capacity(n);
        for j in 0..n {
            if let Some(c) = self.coords[j].constant_value(n) {
                let m = (c * self.dilation).norm();
                if !(m < T::one()) {
                    return Err(Error::InvalidSelfMap {
                        coordinate: j + 1,
                        modulus: m.to_f64_lossy(),
                        angles: vec![0.0; n],
                    });
                }
                if resolution < MIN_RESOLUTION {
                    return Err(Error::Domain(format!("torus resolution {resolution} below minimum {MIN_RESOLUTION}")));
                }
                torus_sup.push(m);
                continue;
            }
            let (sup, angles) = self.torus_sup_with_argmax(j, resolution)?;
            if !(sup <= limit) {
                return Err(Error::InvalidSelfMap {
                    coordinate: j + 1,
                    modulus: sup.to_f64_lossy(),
                    angles: angles.iter().map(|a| a.to_f64_lossy()).collect(),
                });
            }
            torus_sup.push(sup);
        }
        Ok(Certificate { validated: true, torus_sup, resolution })
    }

    /// Validates and attaches the certificate.
    pub fn validated(mut self, resolution: usize) -> Result<Self> {
        self.certificate = Some(self.validate(resolution)?);
        Ok(self)
    }

    /// Validates at [`default_resolution`].
    pub fn validated_default(self) -> Result<Self> {
        let res = default_resolution(self.n());
        self.validated(res)
    }
}

/// Lower estimate of `sup |f|` over the torus `|z_k| = 1` for a standalone coordinate
/// function of `n` variables; same estimator as [`SymbolMap::sup_norm_coordinate`].
pub fn torus_sup_estimate<T: Scalar>(f: &CoordinateFunction<T>, n: usize, resolution: usize) -> Result<T> {
    f.check_structure(n)?;
    if resolution < MIN_RESOLUTION {
        return Err(Error::Domain(format!("torus resolution {resolution} below minimum {MIN_RESOLUTION}")));
    }
    if let Some(c) = f.constant_value(n) {
        return Ok(c.norm());
    }
    let deps = f.dependencies(n);
    Ok(torus_sup_recursive(&|z: &[Complex<T>]| f.eval(z).norm(), n, &deps, resolution).0)
}

fn torus_point<T: Scalar>(angles: &[T]) -> Vec<Complex<T>> {
    angles.iter().map(|&t| Complex::from_polar(T::one(), t)).collect()
}

fn torus_sup_recursive<T: Scalar>(
    modulus: &dyn Fn(&[Complex<T>]) -> T,
    n: usize,
    deps: &[usize],
    resolution: usize,
) -> (T, Vec<T>) {
    let (mut best, mut arg) = grid_then_ascend(modulus, n, deps, resolution);
    if resolution.is_multiple_of(2) && resolution / 2 >= MIN_RESOLUTION {
        let (v, a) = torus_sup_recursive(modulus, n, deps, resolution / 2);
        if v > best {
            best = v;
            arg = a;
        }
    }
    (best, arg)
}

fn grid_then_ascend<T: Scalar>(
    modulus: &dyn Fn(&[Complex<T>]) -> T,
    n: usize,
    deps: &[usize],
    resolution: usize,
) -> (T, Vec<T>) {
    let h = T::TAU() / T::lit(resolution as f64);
    let mut idx = vec![0usize; deps.len()];
    let mut angles = vec![T::zero(); n];
    let mut best = T::neg_infinity();
    let mut best_angles = angles.clone();
    'grid: loop {
        for (d, &k) in deps.iter().enumerate() {
            angles[k] = h * T::lit(idx[d] as f64);
        }
        let v = modulus(&torus_point(&angles));
        if v > best {
            best = v;
            best_angles.clone_from(&angles);
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < resolution {
                continue 'grid;
            }
            *slot = 0;
        }
        break;
    }
    compass_ascent(modulus, deps, best, best_angles, h)
}

fn compass_ascent<T: Scalar>(
    modulus: &dyn Fn(&[Complex<T>]) -> T,
    deps: &[usize],
    mut best: T,
    mut angles: Vec<T>,
    step0: T,
) -> (T, Vec<T>) {
    let mut step = step0;
    let min_step = T::tol(1e-12);
    let mut evals = 0usize;
    while step > min_step && evals < 20_000 {
        let mut improved = false;
        'dirs: for &k in deps {
            for sign in [T::one(), -T::one()] {
                let mut trial = angles.clone();
                trial[k] = trial[k] + sign * step;
                let v = modulus(&torus_point(&trial));
                evals += 1;
                if v > best {
                    best = v;
                    angles = trial;
                    improved = true;
                    break 'dirs;
                }
            }
        }
        if !improved {
            step = step * T::lit(0.5);
        }
    }
    (best, angles)
}
