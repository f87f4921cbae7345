//! Invariant distances on the unit disc and the unit polydisc.
//!
//! The pseudo-hyperbolic distance `β(z, w) = |z − w| / |1 − z̄w|` is the
//! basic quantity. Everything else is a monotone profile of it:
//!
//! * Poincaré distance `ρ = tanh⁻¹ β`,
//! * the sup-difference distance `d(z, w) = sup |f(z) − f(w)|` over analytic
//!   `f` into the disc, which on the disc equals `g(β)` with
//!   `g(x) = (2 − 2√(1 − x²)) / x`,
//! * on the polydisc the Carathéodory quantity `c* = max_j β(z_j, w_j)` and
//!   `d = g(c*)`.
//!
//! All checked entry points reject points with modulus `≥ 1`; nothing is
//! clamped onto the boundary.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct DiscPoint<T: Scalar>(Complex<T>);

impl<T: Scalar> DiscPoint<T> {
    pub fn new(value: Complex<T>) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite disc point {value}")));
        }
        if value.norm() < T::one() {
            Ok(Self(value))
        } else {
            Err(Error::Domain(format!("point {value} is not in the open unit disc (|z| = {})", value.norm())))
        }
    }

    pub fn from_parts(re: T, im: T) -> Result<Self> {
        Self::new(Complex::new(re, im))
    }

    pub fn origin() -> Self {
        Self(Complex::new(T::zero(), T::zero()))
    }

    #[inline]
    pub fn value(&self) -> Complex<T> {
        self.0
    }

    #[inline]
    pub fn modulus(&self) -> T {
        self.0.norm()
    }
}

impl<T: Scalar> TryFrom<[f64; 2]> for DiscPoint<T> {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Self::from_parts(T::lit(v[0]), T::lit(v[1]))
    }
}

impl<T: Scalar> From<DiscPoint<T>> for [f64; 2] {
    fn from(p: DiscPoint<T>) -> Self {
        [p.0.re.to_f64_lossy(), p.0.im.to_f64_lossy()]
    }
}

/// A point of the open unit polydisc `Uⁿ`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<DiscPoint<T>>", into = "Vec<DiscPoint<T>>")]
pub struct PolyPoint<T: Scalar> {
    coords: Vec<DiscPoint<T>>,
}

impl<T: Scalar> PolyPoint<T> {
    pub fn new(coords: Vec<DiscPoint<T>>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("polydisc dimension must be at least 1".into()));
        }
        Ok(Self { coords })
    }

    pub fn from_complex(values: &[Complex<T>]) -> Result<Self> {
        let coords = values.iter().map(|&v| DiscPoint::new(v)).collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn origin(n: usize) -> Result<Self> {
        Self::new(vec![DiscPoint::origin(); n])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[DiscPoint<T>] {
        &self.coords
    }

    pub fn coord(&self, j: usize) -> DiscPoint<T> {
        self.coords[j]
    }

    pub fn to_complex(&self) -> Vec<Complex<T>> {
        self.coords.iter().map(DiscPoint::value).collect()
    }

    /// Largest coordinate modulus.
    pub fn sup_modulus(&self) -> T {
        self.coords.iter().map(DiscPoint::modulus).fold(T::zero(), T::max)
    }
}

impl<T: Scalar> TryFrom<Vec<DiscPoint<T>>> for PolyPoint<T> {
    type Error = Error;

    fn try_from(coords: Vec<DiscPoint<T>>) -> Result<Self> {
        Self::new(coords)
    }
}

impl<T: Scalar> From<PolyPoint<T>> for Vec<DiscPoint<T>> {
    fn from(p: PolyPoint<T>) -> Self {
        p.coords
    }
}

/// Unchecked pseudo-hyperbolic distance; callers guarantee `|z|, |w| < 1`.
#[inline]
pub(crate) fn beta_raw<T: Scalar>(z: Complex<T>, w: Complex<T>) -> T {
    let num = (z - w).norm();
    if num == T::zero() {
        return T::zero();
    }
    let den = (Complex::new(T::one(), T::zero()) - z.conj() * w).norm();
    (num / den).min(T::one())
}

/// `β(z, w) = |(z − w) / (1 − z̄w)|`.
pub fn pseudo_hyperbolic<T: Scalar>(z: DiscPoint<T>, w: DiscPoint<T>) -> T {
    beta_raw(z.value(), w.value())
}

/// Poincaré distance `tanh⁻¹ β(z, w)`.
pub fn poincare<T: Scalar>(z: DiscPoint<T>, w: DiscPoint<T>) -> T {
    pseudo_hyperbolic(z, w).atanh()
}

#[inline]
pub(crate) fn g_raw<T: Scalar>(x: T) -> T {
    // (2 − 2√(1 − x²)) / x rationalised to 2x / (1 + √(1 − x²)):
    // no cancellation near 0, and g(0) = 0 falls out.
    let two = T::lit(2.0);
    two * x / (T::one() + (T::one() - x * x).max(T::zero()).sqrt())
}

fn check_unit_interval<T: Scalar>(x: T, what: &str) -> Result<()> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} argument {x} outside [0, 1]")))
    }
}

/// Profile `g(x) = (2 − 2√(1 − x²)) / x` on `[0, 1]`, extended by `g(0) = 0`.
///
/// Strictly increasing, `g(1) = 2`, and `x ≤ g(x) ≤ 2x`.
pub fn g_profile<T: Scalar>(x: T) -> Result<T> {
    check_unit_interval(x, "g_profile")?;
    Ok(g_raw(x))
}

/// Upper-bound profile `(4 − 4√(1 − x²)) / x = 2·g(x)`, zero at the origin.
pub fn upper_bound_profile<T: Scalar>(x: T) -> Result<T> {
    check_unit_interval(x, "upper_bound_profile")?;
    Ok(T::lit(2.0) * g_raw(x))
}

/// `sup |f(z) − f(w)|` over analytic `f: D → D`, i.e. `g(β(z, w))`.
pub fn d_disc<T: Scalar>(z: DiscPoint<T>, w: DiscPoint<T>) -> T {
    g_raw(pseudo_hyperbolic(z, w))
}

pub(crate) fn c_star_raw<T: Scalar>(z: &[Complex<T>], w: &[Complex<T>]) -> T {
    z.iter().zip(w).map(|(&a, &b)| beta_raw(a, b)).fold(T::zero(), T::max)
}

fn same_dimension<T: Scalar>(z: &PolyPoint<T>, w: &PolyPoint<T>) -> Result<()> {
    if z.n() == w.n() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: z.n(), actual: w.n() })
    }
}

/// `c*(z, w) = max_j β(z_j, w_j)` on the polydisc.
pub fn caratheodory_star_polydisc<T: Scalar>(z: &PolyPoint<T>, w: &PolyPoint<T>) -> Result<T> {
    same_dimension(z, w)?;
    Ok(z.coords().iter().zip(w.coords()).map(|(&a, &b)| pseudo_hyperbolic(a, b)).fold(T::zero(), T::max))
}

/// `d(z, w) = g(c*(z, w))` on the polydisc.
pub fn d_polydisc<T: Scalar>(z: &PolyPoint<T>, w: &PolyPoint<T>) -> Result<T> {
    Ok(g_raw(caratheodory_star_polydisc(z, w)?))
}
