use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metrics::DiscPoint;
use crate::random;
use crate::scalar::Scalar;

/// Analytic `f: Uⁿ → D̄` depending on a single coordinate, with `‖f‖_∞ ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction<T: Scalar> {
    /// `rotation · (w − a)/(1 − āw)` applied to `z_index`; sup norm 1.
    MobiusCoordinate { a: DiscPoint<T>, rotation: Complex<T>, index: usize },
    /// `Π_k (w − a_k)/(1 − ā_k w)` applied to `z_index`; sup norm 1 (0 factors: constant 1).
    BlaschkeProduct { zeros: Vec<DiscPoint<T>>, index: usize },
    /// `(w − c)/(1 − c̄w)` applied to `z_index`: the Möbius factor of the
    /// lower-bound witness functions, vanishing at the centre.
    WitnessFactor { center: DiscPoint<T>, index: usize },
}

#[inline]
fn mobius<T: Scalar>(a: Complex<T>, w: Complex<T>) -> Complex<T> {
    (w - a) / (Complex::new(T::one(), T::zero()) - a.conj() * w)
}

impl<T: Scalar> TestFunction<T> {
    pub fn index(&self) -> usize {
        match self {
            Self::MobiusCoordinate { index, .. }
            | Self::BlaschkeProduct { index, .. }
            | Self::WitnessFactor { index, .. } => *index,
        }
    }

    /// The one-variable function of the selected coordinate.
    #[inline]
    pub fn eval_disc(&self, w: Complex<T>) -> Complex<T> {
        match self {
            Self::MobiusCoordinate { a, rotation, .. } => *rotation * mobius(a.value(), w),
            Self::BlaschkeProduct { zeros, .. } => {
                zeros.iter().fold(Complex::new(T::one(), T::zero()), |acc, a| acc * mobius(a.value(), w))
            }
            Self::WitnessFactor { center, .. } => mobius(center.value(), w),
        }
    }

    #[inline]
    pub fn eval(&self, z: &[Complex<T>]) -> Complex<T> {
        self.eval_disc(z[self.index()])
    }
}

/// A finite collection of unit-ball test functions.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionFamily<T: Scalar> {
    Fixed(Vec<TestFunction<T>>),
    /// `count` Möbius coordinates with area-uniform centres of modulus `≤ 0.999`.
    RandomMobius {
        count: usize,
        seed: u64,
    },
    /// `count` Blaschke products of degree `1..=max_degree`.
    RandomBlaschke {
        count: usize,
        max_degree: usize,
        seed: u64,
    },
}

impl<T: Scalar> FunctionFamily<T> {
    /// Materialises the family for functions on `Uⁿ`.
    pub fn members(&self, n: usize) -> Result<Vec<TestFunction<T>>> {
        let out = match self {
            Self::Fixed(list) => {
                if let Some(f) = list.iter().find(|f| f.index() >= n) {
                    return Err(Error::IndexOutOfRange { index: f.index() + 1, n });
                }
                list.clone()
            }
            Self::RandomMobius { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|_| TestFunction::MobiusCoordinate {
                        a: random::disc_point(&mut rng, 0.999),
                        rotation: random::unimodular(&mut rng),
                        index: rng.random_range(0..n),
                    })
                    .collect()
            }
            Self::RandomBlaschke { count, max_degree, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|_| {
                        let index = rng.random_range(0..n);
                        random::blaschke(&mut rng, (*max_degree).max(1), index)
                    })
                    .collect()
            }
        };
        if out.is_empty() {
            return Err(Error::Domain("test-function family is empty".into()));
        }
        Ok(out)
    }
}
