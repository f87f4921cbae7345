//! Random generators for disc points, symbol maps, polynomials and Blaschke
//! products. Every generated map is a self-map of the polydisc by construction.

use num_complex::Complex;
use rand::Rng;

use crate::metrics::{DiscPoint, PolyPoint};
use crate::oracle::TestFunction;
use crate::scalar::Scalar;
use crate::symbols::{CoordinateFunction, Monomial, Polynomial, SymbolMap};

/// Area-uniform point of the disc of radius `max_radius < 1`.
pub fn disc_point<T: Scalar, R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> DiscPoint<T> {
    let r = max_radius * rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    DiscPoint::new(Complex::from_polar(T::lit(r), T::lit(t))).expect("radius below 1")
}

/// Point of the polydisc whose coordinate radii are drawn half area-uniformly and
/// half log-uniformly close to the boundary (`1 − |z_k| ≥ 1e-6`).
pub fn poly_point<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> PolyPoint<T> {
    let coords = (0..n)
        .map(|_| {
            let r = if rng.random_bool(0.5) {
                rng.random::<f64>().sqrt() * (1.0 - 1e-6)
            } else {
                1.0 - 10f64.powf(-6.0 * rng.random::<f64>()) * (1.0 - 1e-6)
            };
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            DiscPoint::new(Complex::from_polar(T::lit(r), T::lit(t))).expect("radius below 1")
        })
        .collect();
    PolyPoint::new(coords).expect("n >= 1")
}

pub fn unimodular<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    Complex::from_polar(T::one(), T::lit(rng.random_range(0.0..std::f64::consts::TAU)))
}

fn complex_gaussianish<R: Rng + ?Sized>(rng: &mut R) -> Complex<f64> {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random polynomial in `n` variables of total degree `≤ max_degree` with at
/// least one nonconstant term, scaled so that its coefficient moduli sum to `l1`.
pub fn polynomial<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: u32, l1: f64) -> Polynomial<T> {
    let max_degree = max_degree.max(1);
    let terms_wanted = rng.random_range(1..=6usize);
    let mut raw: Vec<(Vec<u32>, Complex<f64>)> = Vec::with_capacity(terms_wanted + 1);
    for t in 0..terms_wanted {
        let degree = if t == 0 { rng.random_range(1..=max_degree) } else { rng.random_range(0..=max_degree) };
        let mut exps = vec![0u32; n];
        for _ in 0..degree {
            exps[rng.random_range(0..n)] += 1;
        }
        raw.push((exps, complex_gaussianish(rng)));
    }
    let total: f64 = raw.iter().map(|(_, c)| c.norm()).sum();
    let scale = if total > 0.0 { l1 / total } else { 0.0 };
    let terms = raw
        .into_iter()
        .map(|(e, c)| Monomial::new(e, Complex::new(T::lit(c.re * scale), T::lit(c.im * scale))))
        .collect();
    Polynomial::new(n, terms).expect("well-formed random polynomial")
}

/// Random coordinate function from the mixed families, with sup norm `≤ 1`.
pub fn coordinate<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> CoordinateFunction<T> {
    match rng.random_range(0..4u8) {
        0 => CoordinateFunction::Constant(disc_point::<T, _>(rng, 0.95).value()),
        1 => CoordinateFunction::mobius(disc_point(rng, 0.9), unimodular(rng), rng.random_range(0..n))
            .expect("unimodular rotation"),
        2 => {
            let budget = rng.random_range(0.3..1.0);
            let mut weights: Vec<f64> = (0..=n).map(|_| rng.random::<f64>()).collect();
            let s: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w *= budget / s);
            let mut unit = || unimodular::<T, _>(rng);
            let c0 = unit() * T::lit(weights[0]);
            let c = (1..=n).map(|k| unit() * T::lit(weights[k])).collect();
            CoordinateFunction::Affine { c0, c }
        }
        _ => {
            let l1 = rng.random_range(0.3..1.0);
            CoordinateFunction::Polynomial(polynomial(rng, n, 3, l1))
        }
    }
}

/// Random unvalidated self-map of `Uⁿ` with coordinates from mixed families.
pub fn symbol_map<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> SymbolMap<T> {
    SymbolMap::new((0..n).map(|_| coordinate(rng, n)).collect()).expect("well-formed random map")
}

/// Blaschke product of degree `1..=max_degree` on coordinate `index`.
pub fn blaschke<T: Scalar, R: Rng + ?Sized>(rng: &mut R, max_degree: usize, index: usize) -> TestFunction<T> {
    let degree = rng.random_range(1..=max_degree.max(1));
    TestFunction::BlaschkeProduct { zeros: (0..degree).map(|_| disc_point(rng, 0.99)).collect(), index }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_maps_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            for _ in 0..20 {
                let m = symbol_map::<f64, _>(&mut rng, n);
                m.validated(32).expect("random map is a self-map");
            }
        }
    }

    #[test]
    fn random_polynomial_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = polynomial::<f64, _>(&mut rng, 3, 4, 1.0);
            assert!(p.degree() >= 1 && p.degree() <= 4);
            assert!((p.coefficient_l1() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn poly_points_interior() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            assert!(poly_point::<f64, _>(&mut rng, 3).sup_modulus() < 1.0);
        }
    }
}
