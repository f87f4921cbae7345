//! Independent checks on the boundary analysis.
//!
//! * the operator norm of `C_φ − C_ψ` on bounded analytic functions, both from
//!   the closed form `sup_z d(φ(z), ψ(z))` and as a restricted supremum over
//!   sampled unit-norm test functions,
//! * the Möbius witness factor of the lower-bound construction,
//! * numerical verifiers for the Cauchy derivative estimate and for radial
//!   convergence `f(rz) → f(z)` away from the boundary.

mod lemmas;
mod test_functions;

pub use lemmas::{
    verify_lemma_cauchy, verify_lemma_radial, DecayPoint, LemmaId, LemmaReport, LemmaSampling, DECAY_RADII,
};
pub use test_functions::{FunctionFamily, TestFunction};

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{c_star_raw, g_raw, DiscPoint, PolyPoint};
use crate::random;
use crate::scalar::Scalar;
use crate::search::{derive_seed, maximize, Landscape, SearchBudget, StartPlan};
use crate::symbols::SymbolMap;

/// Images `(φ(z), ψ(z))`.
type Images<T> = (Vec<Complex<T>>, Vec<Complex<T>>);

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorNormEstimate<T: Scalar> {
    pub value: T,
    pub argmax: Option<PolyPoint<T>>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledNorm<T: Scalar> {
    pub value: T,
    pub best_point: Option<PolyPoint<T>>,
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

fn images<T: Scalar>(phi: &SymbolMap<T>, psi: &SymbolMap<T>, z: &[Complex<T>]) -> Option<Images<T>> {
    let mut a = vec![Complex::new(T::zero(), T::zero()); phi.n()];
    let mut b = a.clone();
    phi.eval_raw(z, &mut a);
    psi.eval_raw(z, &mut b);
    a.iter().chain(&b).all(|w| w.norm() < T::one()).then_some((a, b))
}

struct CaratheodoryLandscape<'a, T: Scalar> {
    phi: &'a SymbolMap<T>,
    psi: &'a SymbolMap<T>,
}

impl<T: Scalar> Landscape<T> for CaratheodoryLandscape<'_, T> {
    fn n(&self) -> usize {
        self.phi.n()
    }

    fn value(&self, z: &[Complex<T>]) -> Option<T> {
        let (a, b) = images(self.phi, self.psi, z)?;
        Some(c_star_raw(&a, &b))
    }

    fn push_vars(&self, _: &[Complex<T>]) -> Vec<usize> {
        Vec::new()
    }
}

/// `‖C_φ − C_ψ‖ = sup_z d(φ(z), ψ(z))`, estimated by maximising
/// `max_j β(φ_j(z), ψ_j(z))` over the polydisc and applying the profile `g`.
pub fn operator_norm_closed_form<T: Scalar>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    budget: &SearchBudget,
    warm: &[PolyPoint<T>],
) -> Result<OperatorNormEstimate<T>> {
    check_pair(phi, psi)?;
    let land = CaratheodoryLandscape { phi, psi };
    let plan = StartPlan {
        radii: vec![T::zero(), T::lit(0.5), T::lit(0.999)],
        warm: warm.iter().map(PolyPoint::to_complex).collect(),
        tag: 0x6f70_6e6f_726d,
    };
    let out = maximize(&land, &plan, budget);
    match out.best {
        Some((c_star, z)) => Ok(OperatorNormEstimate {
            value: g_raw(c_star),
            argmax: Some(PolyPoint::from_complex(&z)?),
            converged: out.converged,
        }),
        None => Err(Error::Structure("operator-norm search found no admissible point".into())),
    }
}

/// Restricted supremum of `|f(φ(z)) − f(ψ(z))|` over the family members and
/// `samples` random interior points.
pub fn operator_norm_sampled<T: Scalar>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    family: &FunctionFamily<T>,
    samples: usize,
    seed: u64,
) -> Result<SampledNorm<T>> {
    check_pair(phi, psi)?;
    if samples == 0 {
        return Err(Error::Domain("at least one z-sample is required".into()));
    }
    let members = family.members(phi.n())?;
    let n = phi.n();
    let best = (0..samples)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[0x7a, i as u64]));
            let z = random::poly_point::<T, _>(&mut rng, n);
            let (a, b) = images(phi, psi, &z.to_complex())?;
            let v = members.iter().map(|f| (f.eval(&a) - f.eval(&b)).norm()).fold(T::zero(), T::max);
            Some((v, i, z))
        })
        .reduce_with(|x, y| if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x });
    Ok(match best {
        Some((value, _, z)) => SampledNorm { value, best_point: Some(z) },
        None => SampledNorm { value: T::zero(), best_point: None },
    })
}

/// `|h(φ(p)) − h(ψ(p))|` for the witness factor `h` centred at `ψ_j(p)` on
/// coordinate `j` (0-based), i.e. `β(φ_j(p), ψ_j(p))`.
pub fn witness_gm_value<T: Scalar>(
    phi: &SymbolMap<T>,
    psi: &SymbolMap<T>,
    j: usize,
    anchor: &PolyPoint<T>,
) -> Result<T> {
    check_pair(phi, psi)?;
    if j >= phi.n() {
        return Err(Error::IndexOutOfRange { index: j + 1, n: phi.n() });
    }
    let a = phi.evaluate(anchor)?;
    let b = psi.evaluate(anchor)?;
    let h = TestFunction::WitnessFactor { center: b.coord(j), index: j };
    Ok((h.eval(&a.to_complex()) - h.eval(&b.to_complex())).norm())
}

/// Witness value maximised over coordinates: `(j, value)` with the smallest `j` among ties.
pub fn best_witness<T: Scalar>(phi: &SymbolMap<T>, psi: &SymbolMap<T>, anchor: &PolyPoint<T>) -> Result<(usize, T)> {
    let mut best = (0, T::neg_infinity());
    for j in 0..phi.n() {
        let v = witness_gm_value(phi, psi, j, anchor)?;
        if v > best.1 {
            best = (j, v);
        }
    }
    Ok(best)
}

/// Disc automorphism `w ↦ rotation·(w − a)/(1 − āw)`.
pub fn disc_automorphism<T: Scalar>(a: DiscPoint<T>, rotation: Complex<T>) -> TestFunction<T> {
    TestFunction::MobiusCoordinate { a, rotation, index: 0 }
}
