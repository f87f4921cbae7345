//! Multistart compass search over the open polydisc.
//!
//! Each coordinate is parametrised as `z_k = (1 − e^{−u_k}) e^{iθ_k}` with
//! `u_k ∈ [0, u_max]`, so suprema approached at the boundary are reachable by
//! driving `u_k` up rather than by resolving `1 − |z_k|` linearly.
//! Infeasible trial points are projected by pushing the radii of the
//! constraint-active variables outward.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Search effort and reproducibility parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Starts per multistart round.
    pub starts: usize,
    /// At least two rounds are needed to assess convergence.
    pub max_rounds: usize,
    /// A round improving the incumbent by more than this triggers another round.
    pub round_tolerance: f64,
    pub max_evals_per_start: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { starts: 32, max_rounds: 4, round_tolerance: 1e-4, max_evals_per_start: 4000, seed: 0x5e_ed0f_e55e }
    }
}

impl SearchBudget {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_starts(mut self, starts: usize) -> Self {
        self.starts = starts;
        self
    }
}

/// Objective plus feasibility over raw polydisc points.
pub(crate) trait Landscape<T: Scalar>: Sync {
    fn n(&self) -> usize;
    /// Objective value, or `None` when `z` is infeasible.
    fn value(&self, z: &[Complex<T>]) -> Option<T>;
    /// Variables whose radii should grow to restore feasibility at `z`.
    fn push_vars(&self, z: &[Complex<T>]) -> Vec<usize>;
}

#[derive(Debug, Clone)]
pub(crate) struct SearchOutcome<T: Scalar> {
    pub best: Option<(T, Vec<Complex<T>>)>,
    pub converged: bool,
    #[allow(dead_code)]
    pub rounds: usize,
}

/// splitmix64 finaliser, used to derive independent per-start seeds.
pub(crate) fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub(crate) fn derive_seed(seed: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix(seed), |acc, &p| mix(acc ^ mix(p)))
}

struct Param<T: Scalar> {
    n: usize,
    u_max: T,
}

impl<T: Scalar> Param<T> {
    fn new(n: usize) -> Self {
        let s_min = T::lit(1e-12).max(T::epsilon() * T::lit(8.0));
        Self { n, u_max: -s_min.ln() }
    }

    fn to_point(&self, x: &[T]) -> Vec<Complex<T>> {
        (0..self.n).map(|k| Complex::from_polar(T::one() - (-x[k]).exp(), x[self.n + k])).collect()
    }

    fn params_of(&self, z: &[Complex<T>]) -> Vec<T> {
        let mut x = vec![T::zero(); 2 * self.n];
        for (k, zk) in z.iter().enumerate() {
            let r = zk.norm().min(T::one() - (-self.u_max).exp());
            x[k] = (-(T::one() - r).ln()).max(T::zero()).min(self.u_max);
            x[self.n + k] = zk.arg();
        }
        x
    }

    fn clamp(&self, x: &mut [T]) {
        for u in x[..self.n].iter_mut() {
            *u = u.max(T::zero()).min(self.u_max);
        }
    }
}

struct Evaluator<'a, T: Scalar, L: Landscape<T>> {
    land: &'a L,
    param: Param<T>,
    evals: usize,
}

impl<T: Scalar, L: Landscape<T>> Evaluator<'_, T, L> {
    fn eval(&mut self, x: &[T]) -> Option<T> {
        self.evals += 1;
        self.land.value(&self.param.to_point(x))
    }

    /// Feasible value at `x`, projecting outward if necessary; updates `x` in place.
    fn feasible(&mut self, x: &mut Vec<T>) -> Option<T> {
        if let Some(v) = self.eval(x) {
            return Some(v);
        }
        let n = self.param.n;
        let active = self.land.push_vars(&self.param.to_point(x));
        let all: Vec<usize> = (0..n).collect();
        for vars in [active.as_slice(), all.as_slice()] {
            if vars.is_empty() {
                continue;
            }
            let mut t = T::lit(0.25);
            while t <= T::lit(64.0) {
                let mut trial = x.clone();
                for &k in vars {
                    trial[k] = trial[k] + t;
                }
                self.param.clamp(&mut trial);
                if let Some(v) = self.eval(&trial) {
                    *x = trial;
                    return Some(v);
                }
                t = t * T::lit(2.0);
            }
        }
        None
    }
}

fn local_search<T: Scalar, L: Landscape<T>>(land: &L, start: &[Complex<T>], max_evals: usize) -> Option<(T, Vec<T>)> {
    let param = Param::new(land.n());
    let n = param.n;
    let mut x = param.params_of(start);
    let mut ev = Evaluator { land, param, evals: 0 };
    let mut best = ev.feasible(&mut x)?;

    let u_min_step = T::lit(1e-10);
    let t_min_step = T::tol(1e-12);
    let mut steps: Vec<T> = (0..2 * n).map(|d| if d < n { T::one() } else { T::FRAC_PI_4() }).collect();
    let caps: Vec<T> = (0..2 * n).map(|d| if d < n { T::lit(8.0) } else { T::PI() }).collect();

    while ev.evals < max_evals {
        let mut active = false;
        for d in 0..2 * n {
            let floor = if d < n { u_min_step } else { t_min_step };
            if steps[d] < floor {
                continue;
            }
            active = true;
            let mut moved = false;
            for sign in [T::one(), -T::one()] {
                let mut trial = x.clone();
                trial[d] = trial[d] + sign * steps[d];
                ev.param.clamp(&mut trial);
                if trial[d] == x[d] {
                    continue;
                }
                if let Some(v) = ev.feasible(&mut trial) {
                    if v > best {
                        best = v;
                        x = trial;
                        moved = true;
                        break;
                    }
                }
            }
            steps[d] = if moved { (steps[d] * T::lit(2.0)).min(caps[d]) } else { steps[d] * T::lit(0.5) };
        }
        if !active {
            break;
        }
    }
    Some((best, x))
}

/// Where to place multistart seeds.
#[derive(Debug, Clone)]
pub(crate) struct StartPlan<T: Scalar> {
    /// Radii shared by all coordinates of a start, cycled over the starts.
    pub radii: Vec<T>,
    /// Extra points tried in the first round (projected if infeasible).
    pub warm: Vec<Vec<Complex<T>>>,
    /// Distinguishes independent searches sharing a budget seed.
    pub tag: u64,
}

fn start_point<T: Scalar>(n: usize, plan: &StartPlan<T>, seed: u64, round: usize, i: usize) -> Vec<Complex<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[plan.tag, round as u64, i as u64]));
    let slots = plan.radii.len() + 1;
    let slot = i % slots;
    (0..n)
        .map(|_| {
            let theta = T::lit(rng.random_range(0.0..std::f64::consts::TAU));
            let r = if slot < plan.radii.len() {
                plan.radii[slot]
            } else {
                // random radius, log-uniform in the distance to the boundary
                let e: f64 = rng.random_range(0.0..8.0);
                T::lit(1.0 - 10f64.powf(-e) * 0.999)
            };
            Complex::from_polar(r, theta)
        })
        .collect()
}

fn better<T: Scalar>(a: &Option<(T, Vec<T>, usize)>, b: &Option<(T, Vec<T>, usize)>) -> bool {
    match (a, b) {
        (Some(_), None) => true,
        (Some((va, _, ia)), Some((vb, _, ib))) => va > vb || (va == vb && ia < ib),
        _ => false,
    }
}

/// Multistart maximisation. Rounds continue until one improves the incumbent
/// by at most `round_tolerance`.
pub(crate) fn maximize<T: Scalar, L: Landscape<T>>(
    land: &L,
    plan: &StartPlan<T>,
    budget: &SearchBudget,
) -> SearchOutcome<T> {
    let n = land.n();
    let param = Param::<T>::new(n);
    let rounds_allowed = budget.max_rounds.max(2);
    let mut incumbent: Option<(T, Vec<T>)> = None;
    let mut converged = false;
    let mut rounds = 0;

    for round in 0..rounds_allowed {
        rounds = round + 1;
        let mut starts: Vec<Vec<Complex<T>>> =
            (0..budget.starts.max(1)).map(|i| start_point(n, plan, budget.seed, round, i)).collect();
        if round == 0 {
            starts.splice(0..0, plan.warm.iter().cloned());
        } else if let Some((_, x)) = &incumbent {
            starts.insert(0, param.to_point(x));
        }
        let round_best = starts
            .par_iter()
            .enumerate()
            .map(|(i, s)| local_search(land, s, budget.max_evals_per_start).map(|(v, x)| (v, x, i)))
            .reduce(|| None, |a, b| if better(&b, &a) { b } else { a });

        let before = incumbent.as_ref().map(|(v, _)| *v);
        if let Some((v, x, _)) = round_best {
            if before.is_none_or(|b| v > b) {
                incumbent = Some((v, x));
            }
        }
        if round > 0 {
            let after = incumbent.as_ref().map(|(v, _)| *v);
            let gain = match (before, after) {
                (Some(b), Some(a)) => (a - b).to_f64_lossy(),
                (None, None) => 0.0,
                _ => f64::INFINITY,
            };
            if gain <= budget.round_tolerance {
                converged = true;
                break;
            }
        }
    }

    SearchOutcome { best: incumbent.map(|(v, x)| (v, param.to_point(&x))), converged, rounds }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Maximise −|z − c|² over the unit disc; optimum at c.
    struct Bowl(Complex<f64>);

    impl Landscape<f64> for Bowl {
        fn n(&self) -> usize {
            1
        }
        fn value(&self, z: &[Complex<f64>]) -> Option<f64> {
            Some(-(z[0] - self.0).norm_sqr())
        }
        fn push_vars(&self, _: &[Complex<f64>]) -> Vec<usize> {
            vec![]
        }
    }

    /// Maximise Re z over the annulus |z| > 0.9: supremum 1, not attained.
    struct Annulus;

    impl Landscape<f64> for Annulus {
        fn n(&self) -> usize {
            1
        }
        fn value(&self, z: &[Complex<f64>]) -> Option<f64> {
            (z[0].norm() > 0.9).then_some(z[0].re)
        }
        fn push_vars(&self, _: &[Complex<f64>]) -> Vec<usize> {
            vec![0]
        }
    }

    fn plan() -> StartPlan<f64> {
        StartPlan { radii: vec![0.5], warm: vec![], tag: 1 }
    }

    #[test]
    fn finds_interior_maximum() {
        let c = Complex::new(0.3, -0.4);
        let out = maximize(&Bowl(c), &plan(), &SearchBudget::default());
        let (v, z) = out.best.unwrap();
        assert!(v > -1e-12, "value {v}");
        assert!((z[0] - c).norm() < 1e-6);
        assert!(out.converged);
    }

    #[test]
    fn approaches_boundary_supremum_feasibly() {
        let out = maximize(&Annulus, &plan(), &SearchBudget::default());
        let (v, z) = out.best.unwrap();
        assert!(v > 1.0 - 1e-9);
        assert!(z[0].norm() > 0.9 && z[0].norm() < 1.0);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = maximize(&Annulus, &plan(), &SearchBudget::default());
        let b = maximize(&Annulus, &plan(), &SearchBudget::default());
        assert_eq!(a.best, b.best);
        assert_eq!(a.rounds, b.rounds);
    }

    #[test]
    fn parametrisation_stays_interior() {
        let p = Param::<f64>::new(2);
        let x = vec![p.u_max, p.u_max + 5.0, 0.3, -2.0];
        let mut xc = x.clone();
        p.clamp(&mut xc);
        for z in p.to_point(&xc) {
            assert!(z.norm() < 1.0);
        }
        let p32 = Param::<f32>::new(1);
        assert!(p32.to_point(&[p32.u_max, 0.0])[0].norm() < 1.0);
    }
}
