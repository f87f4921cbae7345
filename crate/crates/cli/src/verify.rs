//! Randomised property suites behind `verify`.

use essnorm::metrics::{d_disc, g_profile, poincare, pseudo_hyperbolic, DiscPoint};
use essnorm::oracle::{verify_lemma_cauchy, verify_lemma_radial, LemmaSampling};
use essnorm::random;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::report::{SuiteResult, VerifyReport};

/// Fixed δ at which the radial check is run and its decay recorded.
pub const RADIAL_DELTA: f64 = 0.25;
/// Required shrink factor of the radial gap between `r = 0.9` and `r = 0.99`.
pub const DECAY_FACTOR: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Number of random polynomials; metric suites use `100·size` samples.
    pub size: usize,
    pub metrics: bool,
    pub lemmas: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 1, size: 100, metrics: true, lemmas: true }
    }
}

struct Tally {
    name: &'static str,
    samples: usize,
    failures: usize,
    worst: f64,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, samples: 0, failures: 0, worst: f64::INFINITY, first_failure: None }
    }

    fn record(&mut self, margin: f64, describe: impl FnOnce() -> String) {
        self.samples += 1;
        self.worst = self.worst.min(margin);
        if !(margin >= 0.0) {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            samples: self.samples,
            failures: self.failures,
            worst_margin: if self.worst.is_finite() { self.worst } else { 0.0 },
            pass: self.failures == 0 && self.samples > 0,
            first_failure: self.first_failure,
        }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `d_D = g(β)` exactly and `log((2+d_D)/(2−d_D)) = ρ` within 1e-10.
pub fn metric_identities(seed: u64, samples: usize) -> Vec<SuiteResult> {
    let mut rng = rng(seed, 1);
    let mut profile = Tally::new("disc_distance_profile");
    let mut log = Tally::new("log_identity");
    for _ in 0..samples {
        let z: DiscPoint<f64> = random::disc_point(&mut rng, 0.999_999);
        let w: DiscPoint<f64> = random::disc_point(&mut rng, 0.999_999);
        let d = d_disc(z, w);
        let g = g_profile(pseudo_hyperbolic(z, w)).expect("β lies in [0, 1]");
        let show = || format!("z = {}, w = {}", z.value(), w.value());
        profile.record(if d == g { 0.0 } else { -(d - g).abs() }, show);
        let err = (((2.0 + d) / (2.0 - d)).ln() - poincare(z, w)).abs();
        log.record(1e-10 - err, show);
    }
    vec![profile.finish(), log.finish()]
}

/// `x ≤ g(x) ≤ 2x` on the grid `k/points`, `k = 1..=points`.
pub fn profile_inequality(points: usize) -> SuiteResult {
    let mut t = Tally::new("profile_inequality");
    for k in 1..=points {
        let x = k as f64 / points as f64;
        let g = g_profile(x).expect("x in (0, 1]");
        t.record((g - x).min(2.0 * x - g), || format!("x = {x}"));
    }
    t.finish()
}

/// `β(f(z), f(w)) ≤ β(z, w) + 1e-12` for Blaschke products of degree ≤ 3.
pub fn schwarz_pick(seed: u64, products: usize, pairs: usize) -> SuiteResult {
    let mut rng = rng(seed, 2);
    let mut t = Tally::new("schwarz_pick");
    for _ in 0..products {
        let f = random::blaschke::<f64, _>(&mut rng, 3, 0);
        for _ in 0..pairs {
            let z: DiscPoint<f64> = random::disc_point(&mut rng, 0.999_999);
            let w: DiscPoint<f64> = random::disc_point(&mut rng, 0.999_999);
            let (fz, fw) = (f.eval_disc(z.value()), f.eval_disc(w.value()));
            let (Ok(a), Ok(b)) = (DiscPoint::new(fz), DiscPoint::new(fw)) else {
                t.record(-1.0, || format!("{f:?} left the disc at z = {}, w = {}", z.value(), w.value()));
                continue;
            };
            let margin = pseudo_hyperbolic(z, w) + 1e-12 - pseudo_hyperbolic(a, b);
            t.record(margin, || format!("{f:?}, z = {}, w = {}", z.value(), w.value()));
        }
    }
    t.finish()
}

/// Cauchy estimate, radial bound and radial decay on `count` random polynomials
/// of degree ≤ 4 in `n ≤ 3` variables.
pub fn lemma_suites(seed: u64, count: usize) -> Result<Vec<SuiteResult>, CliError> {
    let mut rng = rng(seed, 3);
    let sampling = LemmaSampling { seed, ..LemmaSampling::default() };
    let mut cauchy = Tally::new("cauchy_estimate");
    let mut radial = Tally::new("radial_convergence");
    let mut decay = Tally::new("radial_decay");
    let internal = |e: essnorm::Error| CliError::Internal(e.to_string());
    for i in 0..count {
        let n = rng.random_range(1..=3);
        let f = random::polynomial::<f64, _>(&mut rng, n, 4, 1.0);
        let s = rng.random_range(0.2..0.7);
        let t = rng.random_range(s + 0.05..0.95);
        let show = |extra: String| format!("polynomial {} (n = {n}): {f:?}; {extra}", i + 1);
        let c = verify_lemma_cauchy(n, &f, s, t, &sampling).map_err(internal)?;
        cauchy.record(c.margin, || show(format!("s = {s}, t = {t}, lhs = {}, bound = {}", c.lhs, c.bound)));
        let r = verify_lemma_radial(n, &f, RADIAL_DELTA, 0.99, &sampling).map_err(internal)?;
        radial.record(r.margin, || show(format!("lhs = {}, bound = {}", r.lhs, r.bound)));
        for d in &r.decay {
            radial.record(d.bound - d.lhs, || show(format!("r = {}, lhs = {}, bound = {}", d.r, d.lhs, d.bound)));
        }
        let at = |rr: f64| r.decay.iter().find(|d| d.r == rr).map(|d| d.lhs).unwrap_or(f64::NAN);
        let (coarse, fine) = (at(0.9), at(0.99));
        decay.record(coarse - DECAY_FACTOR * fine, || show(format!("gap {coarse} at r = 0.9, {fine} at r = 0.99")));
    }
    Ok(vec![cauchy.finish(), radial.finish(), decay.finish()])
}

pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    if opts.size == 0 {
        return Err(CliError::EmptySuite(
            "--size 0 selects no samples; refusing to report success on an empty suite".into(),
        ));
    }
    if !(opts.metrics || opts.lemmas) {
        return Err(CliError::EmptySuite("no suite selected; refusing to report success on an empty suite".into()));
    }
    let mut suites = Vec::new();
    if opts.metrics {
        suites.extend(metric_identities(opts.seed, 100 * opts.size));
        suites.push(profile_inequality(100 * opts.size));
        suites.push(schwarz_pick(opts.seed, 10 * opts.size, 100));
    }
    if opts.lemmas {
        suites.extend(lemma_suites(opts.seed, opts.size)?);
    }
    Ok(VerifyReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: opts.seed,
        size: opts.size,
        pass: suites.iter().all(|s| s.pass),
        suites,
    })
}
