use essnorm::metrics::{
    caratheodory_star_polydisc, d_disc, d_polydisc, g_profile, poincare, pseudo_hyperbolic, upper_bound_profile,
    DiscPoint, PolyPoint,
};
use essnorm::oracle::TestFunction;
use essnorm::random;
use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn disc() -> impl Strategy<Value = DiscPoint<f64>> {
    (0.0..0.999_999f64, 0.0..std::f64::consts::TAU)
        .prop_map(|(r, t)| DiscPoint::new(Complex::from_polar(r, t)).unwrap())
}

fn poly(n: usize) -> impl Strategy<Value = PolyPoint<f64>> {
    prop::collection::vec(disc(), n).prop_map(|c| PolyPoint::new(c).unwrap())
}

fn poly_pair() -> impl Strategy<Value = (PolyPoint<f64>, PolyPoint<f64>)> {
    (1usize..=4).prop_flat_map(|n| (poly(n), poly(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn disc_distances_are_symmetric(z in disc(), w in disc()) {
        prop_assert!((pseudo_hyperbolic(z, w) - pseudo_hyperbolic(w, z)).abs() <= 1e-12);
        prop_assert!((poincare(z, w) - poincare(w, z)).abs() <= 1e-12);
        prop_assert!((d_disc(z, w) - d_disc(w, z)).abs() <= 1e-12);
    }

    #[test]
    fn disc_distances_vanish_on_the_diagonal(z in disc()) {
        prop_assert!(pseudo_hyperbolic(z, z) <= 1e-12);
        prop_assert!(poincare(z, z) <= 1e-12);
        prop_assert!(d_disc(z, z) <= 1e-12);
    }

    #[test]
    fn distinct_points_are_separated(z in disc(), w in disc()) {
        prop_assume!((z.value() - w.value()).norm() > 1e-9);
        prop_assert!(pseudo_hyperbolic(z, w) > 0.0);
        prop_assert!(d_disc(z, w) > 0.0);
    }

    #[test]
    fn polydisc_distances_are_symmetric((z, w) in poly_pair()) {
        let a = caratheodory_star_polydisc(&z, &w).unwrap();
        let b = caratheodory_star_polydisc(&w, &z).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
        prop_assert!((d_polydisc(&z, &w).unwrap() - d_polydisc(&w, &z).unwrap()).abs() <= 1e-12);
        prop_assert!(caratheodory_star_polydisc(&z, &z).unwrap() <= 1e-12);
        prop_assert!(d_polydisc(&z, &z).unwrap() <= 1e-12);
    }

    #[test]
    fn polydisc_distance_is_profile_of_coordinate_max((z, w) in poly_pair()) {
        let c = z.coords().iter().zip(w.coords()).map(|(&a, &b)| pseudo_hyperbolic(a, b)).fold(0.0, f64::max);
        prop_assert_eq!(caratheodory_star_polydisc(&z, &w).unwrap(), c);
        prop_assert_eq!(d_polydisc(&z, &w).unwrap(), g_profile(c).unwrap());
    }

    #[test]
    fn log_identity(z in disc(), w in disc()) {
        let d = d_disc(z, w);
        prop_assume!(2.0 - d > 1e-6);
        let lhs = ((2.0 + d) / (2.0 - d)).ln();
        prop_assert!((lhs - poincare(z, w)).abs() <= 1e-10, "{} vs {}", lhs, poincare(z, w));
    }

    #[test]
    fn profile_sandwich(x in 0.0..=1.0f64) {
        let g = g_profile(x).unwrap();
        prop_assert!(x <= g && g <= 2.0 * x);
        prop_assert_eq!(upper_bound_profile(x).unwrap(), 2.0 * g);
    }

    #[test]
    fn profile_is_monotone(x in 0.0..1.0f64, dx in 0.0..1.0f64) {
        let y = (x + dx).min(1.0);
        prop_assert!(g_profile(x).unwrap() <= g_profile(y).unwrap());
    }
}

#[test]
fn dimension_mismatch_is_rejected() {
    let z = PolyPoint::<f64>::origin(2).unwrap();
    let w = PolyPoint::<f64>::origin(3).unwrap();
    assert!(caratheodory_star_polydisc(&z, &w).is_err());
    assert!(d_polydisc(&z, &w).is_err());
}

#[test]
fn schwarz_pick_for_blaschke_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..300 {
        let f = random::blaschke::<f64, _>(&mut rng, 3, 0);
        for _ in 0..30 {
            let z = random::disc_point::<f64, _>(&mut rng, 0.999);
            let w = random::disc_point::<f64, _>(&mut rng, 0.999);
            let fz = DiscPoint::new(f.eval_disc(z.value())).unwrap();
            let fw = DiscPoint::new(f.eval_disc(w.value())).unwrap();
            assert!(pseudo_hyperbolic(fz, fw) <= pseudo_hyperbolic(z, w) + 1e-12);
        }
    }
}

/// `d_D(z, w)` is the supremum of `|f(z) − f(w)|` over the unit ball; a large
/// sample of rotated Möbius maps gets within 2e-3 of it and never above.
#[test]
fn disc_distance_matches_sampled_supremum() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let maps: Vec<TestFunction<f64>> = (0..10_000)
        .map(|_| TestFunction::MobiusCoordinate {
            a: random::disc_point(&mut rng, 0.999),
            rotation: random::unimodular(&mut rng),
            index: 0,
        })
        .collect();
    for _ in 0..200 {
        let z = random::disc_point::<f64, _>(&mut rng, 0.9);
        let w = random::disc_point::<f64, _>(&mut rng, 0.9);
        let sampled = maps.iter().map(|f| (f.eval_disc(z.value()) - f.eval_disc(w.value())).norm()).fold(0.0, f64::max);
        let exact = d_disc(z, w);
        assert!(sampled <= exact + 1e-12, "sampled {sampled} above {exact}");
        assert!(exact - sampled <= 2e-3, "sampled {sampled} too far below {exact}");
    }
}
