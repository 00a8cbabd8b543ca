use normrig::geometry::{is_equivalent, support_functional, z_reflection};
use normrig::*;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(3..=8);
    gnp(n, rng.random_range(0.3..0.9), &mut rng).unwrap()
}

#[test]
fn euclidean_rank_matches_laman_rank_on_independent_graphs() {
    let plane = NormedPlane::euclidean();
    let mut checked = 0;
    for seed in 0..200 {
        let g = graph(seed);
        if g.m() == 0 || rank2k(&g.edges(), 3).unwrap() != g.m() {
            continue;
        }
        let p = random_regular_placement(&g, seed).unwrap();
        assert_eq!(framework_rank(&g, &p, &plane, RankMode::Exact).unwrap(), g.m());
        assert_eq!(framework_rank(&g, &p, &plane, RankMode::Exact).unwrap(), rank2k(&g.edges(), 3).unwrap());
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn row_scaling_does_not_change_rank() {
    for p in [1.5, 3.0, 4.0, 6.0] {
        let plane = NormedPlane::lp(p).unwrap();
        for seed in 0..60 {
            let g = graph(seed);
            if g.m() == 0 {
                continue;
            }
            let pl = random_regular_placement(&g, seed).unwrap().to_float();
            let mode = RankMode::Float { tol: RankMode::DEFAULT_TOL };
            let plain = rank_of(&rigidity_operator(&g, &pl, &plane, false).unwrap(), mode).unwrap();
            let scaled = rank_of(&rigidity_operator(&g, &pl, &plane, true).unwrap(), mode).unwrap();
            assert_eq!(plain, scaled, "p={p} seed={seed}");
        }
    }
}

#[test]
fn translations_are_in_the_kernel() {
    for (p, scaled) in [(2.0, false), (4.0, true), (6.0, true)] {
        let plane = NormedPlane::lp(p).unwrap();
        for seed in 0..40 {
            let g = graph(seed);
            if g.m() == 0 {
                continue;
            }
            let pl = random_regular_placement(&g, seed).unwrap();
            let op = rigidity_operator(&g, &pl, &plane, scaled).unwrap();
            for axis in 0..2 {
                let v: Vec<BigRational> = (0..2 * g.n())
                    .map(|i| if i % 2 == axis { BigRational::from_integer(1.into()) } else { BigRational::zero() })
                    .collect();
                assert!(op.apply_exact(&v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}

#[test]
fn support_functional_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for p in [1.25, 1.5, 2.0, 3.0, 4.0, 7.0] {
        let plane = NormedPlane::lp(p).unwrap();
        for _ in 0..1000 {
            let x = [rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)];
            let nx = plane.norm(x);
            let phi = support_functional(x, &plane);
            let pairing = phi[0] * x[0] + phi[1] * x[1];
            assert!((pairing - nx * nx).abs() <= 1e-12 * nx * nx, "p={p} x={x:?}");
            assert!((plane.dual_norm(phi) - nx).abs() <= 1e-12 * nx, "p={p} x={x:?}");
        }
    }
}

#[test]
fn counterexample_is_exactly_equivalent() {
    let plane = NormedPlane::lp(4.0).unwrap();
    for g in [named::bowtie(), named::two_k4_at_vertex()] {
        for seed in 0..10 {
            let p = random_regular_placement(&g, seed).unwrap();
            let flip = cut_vertex_counterexample(&g, &p).unwrap();
            assert!(flip.placement.is_exact());
            assert!(is_equivalent(&g, &p, &flip.placement, &plane, 0.0));
        }
    }
    assert!(cut_vertex_counterexample(&named::k5_minus(), &random_regular_placement(&named::k5_minus(), 0).unwrap()).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn z_reflection_is_an_involution(
        p in prop::sample::select(vec![1.5, 2.0, 3.0, 4.0, 5.5]),
        z in prop::array::uniform2(-5.0f64..5.0),
        x in prop::array::uniform2(-5.0f64..5.0),
    ) {
        let plane = NormedPlane::lp(p).unwrap();
        prop_assume!(plane.norm(z) > 1e-3 && plane.norm(x) > 1e-3);
        let y = z_reflection(z, x, &plane, 1e-13).unwrap();
        prop_assert!((plane.norm(y) - plane.norm(x)).abs() <= 1e-9 * (1.0 + plane.norm(x)));
        let d = |a: [f64; 2], b: [f64; 2]| plane.norm([a[0] - b[0], a[1] - b[1]]);
        prop_assert!((d(y, z) - d(x, z)).abs() <= 1e-9 * (1.0 + d(x, z)));
        let back = z_reflection(z, y, &plane, 1e-13).unwrap();
        prop_assert!(plane.norm([back[0] - x[0], back[1] - x[1]]) <= 1e-9, "x={:?} back={:?}", x, back);
    }
}
