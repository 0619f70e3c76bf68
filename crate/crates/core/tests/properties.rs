//! Algebraic and soundness invariants over seeded random rule configurations.

use nucalab::analysis::search::{anchored_kernel_empty, evper_kernel_search, finsupp_kernel_search, window_rank};
use nucalab::analysis::{cross_validate, find_left_inverse, verify_verdict, SearchBounds, Status};
use nucalab::cell::{cube, interval, Cell, Universe};
use nucalab::sample::{self, RuleShape};
use nucalab::shadowing::{
    delta_for, generate_pseudo_orbit, metric, shadow_point, Distance, Dyadic, Generators, Perturbation,
};
use nucalab::{parse_rule_json, rule_to_json, EvPerConfig, FinSuppConfig, RuleConfig};
use proptest::prelude::*;
use rand::Rng;

fn universe() -> impl Strategy<Value = Universe> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..=2).prop_map(|(p, k)| Universe::new(1, k, p).unwrap())
}

fn rule_and_seed() -> impl Strategy<Value = (RuleConfig, u64)> {
    (universe(), any::<u64>(), 0.0f64..1.0).prop_map(|(u, seed, tails)| {
        let mut rng = sample::rng(seed);
        let s = sample::random_rule(&mut rng, &RuleShape::new(u).with_tails(tails));
        (s, seed.wrapping_add(1))
    })
}

fn gf2_rule() -> impl Strategy<Value = RuleConfig> {
    any::<u64>().prop_map(|seed| {
        let u = Universe::new(1, 1, 2).unwrap();
        let mut shape = RuleShape::new(u).with_tails(0.5);
        shape.memory_radius = 1;
        sample::random_rule(&mut sample::rng(seed), &shape)
    })
}

fn finsupp(s: &RuleConfig, seed: u64, radius: i64) -> FinSuppConfig {
    sample::random_finsupp(&mut sample::rng(seed), s.universe(), &interval(-radius, radius))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_map_is_linear((s, seed) in rule_and_seed(), a in 0u32..5) {
        let f = s.universe().field();
        let a = a % f.modulus();
        let x = finsupp(&s, seed, 4);
        let y = finsupp(&s, seed ^ 0x55, 4);
        let lhs = s.apply_finsupp(&x.scale(a, f).add(&y, f));
        let rhs = s.apply_finsupp(&x).scale(a, f).add(&s.apply_finsupp(&y), f);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn window_matrix_matches_evaluation((s, seed) in rule_and_seed(), n in 0i64..4) {
        let window = cube(1, n);
        let map = s.induced_map(&window).unwrap();
        let x = sample::random_finsupp(&mut sample::rng(seed), s.universe(), &map.domain_cells);
        let image = map.matrix.mul_vec(&map.gather(&x)).unwrap();
        let direct = s.apply_finsupp(&x);
        for (i, g) in window.iter().enumerate() {
            let k = s.universe().k();
            let want = direct.get(*g).cloned().unwrap_or_else(|| vec![0; k]);
            prop_assert_eq!(&image[i * k..(i + 1) * k], &want[..]);
        }
    }

    #[test]
    fn evper_and_finsupp_evaluation_agree((s, seed) in rule_and_seed()) {
        let k = s.universe().k();
        let x = finsupp(&s, seed, 3);
        let lhs = s.apply_evper(&EvPerConfig::from_finsupp(&x, k)).unwrap();
        let rhs = EvPerConfig::from_finsupp(&s.apply_finsupp(&x), k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_associative_and_evaluates((s, seed) in rule_and_seed()) {
        let mut rng = sample::rng(seed);
        let shape = RuleShape::new(*s.universe()).with_tails(0.3);
        let t = sample::random_rule(&mut rng, &shape);
        let u = sample::random_rule(&mut rng, &shape);
        let left = s.compose(&t).unwrap().compose(&u).unwrap();
        let right = s.compose(&t.compose(&u).unwrap()).unwrap();
        prop_assert!(left.same_map(&right));
        let x = finsupp(&s, seed, 3);
        prop_assert_eq!(s.compose(&t).unwrap().apply_finsupp(&x), s.apply_finsupp(&t.apply_finsupp(&x)));
    }

    #[test]
    fn translation_commutes_with_evaluation((s, seed) in rule_and_seed(), g in -5i64..=5) {
        let g = Cell::d1(g);
        let x = finsupp(&s, seed, 3);
        let lhs = s.translate(g).unwrap().apply_finsupp(&x.translate(g));
        prop_assert_eq!(lhs, s.apply_finsupp(&x).translate(g));
    }

    #[test]
    fn rule_files_round_trip((s, _) in rule_and_seed()) {
        let text = rule_to_json(&s);
        let back = parse_rule_json(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(rule_to_json(&back), text);
    }

    #[test]
    fn window_failures_persist((s, _) in rule_and_seed(), n in 0i64..4) {
        let (r, q) = window_rank(&s, n).unwrap();
        if r < q {
            let (r2, q2) = window_rank(&s, n + 1).unwrap();
            prop_assert!(r2 < q2);
        }
    }

    #[test]
    fn anchored_emptiness_persists(s in gf2_rule(), g in -2i64..=2, n in 0i64..4) {
        if anchored_kernel_empty(&s, Cell::d1(g), &[1], n).unwrap() {
            prop_assert!(anchored_kernel_empty(&s, Cell::d1(g), &[1], n + 1).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cross_validated_certificates_verify(s in gf2_rule()) {
        let bounds = SearchBounds { n_max: 5, period_bound: 4, mem_bound: 2, support_bound: 3, pattern_radius: 2 };
        let r = cross_validate(&s, &bounds).unwrap();
        let d = s.dual();
        for v in &r.rule {
            prop_assert!(verify_verdict(&s, v).is_ok(), "{} {:?}", v.property, v.certificate);
        }
        for v in &r.dual {
            prop_assert!(verify_verdict(&d, v).is_ok(), "dual {} {:?}", v.property, v.certificate);
        }
    }

    #[test]
    fn left_inverse_excludes_kernel_witnesses(s in gf2_rule()) {
        if find_left_inverse(&s, 2, 3).unwrap().is_some() {
            prop_assert!(finsupp_kernel_search(&s, 5).unwrap().is_none());
            prop_assert!(evper_kernel_search(&s, 5, 4).unwrap().is_none());
            let r = cross_validate(&s, &SearchBounds::with_n_max(5)).unwrap();
            for v in &r.rule {
                if matches!(v.property.name(), "injective" | "pre-injective" | "stable-injective") {
                    prop_assert_ne!(v.status, Status::Fails);
                }
            }
        }
    }

    #[test]
    fn metric_is_an_ultrametric(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let mut pick = || {
            let core: Vec<Vec<u32>> = (0..rng.gen_range(0..6)).map(|_| vec![rng.gen_range(0..2)]).collect();
            let l = vec![vec![rng.gen_range(0..2)]];
            let r = vec![vec![rng.gen_range(0..2)], vec![rng.gen_range(0..2)]];
            EvPerConfig::new(rng.gen_range(-4..=4), core, l, r).unwrap()
        };
        let (x, y, z) = (pick(), pick(), pick());
        prop_assert_eq!(metric(&x, &y), metric(&y, &x));
        prop_assert_eq!(metric(&x, &y) == Distance::Zero, x == y);
        prop_assert!(metric(&x, &z) <= metric(&x, &y).max(metric(&y, &z)));
    }

    #[test]
    fn generated_pseudo_orbits_are_shadowed(seed in any::<u64>(), which in 0usize..4) {
        let base = [
            nucalab::examples::identity_rule(),
            nucalab::examples::shift_rule(),
            nucalab::examples::xor_rule(),
            nucalab::examples::ex_s0(),
        ][which].clone();
        let g = Generators::single(base).unwrap();
        let eps = Dyadic(2);
        let delta = delta_for(&g, eps, 3);
        let x0 = EvPerConfig::from_finsupp(&sample::random_finsupp(&mut sample::rng(seed), g.universe(), &interval(-3, 3)), 1);
        let orbit = generate_pseudo_orbit(&g, &x0, delta, 6, Perturbation::Random { seed }).unwrap();
        orbit.validate(&g).unwrap();
        let rep = shadow_point(&g, &orbit, eps, 3).unwrap();
        prop_assert!(rep.success());
        prop_assert!(rep.distances.iter().all(|(_, d)| d.below(eps.0)));
    }
}
