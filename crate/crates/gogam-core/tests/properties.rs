//! Randomized properties: serialization round trips, lattice laws, predicate
//! agreement, mirror transport, and evaluator/oracle equivalence on
//! arbitrary GT-valid arrays.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gogam_core::bijection::standard_procedure;
use gogam_core::gog::{
    is_left_gog_trapezoid, is_right_gog_trapezoid, mirror_left_to_right, mirror_right_to_left,
};
use gogam_core::gogam::{
    eval_lhs, gogam_max_lhs, gogam_max_lhs_brute, is_left_gogam_n2, is_left_gogam_trapezoid,
};
use gogam_core::search::random_gt_triangle;
use gogam_core::{Pattern, Shape};

/// Deterministic GT-valid triangle from a seed; entries lie in `[1, n]`.
fn triangle_from(n: usize, seed: u64) -> Pattern {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_gt_triangle(n, &mut rng)
}

/// A GT-valid pattern of each shape kind, cut out of a random triangle.
fn sample_shapes(n: usize, seed: u64) -> Vec<Pattern> {
    let t = triangle_from(n, seed);
    let mut out = vec![t.clone()];
    let k = 1 + (seed as usize % n);
    let l = 1 + ((seed >> 8) as usize % n);
    out.push(t.extract(Shape::left_trapezoid(n, k).unwrap()).unwrap());
    out.push(t.extract(Shape::right_trapezoid(n, l).unwrap()).unwrap());
    let lr = 1 + ((seed >> 16) as usize % (n + 1 - k));
    out.push(t.extract(Shape::rectangle(n, k, lr).unwrap()).unwrap());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn extracts_stay_gt_valid(n in 1usize..=7, seed: u64) {
        for p in sample_shapes(n, seed) {
            prop_assert!(p.is_gt_valid(), "extract broke GT validity:\n{}", p.serialize());
        }
    }

    #[test]
    fn text_serialization_round_trips(n in 1usize..=7, seed: u64) {
        for p in sample_shapes(n, seed) {
            let text = p.serialize();
            let back = Pattern::parse(&text).unwrap();
            prop_assert_eq!(&back, &p);
        }
    }

    #[test]
    fn json_serialization_round_trips(n in 1usize..=7, seed: u64) {
        for p in sample_shapes(n, seed) {
            let text = p.to_json_string();
            let back = Pattern::from_json_str(&text).unwrap();
            prop_assert_eq!(&back, &p);
        }
    }

    #[test]
    fn lattice_laws_hold(n in 1usize..=6, sa: u64, sb: u64, sc: u64) {
        let a = triangle_from(n, sa);
        let b = triangle_from(n, sb);
        let c = triangle_from(n, sc);
        let ab = a.join(&b).unwrap();
        let m = a.meet(&b).unwrap();
        prop_assert!(ab.is_gt_valid() && m.is_gt_valid());
        prop_assert_eq!(&ab, &b.join(&a).unwrap());
        prop_assert_eq!(&m, &b.meet(&a).unwrap());
        prop_assert_eq!(&a.join(&b.join(&c).unwrap()).unwrap(), &ab.join(&c).unwrap());
        prop_assert_eq!(&a.meet(&b.meet(&c).unwrap()).unwrap(), &m.meet(&c).unwrap());
        prop_assert_eq!(&a.join(&m).unwrap(), &a);
        prop_assert_eq!(&a.meet(&ab).unwrap(), &a);
        prop_assert_eq!(a.leq(&b).unwrap(), ab == b);
        prop_assert_eq!(a.leq(&b).unwrap(), m == a);
    }

    #[test]
    fn width_two_characterization_matches_general_predicate(n in 2usize..=7, seed: u64) {
        let t = triangle_from(n, seed).extract(Shape::left_trapezoid(n, 2).unwrap()).unwrap();
        prop_assert_eq!(is_left_gogam_n2(&t), is_left_gogam_trapezoid(&t), "on\n{}", t.serialize());
    }

    #[test]
    fn mirror_is_an_involution_and_transports_membership(n in 1usize..=7, seed: u64, k_seed: u64) {
        let k = 1 + (k_seed as usize % n);
        let t = triangle_from(n, seed).extract(Shape::left_trapezoid(n, k).unwrap()).unwrap();
        let r = mirror_left_to_right(&t);
        prop_assert!(r.is_gt_valid());
        prop_assert_eq!(&mirror_right_to_left(&r), &t);
        prop_assert_eq!(is_left_gog_trapezoid(&t), is_right_gog_trapezoid(&r));
    }

    #[test]
    fn optimized_evaluator_matches_literal_enumeration(n in 1usize..=5, seed: u64) {
        let t = triangle_from(n, seed);
        for k in 1..n {
            let (v, w) = gogam_max_lhs(&t, k);
            let (bv, bw) = gogam_max_lhs_brute(&t, k);
            prop_assert_eq!(v, bv);
            prop_assert_eq!(&w, &bw);
            prop_assert_eq!(eval_lhs(&t, &w), v);
        }
    }

    #[test]
    fn sweep_never_panics_and_reports_validity(n in 1usize..=6, seed: u64, d_seed: u64) {
        let t = triangle_from(n, seed);
        let d = 1 + d_seed as usize % n;
        let (y, ok) = standard_procedure(&t, d);
        if ok {
            prop_assert!(y.is_gt_valid(), "claimed-valid sweep output:\n{}", y.serialize());
        }
    }

    #[test]
    fn parser_never_panics(text in "[ -~\n]{0,120}") {
        let _ = Pattern::parse(&text);
        let _ = Pattern::from_json_str(&text);
    }
}
