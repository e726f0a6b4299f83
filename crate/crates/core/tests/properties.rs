use proptest::prelude::*;
use rand::Rng;
use slemma_kit::acceptance::psd_by_principal_minors;
use slemma_kit::certify::VerdictKind;
use slemma_kit::counterforge::{default_curves, refute_quadratic_multiplier, RefuteConfig};
use slemma_kit::poly::{Exponent, Grading, Polynomial};
use slemma_kit::quadform::GramMatrix;
use slemma_kit::random::{point, polynomial, rng_for, symmetric_matrix};
use slemma_kit::s4solve::feasible_instance;
use slemma_kit::stability::{dominates, special_grading, SignFlip};

fn random_poly(seed: u64, n: usize, d: u32) -> Polynomial {
    polynomial(&mut rng_for(seed, 0), n, d, 5, 7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn is_psd_matches_minor_oracle(seed in any::<u64>(), n in 1usize..=5) {
        let m = symmetric_matrix(&mut rng_for(seed, 1), n);
        prop_assert_eq!(GramMatrix::new(m.clone()).unwrap().is_psd(), psd_by_principal_minors(&m));
    }

    #[test]
    fn leading_forms_multiply(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = rng_for(seed, 2);
        let z = Grading((0..n).map(|_| rng.gen_range(1..=4)).collect());
        let a = polynomial(&mut rng, n, 3, 4, 5);
        let b = polynomial(&mut rng, n, 3, 4, 5);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let lhs = (&a * &b).leading_form_z(&z).unwrap();
        let rhs = &a.leading_form_z(&z).unwrap() * &b.leading_form_z(&z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogenize_round_trip(seed in any::<u64>(), n in 1usize..=3, d in 0u32..=5) {
        let p = random_poly(seed, n, d);
        prop_assume!(!p.is_zero());
        let h = p.homogenize().unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize(n).unwrap(), p);
    }

    #[test]
    fn sign_flips_are_involutions(seed in any::<u64>(), set in proptest::collection::btree_set(1usize..=4, 0..=4)) {
        let x = point(&mut rng_for(seed, 3), 4, 9, 4);
        let s = SignFlip::new(set);
        prop_assert_eq!(s.apply(&s.apply(&x)), x.clone());
        prop_assert!(s.then(&s).flip_set.is_empty());
    }

    #[test]
    fn special_grading_dominates(seed in any::<u64>(), n in 1usize..=3, k in 1usize..=3) {
        let polys: Vec<Polynomial> = (0..k as u64).map(|i| random_poly(seed ^ (i << 32), n, 4)).collect();
        prop_assume!(polys.iter().all(|p| !p.is_zero()));
        let anchors: Vec<(Polynomial, Exponent)> =
            polys.into_iter().map(|p| { let e = p.leading_term_lex().unwrap().0; (p, e) }).collect();
        let z = special_grading(&anchors).unwrap();
        prop_assert!(z.in_n1());
        prop_assert!(dominates(&anchors, &z));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    // Pairs with a known quadratic multiplier must never be refuted.
    #[test]
    fn refutation_is_sound_on_feasible_pairs(seed in any::<u64>()) {
        let (f, g, _) = feasible_instance(seed, 0);
        let (f3, g3) = (f.extend_vars(1), g.extend_vars(1));
        let r = refute_quadratic_multiplier(&f3, &g3, &default_curves(3), &RefuteConfig::default());
        prop_assert_ne!(r.verdict.kind, VerdictKind::Proved, "{}", r.verdict.reason);
    }
}
