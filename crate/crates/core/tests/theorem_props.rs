mod common;

use common::{increasing_poly, int_poly, interval, rat_poly};
use mvt_core::calculus::{egfmvt_auxiliary, egmvt_auxiliary, increment, Interval};
use mvt_core::polyexpr::rational::{int, pow2_inv, ratio};
use mvt_core::theorems::{
    check_hypotheses, find_egfmvt_point, find_egmvt_point, find_flett_point, find_lagrange_point,
    find_witnesses, verify_witness, TheoremCase, TheoremError, TheoremKind, Witnesses,
};
use mvt_core::Polynomial;
use num_traits::Zero;
use proptest::prelude::*;

fn tol() -> mvt_core::Rational {
    pow2_inv(40)
}

fn locations(w: &Witnesses) -> Vec<mvt_core::rootfind::RootBracket> {
    w.points().iter().map(|w| w.location.clone()).collect()
}

fn valid_family(gs: &[Polynomial], iv: &Interval) -> bool {
    gs.iter().all(|g| !increment(g, iv).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn egmvt_witness_exists_under_hypotheses(
        f in int_poly(5, 9),
        gs in prop::collection::vec(increasing_poly(), 1..4),
        iv in interval(),
    ) {
        let case = TheoremCase::egmvt(f, gs, iv).unwrap();
        prop_assert!(check_hypotheses(&case).is_satisfied());
        let w = find_witnesses(&case, &tol()).unwrap();
        prop_assert!(w.is_all_points() || !w.points().is_empty());
    }

    #[test]
    fn egmvt_with_identity_is_lagrange(f in rat_poly(5), iv in interval()) {
        let a = find_lagrange_point(&f, &iv, &tol());
        let b = find_egmvt_point(&f, &[Polynomial::x()], &iv, 1, &tol());
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.is_all_points(), b.is_all_points());
                prop_assert_eq!(locations(&a), locations(&b));
            }
            (a, b) => prop_assert!(false, "lagrange {:?} vs egmvt {:?}", a, b),
        }
    }

    #[test]
    fn flett_witness_exists_for_symmetric_derivative(e in rat_poly(3), c in -9i64..9, iv in interval()) {
        // f' = E((x - m)^2) is even about the midpoint m, so f'(a) = f'(b)
        let m = iv.midpoint();
        let shifted = Polynomial::new(vec![-m.clone(), int(1)]);
        let sq = &shifted * &shifted;
        let deriv = e
            .coeffs()
            .iter()
            .enumerate()
            .fold(Polynomial::zero(), |acc, (i, ci)| &acc + &sq.pow(i as u32).scale(ci));
        let f = &deriv.antiderivative() + &Polynomial::from_ints(&[c]);
        let case = TheoremCase::flett(f.clone(), iv.clone());
        prop_assert!(check_hypotheses(&case).is_satisfied());
        let w = find_flett_point(&f, &iv, &tol()).unwrap();
        prop_assert!(w.is_all_points() || !w.points().is_empty());
    }

    #[test]
    fn affine_change_of_g_keeps_witnesses(
        f in int_poly(6, 9),
        gs in prop::collection::vec(int_poly(4, 9), 1..4),
        iv in interval(),
        (cn, cd, dn, dd) in (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5),
        flett in any::<bool>(),
    ) {
        prop_assume!(cn != 0 && valid_family(&gs, &iv));
        let (c, d) = (ratio(cn, cd), ratio(dn, dd));
        let moved: Vec<Polynomial> = gs
            .iter()
            .map(|g| &g.scale(&c) + &Polynomial::constant(d.clone()))
            .collect();
        let run = |gs: &[Polynomial]| {
            if flett {
                find_egfmvt_point(&f, gs, &iv, &tol())
            } else {
                find_egmvt_point(&f, gs, &iv, 1, &tol())
            }
        };
        match (run(&gs), run(&moved)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.is_all_points(), b.is_all_points());
                prop_assert_eq!(locations(&a), locations(&b));
            }
            (Err(TheoremError::NoWitnessFound { equation: a }), Err(TheoremError::NoWitnessFound { equation: b })) => {
                prop_assert_eq!(a, b);
            }
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn exact_witnesses_have_zero_residual(
        f in int_poly(6, 9),
        gs in prop::collection::vec(int_poly(4, 9), 1..3),
        iv in interval(),
        kind in prop::sample::select(vec![
            TheoremKind::Lagrange, TheoremKind::IntegralMean, TheoremKind::Flett,
            TheoremKind::Egmvt, TheoremKind::EgmvtK, TheoremKind::Egfmvt,
        ]),
        k in 1usize..4,
    ) {
        let family = matches!(kind, TheoremKind::Egmvt | TheoremKind::EgmvtK | TheoremKind::Egfmvt);
        let gs = if family { gs } else { Vec::new() };
        let case = TheoremCase::new(kind, f, gs, iv, k).unwrap();
        let Ok(w) = find_witnesses(&case, &tol()) else { return Ok(()) };
        let sf = w.points().first().map(|w| w.equation.square_free_part());
        for wit in w.points() {
            prop_assert!(case.interval().contains_open(&wit.location.representative()));
            match wit.location.exact_value() {
                Some(xi) => {
                    prop_assert!(wit.residual.is_zero());
                    let v = verify_witness(&case, xi, &int(0)).unwrap();
                    prop_assert!(v.accepted && v.residual.is_zero());
                }
                None => {
                    let sf = sf.as_ref().unwrap();
                    let (l, h) = (sf.evaluate(&wit.location.lo), sf.evaluate(&wit.location.hi));
                    prop_assert!(!l.is_zero() && !h.is_zero());
                    prop_assert!((l > mvt_core::Rational::zero()) != (h > mvt_core::Rational::zero()));
                }
            }
        }
    }

    #[test]
    fn auxiliary_identities(
        f in rat_poly(8),
        gs in prop::collection::vec(rat_poly(5), 1..4),
        iv in interval(),
    ) {
        prop_assume!(valid_family(&gs, &iv));
        let pair = egfmvt_auxiliary(&f, &gs, &iv).unwrap();
        prop_assert_eq!(pair.g.derivative(1), pair.g_prime);
        prop_assert!(pair.g.evaluate(iv.a()).is_zero());
        let aux = egmvt_auxiliary(&f, &gs, &iv, 1).unwrap();
        prop_assert!(aux.evaluate(iv.a()).is_zero() && aux.evaluate(iv.b()).is_zero());
    }

    #[test]
    fn hypothesis_checks_are_pure(f in int_poly(5, 9), gs in prop::collection::vec(int_poly(3, 9), 1..3), iv in interval()) {
        let case = TheoremCase::egfmvt(f, gs, iv).unwrap();
        prop_assert_eq!(check_hypotheses(&case), check_hypotheses(&case));
    }
}
