#![allow(dead_code)]

use mvt_core::calculus::Interval;
use mvt_core::polyexpr::rational::ratio;
use mvt_core::Polynomial;
use proptest::prelude::*;

pub fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(|cs| Polynomial::from_ints(&cs))
}

pub fn rat_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-9i64..=9, 1i64..=5), 0..=max_deg + 1)
        .prop_map(|cs| Polynomial::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

pub fn interval() -> impl Strategy<Value = Interval> {
    (-12i64..12, 1i64..6, 1i64..16, 1i64..6).prop_map(|(an, ad, w, wd)| {
        let a = ratio(an, ad);
        let b = &a + ratio(w, wd);
        Interval::new(a, b).unwrap()
    })
}

/// Antiderivative of `q^2 + c` plus a constant: strictly increasing.
pub fn increasing_poly() -> impl Strategy<Value = Polynomial> {
    (rat_poly(2), 1i64..6, -9i64..=9).prop_map(|(q, c, d)| {
        let deriv = &(&q * &q) + &Polynomial::from_ints(&[c]);
        &deriv.antiderivative() + &Polynomial::from_ints(&[d])
    })
}
