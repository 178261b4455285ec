//! Difference quotients, exact integration and the auxiliary functions
//! whose critical points are mean-value witnesses.

use std::fmt;

use num_traits::Zero;

use crate::polyexpr::{rational::int, Polynomial, Rational};

/// Closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    a: Rational,
    b: Rational,
}

impl Interval {
    pub fn new(a: Rational, b: Rational) -> Result<Self, CalculusError> {
        if a < b {
            Ok(Self { a, b })
        } else {
            Err(CalculusError::EmptyInterval {
                a: Box::new(a),
                b: Box::new(b),
            })
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn length(&self) -> Rational {
        &self.b - &self.a
    }

    pub fn midpoint(&self) -> Rational {
        (&self.a + &self.b) / int(2)
    }

    /// Strict containment in the open interval `(a, b)`.
    pub fn contains_open(&self, x: &Rational) -> bool {
        &self.a < x && x < &self.b
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalculusError {
    #[error("interval [{a}, {b}] is empty: need a < b")]
    EmptyInterval { a: Box<Rational>, b: Box<Rational> },
    /// `index` is the zero-based position in the `g` family, `None` for a
    /// single denominator function.
    #[error("{}", zero_denominator_message(*.index))]
    ZeroDenominator { index: Option<usize> },
    #[error("at least one comparison function g is required")]
    EmptyFamily,
    #[error("derivative order must be at least 1")]
    ZeroOrder,
}

fn zero_denominator_message(index: Option<usize>) -> String {
    match index {
        Some(i) => format!("zero denominator: g{}(b) - g{}(a) = 0", i + 1, i + 1),
        None => "zero denominator: g(b) - g(a) = 0".to_string(),
    }
}

/// `(f(b) - f(a))` for a polynomial.
pub fn increment(p: &Polynomial, iv: &Interval) -> Rational {
    p.evaluate(iv.b()) - p.evaluate(iv.a())
}

/// Difference quotient of `f^(order)` over `[a, b]`, either against
/// `g^(order)` or against the interval length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KQuotient {
    pub value: Rational,
    pub numerator_fn_order: usize,
    pub over_interval_length: bool,
}

pub fn k_quotient(
    f: &Polynomial,
    g: Option<&Polynomial>,
    order: usize,
    iv: &Interval,
) -> Result<KQuotient, CalculusError> {
    let num = increment(&f.derivative(order), iv);
    let den = match g {
        Some(g) => increment(&g.derivative(order), iv),
        None => iv.length(),
    };
    if den.is_zero() {
        return Err(CalculusError::ZeroDenominator { index: None });
    }
    Ok(KQuotient {
        value: num / den,
        numerator_fn_order: order,
        over_interval_length: g.is_none(),
    })
}

/// `∫_a^b g(t) dt`, exactly.
pub fn definite_integral(g: &Polynomial, iv: &Interval) -> Rational {
    increment(&g.antiderivative(), iv)
}

/// `h(x) = f'(x)(x - a) - (f(x) - f(a))`. For `x != a`, `h(x) = 0` exactly
/// when the tangent slope at `x` equals the chord slope from `a`.
pub fn flett_auxiliary(f: &Polynomial, iv: &Interval) -> Polynomial {
    let shifted = &Polynomial::x() - &Polynomial::constant(iv.a().clone());
    let fa = Polynomial::constant(f.evaluate(iv.a()));
    &(&f.derivative(1) * &shifted) - &(f - &fa)
}

fn increments(gs: &[Polynomial], iv: &Interval) -> Result<Vec<Rational>, CalculusError> {
    gs.iter()
        .enumerate()
        .map(|(i, g)| {
            let d = increment(g, iv);
            if d.is_zero() {
                Err(CalculusError::ZeroDenominator { index: Some(i) })
            } else {
                Ok(d)
            }
        })
        .collect()
}

/// `n (φ(x) - φ(a)) - Σ_i (φ(b) - φ(a)) / (ψ_i(b) - ψ_i(a)) · (ψ_i(x) - ψ_i(a))`
/// with `φ = f^(order-1)`, `ψ_i = g_i^(order-1)`.
///
/// Vanishes at both endpoints, so Rolle applies to it on `[a, b]`.
pub fn egmvt_auxiliary(
    f: &Polynomial,
    gs: &[Polynomial],
    iv: &Interval,
    order: usize,
) -> Result<Polynomial, CalculusError> {
    if order == 0 {
        return Err(CalculusError::ZeroOrder);
    }
    if gs.is_empty() {
        return Err(CalculusError::EmptyFamily);
    }
    let phi = f.derivative(order - 1);
    let psis: Vec<Polynomial> = gs.iter().map(|g| g.derivative(order - 1)).collect();
    let deltas = increments(&psis, iv)?;
    let dphi = increment(&phi, iv);
    let n = int(gs.len() as i64);

    let mut aux = (&phi - &Polynomial::constant(phi.evaluate(iv.a()))).scale(&n);
    for (psi, d) in psis.iter().zip(&deltas) {
        let centred = psi - &Polynomial::constant(psi.evaluate(iv.a()));
        aux = &aux - &centred.scale(&(&dphi / d));
    }
    Ok(aux)
}

/// The pair `(G, G')` for the extended generalized Flett construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlettPair {
    pub g: Polynomial,
    pub g_prime: Polynomial,
}

/// With `n = gs.len()`:
///
/// `G(x)  = n (f^(n)(x) - f^(n)(a)) - Σ_i (f(b) - f(a)) / (g_i(b) - g_i(a)) · (g_i(x) - g_i(a))`
/// `G'(x) = n f^(n+1)(x) - (f(b) - f(a)) Σ_i g_i'(x) / (g_i(b) - g_i(a))`
///
/// `G'` is assembled from its own closed form rather than by differentiating
/// `G`, so the two can be checked against each other.
pub fn egfmvt_auxiliary(
    f: &Polynomial,
    gs: &[Polynomial],
    iv: &Interval,
) -> Result<FlettPair, CalculusError> {
    if gs.is_empty() {
        return Err(CalculusError::EmptyFamily);
    }
    let n_usize = gs.len();
    let n = int(n_usize as i64);
    let deltas = increments(gs, iv)?;
    let df = increment(f, iv);

    let fn_ = f.derivative(n_usize);
    let mut g = (&fn_ - &Polynomial::constant(fn_.evaluate(iv.a()))).scale(&n);
    for (gi, d) in gs.iter().zip(&deltas) {
        let centred = gi - &Polynomial::constant(gi.evaluate(iv.a()));
        g = &g - &centred.scale(&(&df / d));
    }

    let sum = gs
        .iter()
        .zip(&deltas)
        .fold(Polynomial::zero(), |acc, (gi, d)| {
            &acc + &gi.derivative(1).scale(&d.recip())
        });
    let g_prime = &f.derivative(n_usize + 1).scale(&n) - &sum.scale(&df);

    Ok(FlettPair { g, g_prime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexpr::rational::ratio;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn interval_requires_a_below_b() {
        assert!(Interval::new(int(1), int(1)).is_err());
        assert!(Interval::new(int(2), int(1)).is_err());
        assert!(iv(-2, 2).contains_open(&int(1)));
        assert!(!iv(-2, 2).contains_open(&int(-2)));
    }

    #[test]
    fn k_quotient_examples() {
        let f = p(&[1, 0, 0, 0, 1]);
        assert_eq!(k_quotient(&f, None, 0, &iv(0, 4)).unwrap().value, int(64));
        let q = k_quotient(&p(&[1, 1]), None, 0, &iv(0, 3)).unwrap();
        assert_eq!(q.value, int(1));
        assert!(q.over_interval_length);
        let g = p(&[3, -1, 2, 5]);
        let q = k_quotient(&g, Some(&g), 1, &iv(-1, 2)).unwrap();
        assert_eq!(q.value, int(1));
        assert!(!q.over_interval_length);
        assert_eq!(q.numerator_fn_order, 1);
    }

    #[test]
    fn k_quotient_zero_denominator() {
        // x^2 takes the same value at -1 and 1
        assert_eq!(
            k_quotient(&p(&[0, 1]), Some(&p(&[0, 0, 1])), 0, &iv(-1, 1)),
            Err(CalculusError::ZeroDenominator { index: None })
        );
    }

    #[test]
    fn integral_examples() {
        assert_eq!(definite_integral(&Polynomial::x(), &iv(0, 2)), int(2));
        let c = ratio(7, 3);
        let i = Interval::new(ratio(-1, 2), int(5)).unwrap();
        assert_eq!(
            definite_integral(&Polynomial::constant(c.clone()), &i),
            c * i.length()
        );
        assert_eq!(definite_integral(&p(&[0, 0, 3]), &iv(0, 1)), int(1));
    }

    #[test]
    fn flett_auxiliary_examples() {
        assert_eq!(
            flett_auxiliary(&p(&[0, 0, 0, 1]), &iv(-2, 2)),
            p(&[-8, 0, 6, 2])
        );
        assert!(flett_auxiliary(&p(&[5]), &iv(0, 1)).is_zero());
        assert!(flett_auxiliary(&Polynomial::x(), &iv(-3, 7)).is_zero());
    }

    #[test]
    fn egmvt_auxiliary_example() {
        let f = p(&[1, 1]);
        let gs = [p(&[-4, 4, 1]), p(&[0, 3, 1])];
        let aux = egmvt_auxiliary(&f, &gs, &iv(0, 3), 1).unwrap();
        assert!(aux.evaluate(&int(0)).is_zero());
        assert!(aux.evaluate(&int(3)).is_zero());
        // independent expansion: F'(x) = 2 - 3[(2x+4)/21 + (2x+3)/18]
        let expected_prime = &p(&[2])
            - &(&p(&[4, 2]).scale(&ratio(1, 21)) + &p(&[3, 2]).scale(&ratio(1, 18))).scale(&int(3));
        assert_eq!(aux.derivative(1), expected_prime);
    }

    #[test]
    fn egmvt_auxiliary_reductions() {
        let f = p(&[2, -1, 0, 3]);
        let i = iv(-1, 2);
        let aux = egmvt_auxiliary(&f, &[Polynomial::x()], &i, 1).unwrap();
        let k = k_quotient(&f, None, 0, &i).unwrap().value;
        let lagrange = &(&f - &Polynomial::constant(f.evaluate(i.a())))
            - &(&Polynomial::x() - &Polynomial::constant(i.a().clone())).scale(&k);
        assert_eq!(aux, lagrange);
        assert!(egmvt_auxiliary(&f, std::slice::from_ref(&f), &i, 1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn egmvt_auxiliary_errors() {
        let f = p(&[0, 1]);
        let gs = [p(&[0, 1]), p(&[0, 0, 1])];
        assert_eq!(
            egmvt_auxiliary(&f, &gs, &iv(-1, 1), 1),
            Err(CalculusError::ZeroDenominator { index: Some(1) })
        );
        assert_eq!(
            egmvt_auxiliary(&f, &[], &iv(0, 1), 1),
            Err(CalculusError::EmptyFamily)
        );
        assert_eq!(
            egmvt_auxiliary(&f, &gs, &iv(0, 1), 0),
            Err(CalculusError::ZeroOrder)
        );
    }

    #[test]
    fn egfmvt_auxiliary_examples() {
        let f = p(&[1, 0, 0, 0, 1]);
        let gs = [p(&[12, -2, 1]), p(&[0, 4, 1])];
        let pair = egfmvt_auxiliary(&f, &gs, &iv(0, 4)).unwrap();
        // 48x - 256[(2x-2)/8 + (2x+4)/32] = 32 - 32x
        assert_eq!(pair.g_prime, p(&[32, -32]));
        assert_eq!(pair.g.derivative(1), pair.g_prime);
        assert!(pair.g.evaluate(&int(0)).is_zero());

        let pair = egfmvt_auxiliary(&p(&[0, 0, 1]), &[Polynomial::x()], &iv(0, 1)).unwrap();
        assert_eq!(pair.g, Polynomial::x());
        assert_eq!(pair.g_prime, Polynomial::one());

        // degree below n and f(b) = f(a): G vanishes identically
        let pair = egfmvt_auxiliary(&p(&[3]), &gs, &iv(0, 4)).unwrap();
        assert!(pair.g.is_zero() && pair.g_prime.is_zero());
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-9i64..=9, 1i64..=4), 0..=max_deg + 1)
            .prop_map(|cs| Polynomial::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    fn interval() -> impl Strategy<Value = Interval> {
        (-20i64..20, 1i64..8, 1i64..20, 1i64..8).prop_map(|(an, ad, w, wd)| {
            let a = ratio(an, ad);
            let b = &a + ratio(w, wd);
            Interval::new(a, b).unwrap()
        })
    }

    proptest! {
        #[test]
        fn g_prime_is_derivative_of_g(
            f in small_poly(7),
            gs in prop::collection::vec(small_poly(4), 1..4),
            i in interval(),
        ) {
            if let Ok(pair) = egfmvt_auxiliary(&f, &gs, &i) {
                prop_assert_eq!(pair.g.derivative(1), pair.g_prime);
                prop_assert!(pair.g.evaluate(i.a()).is_zero());
            }
        }

        #[test]
        fn egmvt_auxiliary_vanishes_at_endpoints(
            f in small_poly(6),
            gs in prop::collection::vec(small_poly(5), 1..4),
            i in interval(),
            order in 1usize..4,
        ) {
            if let Ok(aux) = egmvt_auxiliary(&f, &gs, &i, order) {
                prop_assert!(aux.evaluate(i.a()).is_zero());
                prop_assert!(aux.evaluate(i.b()).is_zero());
            }
        }

        #[test]
        fn integral_is_additive(g in small_poly(8), i in interval(), t in 1i64..100) {
            let c = i.a() + i.length() * ratio(t, 101);
            let left = Interval::new(i.a().clone(), c.clone()).unwrap();
            let right = Interval::new(c, i.b().clone()).unwrap();
            prop_assert_eq!(
                definite_integral(&g, &i),
                definite_integral(&g, &left) + definite_integral(&g, &right)
            );
        }

        // `K(f^(k))` over the interval length is the order-0 quotient of
        // `f^(k)` against the identity function.
        #[test]
        fn k_quotient_without_g_matches_identity(f in small_poly(8), i in interval(), order in 0usize..4) {
            let bare = k_quotient(&f, None, order, &i).unwrap();
            let against_x = k_quotient(&f.derivative(order), Some(&Polynomial::x()), 0, &i).unwrap();
            prop_assert_eq!(bare.value, against_x.value);
        }
    }
}
