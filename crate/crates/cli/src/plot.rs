//! CSV samples of the auxiliary function behind each theorem.

use std::fmt::Write as _;

use mvt_core::calculus::{
    definite_integral, egfmvt_auxiliary, egmvt_auxiliary, flett_auxiliary, Interval,
};
use mvt_core::polyexpr::rational::{int, to_decimal};
use mvt_core::theorems::{TheoremCase, TheoremError, TheoremKind};
use mvt_core::{Polynomial, Rational};

use crate::report::DIGITS;

/// The auxiliary function and its derivative for a case.
///
/// | theorem       | aux                                   |
/// |---------------|---------------------------------------|
/// | lagrange      | `F` with the single comparison `g = x` |
/// | integral-mean | `∫_a^x g - (x - a) · mean(g)`          |
/// | flett         | `h(x) = f'(x)(x - a) - (f(x) - f(a))`  |
/// | egmvt         | `F`                                   |
/// | egfmvt        | `G`                                   |
pub fn auxiliary(case: &TheoremCase) -> Result<(Polynomial, Polynomial), TheoremError> {
    let iv = case.interval();
    let f = case.f();
    let aux = match case.kind() {
        TheoremKind::Lagrange => egmvt_auxiliary(f, &[Polynomial::x()], iv, 1)?,
        TheoremKind::IntegralMean => {
            let mean = definite_integral(f, iv) / iv.length();
            let prim = f.antiderivative();
            let from_a = &prim - &Polynomial::constant(prim.evaluate(iv.a()));
            let line = (&Polynomial::x() - &Polynomial::constant(iv.a().clone())).scale(&mean);
            &from_a - &line
        }
        TheoremKind::Flett => flett_auxiliary(f, iv),
        TheoremKind::Egmvt | TheoremKind::EgmvtK => {
            egmvt_auxiliary(f, case.gs(), iv, case.order())?
        }
        TheoremKind::Egfmvt => {
            let pair = egfmvt_auxiliary(f, case.gs(), iv)?;
            return Ok((pair.g, pair.g_prime));
        }
    };
    let d = aux.derivative(1);
    Ok((aux, d))
}

/// `samples` equally spaced x over `[a, b]`, endpoints included.
pub fn sample_points(iv: &Interval, samples: usize) -> Vec<Rational> {
    assert!(samples >= 2, "need at least two samples");
    let step = iv.length() / int(samples as i64 - 1);
    (0..samples)
        .map(|i| {
            if i + 1 == samples {
                iv.b().clone()
            } else {
                iv.a() + &step * int(i as i64)
            }
        })
        .collect()
}

/// Header `x,aux,aux_prime`, then one row per sample.
pub fn emit_plot_csv(case: &TheoremCase, samples: usize) -> Result<String, TheoremError> {
    if samples < 2 {
        return Err(TheoremError::InvalidCase(format!(
            "plot needs at least 2 samples, got {samples}"
        )));
    }
    let (aux, aux_prime) = auxiliary(case)?;
    let mut out = String::from("x,aux,aux_prime\n");
    for x in sample_points(case.interval(), samples) {
        let _ = writeln!(
            out,
            "{},{},{}",
            to_decimal(&x, DIGITS),
            to_decimal(&aux.evaluate(&x), DIGITS),
            to_decimal(&aux_prime.evaluate(&x), DIGITS)
        );
    }
    Ok(out)
}
