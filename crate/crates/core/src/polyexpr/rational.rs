//! Helpers around the exact scalar type.
//!
//! `Rational` is `num_rational::BigRational`: always reduced, denominator
//! strictly positive. These helpers add the few operations the rest of the
//! crate needs on top of it: literal parsing, decimal rendering and the
//! simplest fraction inside an interval.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^-k`.
pub fn pow2_inv(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {text:?}: expected an integer or p/q with q != 0")]
pub struct RationalParseError {
    pub text: String,
}

/// Parses `[-]p` or `[-]p/q` (no embedded whitespace, `q != 0`).
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let err = || RationalParseError {
        text: text.to_string(),
    };
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) if digits(n) && digits(d) => (n, d),
        None if digits(body) => (body, "1"),
        _ => return Err(err()),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Renders `p/q`, or just `p` for integers.
pub fn to_fraction_string(r: &Rational) -> String {
    r.to_string()
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// Decimal rendering rounded (half away from zero) to `sig` significant
/// digits, trailing zeros trimmed. Scientific notation is used outside
/// `1e-5 <= |r| < 1e12`.
pub fn to_decimal(r: &Rational, sig: u32) -> String {
    assert!(sig > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let mag = r.abs();

    // 10^exp <= mag < 10^(exp+1)
    let mut exp = mag.numer().to_string().len() as i64 - mag.denom().to_string().len() as i64;
    let scale = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(pow10(e as u32))
        } else {
            Rational::new(BigInt::one(), pow10((-e) as u32))
        }
    };
    while mag < scale(exp) {
        exp -= 1;
    }
    while mag >= scale(exp + 1) {
        exp += 1;
    }

    // digits = round(mag * 10^(sig-1-exp))
    let shifted = &mag * scale(sig as i64 - 1 - exp);
    let (q, rem) = shifted.numer().div_rem(shifted.denom());
    let mut digits = q;
    if Rational::new(rem * 2, shifted.denom().clone()) >= Rational::one() {
        digits += 1;
    }
    if digits == pow10(sig) {
        digits /= 10;
        exp += 1;
    }
    let mut ds = digits.to_string();
    debug_assert_eq!(ds.len(), sig as usize);

    let body = if (-5..12).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            if ds.len() < int_len {
                ds.push_str(&"0".repeat(int_len - ds.len()));
            }
            let (ip, fp) = ds.split_at(int_len);
            trim_fraction(ip, fp)
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            trim_fraction("0", &format!("{zeros}{ds}"))
        }
    } else {
        let (ip, fp) = ds.split_at(1);
        format!("{}e{}", trim_fraction(ip, fp), exp)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(int_part: &str, frac: &str) -> String {
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac}")
    }
}

/// Midpoint of `lo` and `hi`.
pub fn midpoint(lo: &Rational, hi: &Rational) -> Rational {
    (lo + hi) / int(2)
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (ties broken by smallest absolute numerator). Stern-Brocot
/// descent via continued fractions.
pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "simplest_in: empty interval");
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

// 0 < lo <= hi
fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    // an integer strictly above lo and at most hi
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // lo, hi share the integer part: recurse on reciprocals of the fractional parts
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let inner = simplest_positive(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}

/// Sign of a rational as an `Ordering` against zero.
pub fn sign(r: &Rational) -> Ordering {
    match r.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}
