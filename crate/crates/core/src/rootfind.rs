//! Certified real-root location on open intervals.
//!
//! Root counts come from Sturm sequences over the square-free part, so they
//! are exact. Isolation bisects until every bracket holds one root; rational
//! roots are then recovered exactly, everything else stays a bracket with a
//! sign change across it.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::calculus::Interval;
use crate::polyexpr::rational::{midpoint, ratio, sign, simplest_in};
use crate::polyexpr::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("bracket ({lo}, {hi}) does not straddle a sign change")]
    InvalidBracket {
        lo: Box<Rational>,
        hi: Box<Rational>,
    },
    #[error("refinement tolerance must be positive, got {0}")]
    NonPositiveTolerance(Rational),
}

/// Signed remainder sequence `p0 = sqfree(p)`, `p1 = p0'`,
/// `p_{i+1} = -rem(p_{i-1}, p_i)`, ending in a nonzero constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<Polynomial>,
}

pub fn sturm_chain(p: &Polynomial) -> Result<SturmChain, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let p0 = p.square_free_part();
    let mut polys = vec![p0.clone()];
    if !p0.is_constant() {
        polys.push(p0.derivative(1));
        loop {
            let n = polys.len();
            let (_, r) = polys[n - 2]
                .div_rem(&polys[n - 1])
                .expect("nonzero chain element");
            if r.is_zero() {
                break;
            }
            polys.push(-r);
        }
    }
    Ok(SturmChain { polys })
}

impl SturmChain {
    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    /// The square-free polynomial the chain was built on.
    pub fn base(&self) -> &Polynomial {
        &self.polys[0]
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations_at(&self, x: &Rational) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.polys {
            let s = sign(&p.evaluate(x));
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    ///
    /// `V(lo) - V(hi)` counts roots in `(lo, hi]` for a square-free base
    /// (zeros skipped); a root at `hi` is then subtracted.
    pub fn count_open(&self, lo: &Rational, hi: &Rational) -> usize {
        if lo >= hi {
            return 0;
        }
        let half_open = self.variations_at(lo) - self.variations_at(hi);
        half_open - usize::from(self.base().evaluate(hi).is_zero())
    }
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`.
pub fn count_roots_open(p: &Polynomial, iv: &Interval) -> Result<usize, RootError> {
    Ok(sturm_chain(p)?.count_open(iv.a(), iv.b()))
}

/// A located root: either an exact rational (`lo == hi == value`) or an
/// open bracket `(lo, hi)` holding exactly one root, with the square-free
/// part of the polynomial taking opposite signs at `lo` and `hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootBracket {
    pub lo: Rational,
    pub hi: Rational,
    exact: Option<Rational>,
}

impl RootBracket {
    pub fn exact(value: Rational) -> Self {
        Self {
            lo: value.clone(),
            hi: value.clone(),
            exact: Some(value),
        }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo < hi);
        Self {
            lo,
            hi,
            exact: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// The exact value, or the bracket midpoint.
    pub fn representative(&self) -> Rational {
        match &self.exact {
            Some(v) => v.clone(),
            None => midpoint(&self.lo, &self.hi),
        }
    }
}

/// One bracket per distinct root of `p` in `(a, b)`, ascending. Rational
/// roots come back exact.
pub fn isolate_roots(p: &Polynomial, iv: &Interval) -> Result<Vec<RootBracket>, RootError> {
    let chain = sturm_chain(p)?;
    let base = chain.base();
    let mut raw = Vec::new();
    bisect(&chain, iv.a().clone(), iv.b().clone(), &mut raw);

    // A rational root p/q of the primitive integer form has q | lc, and two
    // distinct fractions with denominators at most |lc| lie at least 1/lc^2
    // apart. Once a bracket is narrower than that, its simplest fraction is
    // the only rational root candidate left.
    let lc = base
        .primitive()
        .leading_coefficient()
        .cloned()
        .unwrap_or_else(Rational::one);
    let separation = (&lc * &lc).recip();

    Ok(raw
        .into_iter()
        .map(|br| {
            if br.is_exact() {
                return br;
            }
            let cand = simplest_in(&br.lo, &br.hi);
            if base.evaluate(&cand).is_zero() {
                return RootBracket::exact(cand);
            }
            let narrow = bisect_to(base, br.clone(), &separation, true);
            if narrow.is_exact() {
                return narrow;
            }
            let cand = simplest_in(&narrow.lo, &narrow.hi);
            if base.evaluate(&cand).is_zero() {
                RootBracket::exact(cand)
            } else {
                br
            }
        })
        .collect())
}

fn bisect(chain: &SturmChain, lo: Rational, hi: Rational, out: &mut Vec<RootBracket>) {
    let n = chain.count_open(&lo, &hi);
    if n == 0 {
        return;
    }
    let base = chain.base();
    if n == 1 && !base.evaluate(&lo).is_zero() && !base.evaluate(&hi).is_zero() {
        out.push(RootBracket::open(lo, hi));
        return;
    }
    let mid = midpoint(&lo, &hi);
    bisect(chain, lo, mid.clone(), out);
    if base.evaluate(&mid).is_zero() {
        out.push(RootBracket::exact(mid.clone()));
    }
    bisect(chain, mid, hi, out);
}

// Plain bisection on a sign-changing bracket. With `strict` the loop runs
// until the width is strictly below `tol`.
fn bisect_to(p: &Polynomial, mut br: RootBracket, tol: &Rational, strict: bool) -> RootBracket {
    let lo_sign = sign(&p.evaluate(&br.lo));
    loop {
        let w = br.width();
        if (strict && &w < tol) || (!strict && &w <= tol) {
            return br;
        }
        let mid = midpoint(&br.lo, &br.hi);
        let s = sign(&p.evaluate(&mid));
        if s == Ordering::Equal {
            return RootBracket::exact(mid);
        }
        if s == lo_sign {
            br.lo = mid;
        } else {
            br.hi = mid;
        }
    }
}

/// Shrinks an inexact bracket to width `<= tol` without losing its root.
/// `p` must change sign across the bracket; exact brackets pass through.
pub fn refine_bracket(
    p: &Polynomial,
    br: &RootBracket,
    tol: &Rational,
) -> Result<RootBracket, RootError> {
    if sign(tol) != Ordering::Greater {
        return Err(RootError::NonPositiveTolerance(tol.clone()));
    }
    if br.is_exact() {
        return Ok(br.clone());
    }
    let sl = sign(&p.evaluate(&br.lo));
    let sh = sign(&p.evaluate(&br.hi));
    if sl == Ordering::Equal || sh == Ordering::Equal || sl == sh {
        return Err(RootError::InvalidBracket {
            lo: Box::new(br.lo.clone()),
            hi: Box::new(br.hi.clone()),
        });
    }
    Ok(bisect_to(p, br.clone(), tol, false))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpenSign {
    Positive,
    Negative,
    HasZero,
}

/// Whether `p` keeps a strict constant sign on `(a, b)`.
pub fn sign_constant_on_open(p: &Polynomial, iv: &Interval) -> Result<OpenSign, RootError> {
    if count_roots_open(p, iv)? > 0 {
        return Ok(OpenSign::HasZero);
    }
    Ok(match sign(&p.evaluate(&iv.midpoint())) {
        Ordering::Greater => OpenSign::Positive,
        Ordering::Less => OpenSign::Negative,
        Ordering::Equal => unreachable!("no roots in (a, b) but p vanishes at the midpoint"),
    })
}

/// Non-strict sign behaviour of `p` on `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakSign {
    IdenticallyZero,
    /// `p >= 0` on `(a, b)`; `touches_zero` if it vanishes somewhere inside.
    NonNegative {
        touches_zero: bool,
    },
    NonPositive {
        touches_zero: bool,
    },
    /// `p` takes both signs on `(a, b)`.
    Indefinite,
}

/// `p` changes sign on `(a, b)` exactly at its roots of odd multiplicity;
/// away from those it keeps one weak sign.
pub fn weak_sign_on_open(p: &Polynomial, iv: &Interval) -> WeakSign {
    if p.is_zero() {
        return WeakSign::IdenticallyZero;
    }
    let odd = p.odd_multiplicity_part();
    if count_roots_open(&odd, iv).expect("nonzero") > 0 {
        return WeakSign::Indefinite;
    }
    let roots = count_roots_open(p, iv).expect("nonzero");
    // among roots + 1 distinct interior sample points at least one is not a root
    let steps = roots as i64 + 2;
    let s = (1..steps)
        .map(|j| sign(&p.evaluate(&(iv.a() + iv.length() * ratio(j, steps)))))
        .find(|s| *s != Ordering::Equal)
        .expect("a non-root sample point exists");
    let touches_zero = roots > 0;
    match s {
        Ordering::Greater => WeakSign::NonNegative { touches_zero },
        _ => WeakSign::NonPositive { touches_zero },
    }
}
