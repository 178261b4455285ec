//! Mean value theorem engines.
//!
//! Each engine turns its theorem's conclusion into a single witness
//! polynomial with integer coefficients, isolates that polynomial's roots in
//! the open interval and re-checks every root against the theorem's own
//! displayed equation. Hypotheses are checked separately and never stop the
//! search unless the caller asks for strict mode.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::calculus::{
    definite_integral, egfmvt_auxiliary, flett_auxiliary, increment, k_quotient, CalculusError,
    Interval,
};
use crate::polyexpr::rational::int;
use crate::polyexpr::{Polynomial, Rational};
use crate::rootfind::{
    isolate_roots, refine_bracket, sign_constant_on_open, weak_sign_on_open, OpenSign, RootBracket,
    RootError, WeakSign,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremKind {
    /// `f'(c) = (f(b) - f(a)) / (b - a)`
    Lagrange,
    /// `g(η) = ∫_a^b g / (b - a)`
    IntegralMean,
    /// `f'(η) = (f(η) - f(a)) / (η - a)` under `f'(a) = f'(b)`
    Flett,
    /// `f'(ξ) = (f(b) - f(a))/n · Σ g_i'(ξ) / (g_i(b) - g_i(a))`
    Egmvt,
    /// The same with `f^(k)`, `g_i^(k)` against increments of the `(k-1)`-th derivatives.
    EgmvtK,
    /// `f^(n+1)(ξ) = K(f) Σ g_i'(ξ) / (n K(g_i))`
    Egfmvt,
}

impl TheoremKind {
    pub fn name(self) -> &'static str {
        match self {
            TheoremKind::Lagrange => "lagrange",
            TheoremKind::IntegralMean => "integral-mean",
            TheoremKind::Flett => "flett",
            TheoremKind::Egmvt => "egmvt",
            TheoremKind::EgmvtK => "egmvt-k",
            TheoremKind::Egfmvt => "egfmvt",
        }
    }

    fn uses_family(self) -> bool {
        matches!(
            self,
            TheoremKind::Egmvt | TheoremKind::EgmvtK | TheoremKind::Egfmvt
        )
    }
}

impl fmt::Display for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoremError {
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("{}", zero_denominator(*.index))]
    ZeroDenominator { index: Option<usize> },
    #[error("no witness in the open interval (witness equation {equation} = 0)")]
    NoWitnessFound { equation: Polynomial },
    #[error("hypotheses violated: {}", .0.failed_names().join(", "))]
    HypothesesViolated(HypothesisReport),
    #[error("{xi} is not inside the open interval {iv}")]
    OutsideInterval {
        xi: Box<Rational>,
        iv: Box<Interval>,
    },
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(Rational),
}

fn zero_denominator(index: Option<usize>) -> String {
    match index {
        Some(i) => format!(
            "zero denominator from g{}: its increment over [a, b] is 0",
            i + 1
        ),
        None => "zero denominator".to_string(),
    }
}

impl From<CalculusError> for TheoremError {
    fn from(e: CalculusError) -> Self {
        match e {
            CalculusError::ZeroDenominator { index } => TheoremError::ZeroDenominator { index },
            other => TheoremError::InvalidCase(other.to_string()),
        }
    }
}

/// A theorem together with the data it is applied to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCase {
    kind: TheoremKind,
    f: Polynomial,
    gs: Vec<Polynomial>,
    iv: Interval,
    order: usize,
}

impl TheoremCase {
    /// `order` is only read for [`TheoremKind::EgmvtK`]; it is `n + 1` for
    /// `Egfmvt` and 1 for everything else.
    pub fn new(
        kind: TheoremKind,
        f: Polynomial,
        gs: Vec<Polynomial>,
        iv: Interval,
        order: usize,
    ) -> Result<Self, TheoremError> {
        if kind.uses_family() && gs.is_empty() {
            return Err(TheoremError::InvalidCase(format!(
                "{kind} needs at least one g function"
            )));
        }
        if !kind.uses_family() && !gs.is_empty() {
            return Err(TheoremError::InvalidCase(format!(
                "{kind} takes no g functions"
            )));
        }
        let order = match kind {
            TheoremKind::EgmvtK if order == 0 => {
                return Err(TheoremError::InvalidCase(
                    "derivative order k must be at least 1".into(),
                ))
            }
            TheoremKind::EgmvtK => order,
            TheoremKind::Egfmvt => gs.len() + 1,
            _ => 1,
        };
        Ok(Self {
            kind,
            f,
            gs,
            iv,
            order,
        })
    }

    pub fn lagrange(f: Polynomial, iv: Interval) -> Self {
        Self::new(TheoremKind::Lagrange, f, Vec::new(), iv, 1).expect("valid")
    }

    pub fn integral_mean(g: Polynomial, iv: Interval) -> Self {
        Self::new(TheoremKind::IntegralMean, g, Vec::new(), iv, 1).expect("valid")
    }

    pub fn flett(f: Polynomial, iv: Interval) -> Self {
        Self::new(TheoremKind::Flett, f, Vec::new(), iv, 1).expect("valid")
    }

    pub fn egmvt(f: Polynomial, gs: Vec<Polynomial>, iv: Interval) -> Result<Self, TheoremError> {
        Self::new(TheoremKind::Egmvt, f, gs, iv, 1)
    }

    pub fn egmvt_k(
        f: Polynomial,
        gs: Vec<Polynomial>,
        iv: Interval,
        k: usize,
    ) -> Result<Self, TheoremError> {
        Self::new(TheoremKind::EgmvtK, f, gs, iv, k)
    }

    pub fn egfmvt(f: Polynomial, gs: Vec<Polynomial>, iv: Interval) -> Result<Self, TheoremError> {
        Self::new(TheoremKind::Egfmvt, f, gs, iv, 0)
    }

    pub fn kind(&self) -> TheoremKind {
        self.kind
    }
    pub fn f(&self) -> &Polynomial {
        &self.f
    }
    pub fn gs(&self) -> &[Polynomial] {
        &self.gs
    }
    pub fn interval(&self) -> &Interval {
        &self.iv
    }
    pub fn order(&self) -> usize {
        self.order
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HypothesisCheck {
    pub name: String,
    pub status: CheckStatus,
    pub certificate: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Overall {
    Satisfied,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HypothesisReport {
    checks: Vec<HypothesisCheck>,
}

impl HypothesisReport {
    pub fn checks(&self) -> &[HypothesisCheck] {
        &self.checks
    }

    pub fn overall(&self) -> Overall {
        if self.checks.iter().any(|c| c.status == CheckStatus::Fail) {
            Overall::Violated
        } else {
            Overall::Satisfied
        }
    }

    pub fn is_satisfied(&self) -> bool {
        self.overall() == Overall::Satisfied
    }

    pub fn failed(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.failed().map(|c| c.name.as_str()).collect()
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, certificate: impl Into<String>) {
        self.checks.push(HypothesisCheck {
            name: name.into(),
            status: if pass {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            certificate: certificate.into(),
        });
    }
}

/// `g1`, `g1'`, `g1''`, `g1^(3)`, ...
fn derivative_label(base: &str, order: usize) -> String {
    match order {
        0 => base.to_string(),
        1 => format!("{base}'"),
        2 => format!("{base}''"),
        k => format!("{base}^({k})"),
    }
}

fn describe_roots(p: &Polynomial, iv: &Interval) -> String {
    let roots = isolate_roots(p, iv).unwrap_or_default();
    let shown: Vec<String> = roots
        .iter()
        .take(3)
        .map(|r| match r.exact_value() {
            Some(v) => format!("x = {v}"),
            None => format!("x in ({}, {})", r.lo, r.hi),
        })
        .collect();
    format!(
        "{} root(s) in the open interval: {}",
        roots.len(),
        shown.join(", ")
    )
}

fn open_iv(iv: &Interval) -> String {
    format!("({}, {})", iv.a(), iv.b())
}

fn smoothness_checks(report: &mut HypothesisReport, differentiable: Option<usize>) {
    report.push(
        "continuity on [a, b]",
        true,
        "polynomials are continuous everywhere",
    );
    if let Some(k) = differentiable {
        let name = if k == 1 {
            "differentiability on (a, b)".to_string()
        } else {
            format!("{k}-fold differentiability on (a, b)")
        };
        report.push(name, true, "polynomials are infinitely differentiable");
    }
}

// g_i^(k) keeps a strict sign on (a, b), and the (k-1)-th derivative has a
// nonzero increment.
fn family_checks(report: &mut HypothesisReport, gs: &[Polynomial], iv: &Interval, k: usize) {
    for (i, g) in gs.iter().enumerate() {
        let gname = format!("g{}", i + 1);
        let dk = g.derivative(k);
        let label = derivative_label(&gname, k);
        let name = format!("{label} != 0 on (a, b)");
        if dk.is_zero() {
            report.push(name, false, format!("{label} is identically 0"));
        } else {
            match sign_constant_on_open(&dk, iv).expect("nonzero") {
                OpenSign::Positive => {
                    report.push(name, true, format!("{label} = {dk} > 0 on {}", open_iv(iv)))
                }
                OpenSign::Negative => {
                    report.push(name, true, format!("{label} = {dk} < 0 on {}", open_iv(iv)))
                }
                OpenSign::HasZero => report.push(
                    name,
                    false,
                    format!("{label} = {dk} has {}", describe_roots(&dk, iv)),
                ),
            }
        }

        let lower = derivative_label(&gname, k - 1);
        let psi = g.derivative(k - 1);
        let delta = increment(&psi, iv);
        report.push(
            format!("{lower}(b) != {lower}(a)"),
            !delta.is_zero(),
            format!("{lower}({}) - {lower}({}) = {delta}", iv.b(), iv.a()),
        );
    }
}

fn increasing_check(report: &mut HypothesisReport, name: &str, p: &Polynomial, iv: &Interval) {
    let d = p.derivative(1);
    let label = derivative_label(name, 1);
    let check = format!("{name} increasing on [a, b]");
    match weak_sign_on_open(&d, iv) {
        WeakSign::IdenticallyZero => report.push(
            check,
            true,
            format!("{label} = 0 identically (non-decreasing); strictly increasing: no"),
        ),
        WeakSign::NonNegative { touches_zero } => report.push(
            check,
            true,
            if touches_zero {
                format!(
                    "{label} = {d} >= 0 on {}, vanishing at {}; strictly positive: no",
                    open_iv(iv),
                    describe_roots(&d, iv)
                )
            } else {
                format!(
                    "{label} = {d} > 0 on {}; strictly positive: yes",
                    open_iv(iv)
                )
            },
        ),
        WeakSign::NonPositive { .. } => report.push(
            check,
            false,
            format!(
                "{label} = {d} <= 0 on {}: {name} is non-increasing",
                open_iv(iv)
            ),
        ),
        WeakSign::Indefinite => report.push(
            check,
            false,
            format!(
                "{label} = {d} changes sign ({}): {name} is not monotone",
                describe_roots(&d.odd_multiplicity_part(), iv)
            ),
        ),
    }
}

/// Certifies each hypothesis of the case's theorem. Failures are data.
pub fn check_hypotheses(case: &TheoremCase) -> HypothesisReport {
    let mut report = HypothesisReport { checks: Vec::new() };
    let iv = &case.iv;
    match case.kind {
        TheoremKind::Lagrange => smoothness_checks(&mut report, Some(1)),
        TheoremKind::IntegralMean => {
            smoothness_checks(&mut report, None);
            report.checks.push(HypothesisCheck {
                name: "differentiability on (a, b)".into(),
                status: CheckStatus::NotApplicable,
                certificate: "only continuity is required".into(),
            });
        }
        TheoremKind::Flett => {
            smoothness_checks(&mut report, Some(1));
            let d = case.f.derivative(1);
            let (da, db) = (d.evaluate(iv.a()), d.evaluate(iv.b()));
            report.push(
                "f'(a) = f'(b)",
                da == db,
                format!("f'({}) = {da}, f'({}) = {db}", iv.a(), iv.b()),
            );
        }
        TheoremKind::Egmvt | TheoremKind::EgmvtK => {
            smoothness_checks(&mut report, Some(case.order));
            family_checks(&mut report, &case.gs, iv, case.order);
        }
        TheoremKind::Egfmvt => {
            let n = case.gs.len();
            smoothness_checks(&mut report, Some(n + 1));
            family_checks(&mut report, &case.gs, iv, 1);
            increasing_check(&mut report, "f", &case.f, iv);
            for (i, g) in case.gs.iter().enumerate() {
                increasing_check(&mut report, &format!("g{}", i + 1), g, iv);
            }
            let label = derivative_label("f", n + 1);
            let d = case.f.derivative(n + 1);
            for (end, x) in [("a", iv.a()), ("b", iv.b())] {
                let v = d.evaluate(x);
                report.push(
                    format!("{label}({end}) = 0"),
                    v.is_zero(),
                    format!("{label}({x}) = {v}"),
                );
            }
        }
    }
    report
}

/// A located witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub location: RootBracket,
    /// `|LHS - RHS|` of the theorem's equation at the exact value, or at the
    /// bracket midpoint. Exactly zero for exact witnesses.
    pub residual: Rational,
    pub theorem: TheoremKind,
    /// Primitive integer polynomial whose root this is.
    pub equation: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witnesses {
    /// Every witness in `(a, b)`, ascending.
    Points(Vec<Witness>),
    /// The witness equation vanishes identically: every interior point works.
    AllPoints { theorem: TheoremKind },
}

impl Witnesses {
    pub fn points(&self) -> &[Witness] {
        match self {
            Witnesses::Points(ws) => ws,
            Witnesses::AllPoints { .. } => &[],
        }
    }

    pub fn is_all_points(&self) -> bool {
        matches!(self, Witnesses::AllPoints { .. })
    }
}

/// The witness polynomial of a case, scaled to primitive integer form (or
/// zero). Its roots in `(a, b)` are exactly the theorem's witnesses.
pub fn witness_equation(case: &TheoremCase) -> Result<Polynomial, TheoremError> {
    let iv = &case.iv;
    let f = &case.f;
    let raw = match case.kind {
        TheoremKind::Lagrange => {
            &f.derivative(1).scale(&iv.length()) - &Polynomial::constant(increment(f, iv))
        }
        TheoremKind::IntegralMean => {
            &f.scale(&iv.length()) - &Polynomial::constant(definite_integral(f, iv))
        }
        TheoremKind::Flett => flett_auxiliary(f, iv),
        TheoremKind::Egmvt | TheoremKind::EgmvtK => {
            let k = case.order;
            let dphi = increment(&f.derivative(k - 1), iv);
            let mut sum = Polynomial::zero();
            for (i, g) in case.gs.iter().enumerate() {
                let delta = increment(&g.derivative(k - 1), iv);
                if delta.is_zero() {
                    return Err(TheoremError::ZeroDenominator { index: Some(i) });
                }
                sum = &sum + &g.derivative(k).scale(&delta.recip());
            }
            &f.derivative(k).scale(&int(case.gs.len() as i64)) - &sum.scale(&dphi)
        }
        TheoremKind::Egfmvt => egfmvt_auxiliary(f, &case.gs, iv)?.g_prime,
    };
    Ok(raw.primitive())
}

fn search(case: &TheoremCase, tol: &Rational) -> Result<Witnesses, TheoremError> {
    if !tol.is_positive() {
        return Err(TheoremError::NonPositiveTolerance(tol.clone()));
    }
    let equation = witness_equation(case)?;
    if equation.is_zero() {
        return Ok(Witnesses::AllPoints { theorem: case.kind });
    }
    let sqfree = equation.square_free_part();
    let brackets = isolate_roots(&equation, &case.iv).expect("nonzero equation");
    if brackets.is_empty() {
        return Err(TheoremError::NoWitnessFound { equation });
    }
    let mut out = Vec::with_capacity(brackets.len());
    for br in brackets {
        let location = refine_bracket(&sqfree, &br, tol).map_err(|e| match e {
            RootError::NonPositiveTolerance(t) => TheoremError::NonPositiveTolerance(t),
            other => unreachable!("isolated bracket failed to refine: {other}"),
        })?;
        let residual = theorem_residual(case, &location.representative())?;
        out.push(Witness {
            location,
            residual,
            theorem: case.kind,
            equation: equation.clone(),
        });
    }
    Ok(Witnesses::Points(out))
}

/// Points `c` in `(a, b)` with `f'(c) = (f(b) - f(a)) / (b - a)`.
pub fn find_lagrange_point(
    f: &Polynomial,
    iv: &Interval,
    tol: &Rational,
) -> Result<Witnesses, TheoremError> {
    search(&TheoremCase::lagrange(f.clone(), iv.clone()), tol)
}

/// Points `η` in `(a, b)` where `g` equals its mean value over `[a, b]`.
pub fn find_integral_mean_point(
    g: &Polynomial,
    iv: &Interval,
    tol: &Rational,
) -> Result<Witnesses, TheoremError> {
    search(&TheoremCase::integral_mean(g.clone(), iv.clone()), tol)
}

/// Points `η` in `(a, b)` whose tangent passes through `(a, f(a))`. The
/// root `x = a` of the cleared equation is never reported.
pub fn find_flett_point(
    f: &Polynomial,
    iv: &Interval,
    tol: &Rational,
) -> Result<Witnesses, TheoremError> {
    search(&TheoremCase::flett(f.clone(), iv.clone()), tol)
}

/// Extended generalized MVT witnesses; `k > 1` applies it to the
/// `(k-1)`-th derivatives.
pub fn find_egmvt_point(
    f: &Polynomial,
    gs: &[Polynomial],
    iv: &Interval,
    k: usize,
    tol: &Rational,
) -> Result<Witnesses, TheoremError> {
    let case = if k == 1 {
        TheoremCase::egmvt(f.clone(), gs.to_vec(), iv.clone())?
    } else {
        TheoremCase::egmvt_k(f.clone(), gs.to_vec(), iv.clone(), k)?
    };
    search(&case, tol)
}

/// Roots of `G'` in `(a, b)`. Runs whether or not the hypotheses hold.
pub fn find_egfmvt_point(
    f: &Polynomial,
    gs: &[Polynomial],
    iv: &Interval,
    tol: &Rational,
) -> Result<Witnesses, TheoremError> {
    search(
        &TheoremCase::egfmvt(f.clone(), gs.to_vec(), iv.clone())?,
        tol,
    )
}

/// Dispatches on the case's kind.
pub fn find_witnesses(case: &TheoremCase, tol: &Rational) -> Result<Witnesses, TheoremError> {
    search(case, tol)
}

fn nonzero(d: Rational, index: Option<usize>) -> Result<Rational, TheoremError> {
    if d.is_zero() {
        Err(TheoremError::ZeroDenominator { index })
    } else {
        Ok(d)
    }
}

// |LHS - RHS| of the theorem's displayed equation, evaluated directly.
fn theorem_residual(case: &TheoremCase, xi: &Rational) -> Result<Rational, TheoremError> {
    let iv = &case.iv;
    let f = &case.f;
    let n = int(case.gs.len() as i64);
    let (lhs, rhs) = match case.kind {
        TheoremKind::Lagrange => (
            f.derivative(1).evaluate(xi),
            k_quotient(f, None, 0, iv)?.value,
        ),
        TheoremKind::IntegralMean => (f.evaluate(xi), definite_integral(f, iv) / iv.length()),
        TheoremKind::Flett => {
            let sub = Interval::new(iv.a().clone(), xi.clone())?;
            (
                f.derivative(1).evaluate(xi),
                k_quotient(f, None, 0, &sub)?.value,
            )
        }
        TheoremKind::Egmvt | TheoremKind::EgmvtK => {
            let k = case.order;
            let dphi = increment(&f.derivative(k - 1), iv);
            let mut sum = Rational::zero();
            for (i, g) in case.gs.iter().enumerate() {
                let delta = nonzero(increment(&g.derivative(k - 1), iv), Some(i))?;
                sum += g.derivative(k).evaluate(xi) / delta;
            }
            (f.derivative(k).evaluate(xi), dphi / &n * sum)
        }
        TheoremKind::Egfmvt => {
            let kf = k_quotient(f, None, 0, iv)?.value;
            let mut sum = Rational::zero();
            for (i, g) in case.gs.iter().enumerate() {
                let kg = k_quotient(g, None, 0, iv)?.value;
                let kg = nonzero(kg, Some(i))?;
                sum += g.derivative(1).evaluate(xi) / (&n * kg);
            }
            (f.derivative(case.order).evaluate(xi), kf * sum)
        }
    };
    Ok((lhs - rhs).abs())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub residual: Rational,
    pub accepted: bool,
}

/// Substitutes a claimed witness into the theorem's own equation (not the
/// cleared witness polynomial) and compares the residual against `tol`.
pub fn verify_witness(
    case: &TheoremCase,
    xi: &Rational,
    tol: &Rational,
) -> Result<Verification, TheoremError> {
    if !case.iv.contains_open(xi) {
        return Err(TheoremError::OutsideInterval {
            xi: Box::new(xi.clone()),
            iv: Box::new(case.iv.clone()),
        });
    }
    if tol.is_negative() {
        return Err(TheoremError::NonPositiveTolerance(tol.clone()));
    }
    let residual = theorem_residual(case, xi)?;
    let accepted = &residual <= tol;
    Ok(Verification { residual, accepted })
}

/// Hypothesis report plus witness search, as one unit of work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub report: HypothesisReport,
    pub witnesses: Result<Witnesses, TheoremError>,
}

/// Checks hypotheses, then searches. In `strict` mode a violated hypothesis
/// refuses the search with [`TheoremError::HypothesesViolated`].
pub fn solve(case: &TheoremCase, tol: &Rational, strict: bool) -> Solution {
    let report = check_hypotheses(case);
    let witnesses = if strict && !report.is_satisfied() {
        Err(TheoremError::HypothesesViolated(report.clone()))
    } else {
        search(case, tol)
    };
    Solution { report, witnesses }
}
