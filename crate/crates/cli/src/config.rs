//! Run configuration: what the user asked for, before anything is parsed.

use mvt_core::calculus::Interval;
use mvt_core::polyexpr::rational::parse_rational;
use mvt_core::polyexpr::ExprError;
use mvt_core::theorems::{TheoremCase, TheoremKind};
use mvt_core::{parse_polynomial, Rational};
use serde::{Deserialize, Serialize};

/// 2^-40
pub const DEFAULT_TOL: &str = "1/1099511627776";

pub const THEOREMS: &[&str] = &["lagrange", "integral-mean", "flett", "egmvt", "egfmvt"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

fn default_k() -> usize {
    1
}

fn default_tol() -> String {
    DEFAULT_TOL.to_string()
}

/// One unit of work. Also the line format of batch case files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub theorem: String,
    pub f: String,
    #[serde(default)]
    pub g: Vec<String>,
    pub a: String,
    pub b: String,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_tol")]
    pub tol: String,
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub output: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot_samples: Option<usize>,
}

impl RunConfig {
    pub fn new(theorem: &str, f: &str, g: &[&str], a: &str, b: &str) -> Self {
        Self {
            theorem: theorem.to_string(),
            f: f.to_string(),
            g: g.iter().map(|s| s.to_string()).collect(),
            a: a.to_string(),
            b: b.to_string(),
            k: 1,
            tol: DEFAULT_TOL.to_string(),
            strict: false,
            output: OutputFormat::Text,
            plot_samples: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("unknown theorem {name:?}; expected one of {list}", name = .0, list = THEOREMS.join(", "))]
    UnknownTheorem(String),
    #[error("in {which} = {text:?}: {source}")]
    Expression {
        which: String,
        text: String,
        source: ExprError,
    },
    #[error("{which}: {source}")]
    Rational {
        which: &'static str,
        source: mvt_core::polyexpr::rational::RationalParseError,
    },
    #[error("interval endpoints must satisfy a < b, got a = {a}, b = {b}")]
    EmptyInterval { a: String, b: String },
    #[error("{0}")]
    Shape(String),
    #[error("tolerance must be positive, got {0}")]
    Tolerance(String),
    #[error("plot needs at least 2 samples, got {0}")]
    Samples(usize),
    #[error("{0}")]
    Verify(String),
    #[error("case file line {line}: {message}")]
    CaseFile { line: usize, message: String },
}

/// A validated configuration: parsed polynomials, interval and tolerance.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub case: TheoremCase,
    pub tol: Rational,
}

pub fn theorem_kind(name: &str, k: usize) -> Result<TheoremKind, InputError> {
    let kind = match name {
        "lagrange" => TheoremKind::Lagrange,
        "integral-mean" => TheoremKind::IntegralMean,
        "flett" => TheoremKind::Flett,
        "egmvt" if k > 1 => TheoremKind::EgmvtK,
        "egmvt" => TheoremKind::Egmvt,
        "egfmvt" => TheoremKind::Egfmvt,
        other => return Err(InputError::UnknownTheorem(other.to_string())),
    };
    if k == 0 {
        return Err(InputError::Shape("--k must be a positive integer".into()));
    }
    if k != 1 && name != "egmvt" {
        return Err(InputError::Shape(format!(
            "--k only applies to egmvt (got --k {k} with {name})"
        )));
    }
    Ok(kind)
}

fn poly(which: String, text: &str) -> Result<mvt_core::Polynomial, InputError> {
    parse_polynomial(text).map_err(|source| InputError::Expression {
        which,
        text: text.to_string(),
        source,
    })
}

pub fn rational(which: &'static str, text: &str) -> Result<Rational, InputError> {
    parse_rational(text).map_err(|source| InputError::Rational { which, source })
}

impl RunConfig {
    pub fn prepare(&self) -> Result<Prepared, InputError> {
        let kind = theorem_kind(&self.theorem, self.k)?;
        let family = matches!(
            kind,
            TheoremKind::Egmvt | TheoremKind::EgmvtK | TheoremKind::Egfmvt
        );
        if family && self.g.is_empty() {
            return Err(InputError::Shape(format!(
                "{} needs at least one --g function",
                self.theorem
            )));
        }
        if !family && !self.g.is_empty() {
            return Err(InputError::Shape(format!(
                "{} takes no --g functions",
                self.theorem
            )));
        }
        let f = poly("f".into(), &self.f)?;
        let gs = self
            .g
            .iter()
            .enumerate()
            .map(|(i, t)| poly(format!("g{}", i + 1), t))
            .collect::<Result<Vec<_>, _>>()?;
        let a = rational("interval start a", &self.a)?;
        let b = rational("interval end b", &self.b)?;
        let iv = Interval::new(a, b).map_err(|_| InputError::EmptyInterval {
            a: self.a.clone(),
            b: self.b.clone(),
        })?;
        let tol = rational("tolerance", &self.tol)?;
        if tol <= Rational::from_integer(0.into()) {
            return Err(InputError::Tolerance(self.tol.clone()));
        }
        if let Some(s) = self.plot_samples {
            if s < 2 {
                return Err(InputError::Samples(s));
            }
        }
        let case = TheoremCase::new(kind, f, gs, iv, self.k)
            .map_err(|e| InputError::Shape(e.to_string()))?;
        Ok(Prepared { case, tol })
    }
}
