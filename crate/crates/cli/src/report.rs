//! The report produced by every subcommand, and its two renderings.

use std::fmt::Write as _;

use mvt_core::polyexpr::rational::{to_decimal, to_fraction_string};
use mvt_core::theorems::{HypothesisReport, Witness};
use mvt_core::Rational;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Significant digits for decimal renderings.
pub const DIGITS: u32 = 12;

pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const HYPOTHESES: i32 = 2;
    pub const NO_WITNESS: i32 = 3;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Find,
    Check,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Witness points listed in `witnesses`.
    Found,
    /// The witness equation is identically zero.
    AllPoints,
    NoWitness,
    /// Strict mode and some hypothesis failed.
    Refused,
    /// Some `g_i(b) - g_i(a)` (or derivative increment) is zero.
    ZeroDenominator,
    Checked,
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisJson {
    pub name: String,
    pub status: String,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub exact: bool,
    /// `p/q` when exact, else the bracket midpoint to 12 significant digits.
    pub value: String,
    pub lo: String,
    pub hi: String,
    pub residual: String,
    pub smallest: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub xi: String,
    pub residual: String,
    pub tol: String,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub command: Command,
    pub theorem: String,
    pub config: RunConfig,
    pub interval: IntervalJson,
    pub hypotheses: Vec<HypothesisJson>,
    pub overall: String,
    pub outcome: Outcome,
    /// The primitive integer polynomial whose roots are the witnesses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    pub witnesses: Vec<WitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationJson>,
    pub warnings: Vec<String>,
    /// Remarks that are not problems, such as the exact equation form solved.
    #[serde(default)]
    pub notes: Vec<String>,
    pub exit_status: i32,
}

pub fn rational_json(r: &Rational) -> String {
    to_fraction_string(r)
}

pub fn hypotheses_json(report: &HypothesisReport) -> Vec<HypothesisJson> {
    report
        .checks()
        .iter()
        .map(|c| HypothesisJson {
            name: c.name.clone(),
            status: c.status.as_str().to_string(),
            certificate: c.certificate.clone(),
        })
        .collect()
}

pub fn witnesses_json(ws: &[Witness]) -> Vec<WitnessJson> {
    ws.iter()
        .enumerate()
        .map(|(i, w)| {
            let loc = &w.location;
            let value = match loc.exact_value() {
                Some(v) => to_fraction_string(v),
                None => to_decimal(&loc.representative(), DIGITS),
            };
            WitnessJson {
                exact: loc.is_exact(),
                value,
                lo: rational_json(&loc.lo),
                hi: rational_json(&loc.hi),
                residual: rational_json(&w.residual),
                // witnesses arrive sorted ascending
                smallest: i == 0,
            }
        })
        .collect()
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "theorem: {} on [{}, {}]",
            self.theorem, self.interval.a, self.interval.b
        );
        let _ = writeln!(out, "hypotheses: {}", self.overall);
        for h in &self.hypotheses {
            let _ = writeln!(out, "  [{}] {}: {}", h.status, h.name, h.certificate);
        }
        if let Some(eq) = &self.equation {
            let _ = writeln!(out, "witness equation: {eq} = 0");
        }
        match self.outcome {
            Outcome::Found => {
                let _ = writeln!(out, "witnesses:");
                for w in &self.witnesses {
                    let mark = if w.smallest { '*' } else { ' ' };
                    if w.exact {
                        let _ = writeln!(
                            out,
                            "{mark} xi = {} (exact, residual {})",
                            w.value, w.residual
                        );
                    } else {
                        let _ = writeln!(
                            out,
                            "{mark} xi ~ {} in ({}, {}), residual {}",
                            w.value, w.lo, w.hi, w.residual
                        );
                    }
                }
            }
            Outcome::AllPoints => {
                let _ = writeln!(out, "witnesses: every point of the open interval");
            }
            Outcome::NoWitness => {
                let _ = writeln!(out, "witnesses: none");
            }
            _ => {}
        }
        if let Some(v) = &self.verification {
            let verdict = if v.accepted { "accepted" } else { "rejected" };
            let _ = writeln!(
                out,
                "verify xi = {}: residual {} (tol {}) {verdict}",
                v.xi, v.residual, v.tol
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}
