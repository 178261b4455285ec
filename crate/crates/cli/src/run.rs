//! Orchestration: turn a configuration into a report.

use mvt_core::theorems::{
    solve, verify_witness, witness_equation, TheoremCase, TheoremError, TheoremKind, Witnesses,
};
use rayon::prelude::*;

use crate::config::{rational, InputError, Prepared, RunConfig};
use crate::report::{
    exit, hypotheses_json, rational_json, witnesses_json, Command, IntervalJson, Outcome,
    RunReport, VerificationJson, VERSION,
};

fn skeleton(config: &RunConfig, prepared: &Prepared, command: Command) -> RunReport {
    let case = &prepared.case;
    let report = mvt_core::theorems::check_hypotheses(case);
    let satisfied = report.is_satisfied();
    let warnings = report
        .failed()
        .map(|c| format!("hypothesis not satisfied: {} ({})", c.name, c.certificate))
        .collect();
    RunReport {
        version: VERSION.to_string(),
        command,
        theorem: config.theorem.clone(),
        config: config.clone(),
        interval: IntervalJson {
            a: rational_json(case.interval().a()),
            b: rational_json(case.interval().b()),
        },
        hypotheses: hypotheses_json(&report),
        overall: if satisfied { "satisfied" } else { "violated" }.to_string(),
        outcome: Outcome::Checked,
        equation: witness_equation(case).ok().map(|p| p.to_string()),
        witnesses: Vec::new(),
        verification: None,
        warnings,
        notes: notes(case),
        exit_status: exit::OK,
    }
}

fn prime(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "'".to_string(),
        k => format!("^({k})"),
    }
}

fn notes(case: &TheoremCase) -> Vec<String> {
    match case.kind() {
        TheoremKind::Egmvt | TheoremKind::EgmvtK => {
            let (d, e) = (prime(case.order()), prime(case.order() - 1));
            vec![format!(
                "solves f{d}(xi) = ((f{e}(b) - f{e}(a)) / n) * sum_i g_i{d}(xi) / (g_i{e}(b) - g_i{e}(a)) with n = {}",
                case.gs().len()
            )]
        }
        _ => Vec::new(),
    }
}

/// Hypothesis checks followed by witness search.
pub fn run(config: &RunConfig) -> Result<RunReport, InputError> {
    let prepared = config.prepare()?;
    let mut report = skeleton(config, &prepared, Command::Find);
    let solution = solve(&prepared.case, &prepared.tol, config.strict);
    match solution.witnesses {
        Ok(Witnesses::Points(ws)) => {
            report.outcome = Outcome::Found;
            report.witnesses = witnesses_json(&ws);
        }
        Ok(Witnesses::AllPoints { .. }) => {
            report.outcome = Outcome::AllPoints;
            report.warnings.push(
                "witness equation vanishes identically: every point of (a, b) is a witness".into(),
            );
        }
        Err(e) => apply_error(&mut report, &e),
    }
    Ok(report)
}

/// Hypothesis checks only. Exit status 2 when any check fails.
pub fn check(config: &RunConfig) -> Result<RunReport, InputError> {
    let prepared = config.prepare()?;
    let mut report = skeleton(config, &prepared, Command::Check);
    if report.overall != "satisfied" {
        report.exit_status = exit::HYPOTHESES;
    }
    Ok(report)
}

/// Residual of the theorem's equation at a claimed witness.
pub fn verify(config: &RunConfig, xi_text: &str) -> Result<RunReport, InputError> {
    let prepared = config.prepare()?;
    let xi = rational("--xi", xi_text)?;
    let mut report = skeleton(config, &prepared, Command::Verify);
    if config.strict && report.overall != "satisfied" {
        report.outcome = Outcome::Refused;
        report.exit_status = exit::HYPOTHESES;
        return Ok(report);
    }
    match verify_witness(&prepared.case, &xi, &prepared.tol) {
        Ok(v) => {
            report.outcome = if v.accepted {
                Outcome::Accepted
            } else {
                Outcome::Rejected
            };
            if !v.accepted {
                report.exit_status = exit::NO_WITNESS;
            }
            report.verification = Some(VerificationJson {
                xi: rational_json(&xi),
                residual: rational_json(&v.residual),
                tol: rational_json(&prepared.tol),
                accepted: v.accepted,
            });
        }
        Err(e @ TheoremError::OutsideInterval { .. }) => {
            return Err(InputError::Verify(e.to_string()))
        }
        Err(e) => apply_error(&mut report, &e),
    }
    Ok(report)
}

fn apply_error(report: &mut RunReport, e: &TheoremError) {
    let (outcome, status) = match e {
        TheoremError::NoWitnessFound { .. } => (Outcome::NoWitness, exit::NO_WITNESS),
        TheoremError::HypothesesViolated(_) => (Outcome::Refused, exit::HYPOTHESES),
        TheoremError::ZeroDenominator { .. } => (Outcome::ZeroDenominator, exit::HYPOTHESES),
        // validated away by `prepare`; reported rather than panicking
        TheoremError::InvalidCase(_)
        | TheoremError::OutsideInterval { .. }
        | TheoremError::NonPositiveTolerance(_) => (Outcome::Refused, exit::INPUT),
    };
    report.outcome = outcome;
    report.exit_status = status;
    report.warnings.push(e.to_string());
}

/// Runs `find` on every case, in input order, on a pool of `jobs` threads.
pub fn run_batch(configs: &[RunConfig], jobs: usize) -> Vec<Result<RunReport, InputError>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| configs.par_iter().map(run).collect())
}

/// Parses a case file: one JSON configuration per non-blank line.
pub fn parse_case_file(text: &str) -> Result<Vec<RunConfig>, InputError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| InputError::CaseFile {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples_exit_zero() {
        let cases = [
            (
                RunConfig::new("egmvt", "x+1", &["x^2+4*x-4", "x^2+3*x"], "0", "3"),
                "3/2",
            ),
            (
                RunConfig::new("egfmvt", "x^4+1", &["x^2-2*x+12", "x^2+4*x"], "0", "4"),
                "1",
            ),
            (RunConfig::new("flett", "x^3", &[], "-2", "2"), "1"),
        ];
        for (cfg, want) in cases {
            let r = run(&cfg).unwrap();
            assert_eq!(r.exit_status, 0);
            assert_eq!(r.outcome, Outcome::Found);
            assert_eq!(r.witnesses.len(), 1);
            assert!(r.witnesses[0].exact);
            assert_eq!(r.witnesses[0].value, want);
            assert_eq!(r.witnesses[0].residual, "0");
        }
    }

    #[test]
    fn violated_hypotheses_warn_or_refuse() {
        let mut cfg = RunConfig::new("egfmvt", "x^4+1", &["x^2-2*x+12", "x^2+4*x"], "0", "4");
        let r = run(&cfg).unwrap();
        assert_eq!(r.overall, "violated");
        assert!(r.warnings.iter().any(|w| w.contains("f^(3)(4) = 96")));
        assert!(r.warnings.iter().any(|w| w.contains("g1 increasing")));

        cfg.strict = true;
        let r = run(&cfg).unwrap();
        assert_eq!(r.outcome, Outcome::Refused);
        assert_eq!(r.exit_status, exit::HYPOTHESES);
        assert!(r.witnesses.is_empty());

        assert_eq!(check(&cfg).unwrap().exit_status, exit::HYPOTHESES);
    }

    #[test]
    fn no_witness_and_all_points() {
        // h = x^2 has no root in (0, 1)
        let r = run(&RunConfig::new("flett", "x^2", &[], "0", "1")).unwrap();
        assert_eq!(r.outcome, Outcome::NoWitness);
        assert_eq!(r.exit_status, exit::NO_WITNESS);

        let r = run(&RunConfig::new("lagrange", "3*x + 1", &[], "0", "1")).unwrap();
        assert_eq!(r.outcome, Outcome::AllPoints);
        assert_eq!(r.exit_status, exit::OK);
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn egmvt_reports_its_normalisation() {
        let r = run(&RunConfig::new(
            "egmvt",
            "x+1",
            &["x^2+4*x-4", "x^2+3*x"],
            "0",
            "3",
        ))
        .unwrap();
        assert_eq!(
            r.notes,
            ["solves f'(xi) = ((f(b) - f(a)) / n) * sum_i g_i'(xi) / (g_i(b) - g_i(a)) with n = 2"]
        );
        let mut cfg = RunConfig::new("egmvt", "x^4", &["x^3"], "0", "1");
        cfg.k = 2;
        assert!(run(&cfg).unwrap().notes[0].starts_with("solves f^(2)(xi) = ((f'(b)"));
        assert!(run(&RunConfig::new("flett", "x^3", &[], "-2", "2"))
            .unwrap()
            .notes
            .is_empty());
    }

    #[test]
    fn zero_denominator_maps_to_two() {
        let r = run(&RunConfig::new("egmvt", "x", &["x^2"], "-1", "1")).unwrap();
        assert_eq!(r.outcome, Outcome::ZeroDenominator);
        assert_eq!(r.exit_status, exit::HYPOTHESES);
    }

    #[test]
    fn verify_accepts_and_rejects() {
        let cfg = RunConfig::new("egmvt", "x+1", &["x^2+4*x-4", "x^2+3*x"], "0", "3");
        let r = verify(&cfg, "3/2").unwrap();
        assert_eq!(r.outcome, Outcome::Accepted);
        assert_eq!(r.verification.as_ref().unwrap().residual, "0");
        let r = verify(&cfg, "1").unwrap();
        assert_eq!(r.outcome, Outcome::Rejected);
        assert_eq!(r.exit_status, exit::NO_WITNESS);
        assert!(matches!(verify(&cfg, "3"), Err(InputError::Verify(_))));
        assert!(verify(&cfg, "x").is_err());
    }

    #[test]
    fn inexact_witness_renders_twelve_digits() {
        let r = run(&RunConfig::new("lagrange", "x^3", &[], "0", "1")).unwrap();
        let w = &r.witnesses[0];
        assert!(!w.exact);
        assert_eq!(w.value, "0.57735026919");
    }

    #[test]
    fn json_round_trips() {
        let mut cfg = RunConfig::new("egfmvt", "x^4+1", &["x^2-2*x+12", "x^2+4*x"], "0", "4");
        cfg.plot_samples = Some(5);
        for r in [
            run(&cfg).unwrap(),
            check(&cfg).unwrap(),
            verify(&cfg, "1").unwrap(),
            run(&RunConfig::new("lagrange", "x^3", &[], "0", "1")).unwrap(),
        ] {
            assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
        }
    }

    #[test]
    fn batch_preserves_order() {
        let text = r#"{"theorem":"flett","f":"x^3","a":"-2","b":"2"}

{"theorem":"egmvt","f":"x+1","g":["x^2+4*x-4","x^2+3*x"],"a":"0","b":"3"}
{"theorem":"nope","f":"x","a":"0","b":"1"}"#;
        let configs = parse_case_file(text).unwrap();
        let out = run_batch(&configs, 3);
        assert_eq!(out[0].as_ref().unwrap().witnesses[0].value, "1");
        assert_eq!(out[1].as_ref().unwrap().witnesses[0].value, "3/2");
        assert!(out[2].is_err());
        let err = parse_case_file("{\"theorem\": 1}").unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }
}
