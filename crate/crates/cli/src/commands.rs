use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use hypergeom::euler::{build_chern, degree_audit, euler_case, EulerCase, EulerDataReport};
use hypergeom::flag::{balloons, degree_interval, fixed_points, FixedPoint, MultiDegree, DEFAULT_MAX_N};
use hypergeom::link::verify_link;
use hypergeom::series::{
    assemble_b, ingest_i, mirror_transform, zeta_monomials, ClassSeries, EulerSeriesIntegrand,
    EulerSeriesReport, IData, SeriesError,
};
use hypergeom::symbolic::RatFun;

use crate::args::{Command, DegreeBound};
use crate::selftest;

/// Errors that stop a run before any check can be judged.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid input: {0}")]
    Input(String),
}

/// Result of a subcommand: the checks it ran and whether all passed.
pub struct Outcome {
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub results: Value,
    pub lines: Vec<String>,
}

impl Outcome {
    fn from_cases(results: Value, verdicts: &[bool], lines: Vec<String>) -> Self {
        let failed = verdicts.iter().filter(|ok| !**ok).count();
        Self {
            passed: failed == 0,
            total: verdicts.len(),
            failed,
            results,
            lines,
        }
    }
}

fn require_n(n: Option<usize>) -> Result<usize, CliError> {
    let n = n.ok_or_else(|| CliError::Config("--n is required".into()))?;
    if !(2..=DEFAULT_MAX_N).contains(&n) {
        return Err(CliError::Config(format!("n must lie in 2..={DEFAULT_MAX_N}, got {n}")));
    }
    Ok(n)
}

pub fn parse_bound(bound: &DegreeBound, n: usize) -> Result<MultiDegree, CliError> {
    let entries: Vec<i64> = bound
        .max_degree
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(format!("--max-degree {:?}: {e}", bound.max_degree)))?;
    let d = if entries.len() == 1 {
        MultiDegree::new(vec![entries[0]; n - 1])
    } else {
        MultiDegree::new(entries)
    };
    if d.len() != n - 1 || !d.is_effective() {
        return Err(CliError::Config(format!(
            "--max-degree {} is not an effective degree with {} entries",
            bound.max_degree,
            n - 1
        )));
    }
    Ok(d)
}

fn load_idata(path: &Path, n: Option<usize>) -> Result<IData, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let data = ingest_i(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if let Some(n) = n {
        if n != data.n {
            return Err(CliError::Config(format!("--n {n} disagrees with n = {} in {}", data.n, path.display())));
        }
    }
    Ok(data)
}

fn input_error(e: SeriesError) -> CliError {
    CliError::Input(e.to_string())
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    let n_opt = command.common().n;
    match command {
        Command::VerifyEulerData { degree, .. } => {
            let n = require_n(n_opt)?;
            verify_euler_data(n, &parse_bound(degree, n)?)
        }
        Command::CheckLink { delta_max, .. } => {
            let n = require_n(n_opt)?;
            if *delta_max < 1 {
                return Err(CliError::Config(format!("--delta-max must be at least 1, got {delta_max}")));
            }
            check_link(n, *delta_max)
        }
        Command::DegreeAudit { degree, .. } => {
            let n = require_n(n_opt)?;
            audit(n, &parse_bound(degree, n)?)
        }
        Command::AssembleSeries { degree, input, .. } => {
            let data = load_idata(&input.input, n_opt)?;
            let cutoff = parse_bound(degree, data.n)?;
            let b = assemble_b(&data, &cutoff).map_err(input_error)?;
            let count = b.coeffs.len();
            Ok(Outcome {
                passed: true,
                total: count,
                failed: 0,
                results: b.to_json(),
                lines: vec![format!("assembled {count} coefficients up to [{cutoff}]")],
            })
        }
        Command::EulerSeriesCheck {
            degree,
            input,
            zeta_order,
            perturb,
            ..
        } => {
            let data = load_idata(&input.input, n_opt)?;
            let cutoff = parse_bound(degree, data.n)?;
            let mut b = assemble_b(&data, &cutoff).map_err(input_error)?;
            if let Some(target) = perturb {
                b = apply_perturbation(&b, target)?;
            }
            euler_series(&b, &cutoff, *zeta_order)
        }
        Command::MirrorTransform { degree, input, .. } => {
            let data = load_idata(&input.input, n_opt)?;
            let cutoff = parse_bound(degree, data.n)?;
            let b = assemble_b(&data, &cutoff).map_err(input_error)?;
            mirror(&b, &cutoff)
        }
        Command::Selftest { .. } => Ok(selftest::run()),
    }
}

fn verify_euler_data(n: usize, max: &MultiDegree) -> Result<Outcome, CliError> {
    let chern = build_chern(n).map_err(|e| CliError::Config(e.to_string()))?;
    let items: Vec<(MultiDegree, MultiDegree)> = degree_interval(max)
        .into_iter()
        .flat_map(|d| degree_interval(&d).into_iter().map(move |r| (d.clone(), r)))
        .collect();
    let cases: Vec<EulerCase> = items
        .par_iter()
        .map(|(d, r)| euler_case(&chern, d, r))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let mut reports: Vec<EulerDataReport> = Vec::new();
    let mut verdicts = Vec::with_capacity(cases.len());
    let mut lines = Vec::new();
    for ((d, _), case) in items.iter().zip(cases) {
        verdicts.push(case.status.passed());
        if !case.status.passed() {
            lines.push(format!("FAIL d=[{d}] r={:?}", case.r));
        }
        match reports.last_mut() {
            Some(rep) if rep.d == d.entries() => rep.cases.push(case),
            _ => reports.push(EulerDataReport {
                check: "euler-data",
                n,
                d: d.entries().to_vec(),
                cases: vec![case],
                elapsed_ms: 0,
            }),
        }
    }
    lines.push(format!("{} (d, r) cases for n = {n}, d ⪯ [{max}]", verdicts.len()));
    Ok(Outcome::from_cases(json!(reports), &verdicts, lines))
}

fn check_link(n: usize, delta_max: i64) -> Result<Outcome, CliError> {
    let items: Vec<_> = balloons(n)
        .map_err(|e| CliError::Config(e.to_string()))?
        .into_iter()
        .flat_map(|b| (1..=delta_max).map(move |delta| (b.clone(), delta)))
        .collect();
    let reports = items
        .par_iter()
        .map(|(b, delta)| verify_link(b, *delta))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let verdicts: Vec<bool> = reports.iter().map(|r| r.passed()).collect();
    let mut lines: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{:?} {} delta={}", r.status, r.balloon, r.delta))
        .collect();
    lines.push(format!("{} balloon cases for n = {n}, δ ≤ {delta_max}", reports.len()));
    Ok(Outcome::from_cases(json!(reports), &verdicts, lines))
}

fn audit(n: usize, max: &MultiDegree) -> Result<Outcome, CliError> {
    let degrees = degree_interval(max);
    let audits = degrees
        .par_iter()
        .map(|d| degree_audit(n, d))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let verdicts: Vec<bool> = audits.iter().map(|a| a.status.passed()).collect();
    let lines = audits
        .iter()
        .map(|a| {
            format!(
                "{:?} d={:?} deg={} bound={} slack={}",
                a.status, a.d, a.alpha_degree, a.bound, a.slack
            )
        })
        .collect();
    Ok(Outcome::from_cases(json!(audits), &verdicts, lines))
}

fn apply_perturbation(b: &ClassSeries, target: &str) -> Result<ClassSeries, CliError> {
    let (d, p) = target
        .split_once('@')
        .ok_or_else(|| CliError::Config(format!("--perturb expects DEGREE@POINT, got {target:?}")))?;
    let d: MultiDegree = d.parse().map_err(|e| CliError::Config(format!("--perturb: {e}")))?;
    let p: FixedPoint = p.parse().map_err(|e| CliError::Config(format!("--perturb: {e}")))?;
    if !fixed_points(b.n).map_err(|e| CliError::Config(e.to_string()))?.contains(&p) {
        return Err(CliError::Config(format!("--perturb: {p} is not a fixed point of Fl({})", b.n)));
    }
    b.perturbed(&d, &p, &RatFun::one()).map_err(|e| CliError::Config(e.to_string()))
}

fn euler_series(b: &ClassSeries, cutoff: &MultiDegree, zeta_order: u32) -> Result<Outcome, CliError> {
    let omega = build_chern(b.n).map_err(|e| CliError::Config(e.to_string()))?.omega;
    let degrees = degree_interval(cutoff);
    let integrands = degrees
        .par_iter()
        .map(|d| EulerSeriesIntegrand::new(b, &omega, d))
        .collect::<Result<Vec<_>, _>>()
        .map_err(input_error)?;
    let monomials = zeta_monomials(b.n - 1, zeta_order);
    let items: Vec<(usize, &Vec<u32>)> = (0..degrees.len())
        .flat_map(|k| monomials.iter().map(move |m| (k, m)))
        .collect();
    let terms: Vec<_> = items.par_iter().map(|(k, m)| integrands[*k].term(m)).collect();
    let mut reports: Vec<EulerSeriesReport> = degrees
        .iter()
        .map(|d| EulerSeriesReport {
            check: "euler-series",
            n: b.n,
            d: d.entries().to_vec(),
            zeta_order,
            terms: Vec::new(),
            elapsed_ms: 0,
        })
        .collect();
    let mut verdicts = Vec::with_capacity(terms.len());
    let mut lines = Vec::new();
    for ((k, _), term) in items.iter().zip(terms) {
        verdicts.push(term.status.passed());
        if !term.status.passed() {
            lines.push(format!(
                "FAIL d=[{}] zeta^{:?} residual denominator {}",
                degrees[*k],
                term.monomial,
                term.residual_denominator.join("*")
            ));
        }
        reports[*k].terms.push(term);
    }
    lines.push(format!(
        "{} (d, ζ-monomial) pairs for d ⪯ [{cutoff}], ζ-order ≤ {zeta_order}",
        verdicts.len()
    ));
    Ok(Outcome::from_cases(json!(reports), &verdicts, lines))
}

fn mirror(b: &ClassSeries, cutoff: &MultiDegree) -> Result<Outcome, CliError> {
    let omega = build_chern(b.n).map_err(|e| CliError::Config(e.to_string()))?.omega;
    match mirror_transform(b, &omega, cutoff) {
        Ok((data, a)) => {
            let (again, _) = mirror_transform(&a, &omega, cutoff).map_err(input_error)?;
            let idempotent = again.is_trivial();
            let results = json!({
                "check": "mirror-transform",
                "transform": data.to_json(),
                "a": a.to_json(),
                "idempotent": idempotent,
            });
            let lines = vec![
                format!("normalized {} coefficients up to [{cutoff}]", a.coeffs.len()),
                format!("re-application trivial: {idempotent}"),
            ];
            Ok(Outcome::from_cases(results, &[true, idempotent], lines))
        }
        Err(e @ SeriesError::NonNormalizable { .. }) => Ok(Outcome::from_cases(
            json!({ "check": "mirror-transform", "error": e.to_string() }),
            &[false],
            vec![e.to_string()],
        )),
        Err(e) => Err(input_error(e)),
    }
}
