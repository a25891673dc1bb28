//! Sampling driver and run reports.
//!
//! A run samples points in the manifold's domain box, checks the Kähler
//! conditions, computes curvature and evidence per point (in parallel,
//! collected in point order), runs the identity suite and classifies.
//! Given the same spec and plan the JSON report is byte-identical;
//! wall-clock timings are therefore kept out of it.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::{
    classify, point_evidence, preflight_kahler, ClassifierError, FrameData, LadderVerdict, PointEvidence,
    PreflightReport, SamplePlan, PREFLIGHT_TOL,
};
use crate::curvature::{curvature_bundle, CurvatureBundle};
use crate::identities::{identity_suite, merge, IdentityCheck};
use crate::metric::{metric_jet, MetricJet};
use crate::tensor::Vector;
use crate::zoo::{ManifoldSpec, SAMPLING_MARGIN};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RunError {
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error("could not find {wanted} valid points in the domain box after {attempts} attempts")]
    Sampling { wanted: usize, attempts: usize },
    #[error(
        "not Kähler: worst relative violations hermitian {:.3e}, dω {:.3e}, ∇J {:.3e} at {:?}",
        .0.hermitian, .0.closed_kahler_form, .0.parallel_j, .0.worst_point
    )]
    Preflight(PreflightReport),
}

/// Random pairs per point used by sample-based identity checks.
pub const IDENTITY_SAMPLES: usize = 20;
/// Attempts per wanted point before sampling gives up.
pub const ATTEMPTS_PER_POINT: usize = 100;

/// Uniform points in the margin-shrunk domain box whose metric jet of
/// order 3 exists and is positive definite.
pub fn sample_points(spec: &ManifoldSpec, count: usize, seed: u64) -> Result<Vec<MetricJet>, RunError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jets = Vec::with_capacity(count);
    let attempts = count * ATTEMPTS_PER_POINT;
    for _ in 0..attempts {
        if jets.len() == count {
            break;
        }
        let point: Vec<f64> = spec
            .domain
            .iter()
            .map(|[lo, hi]| rng.gen_range(lo + SAMPLING_MARGIN..hi - SAMPLING_MARGIN))
            .collect();
        if let Ok(jet) = metric_jet(&spec.expr, &point, 3) {
            jets.push(jet);
        }
    }
    if jets.len() < count {
        return Err(RunError::Sampling { wanted: count, attempts });
    }
    Ok(jets)
}

/// Independent generator for point `index`: same seed, separate stream.
pub fn point_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

fn bundles(jets: &[MetricJet]) -> Result<Vec<CurvatureBundle>, RunError> {
    jets.par_iter()
        .map(|j| curvature_bundle(j).map_err(|e| RunError::Classifier(e.into())))
        .collect()
}

fn checked_points(spec: &ManifoldSpec, plan: &SamplePlan) -> Result<(Vec<MetricJet>, PreflightReport), RunError> {
    plan.validate()?;
    let jets = sample_points(spec, plan.points, plan.seed)?;
    let preflight = preflight_kahler(&jets, PREFLIGHT_TOL)?;
    if !preflight.passed {
        return Err(RunError::Preflight(preflight));
    }
    Ok((jets, preflight))
}

fn point_identities(bundle: &CurvatureBundle, rng: &mut ChaCha8Rng) -> Result<Vec<IdentityCheck>, ClassifierError> {
    let dim = bundle.dim();
    let seed = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
    let fd = FrameData::new(bundle, &seed)?;
    Ok(identity_suite(&fd, rng, IDENTITY_SAMPLES))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub spec: ManifoldSpec,
    pub plan: SamplePlan,
    pub preflight: PreflightReport,
    pub verdict: LadderVerdict,
    pub expected_class_matches: Option<bool>,
    pub identities: Vec<IdentityCheck>,
    pub points: Vec<PointEvidence>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Preflight, per-point curvature and evidence, identity suite and
/// classification.
pub fn run(spec: &ManifoldSpec, plan: &SamplePlan) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let (jets, preflight) = checked_points(spec, plan)?;
    let bundles = bundles(&jets)?;
    let per_point: Vec<(PointEvidence, Vec<IdentityCheck>)> = bundles
        .par_iter()
        .enumerate()
        .map(|(i, b)| {
            let mut rng = point_rng(plan.seed, i);
            let evidence = point_evidence(b, plan, &mut rng)?;
            let identities = point_identities(b, &mut rng)?;
            Ok((evidence, identities))
        })
        .collect::<Result<_, ClassifierError>>()?;
    let (points, suites): (Vec<_>, Vec<_>) = per_point.into_iter().unzip();
    let verdict = classify(&points, plan, spec.n)?;
    let expected_class_matches = spec.expected_class.map(|c| c == verdict.class);
    Ok(RunReport {
        spec: spec.clone(),
        plan: *plan,
        preflight,
        verdict,
        expected_class_matches,
        identities: merge(&suites),
        points,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub spec: ManifoldSpec,
    pub plan: SamplePlan,
    pub preflight: PreflightReport,
    pub identities: Vec<IdentityCheck>,
    pub passed: bool,
}

/// Only the identity suite, on the same points a full run would use.
pub fn run_identities(spec: &ManifoldSpec, plan: &SamplePlan) -> Result<IdentityReport, RunError> {
    let (jets, preflight) = checked_points(spec, plan)?;
    let bundles = bundles(&jets)?;
    let suites: Vec<Vec<IdentityCheck>> = bundles
        .par_iter()
        .enumerate()
        .map(|(i, b)| point_identities(b, &mut point_rng(plan.seed, i)))
        .collect::<Result<_, ClassifierError>>()?;
    let identities = merge(&suites);
    let passed = identities.iter().all(|c| c.passed);
    Ok(IdentityReport {
        spec: spec.clone(),
        plan: *plan,
        preflight,
        identities,
        passed,
    })
}

/// Human-readable summary table.
pub fn render_table(report: &RunReport) -> String {
    use std::fmt::Write;
    let v = &report.verdict;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} (n = {}, {} points, seed {})",
        report.spec.name, report.spec.n, report.plan.points, report.plan.seed
    );
    let _ = writeln!(out, "{:<28} {:<13} {:>11} {:>11}", "criterion", "verdict", "route A", "route B");
    let hrps = &v.holo_ricci_pseudosymmetric.criterion;
    for (name, c) in [
        ("ricci-flat", &v.ricci_flat),
        ("einstein", &v.einstein.criterion),
        ("ricci-parallel", &v.ricci_parallel),
        ("ricci-semisymmetric", &v.ricci_semisymmetric),
        ("holo-ricci-pseudosymmetric", hrps),
    ] {
        let _ = writeln!(
            out,
            "{:<28} {:<13} {:>11.3e} {:>11.3e}",
            name,
            format!("{:?}", c.verdict).to_lowercase(),
            c.route_a,
            c.route_b
        );
    }
    let _ = writeln!(out, "lambda = {:.10} (spread {:.2e})", v.einstein.lambda, v.einstein.lambda_spread);
    let h = &v.holo_ricci_pseudosymmetric;
    let _ = writeln!(
        out,
        "deszcz samples: {} defined of {} ({} near threshold)",
        h.defined_samples, h.attempted_samples, h.near_threshold_samples
    );
    let _ = writeln!(out, "class: {}", v.class.name());
    if let Some(m) = report.expected_class_matches {
        let _ = writeln!(out, "expected class matches: {m}");
    }
    if v.below_theorem_dimension {
        let _ = writeln!(out, "note: n = 1 is below the dimension of the characterization theorems");
    }
    for msg in v.lattice_violations.iter().chain(&v.route_disagreements) {
        let _ = writeln!(out, "warning: {msg}");
    }
    let failed: Vec<&str> = report.identities.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if failed.is_empty() {
        let _ = writeln!(out, "identities: all {} pass", report.identities.len());
    } else {
        let _ = writeln!(out, "identities failing: {}", failed.join(", "));
    }
    out
}
