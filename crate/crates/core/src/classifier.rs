//! Placement on the ladder Ricci-flat ⊂ Einstein ⊂ Ricci-parallel ⊂
//! Ricci-semisymmetric ⊂ holomorphically Ricci-pseudosymmetric.
//!
//! Every rung is decided by two routes: its tensor definition (route A)
//! and its characterization on holomorphic planes (route B). Both are
//! evaluated in a g-orthonormal adapted frame at each sample point, so
//! norms are basis-free, and normalized by a curvature scale of the
//! matching physical dimension:
//!
//! | rung | route A | route B | scale |
//! |---|---|---|---|
//! | Ricci-flat | `‖S‖` | `max |S(v,v)|` | `‖R‖` |
//! | Einstein | `‖S - λ̂g‖`, λ̂ spread | `max |Q^c(u,u;x,Jx)|` | `‖S‖` |
//! | parallel | `‖∇S‖` | `max |(∇_{X+JX}S)(U,U)|` | `‖S‖·‖R‖^½` |
//! | semisymmetric | `‖R·S‖` | `max |(R·S)(u,u;x,Jx)|` | `‖R‖·‖S‖` |
//! | holo. pseudosymmetric | `‖R·S - f*Q^c‖` | spread of `L` | `‖R‖·‖S‖`, `‖R‖` |
//!
//! Norms are max-abs over frame components, sampled vectors are g-unit.

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::curvature::{christoffel, CurvatureBundle};
use crate::metric::MetricJet;
use crate::symmetry::{
    complex_tachibana_ricci, dependence_threshold, deszcz_l, r_dot_s, tachibana_ricci, SymmetryError,
    DEPENDENCE_THRESHOLD,
};
use crate::tensor::{adapted_frame, relative, Bilinear, ComplexStructure, Plane, QuadTensor, Vector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("no sample points")]
    NoPoints,
    #[error("sample plan invalid: {0}")]
    Plan(String),
    #[error("curvature data at {0:?} lacks third derivatives")]
    MissingDerivatives(Vec<f64>),
}

impl From<crate::tensor::TensorError> for ClassifierError {
    fn from(e: crate::tensor::TensorError) -> Self {
        ClassifierError::Symmetry(e.into())
    }
}

impl From<crate::curvature::CurvatureError> for ClassifierError {
    fn from(e: crate::curvature::CurvatureError) -> Self {
        ClassifierError::Symmetry(e.into())
    }
}

/// Default per-criterion relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-7;
/// Tolerance of the Kähler preflight checks.
pub const PREFLIGHT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub ricci_flat: f64,
    pub einstein: f64,
    pub ricci_parallel: f64,
    pub ricci_semisymmetric: f64,
    pub holo_ricci_pseudosymmetric: f64,
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Tolerances {
        Tolerances {
            ricci_flat: tol,
            einstein: tol,
            ricci_parallel: tol,
            ricci_semisymmetric: tol,
            holo_ricci_pseudosymmetric: tol,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::uniform(DEFAULT_TOL)
    }
}

/// Sampling parameters. Minimums: one point, one direction, one plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplePlan {
    pub points: usize,
    pub directions: usize,
    pub planes: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub dependence_threshold: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            points: 25,
            directions: 20,
            planes: 20,
            seed: 0,
            tolerances: Tolerances::default(),
            dependence_threshold: DEPENDENCE_THRESHOLD,
        }
    }
}

impl SamplePlan {
    pub fn validate(&self) -> Result<(), ClassifierError> {
        if self.points == 0 || self.directions == 0 || self.planes == 0 {
            return Err(ClassifierError::Plan(
                "points, directions and planes must each be at least 1".into(),
            ));
        }
        let tols = [
            self.tolerances.ricci_flat,
            self.tolerances.einstein,
            self.tolerances.ricci_parallel,
            self.tolerances.ricci_semisymmetric,
            self.tolerances.holo_ricci_pseudosymmetric,
            self.dependence_threshold,
        ];
        if tols.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(ClassifierError::Plan("tolerances must be positive and finite".into()));
        }
        Ok(())
    }
}

/// Worst relative violations of the Kähler conditions over a set of
/// metric jets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreflightReport {
    pub hermitian: f64,
    pub closed_kahler_form: f64,
    pub parallel_j: f64,
    pub worst_point: Option<Vec<f64>>,
    pub tolerance: f64,
    pub passed: bool,
}

/// `max |(∇_a J)^c_b|` relative to `max |Γ|`, where
/// `(∇_a J)^c_b = Γ^c_am J^m_b - J^c_m Γ^m_ab`.
pub fn nabla_j_violation(m: &MetricJet) -> Result<f64, ClassifierError> {
    let c = christoffel(m)?;
    let dim = m.dim();
    let j = m.j.matrix();
    let mut worst: f64 = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            for cc in 0..dim {
                let mut v = 0.0;
                for mm in 0..dim {
                    v += c.get(cc, a, mm) * j[(mm, b)] - j[(cc, mm)] * c.get(mm, a, b);
                }
                worst = worst.max(v.abs());
            }
        }
    }
    // Γ has units of 1/length; compare against Γ itself and the metric's
    // inverse length scale from its first derivatives.
    let scale = c.max_norm().max(m.dg.iter().fold(0.0, |acc: f64, v| acc.max(v.abs())) / m.g.max_norm());
    Ok(relative(worst, scale))
}

/// Kähler checks (Hermitian metric, closed Kähler form, parallel `J`) at
/// every jet; the report names the worst point.
pub fn preflight_kahler(jets: &[MetricJet], tol: f64) -> Result<PreflightReport, ClassifierError> {
    let mut report = PreflightReport {
        hermitian: 0.0,
        closed_kahler_form: 0.0,
        parallel_j: 0.0,
        worst_point: None,
        tolerance: tol,
        passed: true,
    };
    let mut worst_total = -1.0;
    for m in jets {
        let h = m.hermitian_violation();
        let d = m.kahler_form_closedness();
        let nj = nabla_j_violation(m)?;
        report.hermitian = report.hermitian.max(h);
        report.closed_kahler_form = report.closed_kahler_form.max(d);
        report.parallel_j = report.parallel_j.max(nj);
        let total = h.max(d).max(nj);
        if total > worst_total {
            worst_total = total;
            report.worst_point = Some(m.point.clone());
        }
    }
    report.passed = report.hermitian <= tol && report.closed_kahler_form <= tol && report.parallel_j <= tol;
    Ok(report)
}

/// Per-point evidence for every rung, already normalized.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointEvidence {
    pub point: Vec<f64>,
    pub scal: f64,
    pub lambda_hat: f64,
    pub s_norm: f64,
    pub r_norm: f64,
    pub ricci_flat_a: f64,
    pub ricci_flat_b: f64,
    pub einstein_a: f64,
    pub einstein_b: f64,
    pub parallel_a: f64,
    pub parallel_b: f64,
    pub semisymmetric_a: f64,
    pub semisymmetric_b: f64,
    pub hrps: HrpsPoint,
}

/// Holomorphic Ricci-pseudosymmetry evidence at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HrpsPoint {
    pub attempted: usize,
    pub defined: usize,
    /// defined samples with normalized denominator within 100× of the
    /// threshold
    pub near_threshold: usize,
    /// `(max L - min L) / ‖R‖` over defined holomorphic samples
    pub l_spread: f64,
    /// `f̂ = mean L / 2`; `None` when no sample is defined
    pub f_hat: Option<f64>,
    /// least-squares `f*` minimizing `‖R·S - f Q^c‖`; `None` when `Q^c`
    /// is below the dependence threshold
    pub f_star: Option<f64>,
    /// `‖R·S - f* Q^c‖ / (‖R‖‖S‖)` (with `f* = 0` when undefined)
    pub residual: f64,
    /// `‖R·S - f̂ Q^c‖ / (‖R‖‖S‖)`, when `f̂` exists
    pub residual_f_hat: Option<f64>,
    /// `|f̂ - f*| / ‖R‖`, when both exist
    pub consistency: Option<f64>,
    /// diagnostic only: spread of `L` over non-holomorphic planes
    pub nonholomorphic_spread: Option<f64>,
}

fn unit_sample(rng: &mut impl Rng, dim: usize) -> Vector {
    loop {
        let v = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
        let norm = v.norm();
        if norm > 1e-3 {
            return v / norm;
        }
    }
}

fn frame_norm3(t: &[f64]) -> f64 {
    t.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
}

/// Curvature data transformed to a g-orthonormal adapted frame, where
/// `g = I` and `J` is standard.
#[derive(Debug, Clone)]
pub struct FrameData {
    pub n: usize,
    pub g: Bilinear,
    pub j: ComplexStructure,
    pub s: Bilinear,
    pub r04: QuadTensor,
    /// `R(e_a,e_b)` as frame matrices, `[a * dim + b]`
    pub r_endo: Vec<DMatrix<f64>>,
    pub rs: QuadTensor,
    pub q: QuadTensor,
    pub qc: QuadTensor,
    pub nabla_s: Vec<f64>,
}

impl FrameData {
    pub fn new(bundle: &CurvatureBundle, seed: &Vector) -> Result<FrameData, ClassifierError> {
        if bundle.nabla_ricci.is_empty() {
            return Err(ClassifierError::MissingDerivatives(bundle.point.clone()));
        }
        let dim = bundle.dim();
        let n = dim / 2;
        let frame = adapted_frame(&bundle.g, &bundle.j, seed)?;
        let g = Bilinear::identity(dim);
        let j = ComplexStructure::standard(n);
        let s = bundle.ricci.in_frame(&frame);
        let r04 = bundle.r04().in_frame(&frame);
        let f = frame.matrix();
        // frame matrix of R(e_a, e_b): F⁻¹ R(Fe_a, Fe_b) F
        let finv = f.clone().try_inverse().ok_or(crate::curvature::CurvatureError::SingularMetric)?;
        let mut r_endo = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                let ea = f.column(a).into_owned();
                let eb = f.column(b).into_owned();
                r_endo.push(&finv * bundle.r_endomorphism(&ea, &eb) * &f);
            }
        }
        let rs = r_dot_s(bundle).in_frame(&frame);
        let q = tachibana_ricci(&g, &s)?;
        let qc = complex_tachibana_ricci(&g, &s, &j)?;
        let nabla_s = bundle.nabla_ricci_in_frame(&frame);
        Ok(FrameData {
            n,
            g,
            j,
            s,
            r04,
            r_endo,
            rs,
            q,
            qc,
            nabla_s,
        })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn nabla_s_eval(&self, x: &Vector, y: &Vector, z: &Vector) -> f64 {
        let dim = self.dim();
        let mut total = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    total += self.nabla_s[(a * dim + b) * dim + c] * x[a] * y[b] * z[c];
                }
            }
        }
        total
    }
}

fn dot(a: &QuadTensor, b: &QuadTensor) -> f64 {
    a.components().iter().zip(b.components()).map(|(x, y)| x * y).sum()
}

/// Gather the evidence at one point. `rng` drives the frame seed and all
/// sampled directions and planes.
pub fn point_evidence(
    bundle: &CurvatureBundle,
    plan: &SamplePlan,
    rng: &mut impl Rng,
) -> Result<PointEvidence, ClassifierError> {
    let dim = bundle.dim();
    let seed = unit_sample(rng, dim);
    let fd = FrameData::new(bundle, &seed)?;
    let n = fd.n;
    let s_norm = fd.s.max_norm();
    let r_norm = fd.r04.max_norm();
    let scal = fd.s.matrix().trace();
    let lambda_hat = scal / (2 * n) as f64;

    let ricci_flat_a = relative(s_norm, r_norm);
    let einstein_a = relative((fd.s.matrix() - DMatrix::identity(dim, dim) * lambda_hat).amax(), s_norm);
    let nabla_scale = s_norm * r_norm.sqrt();
    let parallel_a = relative(frame_norm3(&fd.nabla_s), nabla_scale);
    let rs_scale = r_norm * s_norm;
    let semisymmetric_a = relative(fd.rs.max_norm(), rs_scale);

    let directions: Vec<Vector> = (0..plan.directions).map(|_| unit_sample(rng, dim)).collect();
    let planes: Vec<Vector> = (0..plan.planes).map(|_| unit_sample(rng, dim)).collect();

    let mut ricci_flat_b: f64 = 0.0;
    let mut einstein_b: f64 = 0.0;
    let mut parallel_b: f64 = 0.0;
    let mut semisymmetric_b: f64 = 0.0;
    for u in &directions {
        ricci_flat_b = ricci_flat_b.max(fd.s.eval(u, u).abs());
        for x in &planes {
            let jx = fd.j.apply(x);
            einstein_b = einstein_b.max(fd.qc.eval(u, u, x, &jx).abs());
            semisymmetric_b = semisymmetric_b.max(fd.rs.eval(u, u, x, &jx).abs());
            parallel_b = parallel_b.max(fd.nabla_s_eval(u, u, &(x + &jx)).abs());
        }
    }

    let hrps = hrps_point(&bundle.point, &fd, &directions, &planes, plan, rng)?;

    Ok(PointEvidence {
        point: bundle.point.clone(),
        scal,
        lambda_hat,
        s_norm,
        r_norm,
        ricci_flat_a,
        ricci_flat_b: relative(ricci_flat_b, r_norm),
        einstein_a,
        einstein_b: relative(einstein_b, s_norm),
        parallel_a,
        parallel_b: relative(parallel_b, nabla_scale),
        semisymmetric_a,
        semisymmetric_b: relative(semisymmetric_b, rs_scale),
        hrps,
    })
}

fn hrps_point(
    point: &[f64],
    fd: &FrameData,
    directions: &[Vector],
    planes: &[Vector],
    plan: &SamplePlan,
    rng: &mut impl Rng,
) -> Result<HrpsPoint, ClassifierError> {
    let dim = fd.dim();
    let s_norm = fd.s.max_norm();
    let r_norm = fd.r04.max_norm();
    let threshold = dependence_threshold(plan.dependence_threshold, fd.q.max_norm(), s_norm);
    let mut ls = Vec::new();
    let mut near_threshold = 0;
    let mut attempted = 0;
    for u in directions {
        for x in planes {
            attempted += 1;
            let sample = deszcz_l(point, &fd.rs, &fd.q, &fd.g, u, &Plane::holomorphic(x.clone(), &fd.j), threshold)?;
            if let Some(l) = sample.l {
                ls.push(l);
                if sample.normalized_denominator.abs() < 100.0 * threshold {
                    near_threshold += 1;
                }
            }
        }
    }
    let spread = |ls: &[f64]| {
        let (lo, hi) = ls
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| (lo.min(*l), hi.max(*l)));
        relative(hi - lo, r_norm)
    };
    let l_spread = if ls.is_empty() { 0.0 } else { spread(&ls) };
    let f_hat = (!ls.is_empty()).then(|| ls.iter().sum::<f64>() / ls.len() as f64 / 2.0);

    let qc_sq = dot(&fd.qc, &fd.qc);
    let f_star = (fd.qc.max_norm() > threshold).then(|| dot(&fd.rs, &fd.qc) / qc_sq);
    let rs_scale = r_norm * s_norm;
    let residual = relative(fd.rs.sub(&fd.qc.scaled(f_star.unwrap_or(0.0))).max_norm(), rs_scale);
    let residual_f_hat = f_hat.map(|f| relative(fd.rs.sub(&fd.qc.scaled(f)).max_norm(), rs_scale));
    let consistency = match (f_hat, f_star) {
        (Some(a), Some(b)) => Some(relative(a - b, r_norm)),
        _ => None,
    };

    let mut other = Vec::new();
    for u in directions {
        let x = unit_sample(rng, dim);
        let y = unit_sample(rng, dim);
        if let Ok(sample) = deszcz_l(point, &fd.rs, &fd.q, &fd.g, u, &Plane::new(x, y), threshold) {
            if let Some(l) = sample.l {
                other.push(l);
            }
        }
    }
    let nonholomorphic_spread = (!other.is_empty()).then(|| spread(&other));

    Ok(HrpsPoint {
        attempted,
        defined: ls.len(),
        near_threshold,
        l_spread,
        f_hat,
        f_star,
        residual,
        residual_f_hat,
        consistency,
        nonholomorphic_spread,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    fn from_routes(a: f64, b: f64, tol: f64) -> Verdict {
        match (a <= tol, b <= tol) {
            (true, true) => Verdict::Pass,
            (false, false) => Verdict::Fail,
            _ => Verdict::Inconclusive,
        }
    }
}

/// Rung of the ladder, ordered from strongest to weakest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LadderClass {
    RicciFlat,
    Einstein,
    RicciParallel,
    RicciSemisymmetric,
    HoloRicciPseudosymmetric,
    None,
}

impl LadderClass {
    pub const ALL: [LadderClass; 6] = [
        LadderClass::RicciFlat,
        LadderClass::Einstein,
        LadderClass::RicciParallel,
        LadderClass::RicciSemisymmetric,
        LadderClass::HoloRicciPseudosymmetric,
        LadderClass::None,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LadderClass::RicciFlat => "ricci-flat",
            LadderClass::Einstein => "einstein",
            LadderClass::RicciParallel => "ricci-parallel",
            LadderClass::RicciSemisymmetric => "ricci-semisymmetric",
            LadderClass::HoloRicciPseudosymmetric => "holo-ricci-pseudosymmetric",
            LadderClass::None => "none",
        }
    }

    pub fn parse(s: &str) -> Option<LadderClass> {
        let key = s.trim().to_ascii_lowercase().replace(['_', ' '], "-");
        LadderClass::ALL.into_iter().find(|c| c.name() == key)
    }
}

/// Two-route verdict for one rung; route values are maxima over points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Criterion {
    pub verdict: Verdict,
    pub route_a: f64,
    pub route_b: f64,
    pub tolerance: f64,
}

impl Criterion {
    fn new(route_a: f64, route_b: f64, tolerance: f64) -> Criterion {
        Criterion {
            verdict: Verdict::from_routes(route_a, route_b, tolerance),
            route_a,
            route_b,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EinsteinVerdict {
    #[serde(flatten)]
    pub criterion: Criterion,
    /// mean of `Scal/(2n)` over points
    pub lambda: f64,
    /// `(max λ̂ - min λ̂) / max(|λ̂|)` across points
    pub lambda_spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HrpsVerdict {
    #[serde(flatten)]
    pub criterion: Criterion,
    /// per-point `f̂_S`, in point order
    pub f_s: Vec<Option<f64>>,
    /// `f̂_S` equal across points where defined
    pub f_constant: bool,
    pub attempted_samples: usize,
    pub defined_samples: usize,
    pub near_threshold_samples: usize,
    pub max_consistency: Option<f64>,
    pub max_nonholomorphic_spread: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderVerdict {
    pub ricci_flat: Criterion,
    pub einstein: EinsteinVerdict,
    pub ricci_parallel: Criterion,
    pub ricci_semisymmetric: Criterion,
    pub holo_ricci_pseudosymmetric: HrpsVerdict,
    /// strongest rung passed together with all weaker ones
    pub class: LadderClass,
    pub below_theorem_dimension: bool,
    pub lattice_violations: Vec<String>,
    pub route_disagreements: Vec<String>,
}

impl LadderVerdict {
    /// Lattice violations always count; route disagreements count only
    /// where the characterization theorems apply (`n ≥ 2`).
    pub fn is_consistent(&self) -> bool {
        self.lattice_violations.is_empty() && (self.below_theorem_dimension || self.route_disagreements.is_empty())
    }

    pub fn rungs(&self) -> [(LadderClass, Verdict); 5] {
        [
            (LadderClass::RicciFlat, self.ricci_flat.verdict),
            (LadderClass::Einstein, self.einstein.criterion.verdict),
            (LadderClass::RicciParallel, self.ricci_parallel.verdict),
            (LadderClass::RicciSemisymmetric, self.ricci_semisymmetric.verdict),
            (LadderClass::HoloRicciPseudosymmetric, self.holo_ricci_pseudosymmetric.criterion.verdict),
        ]
    }
}

fn max_of(evidence: &[PointEvidence], f: impl Fn(&PointEvidence) -> f64) -> f64 {
    evidence.iter().map(f).fold(0.0, f64::max)
}

pub fn is_ricci_flat(evidence: &[PointEvidence], tol: f64) -> Criterion {
    Criterion::new(
        max_of(evidence, |e| e.ricci_flat_a),
        max_of(evidence, |e| e.ricci_flat_b),
        tol,
    )
}

pub fn is_einstein(evidence: &[PointEvidence], tol: f64) -> EinsteinVerdict {
    let lambdas: Vec<f64> = evidence.iter().map(|e| e.lambda_hat).collect();
    let lambda = lambdas.iter().sum::<f64>() / lambdas.len().max(1) as f64;
    let (lo, hi) = lambdas
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| (lo.min(*l), hi.max(*l)));
    let scale = lambdas.iter().fold(0.0, |m: f64, l| m.max(l.abs()));
    let lambda_spread = if lambdas.is_empty() { 0.0 } else { relative(hi - lo, scale) };
    let route_a = max_of(evidence, |e| e.einstein_a).max(lambda_spread);
    EinsteinVerdict {
        criterion: Criterion::new(route_a, max_of(evidence, |e| e.einstein_b), tol),
        lambda,
        lambda_spread,
    }
}

pub fn is_ricci_parallel(evidence: &[PointEvidence], tol: f64) -> Criterion {
    Criterion::new(
        max_of(evidence, |e| e.parallel_a),
        max_of(evidence, |e| e.parallel_b),
        tol,
    )
}

pub fn is_ricci_semisymmetric(evidence: &[PointEvidence], tol: f64) -> Criterion {
    Criterion::new(
        max_of(evidence, |e| e.semisymmetric_a),
        max_of(evidence, |e| e.semisymmetric_b),
        tol,
    )
}

/// Route A: tensor residual `‖R·S - f*Q^c‖`; route B: spread of `L` over
/// holomorphic planes. Points with no defined sample pass route B
/// vacuously.
pub fn is_holo_ricci_pseudosymmetric(evidence: &[PointEvidence], tol: f64) -> HrpsVerdict {
    let route_a = max_of(evidence, |e| e.hrps.residual.max(e.hrps.residual_f_hat.unwrap_or(0.0)));
    let route_b = max_of(evidence, |e| e.hrps.l_spread);
    let f_s: Vec<Option<f64>> = evidence.iter().map(|e| e.hrps.f_hat).collect();
    let defined: Vec<(f64, f64)> = evidence
        .iter()
        .filter_map(|e| e.hrps.f_hat.map(|f| (f, e.r_norm)))
        .collect();
    let f_constant = match defined.first() {
        None => true,
        Some(&(f0, _)) => defined.iter().all(|&(f, r)| relative(f - f0, r) <= tol),
    };
    let opt_max = |f: &dyn Fn(&PointEvidence) -> Option<f64>| {
        evidence.iter().filter_map(f).fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))))
    };
    HrpsVerdict {
        criterion: Criterion::new(route_a, route_b, tol),
        f_s,
        f_constant,
        attempted_samples: evidence.iter().map(|e| e.hrps.attempted).sum(),
        defined_samples: evidence.iter().map(|e| e.hrps.defined).sum(),
        near_threshold_samples: evidence.iter().map(|e| e.hrps.near_threshold).sum(),
        max_consistency: opt_max(&|e| e.hrps.consistency),
        max_nonholomorphic_spread: opt_max(&|e| e.hrps.nonholomorphic_spread),
    }
}

/// Run every criterion, determine the class and record lattice violations
/// and route disagreements (never repaired).
pub fn classify(evidence: &[PointEvidence], plan: &SamplePlan, n: usize) -> Result<LadderVerdict, ClassifierError> {
    if evidence.is_empty() {
        return Err(ClassifierError::NoPoints);
    }
    let tol = &plan.tolerances;
    let mut ricci_flat = is_ricci_flat(evidence, tol.ricci_flat);
    let einstein = is_einstein(evidence, tol.einstein);
    // Ricci-flat additionally requires λ = 0, implied by route A at the
    // same tolerance; kept explicit for the report.
    if ricci_flat.verdict == Verdict::Pass && einstein.criterion.verdict == Verdict::Pass {
        let scale = max_of(evidence, |e| e.r_norm);
        if relative(einstein.lambda, scale) > tol.ricci_flat {
            ricci_flat.verdict = Verdict::Fail;
        }
    }
    let ricci_parallel = is_ricci_parallel(evidence, tol.ricci_parallel);
    let ricci_semisymmetric = is_ricci_semisymmetric(evidence, tol.ricci_semisymmetric);
    let hrps = is_holo_ricci_pseudosymmetric(evidence, tol.holo_ricci_pseudosymmetric);

    let mut verdict = LadderVerdict {
        ricci_flat,
        einstein,
        ricci_parallel,
        ricci_semisymmetric,
        holo_ricci_pseudosymmetric: hrps,
        class: LadderClass::None,
        below_theorem_dimension: n < 2,
        lattice_violations: Vec::new(),
        route_disagreements: Vec::new(),
    };
    let rungs = verdict.rungs();
    for w in rungs.windows(2) {
        let ((strong, sv), (weak, wv)) = (w[0], w[1]);
        if sv == Verdict::Pass && wv == Verdict::Fail {
            verdict
                .lattice_violations
                .push(format!("{} passes but {} fails", strong.name(), weak.name()));
        }
    }
    for (rung, v) in rungs {
        if v == Verdict::Inconclusive {
            verdict
                .route_disagreements
                .push(format!("{}: definition and holomorphic characterization disagree", rung.name()));
        }
    }
    // strongest rung such that it and every weaker rung pass
    let mut class = LadderClass::None;
    for (rung, v) in rungs.iter().rev() {
        if *v == Verdict::Pass {
            class = *rung;
        } else {
            break;
        }
    }
    verdict.class = class;
    Ok(verdict)
}
