//! The derived (0,4)-tensors `R·S`, `Q(g,S)` and `Q^c(g,S)`, the Deszcz
//! Ricci curvature, and two numerical experiments that give `Q^c` and
//! `R·S` their geometric meaning.
//!
//! All three tensors are laid out as `T(x₁, x₂; x, y)` with the bilinear
//! slots first: `T(x₁,x₂;x,y) = (A(x,y)·S)(x₁,x₂)` for the endomorphism
//! `A = R(x,y)`, `x ∧_g y` or `x ∧^c_g y`.

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::curvature::{
    coordinate_parallelogram, curvature_bundle, parallel_transport, sectional, CurvatureBundle, CurvatureError,
};
use crate::metric::MetricField;
use crate::tensor::{
    derivation_tensor, relative, wedge_c_matrix, wedge_g_matrix, Bilinear, ComplexStructure, Plane, QuadTensor,
    SymmetryTag, TensorError, Vector, HERMITIAN_TOL, NORM_FLOOR,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error("plane basis is not g-orthonormal (deviation {0:.3e})")]
    NotOrthonormal(f64),
    #[error("step ladder must be positive and strictly decreasing")]
    BadLadder,
    #[error("coordinate directions must be distinct and in range")]
    BadDirections,
    #[error("zero vector")]
    ZeroVector,
    #[error("plane is degenerate")]
    DegeneratePlane,
}

fn unit(dim: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[i] = 1.0;
    v
}

/// `(R·S)(x₁,x₂;x,y) = -S(R(x,y)x₁, x₂) - S(x₁, R(x,y)x₂)`.
pub fn r_dot_s(bundle: &CurvatureBundle) -> QuadTensor {
    derivation_tensor(bundle.dim(), &bundle.ricci, SymmetryTag::RsLike, |a, b| {
        bundle.r_endomorphism_basis(a, b)
    })
}

/// Tachibana–Ricci tensor `Q(g,S)(x₁,x₂;x,y) = ((x ∧_g y)·S)(x₁,x₂)`.
pub fn tachibana_ricci(g: &Bilinear, s: &Bilinear) -> Result<QuadTensor, SymmetryError> {
    let dim = g.dim();
    if s.dim() != dim {
        return Err(TensorError::DimensionMismatch {
            expected: dim,
            found: s.dim(),
        }
        .into());
    }
    Ok(derivation_tensor(dim, s, SymmetryTag::None, |a, b| {
        wedge_g_matrix(g, &unit(dim, a), &unit(dim, b))
    }))
}

/// Complex Tachibana–Ricci tensor `Q^c(g,S)(x₁,x₂;x,y) = ((x ∧^c_g y)·S)(x₁,x₂)`.
pub fn complex_tachibana_ricci(
    g: &Bilinear,
    s: &Bilinear,
    j: &ComplexStructure,
) -> Result<QuadTensor, SymmetryError> {
    let dim = g.dim();
    if s.dim() != dim || j.dim() != dim {
        return Err(TensorError::DimensionMismatch {
            expected: dim,
            found: if s.dim() != dim { s.dim() } else { j.dim() },
        }
        .into());
    }
    let violation = g.hermitian_violation(j);
    if violation > HERMITIAN_TOL {
        return Err(TensorError::NotHermitian { violation }.into());
    }
    Ok(derivation_tensor(dim, s, SymmetryTag::RsLike, |a, b| {
        wedge_c_matrix(g, j, &unit(dim, a), &unit(dim, b))
    }))
}

/// Largest `|Q^c(x, Jx; y, z)|` over random `x, y, z`, relative to
/// `‖Q^c‖` and normalized by `|x|²|y||z|` in the Euclidean chart norm.
pub fn holomorphic_first_slot_check(
    qc: &QuadTensor,
    j: &ComplexStructure,
    rng: &mut impl Rng,
    samples: usize,
) -> f64 {
    let dim = qc.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
        let y = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
        let z = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
        let scale = x.norm_squared() * y.norm() * z.norm();
        if scale > 0.0 {
            worst = worst.max(qc.eval(&x, &j.apply(&x), &y, &z).abs() / scale);
        }
    }
    relative(worst, qc.max_norm())
}

/// Tensor form of the same identity: the part of `U(p,q;a,b) =
/// Q^c(p, Jq; a, b)` symmetric in `(p,q)` vanishes.
pub fn holomorphic_first_slot_tensor_violation(qc: &QuadTensor, j: &ComplexStructure) -> f64 {
    let u = qc.map_slot(1, j.matrix());
    let sym = u.add(&u.swap_slots(0, 1));
    relative(0.5 * sym.max_norm(), qc.max_norm())
}

/// One evaluation of the Deszcz Ricci curvature `L_S(p, v, x∧y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeszczSample {
    pub point: Vec<f64>,
    pub v: Vector,
    pub plane: Plane,
    /// `(R·S)(v,v;x,y)`
    pub numerator: f64,
    /// `Q(g,S)(v,v;x,y)`
    pub denominator: f64,
    /// `denominator / (g(v,v)·|x∧y|_g)`, the basis-free size used for the
    /// dependence decision.
    pub normalized_denominator: f64,
    pub l: Option<f64>,
}

/// Default relative dependence threshold.
pub const DEPENDENCE_THRESHOLD: f64 = 1e-8;

/// Absolute threshold on normalized denominators:
/// `rel · max(‖Q‖, ‖S‖, NORM_FLOOR)` with both norms taken in a
/// g-orthonormal frame.
pub fn dependence_threshold(rel: f64, q_frame_norm: f64, s_frame_norm: f64) -> f64 {
    rel * q_frame_norm.max(s_frame_norm).max(NORM_FLOOR)
}

/// `L = (R·S)(v,v;x,y) / Q(g,S)(v,v;x,y)`, defined when the normalized
/// denominator exceeds `threshold` (see [`dependence_threshold`]).
pub fn deszcz_l(
    point: &[f64],
    rs: &QuadTensor,
    q: &QuadTensor,
    g: &Bilinear,
    v: &Vector,
    plane: &Plane,
    threshold: f64,
) -> Result<DeszczSample, SymmetryError> {
    let vv = g.eval(v, v);
    if !(vv > 0.0) {
        return Err(SymmetryError::ZeroVector);
    }
    let area_sq = plane.area_squared(g);
    let scale = g.eval(&plane.x, &plane.x) * g.eval(&plane.y, &plane.y);
    if !(area_sq > 1e-14 * scale) {
        return Err(SymmetryError::DegeneratePlane);
    }
    let numerator = rs.eval(v, v, &plane.x, &plane.y);
    let denominator = q.eval(v, v, &plane.x, &plane.y);
    let normalized_denominator = denominator / (vv * area_sq.sqrt());
    let l = (normalized_denominator.abs() > threshold).then(|| numerator / denominator);
    Ok(DeszczSample {
        point: point.to_vec(),
        v: v.clone(),
        plane: plane.clone(),
        numerator,
        denominator,
        normalized_denominator,
        l,
    })
}

/// Outcome of a step-ladder experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub ladder: Vec<f64>,
    pub defects: Vec<f64>,
    pub extrapolated: f64,
    pub predicted: f64,
    pub absolute_error: f64,
    /// `absolute_error / max(|predicted|, NORM_FLOOR)`
    pub relative_error: f64,
}

impl ExperimentResult {
    fn new(ladder: Vec<f64>, defects: Vec<f64>, coefficients: &[f64], predicted: f64) -> ExperimentResult {
        let extrapolated = neville_at_zero(&ladder, coefficients);
        let absolute_error = (extrapolated - predicted).abs();
        ExperimentResult {
            ladder,
            defects,
            extrapolated,
            predicted,
            absolute_error,
            relative_error: relative(absolute_error, predicted),
        }
    }
}

/// Value at 0 of the interpolating polynomial through `(xs[i], ys[i])`.
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut p = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
    }
    p[0]
}

fn check_ladder(ladder: &[f64]) -> Result<(), SymmetryError> {
    let ok = !ladder.is_empty()
        && ladder.iter().all(|h| h.is_finite() && *h > 0.0)
        && ladder.windows(2).all(|w| w[1] < w[0]);
    if ok {
        Ok(())
    } else {
        Err(SymmetryError::BadLadder)
    }
}

/// Orthonormality tolerance for the rotation experiment's plane basis.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Rotate `v` infinitesimally in the plane `x∧y` and then in `Jx∧Jy`:
/// `v'' = v + ε(x∧_g y)v + ε(Jx∧_g Jy)v`. The first-order coefficient of
/// `S(v'',v'') - S(v,v)` is compared to `-Q^c(g,S)(v,v;x,y)`.
pub fn rotation_experiment(
    g: &Bilinear,
    s: &Bilinear,
    j: &ComplexStructure,
    v: &Vector,
    x: &Vector,
    y: &Vector,
    ladder: &[f64],
) -> Result<ExperimentResult, SymmetryError> {
    check_ladder(ladder)?;
    let deviation = [
        (g.eval(x, x) - 1.0).abs(),
        (g.eval(y, y) - 1.0).abs(),
        g.eval(x, y).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if !(deviation <= ORTHONORMAL_TOL) {
        return Err(SymmetryError::NotOrthonormal(deviation));
    }
    let qc = complex_tachibana_ricci(g, s, j)?;
    let predicted = -qc.eval(v, v, x, y);
    let rotation = wedge_g_matrix(g, x, y) + wedge_g_matrix(g, &j.apply(x), &j.apply(y));
    let base = s.eval(v, v);
    let mut defects = Vec::with_capacity(ladder.len());
    let mut coefficients = Vec::with_capacity(ladder.len());
    for &eps in ladder {
        let rotated = v + &rotation * v * eps;
        let d = s.eval(&rotated, &rotated) - base;
        defects.push(d);
        coefficients.push(d / eps);
    }
    Ok(ExperimentResult::new(ladder.to_vec(), defects, &coefficients, predicted))
}

/// Default RK4 steps per parallelogram side.
pub const TRANSPORT_STEPS: usize = 16;

fn check_directions(dim: usize, a: usize, b: usize) -> Result<(), SymmetryError> {
    if a == b || a >= dim || b >= dim {
        Err(SymmetryError::BadDirections)
    } else {
        Ok(())
    }
}

fn transported_loops(
    field: &MetricField,
    point: &[f64],
    v: &Vector,
    a: usize,
    b: usize,
    ladder: &[f64],
    steps: usize,
) -> Result<Vec<Vector>, SymmetryError> {
    check_ladder(ladder)?;
    check_directions(field.dim(), a, b)?;
    ladder
        .iter()
        .map(|&h| {
            let path = coordinate_parallelogram(point, a, b, h);
            Ok(parallel_transport(field, &path, v, steps)?)
        })
        .collect()
}

fn bundle_at(field: &MetricField, point: &[f64]) -> Result<CurvatureBundle, SymmetryError> {
    let jet = field.jet(point, 3).map_err(CurvatureError::from)?;
    Ok(curvature_bundle(&jet)?)
}

/// Transport `v` around the `h × h` coordinate parallelogram spanned by
/// `∂_a, ∂_b` and measure the change `S(v_h, v_h) - S(v, v)` at the base
/// point. Since `v_h = v - h² R(∂_a,∂_b)v + O(h³)`, the `h²` coefficient
/// is `+(R·S)(v,v;∂_a,∂_b)`.
pub fn transport_experiment(
    field: &MetricField,
    point: &[f64],
    v: &Vector,
    a: usize,
    b: usize,
    ladder: &[f64],
    steps: usize,
) -> Result<ExperimentResult, SymmetryError> {
    let bundle = bundle_at(field, point)?;
    let dim = bundle.dim();
    let predicted = r_dot_s(&bundle).eval(v, v, &unit(dim, a), &unit(dim, b));
    let finals = transported_loops(field, point, v, a, b, ladder, steps)?;
    let base = bundle.ricci.eval(v, v);
    let defects: Vec<f64> = finals.iter().map(|w| bundle.ricci.eval(w, w) - base).collect();
    let coefficients: Vec<f64> = defects.iter().zip(ladder).map(|(d, h)| d / (h * h)).collect();
    Ok(ExperimentResult::new(ladder.to_vec(), defects, &coefficients, predicted))
}

/// Vector defect of the transport loop against `-R(∂_a,∂_b)v`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopDefect {
    pub ladder: Vec<f64>,
    /// `(v_h - v) / h²` for each `h`
    pub coefficients: Vec<Vector>,
    pub extrapolated: Vector,
    pub predicted: Vector,
    /// `|extrapolated - predicted|_g / |predicted|_g`
    pub relative_error: f64,
    /// worst `| |v_h|_g - |v|_g | / |v|_g` over the ladder
    pub norm_drift: f64,
}

pub fn parallelogram_defect(
    field: &MetricField,
    point: &[f64],
    v: &Vector,
    a: usize,
    b: usize,
    ladder: &[f64],
    steps: usize,
) -> Result<LoopDefect, SymmetryError> {
    let bundle = bundle_at(field, point)?;
    let predicted = -(bundle.r_endomorphism_basis(a, b) * v);
    let finals = transported_loops(field, point, v, a, b, ladder, steps)?;
    let g = &bundle.g;
    let v_norm = g.eval(v, v).sqrt();
    if !(v_norm > 0.0) {
        return Err(SymmetryError::ZeroVector);
    }
    let norm_drift = finals
        .iter()
        .map(|w| (g.eval(w, w).sqrt() - v_norm).abs() / v_norm)
        .fold(0.0, f64::max);
    let coefficients: Vec<Vector> = finals
        .iter()
        .zip(ladder)
        .map(|(w, h)| (w - v) / (h * h))
        .collect();
    let dim = bundle.dim();
    let extrapolated = Vector::from_fn(dim, |i, _| {
        let ys: Vec<f64> = coefficients.iter().map(|c| c[i]).collect();
        neville_at_zero(ladder, &ys)
    });
    let diff = &extrapolated - &predicted;
    let relative_error = relative(g.eval(&diff, &diff).sqrt(), g.eval(&predicted, &predicted).sqrt());
    Ok(LoopDefect {
        ladder: ladder.to_vec(),
        coefficients,
        extrapolated,
        predicted,
        relative_error,
        norm_drift,
    })
}

/// On a surface (`n = 1`): signed holonomy angle of the coordinate
/// parallelogram, measured from `v` towards `Jv`. The `h²` coefficient is
/// compared to `K · |∂_a ∧ ∂_b|_g`.
pub fn holonomy_angle_experiment(
    field: &MetricField,
    point: &[f64],
    v: &Vector,
    ladder: &[f64],
    steps: usize,
) -> Result<ExperimentResult, SymmetryError> {
    if field.dim() != 2 {
        return Err(SymmetryError::BadDirections);
    }
    let bundle = bundle_at(field, point)?;
    let plane = Plane::new(unit(2, 0), unit(2, 1));
    let k = sectional(&bundle, &plane)?;
    let predicted = k * plane.area_squared(&bundle.g).sqrt();
    let g = &bundle.g;
    let jv = bundle.j.apply(v);
    let finals = transported_loops(field, point, v, 0, 1, ladder, steps)?;
    let defects: Vec<f64> = finals.iter().map(|w| g.eval(w, &jv).atan2(g.eval(w, v))).collect();
    let coefficients: Vec<f64> = defects.iter().zip(ladder).map(|(t, h)| t / (h * h)).collect();
    Ok(ExperimentResult::new(ladder.to_vec(), defects, &coefficients, predicted))
}

/// Random Hermitian symmetric form: `(A + JᵀAJ)/2` for symmetric `A`.
pub fn random_hermitian_form(rng: &mut impl Rng, j: &ComplexStructure) -> Bilinear {
    let dim = j.dim();
    let a = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
    let sym = (&a + a.transpose()) * 0.5;
    let h = (&sym + j.matrix().transpose() * &sym * j.matrix()) * 0.5;
    Bilinear::new(h).expect("symmetric by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::metric_from_potential;
    use crate::potential::parse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bundle(src: &str, n: usize, point: &[f64]) -> CurvatureBundle {
        curvature_bundle(&metric_from_potential(&parse(src, n).unwrap(), point).unwrap()).unwrap()
    }

    const PERTURBED: &str = "absq(1)+absq(2)+0.1*absq(1)*absq(2)";
    const P: [f64; 4] = [0.3, -0.2, 0.5, 0.4];

    #[test]
    fn neville_recovers_polynomials() {
        let xs = [0.4, 0.2, 0.1];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 2.0 * x + 5.0 * x * x).collect();
        assert!((neville_at_zero(&xs, &ys) - 3.0).abs() < 1e-13);
    }

    #[test]
    fn flat_tensors_vanish() {
        let b = bundle("absq(1)+absq(2)", 2, &P);
        assert_eq!(r_dot_s(&b).max_norm(), 0.0);
        assert_eq!(tachibana_ricci(&b.g, &b.ricci).unwrap().max_norm(), 0.0);
        assert_eq!(complex_tachibana_ricci(&b.g, &b.ricci, &b.j).unwrap().max_norm(), 0.0);
    }

    #[test]
    fn einstein_tensors_vanish() {
        let b = bundle("log(1+rsq)", 2, &P);
        let s = b.ricci.max_norm();
        assert!(r_dot_s(&b).max_norm() < 1e-9 * s * b.r04().max_norm());
        assert!(tachibana_ricci(&b.g, &b.ricci).unwrap().max_norm() < 1e-9 * s);
        assert!(complex_tachibana_ricci(&b.g, &b.ricci, &b.j).unwrap().max_norm() < 1e-9 * s);
    }

    #[test]
    fn tc_and_rh_for_random_hermitian_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let j = ComplexStructure::standard(2);
        for _ in 0..10 {
            let a = random_hermitian_form(&mut rng, &j);
            let g = Bilinear::new(a.matrix() * 0.1 + DMatrix::identity(4, 4)).unwrap();
            let s = random_hermitian_form(&mut rng, &j);
            let q = tachibana_ricci(&g, &s).unwrap();
            let qc = complex_tachibana_ricci(&g, &s, &j).unwrap();
            let tc = q.add(&q.map_slot(2, j.matrix()).map_slot(3, j.matrix()));
            assert!(qc.relative_distance(&tc) < 1e-12);
            let u = Vector::from_fn(4, |_, _| rng.gen_range(-1.0..1.0));
            let x = Vector::from_fn(4, |_, _| rng.gen_range(-1.0..1.0));
            let jx = j.apply(&x);
            let lhs = qc.eval(&u, &u, &x, &jx);
            let rhs = 2.0 * q.eval(&u, &u, &x, &jx);
            assert!((lhs - rhs).abs() < 1e-12 * qc.max_norm() * 16.0);
            assert!(holomorphic_first_slot_tensor_violation(&qc, &j) < 1e-12);
            assert!(holomorphic_first_slot_check(&qc, &j, &mut rng, 20) < 1e-12);
        }
    }

    #[test]
    fn complex_tachibana_requires_hermitian_metric() {
        let j = ComplexStructure::standard(1);
        let g = Bilinear::from_diagonal(&[1.0, 2.0]);
        assert!(matches!(
            complex_tachibana_ricci(&g, &Bilinear::identity(2), &j),
            Err(SymmetryError::Tensor(TensorError::NotHermitian { .. }))
        ));
    }

    #[test]
    fn deszcz_scaling_invariance() {
        let b = bundle(PERTURBED, 2, &P);
        let rs = r_dot_s(&b);
        let q = tachibana_ricci(&b.g, &b.ricci).unwrap();
        let v = Vector::from_vec(vec![0.3, 1.0, -0.2, 0.5]);
        let x = Vector::from_vec(vec![1.0, 0.1, 0.4, -0.3]);
        let plane = Plane::holomorphic(x.clone(), &b.j);
        let s1 = deszcz_l(&P, &rs, &q, &b.g, &v, &plane, 1e-12).unwrap();
        let plane2 = Plane::new(&plane.x * 3.0, &plane.x + &plane.y);
        let s2 = deszcz_l(&P, &rs, &q, &b.g, &(&v * 2.0), &plane2, 1e-12).unwrap();
        let (l1, l2) = (s1.l.unwrap(), s2.l.unwrap());
        assert!(relative(l1 - l2, l1) < 1e-12);
        assert!(relative(s1.normalized_denominator.abs() - s2.normalized_denominator.abs(), s1.normalized_denominator) < 1e-12);
    }

    #[test]
    fn rotation_experiment_matches_qc() {
        let b = bundle(PERTURBED, 2, &P);
        let frame = crate::tensor::adapted_frame(&b.g, &b.j, &Vector::from_vec(vec![1.0, 0.3, 0.0, 0.2])).unwrap();
        let f = frame.vectors();
        let x = f[0].clone();
        let y = (&f[1] + &f[2]) / 2f64.sqrt();
        let v = Vector::from_vec(vec![0.2, -0.4, 1.0, 0.3]);
        let r = rotation_experiment(&b.g, &b.ricci, &b.j, &v, &x, &y, &[1e-2, 5e-3, 2.5e-3]).unwrap();
        assert!(r.predicted.abs() > 1e-4);
        assert!(r.relative_error < 1e-3, "{r:?}");
        assert!(matches!(
            rotation_experiment(&b.g, &b.ricci, &b.j, &v, &(&x * 2.0), &y, &[1e-2]),
            Err(SymmetryError::NotOrthonormal(_))
        ));
        assert!(matches!(
            rotation_experiment(&b.g, &b.ricci, &b.j, &v, &x, &y, &[1e-2, 2e-2]),
            Err(SymmetryError::BadLadder)
        ));
    }

    #[test]
    fn transport_experiment_matches_r_dot_s() {
        let field = MetricField::new(parse(PERTURBED, 2).unwrap(), 2);
        let v = Vector::from_vec(vec![0.2, -0.4, 1.0, 0.3]);
        let r = transport_experiment(&field, &P, &v, 0, 2, &[0.04, 0.02, 0.01], TRANSPORT_STEPS).unwrap();
        assert!(r.predicted.abs() > 1e-5, "{r:?}");
        assert!(r.relative_error < 1e-3, "{r:?}");
    }

    #[test]
    fn cp1_holonomy_angle() {
        let field = MetricField::new(parse("log(1+absq(1))", 1).unwrap(), 1);
        let v = Vector::from_vec(vec![1.0, 0.0]);
        let r = holonomy_angle_experiment(&field, &[0.0, 0.0], &v, &[0.04, 0.02, 0.01], TRANSPORT_STEPS).unwrap();
        assert!((r.predicted - 4.0).abs() < 1e-10);
        assert!(r.relative_error < 1e-3, "{r:?}");
    }

    #[test]
    fn loop_defect_matches_curvature() {
        let field = MetricField::new(parse("log(1+rsq)", 2).unwrap(), 2);
        let v = Vector::from_vec(vec![0.2, -0.4, 1.0, 0.3]);
        let d = parallelogram_defect(&field, &P, &v, 1, 2, &[0.04, 0.02, 0.01], TRANSPORT_STEPS).unwrap();
        assert!(d.relative_error < 1e-3, "{d:?}");
        assert!(d.norm_drift < 1e-9, "{d:?}");
    }
}
