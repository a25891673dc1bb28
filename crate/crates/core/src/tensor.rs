//! Pointwise multilinear algebra on a real `2n`-dimensional tangent space
//! carrying the standard complex structure.
//!
//! Coordinates are ordered `(x¹..xⁿ, y¹..yⁿ)`; `J` sends `∂/∂xᵏ` to
//! `∂/∂yᵏ` and `∂/∂yᵏ` to `-∂/∂xᵏ`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

/// Tangent vector in chart components.
pub type Vector = DVector<f64>;

/// Absolute floor used whenever a relative error is normalized by a norm
/// that may vanish identically.
pub const NORM_FLOOR: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("metric is not Hermitian with respect to J (relative violation {violation:.3e})")]
    NotHermitian { violation: f64 },
    #[error("metric is not positive definite (Gram-Schmidt pivot {pivot:.3e})")]
    NotPositiveDefinite { pivot: f64 },
    #[error("frame seed is zero or degenerate")]
    DegenerateSeed,
    #[error("non-finite entries in input")]
    NonFinite,
    #[error(
        "holomorphic evaluations are not those of a tensor with the required J-symmetries \
         (worst relative violation {violation:.3e})"
    )]
    InconsistentHolomorphicData { violation: f64 },
}

/// `|diff| / max(reference, NORM_FLOOR)`.
pub fn relative(diff: f64, reference: f64) -> f64 {
    diff.abs() / reference.abs().max(NORM_FLOOR)
}

/// Symmetric (0,2)-tensor at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Bilinear {
    matrix: DMatrix<f64>,
}

impl Bilinear {
    pub fn new(matrix: DMatrix<f64>) -> Result<Bilinear, TensorError> {
        if !matrix.is_square() {
            return Err(TensorError::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(TensorError::NonFinite);
        }
        Ok(Bilinear { matrix })
    }

    pub fn identity(dim: usize) -> Bilinear {
        Bilinear {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Bilinear {
        Bilinear {
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Bilinear {
        Bilinear {
            matrix: DMatrix::from_diagonal(&DVector::from_column_slice(diag)),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.matrix[(a, b)]
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> f64 {
        x.dot(&(&self.matrix * y))
    }

    pub fn max_norm(&self) -> f64 {
        self.matrix.amax()
    }

    pub fn scaled(&self, s: f64) -> Bilinear {
        Bilinear {
            matrix: &self.matrix * s,
        }
    }

    /// Components in the given frame: `B(fᵢ, fⱼ)`.
    pub fn in_frame(&self, frame: &Frame) -> Bilinear {
        let f = frame.matrix();
        Bilinear {
            matrix: f.transpose() * &self.matrix * f,
        }
    }

    /// Max relative asymmetry `|B(a,b) - B(b,a)|`.
    pub fn asymmetry(&self) -> f64 {
        let diff = (&self.matrix - self.matrix.transpose()).amax();
        relative(diff, self.max_norm())
    }

    /// Relative violation of `B(J·, J·) = B(·,·)`.
    pub fn hermitian_violation(&self, j: &ComplexStructure) -> f64 {
        let jm = j.matrix();
        let diff = (jm.transpose() * &self.matrix * jm - &self.matrix).amax();
        relative(diff, self.max_norm())
    }

}

/// Constant complex structure in adapted coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexStructure {
    n: usize,
    matrix: DMatrix<f64>,
}

impl ComplexStructure {
    /// `J` for complex dimension `n`; exact by construction.
    pub fn standard(n: usize) -> ComplexStructure {
        let dim = 2 * n;
        let mut matrix = DMatrix::zeros(dim, dim);
        for a in 0..n {
            // column a is J e_a
            matrix[(a + n, a)] = 1.0;
            matrix[(a, a + n)] = -1.0;
        }
        ComplexStructure { n, matrix }
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        // avoid the dense product: J only permutes entries with signs
        let n = self.n;
        let mut out = Vector::zeros(2 * n);
        for a in 0..n {
            out[a + n] = v[a];
            out[a] = -v[a + n];
        }
        out
    }
}

/// Which algebraic symmetries a quad tensor is expected to carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryTag {
    RiemannLike,
    RsLike,
    None,
}

/// Dense (0,4)-tensor at a point, `components[((i·d + j)·d + k)·d + l] = T(eᵢ, eⱼ, e_k, e_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadTensor {
    dim: usize,
    components: Vec<f64>,
    tag: SymmetryTag,
}

impl QuadTensor {
    pub fn zeros(dim: usize, tag: SymmetryTag) -> QuadTensor {
        QuadTensor {
            dim,
            components: vec![0.0; dim.pow(4)],
            tag,
        }
    }

    pub fn from_components(dim: usize, components: Vec<f64>, tag: SymmetryTag) -> Result<QuadTensor, TensorError> {
        if components.len() != dim.pow(4) {
            return Err(TensorError::DimensionMismatch {
                expected: dim.pow(4),
                found: components.len(),
            });
        }
        if components.iter().any(|v| !v.is_finite()) {
            return Err(TensorError::NonFinite);
        }
        Ok(QuadTensor { dim, components, tag })
    }

    pub fn from_fn(dim: usize, tag: SymmetryTag, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> QuadTensor {
        let mut components = Vec::with_capacity(dim.pow(4));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        components.push(f(i, j, k, l));
                    }
                }
            }
        }
        QuadTensor { dim, components, tag }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> SymmetryTag {
        self.tag
    }

    pub fn with_tag(mut self, tag: SymmetryTag) -> QuadTensor {
        self.tag = tag;
        self
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.components[self.idx(i, j, k, l)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, value: f64) {
        let at = self.idx(i, j, k, l);
        self.components[at] = value;
    }

    pub fn max_norm(&self) -> f64 {
        self.components.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Multilinear evaluation `T(a, b, c, d)`.
    pub fn eval(&self, a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> f64 {
        let n = self.dim;
        let mut total = 0.0;
        for i in 0..n {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let ab = a[i] * b[j];
                if ab == 0.0 {
                    continue;
                }
                let base = (i * n + j) * n * n;
                let mut inner = 0.0;
                for k in 0..n {
                    let row = &self.components[base + k * n..base + (k + 1) * n];
                    let mut s = 0.0;
                    for l in 0..n {
                        s += row[l] * d[l];
                    }
                    inner += c[k] * s;
                }
                total += ab * inner;
            }
        }
        total
    }

    pub fn sub(&self, other: &QuadTensor) -> QuadTensor {
        assert_eq!(self.dim, other.dim);
        QuadTensor {
            dim: self.dim,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
            tag: SymmetryTag::None,
        }
    }

    pub fn add(&self, other: &QuadTensor) -> QuadTensor {
        assert_eq!(self.dim, other.dim);
        QuadTensor {
            dim: self.dim,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
            tag: SymmetryTag::None,
        }
    }

    pub fn scaled(&self, s: f64) -> QuadTensor {
        QuadTensor {
            dim: self.dim,
            components: self.components.iter().map(|v| v * s).collect(),
            tag: self.tag,
        }
    }

    /// Max-norm of `self - other` relative to the max-norm of `other`.
    pub fn relative_distance(&self, other: &QuadTensor) -> f64 {
        relative(self.sub(other).max_norm(), other.max_norm())
    }

    /// Precompose one slot with a linear map:
    /// `T'(…, eᵢ, …) = T(…, M eᵢ, …)` where `slot ∈ 0..4`.
    pub fn map_slot(&self, slot: usize, m: &DMatrix<f64>) -> QuadTensor {
        let n = self.dim;
        let stride = n.pow(3 - slot as u32);
        let mut out = vec![0.0; self.components.len()];
        for (flat, value) in out.iter_mut().enumerate() {
            let i = (flat / stride) % n;
            let base = flat - i * stride;
            let mut acc = 0.0;
            for r in 0..n {
                let coef = m[(r, i)];
                if coef != 0.0 {
                    acc += coef * self.components[base + r * stride];
                }
            }
            *value = acc;
        }
        QuadTensor {
            dim: n,
            components: out,
            tag: SymmetryTag::None,
        }
    }

    /// Exchange two slots.
    pub fn swap_slots(&self, s: usize, t: usize) -> QuadTensor {
        QuadTensor::from_fn(self.dim, SymmetryTag::None, |i, j, k, l| {
            let mut idx = [i, j, k, l];
            idx.swap(s, t);
            self.get(idx[0], idx[1], idx[2], idx[3])
        })
    }

    /// Components in a frame: `T(f_i, f_j, f_k, f_l)`.
    pub fn in_frame(&self, frame: &Frame) -> QuadTensor {
        let f = frame.matrix();
        let mut t = self.clone();
        for slot in 0..4 {
            t = t.map_slot(slot, &f);
        }
        t.tag = self.tag;
        t
    }
}

/// Tangent 2-plane spanned by `x` and `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub x: Vector,
    pub y: Vector,
    pub holomorphic: bool,
}

impl Plane {
    pub fn new(x: Vector, y: Vector) -> Plane {
        Plane { x, y, holomorphic: false }
    }

    /// The holomorphic plane `x ∧ Jx`.
    pub fn holomorphic(x: Vector, j: &ComplexStructure) -> Plane {
        let y = j.apply(&x);
        Plane { x, y, holomorphic: true }
    }

    /// `g((x∧y)y, x) = g(x,x)g(y,y) - g(x,y)²`.
    pub fn area_squared(&self, g: &Bilinear) -> f64 {
        let gxx = g.eval(&self.x, &self.x);
        let gyy = g.eval(&self.y, &self.y);
        let gxy = g.eval(&self.x, &self.y);
        gxx * gyy - gxy * gxy
    }
}

/// Ordered list of `2n` tangent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    vectors: Vec<Vector>,
}

impl Frame {
    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// Frame vectors as matrix columns.
    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_columns(&self.vectors)
    }

    /// Gram matrix `g(fᵢ, fⱼ)`.
    pub fn gram(&self, g: &Bilinear) -> DMatrix<f64> {
        let f = self.matrix();
        f.transpose() * g.matrix() * f
    }
}

fn check_vec(dim: usize, v: &Vector) -> Result<(), TensorError> {
    if v.len() != dim {
        return Err(TensorError::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    Ok(())
}

/// `(x ∧_g y) z = g(y,z) x - g(x,z) y`.
pub fn wedge_g(g: &Bilinear, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector, TensorError> {
    for v in [x, y, z] {
        check_vec(g.dim(), v)?;
    }
    Ok(x * g.eval(y, z) - y * g.eval(x, z))
}

/// Matrix of the endomorphism `x ∧_g y`.
pub fn wedge_g_matrix(g: &Bilinear, x: &Vector, y: &Vector) -> DMatrix<f64> {
    // z ↦ x (gy)ᵀz - y (gx)ᵀz
    let gy = g.matrix() * y;
    let gx = g.matrix() * x;
    x * gy.transpose() - y * gx.transpose()
}

/// Hermitian tolerance for metrics fed into the complex wedge.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// `(x ∧^c_g y) z = (x ∧_g y) z + (Jx ∧_g Jy) z - 2 g(Jx, y) Jz`.
pub fn wedge_c(
    g: &Bilinear,
    j: &ComplexStructure,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Result<Vector, TensorError> {
    if j.dim() != g.dim() {
        return Err(TensorError::DimensionMismatch {
            expected: g.dim(),
            found: j.dim(),
        });
    }
    for v in [x, y, z] {
        check_vec(g.dim(), v)?;
    }
    let violation = g.hermitian_violation(j);
    if violation > HERMITIAN_TOL {
        return Err(TensorError::NotHermitian { violation });
    }
    Ok(wedge_c_matrix(g, j, x, y) * z)
}

/// Matrix of the endomorphism `x ∧^c_g y` (no Hermitian check).
pub fn wedge_c_matrix(g: &Bilinear, j: &ComplexStructure, x: &Vector, y: &Vector) -> DMatrix<f64> {
    let jx = j.apply(x);
    let jy = j.apply(y);
    let mut m = wedge_g_matrix(g, x, y) + wedge_g_matrix(g, &jx, &jy);
    m -= j.matrix() * (2.0 * g.eval(&jx, y));
    m
}

/// Derivation action of an endomorphism on a bilinear form:
/// `(X₁, X₂) ↦ -S(A X₁, X₂) - S(X₁, A X₂)`.
pub fn endo_dot_bilinear(a: &DMatrix<f64>, s: &Bilinear) -> Result<Bilinear, TensorError> {
    if a.nrows() != s.dim() || a.ncols() != s.dim() {
        return Err(TensorError::DimensionMismatch {
            expected: s.dim(),
            found: a.nrows(),
        });
    }
    Ok(Bilinear {
        matrix: endo_dot_matrix(a, s.matrix()),
    })
}

pub(crate) fn endo_dot_matrix(a: &DMatrix<f64>, s: &DMatrix<f64>) -> DMatrix<f64> {
    let sa = s * a;
    -(sa.transpose() + sa)
}

/// Quad tensor `T(p, q, a, b) = (A(e_a, e_b) · S)(e_p, e_q)` for an
/// endomorphism-valued 2-form `A`.
pub fn derivation_tensor(
    dim: usize,
    s: &Bilinear,
    tag: SymmetryTag,
    mut endo: impl FnMut(usize, usize) -> DMatrix<f64>,
) -> QuadTensor {
    let mut t = QuadTensor::zeros(dim, tag);
    for a in 0..dim {
        for b in 0..dim {
            let acted = endo_dot_matrix(&endo(a, b), s.matrix());
            for p in 0..dim {
                for q in 0..dim {
                    t.set(p, q, a, b, acted[(p, q)]);
                }
            }
        }
    }
    t
}

/// Relative residual below which a Gram–Schmidt candidate counts as
/// dependent on the vectors already chosen.
pub const DEPENDENCE_TOL: f64 = 1e-10;

/// g-orthonormal frame `{e₁…eₙ, Je₁…Jeₙ}` with `e₁ ∥ seed`.
pub fn adapted_frame(g: &Bilinear, j: &ComplexStructure, seed: &Vector) -> Result<Frame, TensorError> {
    let dim = g.dim();
    if j.dim() != dim {
        return Err(TensorError::DimensionMismatch {
            expected: dim,
            found: j.dim(),
        });
    }
    check_vec(dim, seed)?;
    if seed.iter().any(|v| !v.is_finite()) {
        return Err(TensorError::NonFinite);
    }
    let violation = g.hermitian_violation(j);
    if violation > HERMITIAN_TOL {
        return Err(TensorError::NotHermitian { violation });
    }
    let n = j.complex_dim();
    let mut chosen: Vec<Vector> = Vec::with_capacity(dim);

    let orthonormalize = |v: &Vector, chosen: &[Vector]| -> Result<Option<Vector>, TensorError> {
        let norm0_sq = g.eval(v, v);
        if norm0_sq <= 0.0 {
            if v.iter().all(|c| *c == 0.0) {
                return Ok(None);
            }
            return Err(TensorError::NotPositiveDefinite { pivot: norm0_sq });
        }
        let mut w = v.clone();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for e in chosen {
                let c = g.eval(e, &w);
                w -= e * c;
            }
        }
        let norm_sq = g.eval(&w, &w);
        if !(norm_sq > 0.0) {
            if norm_sq < -DEPENDENCE_TOL * norm0_sq {
                return Err(TensorError::NotPositiveDefinite { pivot: norm_sq });
            }
            return Ok(None);
        }
        if norm_sq.sqrt() < DEPENDENCE_TOL * norm0_sq.sqrt() {
            return Ok(None);
        }
        Ok(Some(w / norm_sq.sqrt()))
    };

    let first = orthonormalize(seed, &chosen)?.ok_or(TensorError::DegenerateSeed)?;
    let mut holo: Vec<Vector> = vec![first.clone()];
    chosen.push(first.clone());
    chosen.push(j.apply(&first));

    let mut canonical = 0;
    while holo.len() < n {
        if canonical >= dim {
            return Err(TensorError::NotPositiveDefinite { pivot: 0.0 });
        }
        let mut candidate = Vector::zeros(dim);
        candidate[canonical] = 1.0;
        canonical += 1;
        if let Some(e) = orthonormalize(&candidate, &chosen)? {
            chosen.push(e.clone());
            chosen.push(j.apply(&e));
            holo.push(e);
        }
    }
    let mut vectors = holo.clone();
    vectors.extend(holo.iter().map(|e| j.apply(e)));
    Ok(Frame { vectors })
}

/// Per-property violations of the symmetries shared by `R·S` and
/// `Q^c(g,S)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryReport {
    /// `T(x₁,x₂,x₃,x₄) = -T(x₁,x₂,x₄,x₃)`
    pub antisymmetric_last_pair: f64,
    /// `T(x₁,x₂,x₃,x₄) = T(x₂,x₁,x₃,x₄)`
    pub symmetric_first_pair: f64,
    /// `T(x₁,x₂,Jx₃,Jx₄) = T(Jx₁,Jx₂,x₃,x₄) = T(x₁,x₂,x₃,x₄)`
    pub j_invariant: f64,
    /// `T(x₁,Jx₂,x₃,x₄) = -T(Jx₁,x₂,x₃,x₄)`
    pub j_skew_first_pair: f64,
    /// `T(x₁,x₂,x₃,Jx₄) = -T(x₁,x₂,Jx₃,x₄)`
    pub j_skew_last_pair: f64,
    pub passed: bool,
}

impl SymmetryReport {
    pub fn worst(&self) -> f64 {
        [
            self.antisymmetric_last_pair,
            self.symmetric_first_pair,
            self.j_invariant,
            self.j_skew_first_pair,
            self.j_skew_last_pair,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn check_rs_symmetries(t: &QuadTensor, j: &ComplexStructure, tol: f64) -> SymmetryReport {
    let norm = t.max_norm();
    let jm = j.matrix();
    let rel = |other: &QuadTensor, sign: f64| {
        let diff = t
            .components
            .iter()
            .zip(&other.components)
            .fold(0.0, |m: f64, (a, b)| m.max((a - sign * b).abs()));
        relative(diff, norm)
    };
    let j1 = t.map_slot(0, jm);
    let j2 = t.map_slot(1, jm);
    let j3 = t.map_slot(2, jm);
    let j4 = t.map_slot(3, jm);
    let j12 = j1.map_slot(1, jm);
    let j34 = j3.map_slot(3, jm);

    let antisymmetric_last_pair = rel(&t.swap_slots(2, 3), -1.0);
    let symmetric_first_pair = rel(&t.swap_slots(0, 1), 1.0);
    let j_invariant = rel(&j12, 1.0).max(rel(&j34, 1.0));
    let skew = |a: &QuadTensor, b: &QuadTensor| {
        let diff = a
            .components
            .iter()
            .zip(&b.components)
            .fold(0.0, |m: f64, (x, y)| m.max((x + y).abs()));
        relative(diff, norm)
    };
    let j_skew_first_pair = skew(&j2, &j1);
    let j_skew_last_pair = skew(&j4, &j3);
    let mut report = SymmetryReport {
        antisymmetric_last_pair,
        symmetric_first_pair,
        j_invariant,
        j_skew_first_pair,
        j_skew_last_pair,
        passed: false,
    };
    report.passed = report.worst() <= tol;
    report
}

/// Project an arbitrary tensor onto the subspace with the `R·S`
/// symmetries by averaging over the group generated by the slot swaps and
/// the paired `J` actions.
pub fn symmetrize_rs(t: &QuadTensor, j: &ComplexStructure) -> QuadTensor {
    let jm = j.matrix();
    let average = |a: &QuadTensor, b: &QuadTensor, sign: f64| QuadTensor {
        dim: a.dim,
        components: a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| 0.5 * (x + sign * y))
            .collect(),
        tag: SymmetryTag::None,
    };
    let t = average(t, &t.swap_slots(0, 1), 1.0);
    let t = average(&t, &t.swap_slots(2, 3), -1.0);
    let t = average(&t, &t.map_slot(0, jm).map_slot(1, jm), 1.0);
    let t = average(&t, &t.map_slot(2, jm).map_slot(3, jm), 1.0);
    t.with_tag(SymmetryTag::RsLike)
}

/// Largest `|h(u,x)|` over the finite sample the reconstruction queries,
/// where `h(u, x) = T(u, u, x, Jx)`.
pub fn polarization_sample_max(
    eval: impl Fn(&Vector, &Vector) -> f64,
    j: &ComplexStructure,
) -> f64 {
    let dim = j.dim();
    let mut worst: f64 = 0.0;
    for_each_polarization_sample(dim, j, |u, x| worst = worst.max(eval(u, x).abs()));
    worst
}

fn basis(dim: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[i] = 1.0;
    v
}

fn for_each_polarization_sample(dim: usize, j: &ComplexStructure, mut f: impl FnMut(&Vector, &Vector)) {
    let mut us = Vec::new();
    for p in 0..dim {
        for q in p..dim {
            us.push(if p == q { basis(dim, p) } else { basis(dim, p) + basis(dim, q) });
        }
    }
    let mut xs = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            let y = -j.apply(&basis(dim, b));
            xs.push(basis(dim, a));
            xs.push(y.clone());
            xs.push(basis(dim, a) + y);
        }
    }
    for u in &us {
        for x in &xs {
            f(u, x);
        }
    }
}

/// Rebuild a tensor with the `R·S` symmetries from its values
/// `h(u, x) = T(u, u, x, Jx)` on holomorphic planes.
///
/// Polarization in `u` gives `T(u, v, x, Jx)`; polarization in `x` gives
/// `T(u, v, x, Jy)` (symmetric in `x, y`); substituting `y → -Jy` recovers
/// `T(u, v, x, y)`.
///
/// The result is checked for the `R·S` symmetries relative to
/// `max(‖T‖, scale)`. A tensor that vanishes identically is rebuilt from
/// roundoff, so its symmetry defects are only meaningful against the
/// natural size of the data, e.g. `‖R‖·‖S‖` for `R·S`; pass 0 to measure
/// against `‖T‖` alone.
pub fn reconstruct_from_holomorphic(
    eval: impl Fn(&Vector, &Vector) -> f64,
    j: &ComplexStructure,
    scale: f64,
) -> Result<QuadTensor, TensorError> {
    let dim = j.dim();
    let e: Vec<Vector> = (0..dim).map(|i| basis(dim, i)).collect();
    // T(u, v, x, Jx)
    let mixed = |u: &Vector, v: &Vector, x: &Vector| 0.5 * (eval(&(u + v), x) - eval(u, x) - eval(v, x));
    // T(u, v, x, Jy)
    let bilinear = |u: &Vector, v: &Vector, x: &Vector, y: &Vector| {
        0.5 * (mixed(u, v, &(x + y)) - mixed(u, v, x) - mixed(u, v, y))
    };
    let minus_j: Vec<Vector> = e.iter().map(|v| -j.apply(v)).collect();

    let mut t = QuadTensor::zeros(dim, SymmetryTag::RsLike);
    for p in 0..dim {
        for q in p..dim {
            for a in 0..dim {
                for b in 0..dim {
                    let value = bilinear(&e[p], &e[q], &e[a], &minus_j[b]);
                    t.set(p, q, a, b, value);
                    t.set(q, p, a, b, value);
                }
            }
        }
    }
    if t.components.iter().any(|v| !v.is_finite()) {
        return Err(TensorError::NonFinite);
    }
    let norm = t.max_norm();
    let violation = check_rs_symmetries(&t, j, f64::INFINITY).worst() * norm.max(NORM_FLOOR) / norm.max(scale).max(NORM_FLOOR);
    if !(violation <= RECONSTRUCTION_TOL) {
        return Err(TensorError::InconsistentHolomorphicData { violation });
    }
    Ok(t)
}

/// Symmetry tolerance applied to reconstructed tensors.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;
