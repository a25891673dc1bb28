//! Levi-Civita connection and curvature from a [`MetricJet`].
//!
//! Index conventions (all arrays flattened row-major):
//!
//! - `gamma[c][a][b] = Γ^c_ab`, `dgamma[c][a][b][d] = ∂_d Γ^c_ab`,
//!   `ddgamma[c][a][b][d][e] = ∂_e ∂_d Γ^c_ab`
//! - `r13[d][a][b][c]` is the `d`-component of
//!   `R(∂_a, ∂_b)∂_c = ∇_a∇_b∂_c - ∇_b∇_a∂_c`
//! - `r04(X, Y, Z, W) = g(R(X, Y)Z, W)`, so that the sectional curvature
//!   `r04(x, y, y, x) / |x∧y|²` is positive on the round sphere and
//!   `S(X, Y) = Σᵢ r04(Eᵢ, X, Y, Eᵢ)` over an orthonormal frame
//! - `nabla_ricci[a][b][c] = (∇_c S)(∂_a, ∂_b)`

use nalgebra::DMatrix;
use thiserror::Error;

use crate::jet::JetScalar;
use crate::metric::{MetricError, MetricField, MetricJet};
use crate::tensor::{
    adapted_frame, relative, Bilinear, ComplexStructure, Plane, QuadTensor, SymmetryTag, TensorError, Vector,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvatureError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("metric is singular")]
    SingularMetric,
    #[error("metric jet of order {available} is too short, order {needed} is required")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("plane is degenerate")]
    DegeneratePlane,
    #[error("zero vector")]
    ZeroVector,
    #[error("path leaves the chart domain near {point:?}: {source}")]
    DomainExit {
        point: Vec<f64>,
        #[source]
        source: MetricError,
    },
    #[error("step count must be at least 1")]
    InvalidSteps,
    #[error("step size underflow on a segment of length {0:e}")]
    StepUnderflow(f64),
}

/// Christoffel symbols and their derivatives at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection {
    dim: usize,
    pub gamma: Vec<f64>,
    pub dgamma: Vec<f64>,
    pub ddgamma: Vec<f64>,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, c: usize, a: usize, b: usize) -> f64 {
        self.gamma[(c * self.dim + a) * self.dim + b]
    }

    #[inline]
    pub fn d(&self, c: usize, a: usize, b: usize, d: usize) -> f64 {
        self.dgamma[((c * self.dim + a) * self.dim + b) * self.dim + d]
    }

    #[inline]
    pub fn dd(&self, c: usize, a: usize, b: usize, d: usize, e: usize) -> f64 {
        self.ddgamma[(((c * self.dim + a) * self.dim + b) * self.dim + d) * self.dim + e]
    }

    pub fn max_norm(&self) -> f64 {
        self.gamma.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `Γ(x)(u, v)^c = Σ Γ^c_ab uᵃ vᵇ`
    pub fn contract(&self, u: &Vector, v: &Vector) -> Vector {
        let d = self.dim;
        Vector::from_fn(d, |c, _| {
            let mut s = 0.0;
            for a in 0..d {
                for b in 0..d {
                    s += self.get(c, a, b) * u[a] * v[b];
                }
            }
            s
        })
    }
}

fn jet_matmul(a: &[JetScalar], b: &[JetScalar], dim: usize) -> Vec<JetScalar> {
    let space = a[0].space().clone();
    let mut out = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = JetScalar::zero(&space);
            for k in 0..dim {
                acc = acc.add(&a[i * dim + k].mul(&b[k * dim + j]));
            }
            out.push(acc);
        }
    }
    out
}

/// Levi-Civita connection `Γ^c_ab = ½ g^{cd}(∂_a g_db + ∂_b g_da - ∂_d g_ab)`
/// with derivatives, computed by jet arithmetic on the metric components.
pub fn christoffel(m: &MetricJet) -> Result<Connection, CurvatureError> {
    if m.order < 1 {
        return Err(CurvatureError::InsufficientOrder {
            needed: 1,
            available: m.order,
        });
    }
    let dim = m.dim();
    let order = m.order;
    let g = m.component_jets(order);
    let space = g[0].space().clone();
    let g0_inv = m
        .g
        .matrix()
        .clone()
        .try_inverse()
        .ok_or(CurvatureError::SingularMetric)?;

    // g⁻¹ = Σ_k (-G₀⁻¹ N)^k G₀⁻¹ with N the non-constant part of g
    let constant = |mat: &DMatrix<f64>| -> Vec<JetScalar> {
        (0..dim * dim)
            .map(|f| JetScalar::constant(&space, mat[(f / dim, f % dim)]))
            .collect()
    };
    let nilpotent: Vec<JetScalar> = g.iter().map(|j| j.add_constant(-j.value())).collect();
    let minus_ginv_n = jet_matmul(&constant(&(-&g0_inv)), &nilpotent, dim);
    let mut term = constant(&g0_inv);
    let mut ginv = term.clone();
    for _ in 0..order {
        term = jet_matmul(&minus_ginv_n, &term, dim);
        for (acc, t) in ginv.iter_mut().zip(&term) {
            *acc = acc.add(t);
        }
    }

    let dg: Vec<Vec<JetScalar>> = g
        .iter()
        .map(|gj| (0..dim).map(|c| gj.derivative(c)).collect())
        .collect();
    let ginv_low: Vec<JetScalar> = ginv.iter().map(|j| j.truncate(order - 1)).collect();
    let low_space = ginv_low[0].space().clone();

    let mut gamma_jets = Vec::with_capacity(dim * dim * dim);
    for c in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = JetScalar::zero(&low_space);
                for d in 0..dim {
                    let lowered = dg[d * dim + b][a]
                        .add(&dg[d * dim + a][b])
                        .sub(&dg[a * dim + b][d])
                        .scale(0.5);
                    acc = acc.add(&ginv_low[c * dim + d].mul(&lowered));
                }
                gamma_jets.push(acc);
            }
        }
    }

    let gamma = gamma_jets.iter().map(|j| j.value()).collect();
    let mut dgamma = Vec::new();
    let mut ddgamma = Vec::new();
    if order >= 2 {
        for j in &gamma_jets {
            for d in 0..dim {
                dgamma.push(j.partial(&[d]));
            }
        }
    }
    if order >= 3 {
        for j in &gamma_jets {
            for d in 0..dim {
                for e in 0..dim {
                    ddgamma.push(j.partial(&[d, e]));
                }
            }
        }
    }
    Ok(Connection {
        dim,
        gamma,
        dgamma,
        ddgamma,
    })
}

/// Riemann tensor in (1,3) form and its first derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct Riemann {
    dim: usize,
    pub r13: Vec<f64>,
    /// `dr13[d][a][b][c][f] = ∂_f R^d_abc`; empty without third-order data.
    pub dr13: Vec<f64>,
    pub r04: QuadTensor,
}

impl Riemann {
    #[inline]
    pub fn get(&self, d: usize, a: usize, b: usize, c: usize) -> f64 {
        self.r13[((d * self.dim + a) * self.dim + b) * self.dim + c]
    }
}

/// Curvature of `∇` per `R(X,Y)Z = ∇_X∇_YZ - ∇_Y∇_XZ - ∇_[X,Y]Z`:
///
/// `R^d_abc = ∂_a Γ^d_bc - ∂_b Γ^d_ac + Γ^d_ae Γ^e_bc - Γ^d_be Γ^e_ac`.
pub fn riemann(m: &MetricJet, c: &Connection) -> Result<Riemann, CurvatureError> {
    if c.dgamma.is_empty() {
        return Err(CurvatureError::InsufficientOrder {
            needed: 2,
            available: m.order,
        });
    }
    let dim = m.dim();
    let mut r13 = vec![0.0; dim.pow(4)];
    let with_derivs = !c.ddgamma.is_empty();
    let mut dr13 = if with_derivs { vec![0.0; dim.pow(5)] } else { Vec::new() };
    for d in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                for cc in 0..dim {
                    let flat = ((d * dim + a) * dim + b) * dim + cc;
                    let mut v = c.d(d, b, cc, a) - c.d(d, a, cc, b);
                    for e in 0..dim {
                        v += c.get(d, a, e) * c.get(e, b, cc) - c.get(d, b, e) * c.get(e, a, cc);
                    }
                    r13[flat] = v;
                    if with_derivs {
                        for f in 0..dim {
                            let mut dv = c.dd(d, b, cc, a, f) - c.dd(d, a, cc, b, f);
                            for e in 0..dim {
                                dv += c.d(d, a, e, f) * c.get(e, b, cc) + c.get(d, a, e) * c.d(e, b, cc, f)
                                    - c.d(d, b, e, f) * c.get(e, a, cc)
                                    - c.get(d, b, e) * c.d(e, a, cc, f);
                            }
                            dr13[flat * dim + f] = dv;
                        }
                    }
                }
            }
        }
    }
    let g = m.g.matrix();
    let r04 = QuadTensor::from_fn(dim, SymmetryTag::RiemannLike, |x, y, z, w| {
        (0..dim).map(|e| r13[((e * dim + x) * dim + y) * dim + z] * g[(e, w)]).sum()
    });
    Ok(Riemann { dim, r13, dr13, r04 })
}

/// Everything the symmetry tensors need at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureBundle {
    pub point: Vec<f64>,
    pub g: Bilinear,
    pub j: ComplexStructure,
    pub connection: Connection,
    pub riemann: Riemann,
    pub ricci: Bilinear,
    /// `dricci[a][b][c] = ∂_c S_ab`; empty without third-order data.
    pub dricci: Vec<f64>,
    pub scal: f64,
    /// `(∇_c S)(∂_a, ∂_b)` at `[a][b][c]`; empty without third-order data.
    pub nabla_ricci: Vec<f64>,
}

impl CurvatureBundle {
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn r04(&self) -> &QuadTensor {
        &self.riemann.r04
    }

    /// Matrix of `R(∂_a, ∂_b)` acting on column vectors.
    pub fn r_endomorphism_basis(&self, a: usize, b: usize) -> DMatrix<f64> {
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |d, c| self.riemann.get(d, a, b, c))
    }

    /// Matrix of `R(x, y)`.
    pub fn r_endomorphism(&self, x: &Vector, y: &Vector) -> DMatrix<f64> {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                let w = x[a] * y[b];
                if w != 0.0 {
                    m += self.r_endomorphism_basis(a, b) * w;
                }
            }
        }
        m
    }

    /// `(∇_z S)(x, y)`.
    pub fn nabla_ricci_eval(&self, x: &Vector, y: &Vector, z: &Vector) -> f64 {
        let dim = self.dim();
        let mut s = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    s += self.nabla_ricci[(a * dim + b) * dim + c] * x[a] * y[b] * z[c];
                }
            }
        }
        s
    }

    /// Components of `∇S` in a frame, laid out like `nabla_ricci`.
    pub fn nabla_ricci_in_frame(&self, frame: &crate::tensor::Frame) -> Vec<f64> {
        let f = frame.matrix();
        let dim = self.dim();
        let cols: Vec<Vector> = (0..dim).map(|i| f.column(i).into_owned()).collect();
        let mut out = Vec::with_capacity(dim.pow(3));
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    out.push(self.nabla_ricci_eval(&cols[a], &cols[b], &cols[c]));
                }
            }
        }
        out
    }
}

/// `S_bc = Σ_a R^a_abc` (trace of `Z ↦ R(Z, X)Y`) and its derivatives.
pub fn ricci(riemann: &Riemann) -> Result<(Bilinear, Vec<f64>), CurvatureError> {
    let dim = riemann.dim;
    let s = DMatrix::from_fn(dim, dim, |b, c| (0..dim).map(|a| riemann.get(a, a, b, c)).sum());
    let mut ds = Vec::new();
    if !riemann.dr13.is_empty() {
        for b in 0..dim {
            for c in 0..dim {
                for f in 0..dim {
                    let v: f64 = (0..dim)
                        .map(|a| riemann.dr13[(((a * dim + a) * dim + b) * dim + c) * dim + f])
                        .sum();
                    ds.push(v);
                }
            }
        }
    }
    Ok((Bilinear::new(s)?, ds))
}

/// `S(X, Y) = Σᵢ R(Eᵢ, X, Y, Eᵢ)` over a g-orthonormal frame.
pub fn ricci_frame_sum(r04: &QuadTensor, g: &Bilinear, j: &ComplexStructure) -> Result<Bilinear, CurvatureError> {
    let dim = g.dim();
    let mut seed = Vector::zeros(dim);
    seed[0] = 1.0;
    let frame = adapted_frame(g, j, &seed)?;
    let s = DMatrix::from_fn(dim, dim, |x, y| {
        let ex = unit(dim, x);
        let ey = unit(dim, y);
        frame.vectors().iter().map(|e| r04.eval(e, &ex, &ey, e)).sum()
    });
    Ok(Bilinear::new(s)?)
}

fn unit(dim: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[i] = 1.0;
    v
}

/// `tr_g S`.
pub fn scalar_curvature(s: &Bilinear, g: &Bilinear) -> Result<f64, CurvatureError> {
    let ginv = g.matrix().clone().try_inverse().ok_or(CurvatureError::SingularMetric)?;
    Ok((ginv * s.matrix()).trace())
}

/// `(∇_c S)_ab = ∂_c S_ab - Γ^m_ca S_mb - Γ^m_cb S_am`.
pub fn nabla_ricci(c: &Connection, s: &Bilinear, ds: &[f64]) -> Result<Vec<f64>, CurvatureError> {
    let dim = c.dim;
    if ds.len() != dim.pow(3) {
        return Err(CurvatureError::InsufficientOrder { needed: 3, available: 2 });
    }
    let mut out = Vec::with_capacity(dim.pow(3));
    for a in 0..dim {
        for b in 0..dim {
            for cc in 0..dim {
                let mut v = ds[(a * dim + b) * dim + cc];
                for m in 0..dim {
                    v -= c.get(m, cc, a) * s.get(m, b) + c.get(m, cc, b) * s.get(a, m);
                }
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Connection, curvature, Ricci, scalar curvature and (with third-order
/// data) `∇S` at the jet's point.
pub fn curvature_bundle(m: &MetricJet) -> Result<CurvatureBundle, CurvatureError> {
    if m.order < 2 {
        return Err(CurvatureError::InsufficientOrder {
            needed: 2,
            available: m.order,
        });
    }
    let connection = christoffel(m)?;
    let riemann = riemann(m, &connection)?;
    let (ricci, dricci) = ricci(&riemann)?;
    let scal = scalar_curvature(&ricci, &m.g)?;
    let nabla = if dricci.is_empty() {
        Vec::new()
    } else {
        nabla_ricci(&connection, &ricci, &dricci)?
    };
    Ok(CurvatureBundle {
        point: m.point.clone(),
        g: m.g.clone(),
        j: m.j.clone(),
        connection,
        riemann,
        ricci,
        dricci,
        scal,
        nabla_ricci: nabla,
    })
}

/// Sectional curvature `g(R(x,y)y, x) / g((x∧y)y, x)`.
pub fn sectional(bundle: &CurvatureBundle, plane: &Plane) -> Result<f64, CurvatureError> {
    let g = &bundle.g;
    let area = plane.area_squared(g);
    let scale = g.eval(&plane.x, &plane.x) * g.eval(&plane.y, &plane.y);
    if !(area > 1e-14 * scale) {
        return Err(CurvatureError::DegeneratePlane);
    }
    Ok(bundle.r04().eval(&plane.x, &plane.y, &plane.y, &plane.x) / area)
}

/// Sectional curvature of the holomorphic plane `x ∧ Jx`.
pub fn holomorphic_sectional(bundle: &CurvatureBundle, x: &Vector) -> Result<f64, CurvatureError> {
    if x.iter().all(|v| *v == 0.0) {
        return Err(CurvatureError::ZeroVector);
    }
    sectional(bundle, &Plane::holomorphic(x.clone(), &bundle.j))
}

/// Ricci curvature of a direction, `S(v,v) / g(v,v)`.
pub fn ricci_direction(s: &Bilinear, g: &Bilinear, v: &Vector) -> Result<f64, CurvatureError> {
    let norm = g.eval(v, v);
    if v.iter().all(|c| *c == 0.0) || !(norm > 0.0) {
        return Err(CurvatureError::ZeroVector);
    }
    Ok(s.eval(v, v) / norm)
}

/// `Σ_{j≥2} K(e₁ ∧ eⱼ)` over an adapted orthonormal frame with `e₁ ∥ v`.
pub fn ricci_direction_frame_sum(bundle: &CurvatureBundle, v: &Vector) -> Result<f64, CurvatureError> {
    let frame = adapted_frame(&bundle.g, &bundle.j, v)?;
    let e1 = &frame.vectors()[0];
    frame.vectors()[1..]
        .iter()
        .map(|e| sectional(bundle, &Plane::new(e1.clone(), e.clone())))
        .sum()
}

fn connection_at(field: &MetricField, point: &[f64]) -> Result<Connection, CurvatureError> {
    let jet = field.jet(point, 1).map_err(|source| CurvatureError::DomainExit {
        point: point.to_vec(),
        source,
    })?;
    christoffel(&jet)
}

/// Parallel transport of `v0` along a polyline of chart points by a fixed
/// step fourth-order Runge–Kutta integration of `v' = -Γ(x')(x', v)`,
/// using `steps` steps per segment.
pub fn parallel_transport(
    field: &MetricField,
    path: &[Vec<f64>],
    v0: &Vector,
    steps: usize,
) -> Result<Vector, CurvatureError> {
    if steps == 0 {
        return Err(CurvatureError::InvalidSteps);
    }
    let dim = field.dim();
    if v0.len() != dim {
        return Err(TensorError::DimensionMismatch {
            expected: dim,
            found: v0.len(),
        }
        .into());
    }
    let mut v = v0.clone();
    for seg in path.windows(2) {
        let (p0, p1) = (&seg[0], &seg[1]);
        let velocity = Vector::from_fn(dim, |i, _| p1[i] - p0[i]);
        let length = velocity.norm();
        if length == 0.0 {
            continue;
        }
        let dt = 1.0 / steps as f64;
        if length * dt == 0.0 {
            return Err(CurvatureError::StepUnderflow(length));
        }
        let at = |t: f64| -> Vec<f64> { (0..dim).map(|i| p0[i] + t * velocity[i]).collect() };
        let rhs = |t: f64, v: &Vector| -> Result<Vector, CurvatureError> {
            let c = connection_at(field, &at(t))?;
            Ok(-c.contract(&velocity, v))
        };
        for step in 0..steps {
            let t = step as f64 * dt;
            let k1 = rhs(t, &v)?;
            let k2 = rhs(t + 0.5 * dt, &(&v + &k1 * (0.5 * dt)))?;
            let k3 = rhs(t + 0.5 * dt, &(&v + &k2 * (0.5 * dt)))?;
            let k4 = rhs(t + dt, &(&v + &k3 * dt))?;
            v += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
        }
    }
    Ok(v)
}

/// Corners of the coordinate parallelogram `p → p + h∂_a → p + h∂_a + h∂_b
/// → p + h∂_b → p`.
pub fn coordinate_parallelogram(point: &[f64], a: usize, b: usize, h: f64) -> Vec<Vec<f64>> {
    let shifted = |da: f64, db: f64| {
        let mut q = point.to_vec();
        q[a] += da;
        q[b] += db;
        q
    };
    vec![
        point.to_vec(),
        shifted(h, 0.0),
        shifted(h, h),
        shifted(0.0, h),
        point.to_vec(),
    ]
}

/// Max relative violation of the Riemann symmetries of `r04`:
/// `(antisymmetry, pair symmetry, first Bianchi)`.
pub fn riemann_symmetry_violations(r04: &QuadTensor) -> (f64, f64, f64) {
    let n = r04.dim();
    let norm = r04.max_norm();
    let (mut anti, mut pair, mut bianchi) = (0.0f64, 0.0f64, 0.0f64);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let v = r04.get(a, b, c, d);
                    anti = anti.max((v + r04.get(b, a, c, d)).abs()).max((v + r04.get(a, b, d, c)).abs());
                    pair = pair.max((v - r04.get(c, d, a, b)).abs());
                    bianchi = bianchi.max((v + r04.get(b, c, a, d) + r04.get(c, a, b, d)).abs());
                }
            }
        }
    }
    (relative(anti, norm), relative(pair, norm), relative(bianchi, norm))
}

/// Max relative violation of `R(Jx,Jy,z,w) = R(x,y,z,w) = R(x,y,Jz,Jw)`.
pub fn kahler_curvature_violation(r04: &QuadTensor, j: &ComplexStructure) -> f64 {
    let jm = j.matrix();
    let front = r04.map_slot(0, jm).map_slot(1, jm);
    let back = r04.map_slot(2, jm).map_slot(3, jm);
    let norm = r04.max_norm();
    relative(front.sub(r04).max_norm(), norm).max(relative(back.sub(r04).max_norm(), norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::metric_from_potential;
    use crate::potential::parse;

    fn bundle(src: &str, n: usize, point: &[f64]) -> CurvatureBundle {
        let k = parse(src, n).unwrap();
        curvature_bundle(&metric_from_potential(&k, point).unwrap()).unwrap()
    }

    #[test]
    fn flat_is_flat() {
        let b = bundle("absq(1)+absq(2)", 2, &[0.4, -0.1, 0.2, 0.9]);
        assert_eq!(b.connection.max_norm(), 0.0);
        assert!(b.connection.dgamma.iter().all(|v| *v == 0.0));
        assert_eq!(b.r04().max_norm(), 0.0);
        assert_eq!(b.ricci.max_norm(), 0.0);
        assert_eq!(b.scal, 0.0);
        assert!(b.nabla_ricci.iter().all(|v| *v == 0.0));
        let x = Vector::from_vec(vec![1.0, 0.5, -0.3, 0.2]);
        assert_eq!(holomorphic_sectional(&b, &x).unwrap(), 0.0);
        assert_eq!(ricci_direction(&b.ricci, &b.g, &x).unwrap(), 0.0);
    }

    #[test]
    fn cp1_origin_connection_vanishes() {
        let b = bundle("log(1+absq(1))", 1, &[0.0, 0.0]);
        assert!(b.connection.max_norm() < 1e-15);
        assert!(b.connection.dgamma.iter().any(|v| v.abs() > 0.5));
    }

    #[test]
    fn cp1_curvature_is_four() {
        for point in [[0.0, 0.0], [0.7, -0.4], [1.3, 2.0]] {
            let b = bundle("log(1+absq(1))", 1, &point);
            let plane = Plane::new(Vector::from_vec(vec![1.0, 0.0]), Vector::from_vec(vec![0.3, 1.0]));
            assert!((sectional(&b, &plane).unwrap() - 4.0).abs() < 1e-11);
            let x = Vector::from_vec(vec![0.2, 1.0]);
            assert!((holomorphic_sectional(&b, &x).unwrap() - 4.0).abs() < 1e-11);
            assert!((b.ricci.matrix() - b.g.matrix() * 4.0).amax() < 1e-11 * b.g.max_norm());
            assert!((b.scal - 8.0).abs() < 1e-10);
            assert!((ricci_direction(&b.ricci, &b.g, &x).unwrap() - 4.0).abs() < 1e-11);
            let nabla = b.nabla_ricci.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(nabla < 1e-9, "{nabla}");
        }
    }

    #[test]
    fn sectional_is_basis_independent() {
        let b = bundle("absq(1)+absq(2)+0.1*absq(1)*absq(2)", 2, &[0.3, 0.2, -0.5, 0.4]);
        let x = Vector::from_vec(vec![1.0, 0.2, 0.0, -0.3]);
        let y = Vector::from_vec(vec![0.1, 1.0, 0.5, 0.0]);
        let k1 = sectional(&b, &Plane::new(x.clone(), y.clone())).unwrap();
        let k2 = sectional(&b, &Plane::new(&x * 2.0, &x + &y)).unwrap();
        assert!(relative(k1 - k2, k1) < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        let b = bundle("log(1+rsq)", 2, &[0.1, 0.2, 0.3, 0.4]);
        let x = Vector::from_vec(vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            sectional(&b, &Plane::new(x.clone(), &x * 3.0)).unwrap_err(),
            CurvatureError::DegeneratePlane
        );
        assert_eq!(
            holomorphic_sectional(&b, &Vector::zeros(4)).unwrap_err(),
            CurvatureError::ZeroVector
        );
        assert_eq!(
            ricci_direction(&b.ricci, &b.g, &Vector::zeros(4)).unwrap_err(),
            CurvatureError::ZeroVector
        );
    }

    #[test]
    fn insufficient_order() {
        let k = parse("log(1+rsq)", 2).unwrap();
        let m = crate::metric::metric_jet(&k, &[0.1; 4], 1).unwrap();
        assert!(matches!(
            curvature_bundle(&m),
            Err(CurvatureError::InsufficientOrder { needed: 2, .. })
        ));
        let m = crate::metric::metric_jet(&k, &[0.1; 4], 2).unwrap();
        let b = curvature_bundle(&m).unwrap();
        assert!(b.nabla_ricci.is_empty());
    }

    #[test]
    fn transport_in_flat_space_is_trivial() {
        let field = MetricField::new(parse("absq(1)+absq(2)", 2).unwrap(), 2);
        let v = Vector::from_vec(vec![0.3, -1.0, 0.5, 2.0]);
        let path = coordinate_parallelogram(&[0.1, 0.2, 0.3, 0.4], 0, 2, 0.5);
        let out = parallel_transport(&field, &path, &v, 10).unwrap();
        assert!((out - &v).amax() < 1e-12);
        assert_eq!(
            parallel_transport(&field, &path, &v, 0).unwrap_err(),
            CurvatureError::InvalidSteps
        );
    }

    #[test]
    fn transport_reports_domain_exit() {
        let field = MetricField::new(parse("-log(1-rsq)", 1).unwrap(), 1);
        let v = Vector::from_vec(vec![1.0, 0.0]);
        let path = vec![vec![0.0, 0.0], vec![2.0, 0.0]];
        assert!(matches!(
            parallel_transport(&field, &path, &v, 8),
            Err(CurvatureError::DomainExit { .. })
        ));
    }
}
