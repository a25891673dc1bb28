//! Kähler metrics derived from potentials, with derivatives up to third
//! order.
//!
//! The real metric is the real part of the complex Hessian `∂²K/∂zⱼ∂z̄ₖ`:
//!
//! ```text
//! g(∂xⱼ, ∂xₖ) = g(∂yⱼ, ∂yₖ) = ¼ (K_{xⱼxₖ} + K_{yⱼyₖ})
//! g(∂xⱼ, ∂yₖ)              = ¼ (K_{xⱼyₖ} - K_{yⱼxₖ})
//! ```
//!
//! so that `K = Σ|zₖ|²` gives the identity metric.

use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

use crate::jet::{JetScalar, JetSpace};
use crate::potential::{eval_jet, EvalError, Expr};
use crate::tensor::{relative, Bilinear, ComplexStructure, TensorError};

/// Highest metric derivative order carried by a [`MetricJet`].
pub const MAX_METRIC_ORDER: usize = 3;

/// Relative Hermitian tolerance for potential-derived metrics.
pub const METRIC_HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("metric is not positive definite at {point:?} (smallest eigenvalue {min_eigenvalue:.6e})")]
    NotPositiveDefinite { point: Vec<f64>, min_eigenvalue: f64 },
    #[error("metric derivative order {0} exceeds the maximum of {MAX_METRIC_ORDER}")]
    OrderTooHigh(usize),
    #[error("metric is not Hermitian with respect to J (relative violation {0:.3e})")]
    NotHermitian(f64),
    #[error("inconsistent metric jet: {0}")]
    Shape(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Metric components and partial derivatives at a point.
///
/// Derivative arrays are flattened row-major with the metric indices first:
/// `dg[(a·d + b)·d + c] = ∂_c g_ab`, `ddg[…] = ∂_d ∂_c g_ab`,
/// `dddg[…] = ∂_e ∂_d ∂_c g_ab`. Arrays beyond `order` are empty.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricJet {
    pub point: Vec<f64>,
    pub order: usize,
    pub g: Bilinear,
    pub dg: Vec<f64>,
    pub ddg: Vec<f64>,
    pub dddg: Vec<f64>,
    pub j: ComplexStructure,
}

impl MetricJet {
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn complex_dim(&self) -> usize {
        self.j.complex_dim()
    }

    /// Assemble a jet from explicit arrays; checks shapes and finiteness
    /// only, so test fixtures can inject metrics that are not Kähler.
    pub fn from_parts(
        point: Vec<f64>,
        g: DMatrix<f64>,
        dg: Vec<f64>,
        ddg: Vec<f64>,
        dddg: Vec<f64>,
    ) -> Result<MetricJet, MetricError> {
        let dim = g.nrows();
        if dim % 2 != 0 || dim == 0 || point.len() != dim {
            return Err(MetricError::Shape(format!(
                "metric is {dim}x{} at a point with {} coordinates",
                g.ncols(),
                point.len()
            )));
        }
        let order = [(&dg, 3), (&ddg, 4), (&dddg, 5)]
            .iter()
            .take_while(|(arr, p)| arr.len() == dim.pow(*p))
            .count();
        for (k, (arr, _)) in [(&dg, 3), (&ddg, 4), (&dddg, 5)].iter().enumerate() {
            if k >= order && !arr.is_empty() {
                return Err(MetricError::Shape(format!("derivative array {} has wrong length", k + 1)));
            }
        }
        let values = dg.iter().chain(&ddg).chain(&dddg);
        if values.clone().any(|v| !v.is_finite()) {
            return Err(MetricError::Tensor(TensorError::NonFinite));
        }
        Ok(MetricJet {
            point,
            order,
            g: Bilinear::new(g)?,
            dg,
            ddg,
            dddg,
            j: ComplexStructure::standard(dim / 2),
        })
    }

    fn array(&self, k: usize) -> &[f64] {
        match k {
            1 => &self.dg,
            2 => &self.ddg,
            3 => &self.dddg,
            _ => &[],
        }
    }

    /// `∂_{idx…} g_ab` for up to three derivative indices.
    pub fn derivative(&self, a: usize, b: usize, idx: &[usize]) -> f64 {
        let d = self.dim();
        if idx.is_empty() {
            return self.g.get(a, b);
        }
        let arr = self.array(idx.len());
        if arr.is_empty() {
            return 0.0;
        }
        let mut flat = a * d + b;
        for &i in idx {
            flat = flat * d + i;
        }
        arr[flat]
    }

    /// Smallest eigenvalue of `g`.
    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.g.matrix().clone()).eigenvalues.min()
    }

    /// Relative violation of `g(J·, J·) = g`.
    pub fn hermitian_violation(&self) -> f64 {
        self.g.hermitian_violation(&self.j)
    }

    /// Taylor jets of the metric components (row-major `a·d + b`),
    /// rebuilt from the derivative arrays, truncated to `order`.
    pub fn component_jets(&self, order: usize) -> Vec<JetScalar> {
        let order = order.min(self.order);
        let d = self.dim();
        let space = JetSpace::get(d, order);
        let mut jets = Vec::with_capacity(d * d);
        let mut indices = Vec::with_capacity(order);
        for a in 0..d {
            for b in 0..d {
                let coeffs = (0..space.len())
                    .map(|m| {
                        let exps = space.monomial(m);
                        indices.clear();
                        let mut weight = 1.0;
                        for (v, &e) in exps.iter().enumerate() {
                            for k in 0..e {
                                indices.push(v);
                                weight *= (k + 1) as f64;
                            }
                        }
                        self.derivative(a, b, &indices) / weight
                    })
                    .collect();
                jets.push(JetScalar::from_coeffs(&space, coeffs));
            }
        }
        jets
    }

    /// Kähler form derivative `dω(∂a,∂b,∂c)` with `ω(X,Y) = g(JX, Y)`,
    /// max-norm relative to the first derivatives of `g`.
    pub fn kahler_form_closedness(&self) -> f64 {
        if self.order < 1 {
            return 0.0;
        }
        let d = self.dim();
        let jm = self.j.matrix();
        // ∂_c ω_ab = Σ_m J[m][a] ∂_c g_mb
        let domega = |a: usize, b: usize, c: usize| -> f64 {
            (0..d).map(|m| jm[(m, a)] * self.derivative(m, b, &[c])).sum()
        };
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let v = domega(b, c, a) + domega(c, a, b) + domega(a, b, c);
                    worst = worst.max(v.abs());
                }
            }
        }
        let scale = self.dg.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        relative(worst, scale)
    }
}

/// Metric jet of order `order` (≤ 3) derived from the potential `k`.
pub fn metric_jet(k: &Expr, point: &[f64], order: usize) -> Result<MetricJet, MetricError> {
    if order > MAX_METRIC_ORDER {
        return Err(MetricError::OrderTooHigh(order));
    }
    let potential = eval_jet(k, point, order + 2)?;
    let dim = point.len();
    let n = dim / 2;
    let hess: Vec<JetScalar> = (0..dim)
        .flat_map(|a| {
            let da = potential.derivative(a);
            (0..dim).map(move |b| da.derivative(b)).collect::<Vec<_>>()
        })
        .collect();
    let h = |a: usize, b: usize| &hess[a * dim + b];

    let space = hess[0].space().clone();
    let mut comps = vec![JetScalar::zero(&space); dim * dim];
    for jdx in 0..n {
        for kdx in 0..n {
            let (xj, yj, xk, yk) = (jdx, n + jdx, kdx, n + kdx);
            let re = h(xj, xk).add(h(yj, yk)).scale(0.25);
            let im = h(xj, yk).sub(h(yj, xk)).scale(0.25);
            comps[xj * dim + xk] = re.clone();
            comps[yj * dim + yk] = re;
            comps[xj * dim + yk] = im.clone();
            comps[yk * dim + xj] = im;
        }
    }

    let g = DMatrix::from_fn(dim, dim, |a, b| comps[a * dim + b].value());
    let mut arrays = vec![Vec::new(), Vec::new(), Vec::new()];
    for (k_ord, arr) in arrays.iter_mut().enumerate().take(order) {
        let depth = k_ord + 1;
        arr.reserve(dim.pow(depth as u32 + 2));
        let mut idx = vec![0usize; depth];
        for c in &comps {
            for flat in 0..dim.pow(depth as u32) {
                let mut rem = flat;
                for slot in (0..depth).rev() {
                    idx[slot] = rem % dim;
                    rem /= dim;
                }
                arr.push(c.partial(&idx));
            }
        }
    }
    let [dg, ddg, dddg]: [Vec<f64>; 3] = arrays.try_into().expect("three arrays");
    let jet = MetricJet::from_parts(point.to_vec(), g, dg, ddg, dddg)?;

    let min_eigenvalue = jet.min_eigenvalue();
    if !(min_eigenvalue > 0.0) {
        return Err(MetricError::NotPositiveDefinite {
            point: point.to_vec(),
            min_eigenvalue,
        });
    }
    let violation = jet.hermitian_violation();
    if violation > METRIC_HERMITIAN_TOL {
        return Err(MetricError::NotHermitian(violation));
    }
    Ok(jet)
}

/// Metric jet with all derivatives up to third order.
pub fn metric_from_potential(k: &Expr, point: &[f64]) -> Result<MetricJet, MetricError> {
    metric_jet(k, point, MAX_METRIC_ORDER)
}

/// A potential together with its complex dimension; evaluates metric jets
/// anywhere in its chart.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricField {
    pub potential: Expr,
    pub n: usize,
}

impl MetricField {
    pub fn new(potential: Expr, n: usize) -> MetricField {
        MetricField { potential, n }
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn jet(&self, point: &[f64], order: usize) -> Result<MetricJet, MetricError> {
        if point.len() != self.dim() {
            return Err(MetricError::Shape(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.dim()
            )));
        }
        metric_jet(&self.potential, point, order)
    }
}
