//! Truncated multivariate Taylor polynomials ("jets").
//!
//! A [`JetScalar`] stores the Taylor coefficients of a scalar function of
//! `vars` variables around a fixed point, up to a total degree `order`:
//!
//! ```text
//! f(p + h) = Σ_{|α| ≤ order} c_α h^α
//! ```
//!
//! Arithmetic is the ring of polynomials modulo monomials of degree
//! `order + 1`, so every operation produces the exact Taylor coefficients of
//! the composed function (up to roundoff). Elementary functions are applied
//! by univariate series composition around the constant term.
//!
//! Monomials are enumerated by total degree first, which makes the coefficient
//! vector of a lower-order jet a prefix of the higher-order one.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Highest supported jet order.
pub const MAX_ORDER: usize = 5;

const NONE: u32 = u32::MAX;

/// Monomial bookkeeping shared by all jets with the same `(vars, order)`.
pub struct JetSpace {
    vars: usize,
    order: usize,
    monomials: Vec<Vec<u8>>,
    degrees: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
    /// `(i, j, k)`: monomial i times monomial j is monomial k.
    products: Vec<(u32, u32, u32)>,
    /// `raise[v][i]`: index of monomial i multiplied by variable v, or NONE.
    raise: Vec<Vec<u32>>,
}

impl fmt::Debug for JetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetSpace")
            .field("vars", &self.vars)
            .field("order", &self.order)
            .field("len", &self.monomials.len())
            .finish()
    }
}

fn enumerate_degree(vars: usize, degree: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if prefix.len() + 1 == vars {
        prefix.push(degree as u8);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=degree).rev() {
        prefix.push(first as u8);
        enumerate_degree(vars, degree - first, prefix, out);
        prefix.pop();
    }
}

impl JetSpace {
    fn build(vars: usize, order: usize) -> JetSpace {
        assert!(vars >= 1, "jet space needs at least one variable");
        assert!(order <= MAX_ORDER, "jet order capped at {MAX_ORDER}");
        let mut monomials = Vec::new();
        let mut degrees = Vec::new();
        for degree in 0..=order {
            let start = monomials.len();
            enumerate_degree(vars, degree, &mut Vec::with_capacity(vars), &mut monomials);
            degrees.extend(std::iter::repeat_n(degree, monomials.len() - start));
        }
        let index: HashMap<Vec<u8>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();

        let mut products = Vec::new();
        let mut scratch = vec![0u8; vars];
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                if degrees[i] + degrees[j] > order {
                    // degrees are sorted, nothing further in this row fits
                    break;
                }
                for v in 0..vars {
                    scratch[v] = a[v] + b[v];
                }
                products.push((i as u32, j as u32, index[&scratch] as u32));
            }
        }

        let raise = (0..vars)
            .map(|v| {
                monomials
                    .iter()
                    .map(|m| {
                        let mut up = m.clone();
                        up[v] += 1;
                        index.get(&up).map_or(NONE, |&k| k as u32)
                    })
                    .collect()
            })
            .collect();

        JetSpace {
            vars,
            order,
            monomials,
            degrees,
            index,
            products,
            raise,
        }
    }

    /// Shared space for `(vars, order)`, built once per process.
    pub fn get(vars: usize, order: usize) -> Arc<JetSpace> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<JetSpace>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry((vars, order))
            .or_insert_with(|| Arc::new(JetSpace::build(vars, order)))
            .clone()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of coefficients, `C(vars + order, order)`.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &[u8] {
        &self.monomials[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index_of(&self, exponents: &[u8]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// Index of the monomial whose exponents count the given variable
    /// indices (a multiset such as `[0, 0, 2]` for `h₀² h₂`).
    pub fn index_of_multiset(&self, indices: &[usize]) -> Option<usize> {
        let mut exps = vec![0u8; self.vars];
        for &i in indices {
            *exps.get_mut(i)? += 1;
        }
        self.index_of(&exps)
    }
}

/// Truncated Taylor expansion of a scalar function at a point.
#[derive(Clone)]
pub struct JetScalar {
    space: Arc<JetSpace>,
    coeffs: Vec<f64>,
}

impl fmt::Debug for JetScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetScalar")
            .field("vars", &self.space.vars)
            .field("order", &self.space.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

impl JetScalar {
    pub fn constant(space: &Arc<JetSpace>, value: f64) -> JetScalar {
        let mut coeffs = vec![0.0; space.len()];
        coeffs[0] = value;
        JetScalar {
            space: space.clone(),
            coeffs,
        }
    }

    pub fn zero(space: &Arc<JetSpace>) -> JetScalar {
        JetScalar::constant(space, 0.0)
    }

    /// The coordinate function `x_var` expanded around `value`.
    pub fn variable(space: &Arc<JetSpace>, var: usize, value: f64) -> JetScalar {
        let mut jet = JetScalar::constant(space, value);
        if space.order >= 1 {
            let mut exps = vec![0u8; space.vars];
            exps[var] = 1;
            jet.coeffs[space.index[&exps]] = 1.0;
        }
        jet
    }

    pub fn from_coeffs(space: &Arc<JetSpace>, coeffs: Vec<f64>) -> JetScalar {
        assert_eq!(coeffs.len(), space.len(), "coefficient count mismatch");
        JetScalar {
            space: space.clone(),
            coeffs,
        }
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.space.order
    }

    pub fn vars(&self) -> usize {
        self.space.vars
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Taylor coefficient of the monomial with the given exponents.
    pub fn coeff(&self, exponents: &[u8]) -> f64 {
        self.space.index_of(exponents).map_or(0.0, |i| self.coeffs[i])
    }

    /// Partial derivative `∂_{i₁}⋯∂_{i_k} f(p)` for a list of variable
    /// indices (order of the list is irrelevant).
    pub fn partial(&self, indices: &[usize]) -> f64 {
        match self.space.index_of_multiset(indices) {
            Some(i) => {
                let weight: f64 = self.space.monomials[i]
                    .iter()
                    .map(|&e| factorial(e as usize))
                    .product();
                self.coeffs[i] * weight
            }
            None => 0.0,
        }
    }

    /// Drop all terms above `order`.
    pub fn truncate(&self, order: usize) -> JetScalar {
        if order >= self.space.order {
            return self.clone();
        }
        let space = JetSpace::get(self.space.vars, order);
        let coeffs = self.coeffs[..space.len()].to_vec();
        JetScalar { space, coeffs }
    }

    /// Jet of `∂f/∂x_var`, one order lower.
    pub fn derivative(&self, var: usize) -> JetScalar {
        let order = self.space.order.saturating_sub(1);
        let space = JetSpace::get(self.space.vars, order);
        if self.space.order == 0 {
            return JetScalar::zero(&space);
        }
        let raise = &self.space.raise[var];
        let coeffs = (0..space.len())
            .map(|i| {
                let up = raise[i];
                debug_assert_ne!(up, NONE);
                let mult = self.space.monomials[up as usize][var] as f64;
                mult * self.coeffs[up as usize]
            })
            .collect();
        JetScalar { space, coeffs }
    }

    fn same_space(&self, other: &JetScalar) {
        assert!(
            Arc::ptr_eq(&self.space, &other.space),
            "jets live in different spaces ({:?} vs {:?})",
            self.space,
            other.space
        );
    }

    pub fn add(&self, other: &JetScalar) -> JetScalar {
        self.same_space(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        JetScalar {
            space: self.space.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &JetScalar) -> JetScalar {
        self.same_space(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        JetScalar {
            space: self.space.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> JetScalar {
        self.scale(-1.0)
    }

    pub fn scale(&self, s: f64) -> JetScalar {
        JetScalar {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_constant(&self, c: f64) -> JetScalar {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// `self += s * other`
    pub fn axpy(&mut self, s: f64, other: &JetScalar) {
        self.same_space(other);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    pub fn mul(&self, other: &JetScalar) -> JetScalar {
        self.same_space(other);
        let mut coeffs = vec![0.0; self.coeffs.len()];
        for &(i, j, k) in &self.space.products {
            coeffs[k as usize] += self.coeffs[i as usize] * other.coeffs[j as usize];
        }
        JetScalar {
            space: self.space.clone(),
            coeffs,
        }
    }

    /// `Σ_k series[k] · h^k` where `h = self - value`.
    fn compose(&self, series: &[f64]) -> JetScalar {
        let mut nilpotent = self.clone();
        nilpotent.coeffs[0] = 0.0;
        let mut out = JetScalar::constant(&self.space, series[0]);
        let mut power = JetScalar::constant(&self.space, 1.0);
        for &a in series.iter().skip(1) {
            power = power.mul(&nilpotent);
            out.axpy(a, &power);
        }
        out
    }

    /// `1/f`; `None` when the value is zero.
    pub fn recip(&self) -> Option<JetScalar> {
        let c = self.value();
        if c == 0.0 || !c.is_finite() {
            return None;
        }
        // 1/(c+h) = Σ (-1)^k h^k / c^{k+1}
        let series: Vec<f64> = (0..=self.order())
            .map(|k| (-1f64).powi(k as i32) / c.powi(k as i32 + 1))
            .collect();
        Some(self.compose(&series))
    }

    pub fn div(&self, other: &JetScalar) -> Option<JetScalar> {
        other.recip().map(|r| self.mul(&r))
    }

    /// Integer power; negative exponents need a nonzero value.
    pub fn powi(&self, exp: i32) -> Option<JetScalar> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = JetScalar::constant(&self.space, 1.0);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }

    pub fn exp(&self) -> JetScalar {
        let e = self.value().exp();
        let series: Vec<f64> = (0..=self.order()).map(|k| e / factorial(k)).collect();
        self.compose(&series)
    }

    /// Natural logarithm; `None` for nonpositive values.
    pub fn ln(&self) -> Option<JetScalar> {
        let c = self.value();
        if c <= 0.0 || !c.is_finite() {
            return None;
        }
        let mut series = vec![c.ln()];
        for k in 1..=self.order() {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            series.push(sign / (k as f64 * c.powi(k as i32)));
        }
        Some(self.compose(&series))
    }

    /// Square root; `None` for nonpositive values (the derivatives blow up
    /// at zero).
    pub fn sqrt(&self) -> Option<JetScalar> {
        let c = self.value();
        if c <= 0.0 || !c.is_finite() {
            return None;
        }
        // sqrt(c) · binom(1/2, k) / c^k
        let root = c.sqrt();
        let mut series = Vec::with_capacity(self.order() + 1);
        let mut binom = 1.0;
        for k in 0..=self.order() {
            if k > 0 {
                binom *= (0.5 - (k as f64 - 1.0)) / k as f64;
            }
            series.push(root * binom / c.powi(k as i32));
        }
        Some(self.compose(&series))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn space_sizes_match_binomial() {
        for vars in 1..=4 {
            for order in 0..=MAX_ORDER {
                let space = JetSpace::get(vars, order);
                assert_eq!(space.len(), binomial(vars + order, order));
            }
        }
    }

    #[test]
    fn lower_order_is_prefix() {
        let hi = JetSpace::get(3, 5);
        let lo = JetSpace::get(3, 3);
        for i in 0..lo.len() {
            assert_eq!(hi.monomial(i), lo.monomial(i));
        }
    }

    #[test]
    fn square_of_shifted_variable() {
        let space = JetSpace::get(2, 3);
        let x = JetScalar::variable(&space, 0, 3.0);
        let sq = x.mul(&x);
        assert_eq!(sq.value(), 9.0);
        assert_eq!(sq.partial(&[0]), 6.0);
        assert_eq!(sq.partial(&[0, 0]), 2.0);
        assert_eq!(sq.partial(&[0, 0, 0]), 0.0);
        assert_eq!(sq.partial(&[1]), 0.0);
    }

    #[test]
    fn exp_log_inverse() {
        let space = JetSpace::get(2, 5);
        let x = JetScalar::variable(&space, 0, 0.3);
        let y = JetScalar::variable(&space, 1, -0.2);
        let f = x.mul(&y).add_constant(2.0);
        let back = f.ln().unwrap().exp();
        for (a, b) in back.coeffs().iter().zip(f.coeffs()) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let space = JetSpace::get(2, 5);
        let x = JetScalar::variable(&space, 0, 1.5);
        let f = x.mul(&x).add(&JetScalar::variable(&space, 1, 0.5));
        let r = f.sqrt().unwrap();
        let sq = r.mul(&r);
        for (a, b) in sq.coeffs().iter().zip(f.coeffs()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_shifts_coefficients() {
        let space = JetSpace::get(2, 4);
        let x = JetScalar::variable(&space, 0, 1.0);
        let y = JetScalar::variable(&space, 1, 2.0);
        // f = x^3 y
        let f = x.powi(3).unwrap().mul(&y);
        let fx = f.derivative(0);
        assert_eq!(fx.order(), 3);
        // ∂x f = 3x^2 y -> at (1,2): 6 ; ∂x∂y: 3x^2 = 3
        assert!((fx.value() - 6.0).abs() < 1e-14);
        assert!((fx.partial(&[1]) - 3.0).abs() < 1e-14);
        assert!((fx.partial(&[0]) - 12.0).abs() < 1e-14);
    }

    #[test]
    fn recip_of_zero_is_none() {
        let space = JetSpace::get(1, 2);
        assert!(JetScalar::zero(&space).recip().is_none());
        assert!(JetScalar::constant(&space, -1.0).ln().is_none());
        assert!(JetScalar::zero(&space).powi(-2).is_none());
    }
}
