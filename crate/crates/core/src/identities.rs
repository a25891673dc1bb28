//! Pointwise identities that every Kähler metric satisfies, evaluated on
//! computed tensors as a permanent consistency gate.
//!
//! Each check is a relative violation measured against the natural scale
//! of the tensors involved (`‖S‖`, `‖R‖`, `‖R‖‖S‖`, `‖S‖‖R‖^½`), so that
//! identically vanishing tensors do not divide roundoff by roundoff.
//! Checks are tiered: `Algebraic` ones are multilinear identities that hold
//! exactly given a Hermitian `S`; `Numerical` ones also depend on the
//! differentiation of the metric.

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use crate::classifier::FrameData;
use crate::curvature::{kahler_curvature_violation, riemann_symmetry_violations};
use crate::tensor::{relative, QuadTensor, Vector};

/// Tolerance of identities among exactly computed tensors.
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance of identities that involve differentiated data.
pub const NUMERICAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Algebraic,
    Numerical,
}

impl Tier {
    pub fn tolerance(self) -> f64 {
        match self {
            Tier::Algebraic => ALGEBRAIC_TOL,
            Tier::Numerical => NUMERICAL_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub tier: Tier,
    pub violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// The checks in report order.
pub const IDENTITIES: [(&str, Tier); 15] = [
    ("ricci-symmetric", Tier::Numerical),
    ("ricci-j-orthogonal", Tier::Numerical),
    ("ricci-j-invariant", Tier::Numerical),
    ("ricci-j-skew", Tier::Numerical),
    ("rs-j-invariant", Tier::Numerical),
    ("rs-symmetries", Tier::Numerical),
    ("qc-symmetries", Tier::Algebraic),
    ("tachibana-complex-split", Tier::Algebraic),
    ("holomorphic-plane-doubling", Tier::Algebraic),
    ("qc-holomorphic-first-slot", Tier::Algebraic),
    ("riemann-antisymmetry", Tier::Numerical),
    ("riemann-pair-symmetry", Tier::Numerical),
    ("riemann-first-bianchi", Tier::Numerical),
    ("kahler-curvature", Tier::Numerical),
    ("closed-ricci-form", Tier::Numerical),
];

fn build(values: [f64; 15]) -> Vec<IdentityCheck> {
    IDENTITIES
        .iter()
        .zip(values)
        .map(|(&(name, tier), violation)| IdentityCheck {
            name,
            tier,
            violation,
            tolerance: tier.tolerance(),
            passed: violation <= tier.tolerance(),
        })
        .collect()
}

fn diff(a: &QuadTensor, b: &QuadTensor, scale: f64) -> f64 {
    relative(a.sub(b).max_norm(), scale)
}

fn mat_rel(m: &DMatrix<f64>, scale: f64) -> f64 {
    relative(m.amax(), scale)
}

/// All checks at one point; `samples` random pairs are used for the
/// holomorphic-plane doubling identity.
pub fn identity_suite(fd: &FrameData, rng: &mut impl Rng, samples: usize) -> Vec<IdentityCheck> {
    let dim = fd.dim();
    let jm = fd.j.matrix();
    let s = fd.s.matrix();
    let s_norm = fd.s.max_norm();
    let r_norm = fd.r04.max_norm();
    let rs_scale = r_norm * s_norm;

    let ricci_symmetric = mat_rel(&(s - s.transpose()), s_norm);
    // S(X,JX) = 0 for all X: symmetric part of S·J vanishes
    let sj = s * jm;
    let ricci_j_orthogonal = mat_rel(&((&sj + sj.transpose()) * 0.5), s_norm);
    let ricci_j_invariant = mat_rel(&(jm.transpose() * s * jm - s), s_norm);
    // S(X,JY) = -S(JX,Y): S·J + Jᵀ·S = 0
    let ricci_j_skew = mat_rel(&(&sj + jm.transpose() * s), s_norm);

    let rs = &fd.rs;
    let rs_j12 = rs.map_slot(0, jm).map_slot(1, jm);
    let rs_j34 = rs.map_slot(2, jm).map_slot(3, jm);
    let rs_j_invariant = diff(&rs_j12, rs, rs_scale).max(diff(&rs_j34, rs, rs_scale));
    let rs_symmetries = rs_symmetry_violation(rs, jm, rs_scale);
    let qc_symmetries = rs_symmetry_violation(&fd.qc, jm, s_norm);

    let tc = diff(&fd.qc, &fd.q.add(&fd.q.map_slot(2, jm).map_slot(3, jm)), s_norm);
    let mut rh: f64 = 0.0;
    for _ in 0..samples {
        let u = unit(rng, dim);
        let x = unit(rng, dim);
        let jx = fd.j.apply(&x);
        rh = rh.max((fd.qc.eval(&u, &u, &x, &jx) - 2.0 * fd.q.eval(&u, &u, &x, &jx)).abs());
    }
    let rh = relative(rh, s_norm);
    // Q^c(x, Jx; ·, ·) = 0: the (1,2)-symmetric part of Q^c(·, J·; ·, ·)
    let u = fd.qc.map_slot(1, jm);
    let first_slot = relative(0.5 * u.add(&u.swap_slots(0, 1)).max_norm(), s_norm);

    let (anti, pair, bianchi) = riemann_symmetry_violations(&fd.r04);
    let kahler = kahler_curvature_violation(&fd.r04, &fd.j);

    let closed = closed_ricci_form_violation(fd, s_norm * r_norm.sqrt());

    build([
        ricci_symmetric,
        ricci_j_orthogonal,
        ricci_j_invariant,
        ricci_j_skew,
        rs_j_invariant,
        rs_symmetries,
        qc_symmetries,
        tc,
        rh,
        first_slot,
        anti,
        pair,
        bianchi,
        kahler,
        closed,
    ])
}

fn unit(rng: &mut impl Rng, dim: usize) -> Vector {
    loop {
        let v = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 {
            return v / n;
        }
    }
}

/// Worst violation of properties a)–e) shared by `R·S` and `Q^c`,
/// relative to `scale`.
fn rs_symmetry_violation(t: &QuadTensor, jm: &DMatrix<f64>, scale: f64) -> f64 {
    let neg = |x: &QuadTensor| x.scaled(-1.0);
    let j1 = t.map_slot(0, jm);
    let j2 = t.map_slot(1, jm);
    let j3 = t.map_slot(2, jm);
    let j4 = t.map_slot(3, jm);
    [
        diff(&neg(&t.swap_slots(2, 3)), t, scale),
        diff(&t.swap_slots(0, 1), t, scale),
        diff(&j1.map_slot(1, jm), t, scale),
        diff(&j3.map_slot(3, jm), t, scale),
        diff(&j2, &neg(&j1), scale),
        diff(&j4, &neg(&j3), scale),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// `(∇_X S)(Y,JZ) + (∇_Y S)(Z,JX) + (∇_Z S)(X,JY) = 0`, the derivative
/// form of the closedness of the Ricci form `ρ(X,Y) = S(X,JY)`.
pub fn closed_ricci_form_violation(fd: &FrameData, scale: f64) -> f64 {
    let dim = fd.dim();
    let jm = fd.j.matrix();
    let n = |a: usize, b: usize, c: usize| fd.nabla_s[(a * dim + b) * dim + c];
    // P[x][y][z] = (∇_x S)(y, Jz) = Σ_d (∇_x S)(y, e_d) J_dz
    let p = |x: usize, y: usize, z: usize| (0..dim).map(|d| n(y, d, x) * jm[(d, z)]).sum::<f64>();
    let mut worst: f64 = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                worst = worst.max((p(a, b, c) + p(b, c, a) + p(c, a, b)).abs());
            }
        }
    }
    relative(worst, scale)
}

/// Elementwise maximum of per-point suites.
pub fn merge(suites: &[Vec<IdentityCheck>]) -> Vec<IdentityCheck> {
    let mut values = [0.0f64; 15];
    for suite in suites {
        for (slot, check) in values.iter_mut().zip(suite) {
            *slot = slot.max(check.violation);
        }
    }
    build(values)
}
