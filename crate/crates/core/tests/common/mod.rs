//! Independent oracles shared by the integration tests. None of these go
//! through the jet-based connection or the derivation-tensor helpers.

#![allow(dead_code)]

use kahler_core::curvature::CurvatureBundle;
use kahler_core::jet::JetSpace;
use kahler_core::metric::metric_jet;
use kahler_core::potential::{eval_f64, eval_jet, parse, Expr};
use kahler_core::tensor::Vector;
use kahler_core::zoo::ManifoldSpec;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m: f64, x| m.max(x.abs()))
}

/// `max |a - b| / max(max |b|, floor)`.
pub fn rel_diff(a: &[f64], b: &[f64], floor: f64) -> f64 {
    assert_eq!(a.len(), b.len());
    let d = a.iter().zip(b).fold(0.0, |m: f64, (x, y)| m.max((x - y).abs()));
    d / max_abs(b).max(floor)
}

fn shifted(p: &[f64], i: usize, h: f64) -> Vec<f64> {
    let mut q = p.to_vec();
    q[i] += h;
    q
}

/// Central difference `(f(p + h eᵢ) - f(p - h eᵢ)) / 2h`, componentwise.
pub fn central(f: &dyn Fn(&[f64]) -> Vec<f64>, p: &[f64], i: usize, h: f64) -> Vec<f64> {
    let plus = f(&shifted(p, i, h));
    let minus = f(&shifted(p, i, -h));
    plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * h)).collect()
}

/// One Richardson step on central differences: `(4 D(h/2) - D(h)) / 3`.
pub fn richardson(f: &dyn Fn(&[f64]) -> Vec<f64>, p: &[f64], i: usize, h: f64) -> Vec<f64> {
    let coarse = central(f, p, i, h);
    let fine = central(f, p, i, h / 2.0);
    fine.iter().zip(&coarse).map(|(a, b)| (4.0 * a - b) / 3.0).collect()
}

/// Metric from potential values only: `g = ¼` of the Wirtinger Hessian
/// combination, second derivatives of `K` by Richardson-extrapolated
/// central differences.
pub fn fd_metric(k: &Expr, p: &[f64], h: f64) -> DMatrix<f64> {
    let dim = p.len();
    let n = dim / 2;
    let kv = |q: &[f64]| eval_f64(k, q).unwrap();
    let second = |i: usize, j: usize, h: f64| -> f64 {
        let mut q = p.to_vec();
        let mut at = |si: f64, sj: f64| {
            q.copy_from_slice(p);
            q[i] += si * h;
            q[j] += sj * h;
            kv(&q)
        };
        (at(1.0, 1.0) - at(1.0, -1.0) - at(-1.0, 1.0) + at(-1.0, -1.0)) / (4.0 * h * h)
    };
    let hess = |i: usize, j: usize| (4.0 * second(i, j, h / 2.0) - second(i, j, h)) / 3.0;
    let mut g = DMatrix::zeros(dim, dim);
    for a in 0..n {
        for b in 0..n {
            let (xa, ya, xb, yb) = (a, a + n, b, b + n);
            let re = 0.25 * (hess(xa, xb) + hess(ya, yb));
            let im = 0.25 * (hess(xa, yb) - hess(ya, xb));
            g[(xa, xb)] = re;
            g[(ya, yb)] = re;
            g[(xa, yb)] = im;
            g[(yb, xa)] = im;
        }
    }
    g
}

/// Metric values through the library (order-0 jet).
pub fn metric_values(k: &Expr, p: &[f64]) -> Vec<f64> {
    metric_jet(k, p, 0).unwrap().g.matrix().as_slice().to_vec()
}

/// `Γ^c_ab` from finite differences of metric values, `[c][a][b]`.
pub fn fd_christoffel(k: &Expr, p: &[f64], h: f64) -> Vec<f64> {
    let dim = p.len();
    let values = |q: &[f64]| metric_values(k, q);
    // column-major slices: g[(r, c)] at r + c·dim
    let dg: Vec<Vec<f64>> = (0..dim).map(|i| richardson(&values, p, i, h)).collect();
    let d = |a: usize, b: usize, i: usize| dg[i][a + b * dim];
    let g = DMatrix::from_column_slice(dim, dim, &values(p));
    let ginv = g.try_inverse().unwrap();
    let mut out = vec![0.0; dim * dim * dim];
    for c in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                let mut s = 0.0;
                for e in 0..dim {
                    s += 0.5 * ginv[(c, e)] * (d(e, b, a) + d(e, a, b) - d(a, b, e));
                }
                out[(c * dim + a) * dim + b] = s;
            }
        }
    }
    out
}

/// `R^d_abc = ∂_a Γ^d_bc - ∂_b Γ^d_ac + Γ^d_ae Γ^e_bc - Γ^d_be Γ^e_ac`
/// with `Γ` and its derivatives by nested finite differences.
pub fn fd_riemann(k: &Expr, p: &[f64], h: f64) -> Vec<f64> {
    let dim = p.len();
    let gamma_at = |q: &[f64]| fd_christoffel(k, q, h);
    let gamma = gamma_at(p);
    let dgamma: Vec<Vec<f64>> = (0..dim).map(|i| richardson(&gamma_at, p, i, h)).collect();
    let gm = |c: usize, a: usize, b: usize| gamma[(c * dim + a) * dim + b];
    let dgm = |c: usize, a: usize, b: usize, i: usize| dgamma[i][(c * dim + a) * dim + b];
    let mut out = vec![0.0; dim.pow(4)];
    for d in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let mut v = dgm(d, b, c, a) - dgm(d, a, c, b);
                    for e in 0..dim {
                        v += gm(d, a, e) * gm(e, b, c) - gm(d, b, e) * gm(e, a, c);
                    }
                    out[((d * dim + a) * dim + b) * dim + c] = v;
                }
            }
        }
    }
    out
}

/// Component loops straight from the definitions
/// `(R·S)(p,q;a,b) = -S(R(e_a,e_b)e_p, e_q) - S(e_p, R(e_a,e_b)e_q)`,
/// `(x∧y)z = g(y,z)x - g(x,z)y` and
/// `x∧^c y = x∧y + Jx∧Jy - 2g(Jx,y)J`. Layout `[p][q][a][b]`.
pub struct BruteForce {
    pub rs: Vec<f64>,
    pub q: Vec<f64>,
    pub qc: Vec<f64>,
}

pub fn brute_force(b: &CurvatureBundle) -> BruteForce {
    let dim = b.dim();
    let n = dim / 2;
    let s = |i: usize, j: usize| b.ricci.get(i, j);
    let g = |i: usize, j: usize| b.g.get(i, j);
    let r = |d: usize, a: usize, bb: usize, c: usize| b.riemann.r13[((d * dim + a) * dim + bb) * dim + c];
    // J e_i as (index, sign): J ∂x_k = ∂y_k, J ∂y_k = -∂x_k
    let jcol = |i: usize| if i < n { (i + n, 1.0) } else { (i - n, -1.0) };
    let idx = |p: usize, q: usize, a: usize, bb: usize| ((p * dim + q) * dim + a) * dim + bb;
    let mut rs = vec![0.0; dim.pow(4)];
    let mut q = vec![0.0; dim.pow(4)];
    let mut qc = vec![0.0; dim.pow(4)];
    for p in 0..dim {
        for qq in 0..dim {
            for a in 0..dim {
                for bb in 0..dim {
                    let mut v = 0.0;
                    for d in 0..dim {
                        v -= r(d, a, bb, p) * s(d, qq) + s(p, d) * r(d, a, bb, qq);
                    }
                    rs[idx(p, qq, a, bb)] = v;

                    // (e_a ∧ e_b) e_p = g_bp e_a - g_ap e_b
                    let wedge = |x: usize, y: usize, z: usize, out: &mut [f64]| {
                        out[x] += g(y, z);
                        out[y] -= g(x, z);
                    };
                    let act = |m: &dyn Fn(usize, &mut [f64])| -> f64 {
                        let mut mp = vec![0.0; dim];
                        let mut mq = vec![0.0; dim];
                        m(p, &mut mp);
                        m(qq, &mut mq);
                        let mut v = 0.0;
                        for i in 0..dim {
                            v -= mp[i] * s(i, qq) + s(p, i) * mq[i];
                        }
                        v
                    };
                    q[idx(p, qq, a, bb)] = act(&|z, out| wedge(a, bb, z, out));
                    let (ja, sa) = jcol(a);
                    let (jb, sb) = jcol(bb);
                    let gjab = sa * g(ja, bb);
                    qc[idx(p, qq, a, bb)] = act(&|z, out| {
                        wedge(a, bb, z, out);
                        let mut tmp = vec![0.0; dim];
                        wedge(ja, jb, z, &mut tmp);
                        for i in 0..dim {
                            out[i] += sa * sb * tmp[i];
                        }
                        let (jz, sz) = jcol(z);
                        out[jz] -= 2.0 * gjab * sz;
                    });
                }
            }
        }
    }
    BruteForce { rs, q, qc }
}

/// Uniform point in a symmetric box.
pub fn random_point(rng: &mut impl Rng, dim: usize, half_width: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-half_width..half_width)).collect()
}

/// `K = -Δ log λ / (2λ)` for a conformal metric `λ(dx² + dy²)`, with the
/// Laplacian by Richardson-extrapolated central differences.
pub fn conformal_curvature(lambda: &dyn Fn(f64, f64) -> f64, x: f64, y: f64) -> f64 {
    let ll = |x: f64, y: f64| lambda(x, y).ln();
    let lap = |h: f64| {
        (ll(x + h, y) + ll(x - h, y) + ll(x, y + h) + ll(x, y - h) - 4.0 * ll(x, y)) / (h * h)
    };
    // error series in h², two Richardson steps
    let (a, b, c) = (lap(2e-2), lap(1e-2), lap(5e-3));
    let ab = (4.0 * b - a) / 3.0;
    let bc = (4.0 * c - b) / 3.0;
    let laplacian = (16.0 * bc - ab) / 15.0;
    -laplacian / (2.0 * lambda(x, y))
}

/// Uniform points in the domain box, padded by 5% per side so that
/// finite-difference stencils stay inside.
pub fn inner_points(spec: &ManifoldSpec, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            spec.domain
                .iter()
                .map(|[lo, hi]| {
                    let pad = 0.05 * (hi - lo);
                    rng.gen_range(lo + pad..hi - pad)
                })
                .collect()
        })
        .collect()
}

/// Relative error of each metric derivative array (orders 1..=3) against
/// Richardson central differences of the array one order lower.
pub fn jet_fd_errors(spec: &ManifoldSpec, p: &[f64]) -> Vec<(usize, f64)> {
    let dim = 2 * spec.n;
    let full = metric_jet(&spec.expr, p, 3).unwrap();
    [(1usize, &full.dg), (2, &full.ddg), (3, &full.dddg)]
        .into_iter()
        .map(|(order, array)| {
            let lower = |q: &[f64]| -> Vec<f64> {
                let m = metric_jet(&spec.expr, q, order - 1).unwrap();
                match order {
                    1 => m.g.matrix().transpose().as_slice().to_vec(),
                    2 => m.dg.clone(),
                    _ => m.ddg.clone(),
                }
            };
            let per_direction: Vec<Vec<f64>> = (0..dim).map(|c| richardson(&lower, p, c, 1e-3)).collect();
            // the new derivative index is last
            let len = per_direction[0].len();
            let fd: Vec<f64> = (0..len * dim).map(|f| per_direction[f % dim][f / dim]).collect();
            (order, rel_diff(array, &fd, 1e-12))
        })
        .collect()
}

/// Worst `|taylor - exact| / (1 + |exact|)` for random polynomials of
/// degree ≤ 5 in four variables, expanded by order-5 jets and evaluated at
/// finite offsets.
pub fn quintic_taylor_error(rng: &mut ChaCha8Rng, polynomials: usize) -> f64 {
    let names = ["x1", "x2", "y1", "y2"];
    let space = JetSpace::get(4, 5);
    let mut worst: f64 = 0.0;
    for _ in 0..polynomials {
        let mut terms = Vec::new();
        for _ in 0..8 {
            let c: f64 = rng.gen_range(-2.0..2.0);
            let factors: Vec<&str> = (0..rng.gen_range(0..=5)).map(|_| names[rng.gen_range(0..4)]).collect();
            terms.push(if factors.is_empty() {
                format!("{c}")
            } else {
                format!("{c} * {}", factors.join(" * "))
            });
        }
        let src = terms.join(" + ").replace("+ -", "- ");
        let e = parse(&src, 2).unwrap();
        let a: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let jet = eval_jet(&e, &a, 5).unwrap();
        for _ in 0..5 {
            let delta: Vec<f64> = (0..4).map(|_| rng.gen_range(-0.7..0.7)).collect();
            let taylor: f64 = (0..space.len())
                .map(|m| {
                    let exps = space.monomial(m);
                    jet.coeffs()[m] * exps.iter().zip(&delta).map(|(&k, d)| d.powi(k as i32)).product::<f64>()
                })
                .sum();
            let shifted: Vec<f64> = a.iter().zip(&delta).map(|(x, d)| x + d).collect();
            let exact = eval_f64(&e, &shifted).unwrap();
            worst = worst.max((taylor - exact).abs() / (1.0 + exact.abs()));
        }
    }
    worst
}

/// `T(v, v, x, y)` by explicit index loops over a `[p][q][a][b]` array.
pub fn contract(t: &[f64], v: &Vector, x: &Vector, y: &Vector) -> f64 {
    let dim = v.len();
    let mut s = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    s += t[((i * dim + j) * dim + k) * dim + l] * v[i] * v[j] * x[k] * y[l];
                }
            }
        }
    }
    s
}
