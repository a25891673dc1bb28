use thiserror::Error;

use super::{BinOp, Expr, Func};
use crate::jet::{JetScalar, JetSpace, MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("domain violation in `{op}` at `{subexpression}` (argument value {value})")]
    Domain {
        op: &'static str,
        subexpression: String,
        value: f64,
    },
    #[error("jet order {0} exceeds the maximum of {MAX_ORDER}")]
    OrderTooHigh(usize),
    #[error("point has {found} coordinates, expression needs an even count covering index {needed}")]
    PointDimension { found: usize, needed: usize },
    #[error("non-finite point coordinate")]
    NonFinitePoint,
}

fn check_point(e: &Expr, point: &[f64]) -> Result<usize, EvalError> {
    if point.is_empty() || point.len() % 2 != 0 || e.max_index() > point.len() / 2 {
        return Err(EvalError::PointDimension {
            found: point.len(),
            needed: e.max_index(),
        });
    }
    if point.iter().any(|v| !v.is_finite()) {
        return Err(EvalError::NonFinitePoint);
    }
    Ok(point.len() / 2)
}

fn domain(op: &'static str, e: &Expr, value: f64) -> EvalError {
    EvalError::Domain {
        op,
        subexpression: e.to_string(),
        value,
    }
}

/// Taylor jet of the expression at `point` up to total degree `order`.
pub fn eval_jet(e: &Expr, point: &[f64], order: usize) -> Result<JetScalar, EvalError> {
    if order > MAX_ORDER {
        return Err(EvalError::OrderTooHigh(order));
    }
    let n = check_point(e, point)?;
    let space = JetSpace::get(point.len(), order);
    let vars: Vec<JetScalar> = (0..point.len())
        .map(|i| JetScalar::variable(&space, i, point[i]))
        .collect();
    jet_rec(e, &vars, n, &space)
}

fn jet_rec(
    e: &Expr,
    vars: &[JetScalar],
    n: usize,
    space: &std::sync::Arc<JetSpace>,
) -> Result<JetScalar, EvalError> {
    Ok(match e {
        Expr::Num(v) => JetScalar::constant(space, *v),
        Expr::Coord(c) => vars[c.slot(n)].clone(),
        Expr::Neg(a) => jet_rec(a, vars, n, space)?.neg(),
        Expr::Binary(op, a, b) => {
            let a = jet_rec(a, vars, n, space)?;
            let bj = jet_rec(b, vars, n, space)?;
            match op {
                BinOp::Add => a.add(&bj),
                BinOp::Sub => a.sub(&bj),
                BinOp::Mul => a.mul(&bj),
                BinOp::Div => a.div(&bj).ok_or_else(|| domain("/", b, bj.value()))?,
            }
        }
        Expr::Pow(base, exp) => {
            let bj = jet_rec(base, vars, n, space)?;
            bj.powi(*exp).ok_or_else(|| domain("^", base, bj.value()))?
        }
        Expr::Call(func, arg) => {
            let a = jet_rec(arg, vars, n, space)?;
            match func {
                Func::Log => a.ln().ok_or_else(|| domain("log", arg, a.value()))?,
                Func::Exp => a.exp(),
                Func::Sqrt => a.sqrt().ok_or_else(|| domain("sqrt", arg, a.value()))?,
            }
        }
    })
}

/// Plain value of the expression at `point`, with the same domain rules as
/// [`eval_jet`].
pub fn eval_f64(e: &Expr, point: &[f64]) -> Result<f64, EvalError> {
    let n = check_point(e, point)?;
    f64_rec(e, point, n)
}

fn f64_rec(e: &Expr, point: &[f64], n: usize) -> Result<f64, EvalError> {
    Ok(match e {
        Expr::Num(v) => *v,
        Expr::Coord(c) => point[c.slot(n)],
        Expr::Neg(a) => -f64_rec(a, point, n)?,
        Expr::Binary(op, a, b) => {
            let x = f64_rec(a, point, n)?;
            let y = f64_rec(b, point, n)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == 0.0 {
                        return Err(domain("/", b, y));
                    }
                    x / y
                }
            }
        }
        Expr::Pow(base, exp) => {
            let x = f64_rec(base, point, n)?;
            if *exp < 0 && x == 0.0 {
                return Err(domain("^", base, x));
            }
            x.powi(*exp)
        }
        Expr::Call(func, arg) => {
            let x = f64_rec(arg, point, n)?;
            match func {
                Func::Log if x <= 0.0 => return Err(domain("log", arg, x)),
                Func::Log => x.ln(),
                Func::Exp => x.exp(),
                Func::Sqrt if x <= 0.0 => return Err(domain("sqrt", arg, x)),
                Func::Sqrt => x.sqrt(),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::parse;

    #[test]
    fn polynomial_jet() {
        let e = parse("x1^2", 2).unwrap();
        let jet = eval_jet(&e, &[3.0, 0.0, 0.0, 0.0], 2).unwrap();
        assert_eq!(jet.value(), 9.0);
        assert_eq!(jet.partial(&[0]), 6.0);
        for i in 1..4 {
            assert_eq!(jet.partial(&[i]), 0.0);
        }
        assert_eq!(jet.partial(&[0, 0]), 2.0);
        assert_eq!(jet.partial(&[1, 1]), 0.0);
        assert_eq!(jet.partial(&[0, 1]), 0.0);
    }

    #[test]
    fn log_one_plus_r2_at_origin() {
        // log(1 + r²) = r² - r⁴/2 + …
        let e = parse("log(1+absq(1))", 1).unwrap();
        let jet = eval_jet(&e, &[0.0, 0.0], 4).unwrap();
        assert_eq!(jet.value(), 0.0);
        assert_eq!(jet.partial(&[0]), 0.0);
        assert_eq!(jet.partial(&[1]), 0.0);
        assert!((jet.partial(&[0, 0]) - 2.0).abs() < 1e-15);
        assert!((jet.partial(&[1, 1]) - 2.0).abs() < 1e-15);
        assert!(jet.partial(&[0, 1]).abs() < 1e-15);
        // coefficient of x⁴ is -1/2
        assert!((jet.coeff(&[4, 0]) + 0.5).abs() < 1e-15);
        assert!((jet.coeff(&[2, 2]) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors_name_subexpression() {
        let e = parse("log(1 - rsq)", 1).unwrap();
        let err = eval_jet(&e, &[1.0, 0.0], 2).unwrap_err();
        match err {
            EvalError::Domain { op, subexpression, value } => {
                assert_eq!(op, "log");
                assert_eq!(subexpression, "1 - (x1^2 + y1^2)");
                assert_eq!(value, 0.0);
            }
            other => panic!("{other:?}"),
        }
        let e = parse("1/x1", 1).unwrap();
        assert!(matches!(eval_jet(&e, &[0.0, 1.0], 1), Err(EvalError::Domain { op: "/", .. })));
        assert!(matches!(eval_f64(&e, &[0.0, 1.0]), Err(EvalError::Domain { op: "/", .. })));
        let e = parse("sqrt(x1)", 1).unwrap();
        assert!(eval_jet(&e, &[-1.0, 0.0], 1).is_err());
    }

    #[test]
    fn order_and_dimension_checks() {
        let e = parse("x2", 2).unwrap();
        assert_eq!(eval_jet(&e, &[0.0; 4], 6).unwrap_err(), EvalError::OrderTooHigh(6));
        assert!(matches!(
            eval_jet(&e, &[0.0; 2], 1).unwrap_err(),
            EvalError::PointDimension { .. }
        ));
    }
}
