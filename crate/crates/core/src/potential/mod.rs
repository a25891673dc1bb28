//! Kähler potentials written in a small real-coordinate expression
//! language.
//!
//! See `docs/potential-grammar.md` for the grammar. Coordinates are
//! `x1..xn, y1..yn` with `zₖ = xₖ + i yₖ`; the macros `absq(k)` and `rsq`
//! expand at parse time to `xₖ^2 + yₖ^2` and `Σₖ absq(k)`.

mod eval;
mod parser;

use std::fmt;

pub use eval::{eval_f64, eval_jet, EvalError};
pub use parser::{parse, ParseError};

/// Chart coordinate, 1-based as written in source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    X(usize),
    Y(usize),
}

impl Coord {
    /// Position in the real coordinate vector `(x¹..xⁿ, y¹..yⁿ)`.
    pub fn slot(self, n: usize) -> usize {
        match self {
            Coord::X(k) => k - 1,
            Coord::Y(k) => n + k - 1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Coord::X(k) | Coord::Y(k) => k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Log,
    Exp,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Log => "log",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Coord(Coord),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// `xₖ^2 + yₖ^2`
    pub fn absq(k: usize) -> Expr {
        Expr::Binary(
            BinOp::Add,
            Box::new(Expr::Pow(Box::new(Expr::Coord(Coord::X(k))), 2)),
            Box::new(Expr::Pow(Box::new(Expr::Coord(Coord::Y(k))), 2)),
        )
    }

    /// `absq(1) + … + absq(n)`, left-nested.
    pub fn rsq(n: usize) -> Expr {
        (2..=n).fold(Expr::absq(1), |acc, k| {
            Expr::Binary(BinOp::Add, Box::new(acc), Box::new(Expr::absq(k)))
        })
    }

    /// Largest coordinate index referenced (0 for constants).
    pub fn max_index(&self) -> usize {
        match self {
            Expr::Num(_) => 0,
            Expr::Coord(c) => c.index(),
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Call(_, e) => e.max_index(),
            Expr::Binary(_, a, b) => a.max_index().max(b.max_index()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, _, _) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Pow(_, _) => 4,
            Expr::Num(v) if *v < 0.0 => 3,
            _ => 5,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Pretty-printing inserts exactly the parentheses needed for the printed
/// text to parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => {
                if *v < 0.0 {
                    write!(f, "-{}", -v)
                } else {
                    write!(f, "{v}")
                }
            }
            Expr::Coord(Coord::X(k)) => write!(f, "x{k}"),
            Expr::Coord(Coord::Y(k)) => write!(f, "y{k}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                write_operand(f, e, e.precedence() < 3)
            }
            Expr::Binary(op, a, b) => {
                let p = op.precedence();
                write_operand(f, a, a.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                // left associative: an equal-precedence right operand needs parens
                write_operand(f, b, b.precedence() <= p)
            }
            Expr::Pow(base, exp) => {
                write_operand(f, base, base.precedence() < 5)?;
                if *exp < 0 {
                    write!(f, "^({exp})")
                } else {
                    write!(f, "^{exp}")
                }
            }
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}
