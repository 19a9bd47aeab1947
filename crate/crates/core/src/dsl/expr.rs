use std::fmt;

use crate::error::{Error, Result};
use crate::series::{Elementary, PowerSeries};

/// Abstract syntax tree of a curve component in the single variable `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Elementary, Box<Expr>),
}

impl Expr {
    pub fn constant(v: f64) -> Expr {
        Expr::Const(v)
    }

    /// Direct interpretation at a real point.
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Neg(a) => -a.eval(t),
            Expr::Add(a, b) => a.eval(t) + b.eval(t),
            Expr::Sub(a, b) => a.eval(t) - b.eval(t),
            Expr::Mul(a, b) => a.eval(t) * b.eval(t),
            Expr::Div(a, b) => a.eval(t) / b.eval(t),
            Expr::Pow(a, k) => a.eval(t).powi(*k as i32),
            Expr::Call(f, a) => f.apply(a.eval(t)),
        }
    }

    /// True when the expression does not mention `t`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var => false,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// Evaluates the expression in truncated series arithmetic about
    /// `center`.
    pub fn lower(&self, center: f64, order: usize) -> Result<PowerSeries> {
        Ok(match self {
            Expr::Const(c) => PowerSeries::constant(center, *c, order),
            Expr::Var => PowerSeries::variable(center, order),
            Expr::Neg(a) => a.lower(center, order)?.neg(),
            Expr::Add(a, b) => a.lower(center, order)?.add(&b.lower(center, order)?)?,
            Expr::Sub(a, b) => a.lower(center, order)?.sub(&b.lower(center, order)?)?,
            Expr::Mul(a, b) => a.lower(center, order)?.mul(&b.lower(center, order)?)?,
            Expr::Div(a, b) => {
                let num = a.lower(center, order)?;
                let den = b.lower(center, order)?;
                num.div(&den).map_err(|e| match e {
                    Error::DivisionBySingularSeries(b0) => {
                        Error::Lowering(format!("denominator `{b}` has constant term {b0:e} at center {center}"))
                    }
                    other => other,
                })?
            }
            Expr::Pow(a, k) => a.lower(center, order)?.powi(*k),
            Expr::Call(f, a) => f.compose(&a.lower(center, order)?),
        })
    }
}

/// Lowers `e` to a power series about `center`.
pub fn lower(e: &Expr, center: f64, order: usize) -> Result<PowerSeries> {
    e.lower(center, order)
}

// Fully parenthesised so that printing and re-parsing is the identity.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) => write!(f, "({c:?})"),
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var => write!(f, "t"),
            Expr::Neg(a) => match a.as_ref() {
                Expr::Const(_) => write!(f, "(-({a}))"),
                _ => write!(f, "(-{a})"),
            },
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a}^{k})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
