use std::fmt;

use crate::ComplexValue;

/// Elementary functions accepted in `name(expr)` position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Exp,
        Func::Log,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
    ];

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
        }
    }

    pub fn apply(self, z: ComplexValue) -> ComplexValue {
        match self {
            Func::Exp => z.exp(),
            // principal branch, cut along the negative real axis
            Func::Log => z.ln(),
            Func::Sin => z.sin(),
            Func::Cos => z.cos(),
            Func::Tan => z.tan(),
            Func::Sinh => z.sinh(),
            Func::Cosh => z.cosh(),
            Func::Tanh => z.tanh(),
        }
    }
}

/// Syntax tree of a single-variable complex expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(ComplexValue),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, z: ComplexValue) -> ComplexValue {
        match self {
            Expr::Num(c) => *c,
            Expr::Var => z,
            Expr::Neg(a) => -a.eval(z),
            Expr::Add(a, b) => a.eval(z) + b.eval(z),
            Expr::Sub(a, b) => a.eval(z) - b.eval(z),
            Expr::Mul(a, b) => a.eval(z) * b.eval(z),
            Expr::Div(a, b) => a.eval(z) / b.eval(z),
            Expr::Pow(a, k) => a.eval(z).powu(*k),
            Expr::Call(f, a) => f.apply(a.eval(z)),
        }
    }

    /// Visits every subexpression, parents before children.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Expr)) {
        visit(self);
        match self {
            Expr::Num(_) | Expr::Var => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.walk(visit),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }
}

fn fmt_real(x: f64) -> String {
    // `{:?}` prints the shortest representation that parses back to the same bits
    format!("{x:?}")
}

/// Prints a fully parenthesized form that the parser reads back to an
/// equivalent tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => {
                if c.im == 0.0 {
                    // the sign of a zero imaginary part picks the side of a branch cut
                    let x = fmt_real(c.re.abs());
                    match (c.re.is_sign_negative(), c.im.is_sign_negative()) {
                        (false, false) => write!(f, "{x}"),
                        (true, false) => write!(f, "(0-{x})"),
                        (true, true) => write!(f, "(-{x})"),
                        (false, true) => write!(f, "(-(0-{x}))"),
                    }
                } else {
                    let re = if c.re < 0.0 {
                        format!("-{}", fmt_real(-c.re))
                    } else {
                        fmt_real(c.re)
                    };
                    let im = if c.im < 0.0 {
                        format!("-{}*i", fmt_real(-c.im))
                    } else {
                        format!("+{}*i", fmt_real(c.im))
                    };
                    write!(f, "({re}{im})")
                }
            }
            Expr::Var => write!(f, "z"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Pow(a, k) => write!(f, "({a}^{k})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
