//! Holomorphic functions: a builtin catalog, a small expression language,
//! and guarded evaluation away from declared singular points.

mod ast;
mod literal;
mod parser;
mod roots;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use ast::{Expr, Func};
pub use literal::{parse_complex, parse_complex_list};
pub use parser::parse_expr;
pub use roots::{as_polynomial, closed_form_roots};

use crate::ComplexValue;

/// Relative guard radius around declared singularities.
pub const SINGULARITY_GUARD: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid complex literal `{0}`")]
    BadLiteral(String),
    #[error("non-finite input {0}")]
    NonFiniteInput(ComplexValue),
    #[error("evaluation at {z} is within {radius:e} of the declared singularity {singularity}")]
    NearSingularity {
        z: ComplexValue,
        singularity: ComplexValue,
        radius: f64,
    },
    #[error("evaluation at {z} produced the non-finite value {value}")]
    NonFiniteValue { z: ComplexValue, value: ComplexValue },
}

pub fn is_finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Catalog entries for [`builtin`].
#[derive(Clone, Debug, PartialEq)]
pub enum Builtin {
    Exp,
    Sin,
    Cos,
    Log,
    Recip,
    Id,
    Const(ComplexValue),
    /// Ascending coefficients: `Poly(vec![a0, a1, a2])` is a0 + a1 z + a2 z².
    Poly(Vec<ComplexValue>),
}

impl Builtin {
    fn eval(&self, z: ComplexValue) -> ComplexValue {
        match self {
            Builtin::Exp => z.exp(),
            Builtin::Sin => z.sin(),
            Builtin::Cos => z.cos(),
            Builtin::Log => z.ln(),
            Builtin::Recip => z.inv(),
            Builtin::Id => z,
            Builtin::Const(c) => *c,
            Builtin::Poly(coeffs) => roots::horner(coeffs, z),
        }
    }
}

type Closure = dyn Fn(ComplexValue) -> ComplexValue + Send + Sync;

#[derive(Clone)]
enum Repr {
    Expr(Expr),
    Builtin(Builtin),
    Closure(Arc<Closure>),
}

/// An evaluable complex function with a declared set of singular points.
///
/// The domain is the complement of the declared singularities. Values are
/// immutable and cheap to clone; they can be shared across threads.
#[derive(Clone)]
pub struct HolomorphicFn {
    source: String,
    repr: Repr,
    singularities: Vec<ComplexValue>,
}

impl fmt::Debug for HolomorphicFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HolomorphicFn")
            .field("source", &self.source)
            .field("singularities", &self.singularities)
            .finish()
    }
}

impl HolomorphicFn {
    /// Wraps an arbitrary closure. The caller is responsible for declaring
    /// every singular point the closure has.
    pub fn from_closure<F>(source: impl Into<String>, singularities: Vec<ComplexValue>, f: F) -> Self
    where
        F: Fn(ComplexValue) -> ComplexValue + Send + Sync + 'static,
    {
        HolomorphicFn {
            source: source.into(),
            repr: Repr::Closure(Arc::new(f)),
            singularities,
        }
    }

    pub fn from_expr(expr: Expr, source: impl Into<String>) -> Self {
        let singularities = auto_singularities(&expr);
        HolomorphicFn {
            source: source.into(),
            repr: Repr::Expr(expr),
            singularities,
        }
    }

    pub fn from_builtin(b: Builtin) -> Self {
        let source = match &b {
            Builtin::Exp => "exp".to_string(),
            Builtin::Sin => "sin".to_string(),
            Builtin::Cos => "cos".to_string(),
            Builtin::Log => "log".to_string(),
            Builtin::Recip => "recip".to_string(),
            Builtin::Id => "id".to_string(),
            Builtin::Const(c) => format!("const({})", literal::format_complex(*c)),
            Builtin::Poly(coeffs) => {
                let items: Vec<String> = coeffs.iter().map(|c| literal::format_complex(*c)).collect();
                format!("poly([{}])", items.join(","))
            }
        };
        let singularities = match &b {
            Builtin::Log | Builtin::Recip => vec![ComplexValue::new(0.0, 0.0)],
            _ => Vec::new(),
        };
        HolomorphicFn {
            source,
            repr: Repr::Builtin(b),
            singularities,
        }
    }

    /// Adds user-declared singular points (duplicates are dropped).
    pub fn with_singularities(mut self, extra: impl IntoIterator<Item = ComplexValue>) -> Self {
        for s in extra {
            if !self.singularities.contains(&s) {
                self.singularities.push(s);
            }
        }
        self
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn singularities(&self) -> &[ComplexValue] {
        &self.singularities
    }

    pub fn expr(&self) -> Option<&Expr> {
        match &self.repr {
            Repr::Expr(e) => Some(e),
            _ => None,
        }
    }

    /// Evaluates without the singularity guard.
    pub fn eval_unchecked(&self, z: ComplexValue) -> ComplexValue {
        match &self.repr {
            Repr::Expr(e) => e.eval(z),
            Repr::Builtin(b) => b.eval(z),
            Repr::Closure(f) => f(z),
        }
    }

    pub fn eval(&self, z: ComplexValue) -> Result<ComplexValue, ExprError> {
        eval_fn(self, z)
    }
}

/// Parses `text` with the expression grammar. Roots of polynomial
/// denominators (degree ≤ 4) and of polynomial `log` arguments are declared
/// as singularities automatically.
pub fn parse_function(text: &str) -> Result<HolomorphicFn, ExprError> {
    let expr = parse_expr(text)?;
    Ok(HolomorphicFn::from_expr(expr, text.trim()))
}

fn auto_singularities(expr: &Expr) -> Vec<ComplexValue> {
    let mut found: Vec<ComplexValue> = Vec::new();
    expr.walk(&mut |node| {
        let suspect = match node {
            Expr::Div(_, den) => Some(den.as_ref()),
            Expr::Call(Func::Log, arg) => Some(arg.as_ref()),
            _ => None,
        };
        let Some(poly) = suspect.and_then(as_polynomial) else {
            return;
        };
        if let Some(roots) = closed_form_roots(&poly) {
            for r in roots {
                if is_finite(r) && !found.contains(&r) {
                    found.push(r);
                }
            }
        }
    });
    found
}

/// Looks up a catalog function: `exp`, `sin`, `cos`, `log`, `recip`, `id`,
/// `const(c)` or `poly([a0,a1,...])` with ascending coefficients.
///
/// `log` is the principal branch; only the branch point 0 is declared, so
/// contours must not cross the negative real axis.
pub fn builtin(name: &str) -> Result<HolomorphicFn, ExprError> {
    let name = name.trim();
    let unknown = || ExprError::UnknownBuiltin(name.to_string());
    let b = match name {
        "exp" => Builtin::Exp,
        "sin" => Builtin::Sin,
        "cos" => Builtin::Cos,
        "log" => Builtin::Log,
        "recip" => Builtin::Recip,
        "id" => Builtin::Id,
        _ => {
            let (head, rest) = name.split_once('(').ok_or_else(unknown)?;
            let args = rest.strip_suffix(')').ok_or_else(unknown)?.trim();
            match head.trim() {
                "const" => Builtin::Const(parse_complex(args)?),
                "poly" => {
                    let inner = args.strip_prefix('[').and_then(|a| a.strip_suffix(']')).unwrap_or(args);
                    let coeffs = parse_complex_list(inner)?;
                    if coeffs.is_empty() {
                        return Err(unknown());
                    }
                    Builtin::Poly(coeffs)
                }
                _ => return Err(unknown()),
            }
        }
    };
    Ok(HolomorphicFn::from_builtin(b))
}

/// Evaluates `f` at `z`, refusing points within
/// `SINGULARITY_GUARD · max(1, |z|)` of a declared singularity.
pub fn eval_fn(f: &HolomorphicFn, z: ComplexValue) -> Result<ComplexValue, ExprError> {
    if !is_finite(z) {
        return Err(ExprError::NonFiniteInput(z));
    }
    let radius = SINGULARITY_GUARD * z.norm().max(1.0);
    if let Some(s) = f.singularities.iter().find(|s| (z - **s).norm() <= radius) {
        return Err(ExprError::NearSingularity {
            z,
            singularity: *s,
            radius,
        });
    }
    let value = f.eval_unchecked(z);
    if !is_finite(value) {
        return Err(ExprError::NonFiniteValue { z, value });
    }
    Ok(value)
}
