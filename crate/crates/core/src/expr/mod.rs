//! Text syntax for exponential polynomials.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' NATURAL)?
//! primary := NATURAL ('/' NATURAL)? | 'zeta' '(' NATURAL ')' | 'E' '(' expr ')'
//!          | IDENT | '(' expr ')'
//! ```

mod elaborate;
mod parse;
mod print;

pub use elaborate::{elaborate, infer_vars, ElabOptions};
pub use parse::parse;
pub use print::{format_coeff, format_epoly, format_exponent, format_laurent};

use std::fmt;

use num_rational::BigRational;

/// Byte range of a node in the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// Syntax tree node. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Rational(BigRational),
    Zeta(u32),
    Var(String),
    Exp(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Paren(Box<Expr>),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) => 2,
            ExprKind::Neg(..) => 3,
            ExprKind::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match &self.kind {
            ExprKind::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            ExprKind::Rational(_) | ExprKind::Zeta(_) => {}
            ExprKind::Exp(a) | ExprKind::Neg(a) | ExprKind::Pow(a, _) | ExprKind::Paren(a) => a.collect_vars(out),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints the tree back as source; parentheses appear exactly where the
/// tree has `Paren` nodes or where precedence requires them.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            ExprKind::Zeta(n) => write!(f, "zeta({n})"),
            ExprKind::Var(v) => write!(f, "{v}"),
            ExprKind::Exp(a) => write!(f, "E({a})"),
            ExprKind::Paren(a) => write!(f, "({a})"),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " {} ", if matches!(self.kind, ExprKind::Add(..)) { '+' } else { '-' })?;
                wrap(f, b, 2)
            }
            ExprKind::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            ExprKind::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            ExprKind::Pow(a, k) => {
                // A fractional literal base is itself a primary.
                wrap(f, a, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}
