use super::{Expr, ExprKind};
use crate::cyclo::{lcm, CycloNumber};
use crate::epoly::EPoly;
use crate::error::{Error, Result};

/// How an expression is turned into an [`EPoly`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElabOptions {
    /// Variable names in ring order; inferred (sorted) when `None`.
    pub vars: Option<Vec<String>>,
    /// Minimal cyclotomic order of the result.
    pub order: u32,
    pub height_cap: u32,
    pub max_terms: usize,
}

impl Default for ElabOptions {
    fn default() -> Self {
        ElabOptions { vars: None, order: 1, height_cap: 3, max_terms: 10_000 }
    }
}

/// Sorted, deduplicated variable names of `e`.
pub fn infer_vars(e: &Expr) -> Vec<String> {
    let mut v = e.variables();
    v.sort();
    v
}

/// Evaluates the tree in the exponential polynomial ring. Returns the
/// result together with the variable names used.
pub fn elaborate(e: &Expr, opts: &ElabOptions) -> Result<(EPoly, Vec<String>)> {
    let vars = match &opts.vars {
        Some(v) => v.clone(),
        None => infer_vars(e),
    };
    let cx = Cx { vars: &vars, opts };
    let f = cx.eval(e)?;
    let order = lcm(f.order(), opts.order.max(1));
    Ok((f.embed(order), vars))
}

struct Cx<'a> {
    vars: &'a [String],
    opts: &'a ElabOptions,
}

impl Cx<'_> {
    fn check(&self, f: EPoly) -> Result<EPoly> {
        if f.height() > self.opts.height_cap {
            return Err(Error::Resource(format!(
                "exponential height {} exceeds the height cap {}",
                f.height(),
                self.opts.height_cap
            )));
        }
        if f.len() > self.opts.max_terms {
            return Err(Error::Resource(format!("{} terms exceed the limit {}", f.len(), self.opts.max_terms)));
        }
        Ok(f)
    }

    fn eval(&self, e: &Expr) -> Result<EPoly> {
        let n = self.vars.len();
        let f = match &e.kind {
            ExprKind::Rational(q) => EPoly::constant(&CycloNumber::from_rational(q.clone(), 1), n, 1),
            ExprKind::Zeta(k) => EPoly::constant(&CycloNumber::zeta_pow(*k, 1), n, *k),
            ExprKind::Var(name) => {
                let i = self.vars.iter().position(|v| v == name).ok_or_else(|| {
                    Error::InvalidArgument(format!("unknown variable '{name}'"))
                })?;
                EPoly::var(i, n, 1)
            }
            ExprKind::Exp(a) => self.eval(a)?.exp(),
            ExprKind::Add(a, b) => self.eval(a)?.add(&self.eval(b)?)?,
            ExprKind::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?)?,
            ExprKind::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?)?,
            ExprKind::Neg(a) => self.eval(a)?.neg(),
            ExprKind::Paren(a) => self.eval(a)?,
            ExprKind::Pow(a, k) => {
                let base = self.eval(a)?;
                let mut acc = EPoly::one(n, base.order());
                for _ in 0..*k {
                    acc = self.check(acc.mul(&base)?)?;
                }
                acc
            }
        };
        self.check(f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn ep(src: &str) -> EPoly {
        elaborate(&parse(src).unwrap(), &ElabOptions { vars: Some(vec!["x".into(), "y".into()]), ..Default::default() })
            .unwrap()
            .0
    }

    #[test]
    fn normal_forms_agree() {
        assert_eq!(ep("E(x)*E(y)"), ep("E(x+y)"));
        assert_eq!(ep("(E(x)-1)*(E(x)+1)"), ep("E(2*x)-1"));
        assert!(ep("zeta(4)^2 + 1").is_zero());
        assert_eq!(ep("E(x + E(x))").height(), 2);
        assert!(ep("E(3)").is_one());
    }

    #[test]
    fn inferred_and_unknown_vars() {
        let (f, vars) = elaborate(&parse("E(y) + x").unwrap(), &ElabOptions::default()).unwrap();
        assert_eq!(vars, vec!["x", "y"]);
        assert_eq!(f.nvars(), 2);
        let opts = ElabOptions { vars: Some(vec!["x".into()]), ..Default::default() };
        assert!(elaborate(&parse("y").unwrap(), &opts).is_err());
    }

    #[test]
    fn height_cap_is_a_resource_error() {
        let opts = ElabOptions { height_cap: 1, ..Default::default() };
        let err = elaborate(&parse("E(E(x))").unwrap(), &opts).unwrap_err();
        assert!(err.is_resource());
    }
}
