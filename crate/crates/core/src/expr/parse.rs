use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{Expr, ExprKind, Span};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn error_at(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = line_col(src, offset);
    Error::Parse { message: message.into(), line, column }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                it.next();
            }
            out.push((Tok::Num(src[i..end].parse().expect("digits")), Span { start: i, end }));
        } else if c.is_ascii_alphabetic() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = j + 1;
                it.next();
            }
            out.push((Tok::Ident(src[i..end].to_string()), Span { start: i, end }));
        } else if "+-*^/()".contains(c) {
            it.next();
            out.push((Tok::Sym(c), Span { start: i, end: i + 1 }));
        } else {
            return Err(error_at(src, i, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, Span { start: src.len(), end: src.len() }));
    Ok(out)
}

/// Parses an expression; errors carry the line and column of the offending token.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src, toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(p.error(format!("unexpected {}", describe(t)))),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

fn node(kind: ExprKind, start: usize, end: usize) -> Expr {
    Expr { kind, span: Span { start, end } }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_end(&self) -> usize {
        self.toks[self.pos.saturating_sub(1)].1.end
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> Error {
        error_at(self.src, self.span().start, message)
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}', found {}", describe(self.peek()))))
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(n)
            }
            t => Err(self.error(format!("expected a number, found {}", describe(&t)))),
        }
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let start = self.span().start;
        let n = self.natural()?;
        n.to_u32().ok_or_else(|| error_at(self.src, start, format!("{what} too large")))
    }

    fn expr(&mut self) -> Result<Expr> {
        let start = self.span().start;
        let mut lhs = self.term()?;
        loop {
            let add = if self.eat('+') {
                true
            } else if self.eat('-') {
                false
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            let end = self.prev_end();
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            lhs = node(if add { ExprKind::Add(a, b) } else { ExprKind::Sub(a, b) }, start, end);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let start = self.span().start;
        let mut lhs = self.unary()?;
        while self.eat('*') {
            let rhs = self.unary()?;
            lhs = node(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), start, self.prev_end());
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        let start = self.span().start;
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(node(ExprKind::Neg(Box::new(inner)), start, self.prev_end()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let start = self.span().start;
        let base = self.primary()?;
        if self.eat('^') {
            let k = self.small("exponent")?;
            return Ok(node(ExprKind::Pow(Box::new(base), k), start, self.prev_end()));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let (tok, span) = self.bump();
        let start = span.start;
        match tok {
            Tok::Num(n) => {
                let mut q = BigRational::from_integer(n);
                if self.eat('/') {
                    let at = self.span().start;
                    let d = self.natural()?;
                    if d.is_zero() {
                        return Err(error_at(self.src, at, "zero denominator"));
                    }
                    q /= BigRational::from_integer(d);
                }
                Ok(node(ExprKind::Rational(q), start, self.prev_end()))
            }
            Tok::Ident(name) if name == "zeta" => {
                self.expect('(')?;
                let at = self.span().start;
                let n = self.small("root of unity order")?;
                if n == 0 {
                    return Err(error_at(self.src, at, "zeta(0) is not a root of unity"));
                }
                self.expect(')')?;
                Ok(node(ExprKind::Zeta(n), start, self.prev_end()))
            }
            Tok::Ident(name) if name == "E" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(node(ExprKind::Exp(Box::new(inner)), start, self.prev_end()))
            }
            Tok::Ident(name) => Ok(node(ExprKind::Var(name), start, span.end)),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(node(ExprKind::Paren(Box::new(inner)), start, self.prev_end()))
            }
            t => {
                self.pos -= usize::from(t != Tok::End);
                Err(self.error(format!("expected an operand, found {}", describe(&t))))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn column(src: &str) -> (usize, usize) {
        match parse(src) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_spans() {
        let e = parse("E(2*x) - 1").unwrap();
        let ExprKind::Sub(a, b) = &e.kind else { panic!() };
        assert!(matches!(a.kind, ExprKind::Exp(_)));
        assert_eq!(a.span, Span { start: 0, end: 6 });
        assert_eq!(b.kind, ExprKind::Rational(BigRational::from_integer(1.into())));
        assert_eq!(parse("-x^2").unwrap().to_string(), "-x^2");
        let e = parse("a - b - c").unwrap();
        let ExprKind::Sub(l, _) = &e.kind else { panic!() };
        assert!(matches!(l.kind, ExprKind::Sub(..)));
        let nested = parse("E(x + E(x))").unwrap();
        let ExprKind::Exp(inner) = &nested.kind else { panic!() };
        assert!(matches!(inner.kind, ExprKind::Add(..)));
    }

    #[test]
    fn errors_have_positions() {
        assert_eq!(column("E(x"), (1, 4));
        assert_eq!(column("x + $"), (1, 5));
        assert_eq!(column("x +\n  * y"), (2, 3));
        assert_eq!(column("zeta(0)"), (1, 6));
        assert_eq!(column("3/0"), (1, 3));
        assert_eq!(column("x y"), (1, 3));
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (0u32..20).prop_map(|n| n.to_string()),
            (1u32..9, 1u32..9).prop_map(|(a, b)| format!("{a}/{b}")),
            (1u32..9).prop_map(|n| format!("zeta({n})")),
            prop_oneof![Just("x"), Just("y"), Just("z1")].prop_map(String::from),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}-{b}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
                inner.clone().prop_map(|a| format!("-{a}")),
                (inner.clone(), 0u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
                inner.clone().prop_map(|a| format!("E({a})")),
                inner.prop_map(|a| format!("({a})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_round_trip(src in arb_expr()) {
            let e = parse(&src).unwrap();
            let printed = e.to_string();
            prop_assert_eq!(parse(&printed).unwrap(), e);
        }
    }
}
