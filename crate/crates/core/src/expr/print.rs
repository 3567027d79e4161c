//! Canonical text for ring elements. The output parses back to the same
//! element when elaborated with the same variable list.

use num_traits::{Signed, Zero};

use crate::cyclo::CycloNumber;
use crate::epoly::{EPoly, Exponent};
use crate::poly::{CoeffPoly, LaurentPoly};

fn monomial(exps: impl Iterator<Item = i64>, names: &[String]) -> Option<String> {
    let parts: Vec<String> = exps
        .zip(names)
        .filter(|(e, _)| *e != 0)
        .map(|(e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

/// One signed summand `c·body`: returns the sign and the unsigned text.
fn scaled(c: &CycloNumber, body: Option<String>) -> (bool, String) {
    let single = c.coords().iter().filter(|q| !q.is_zero()).count() == 1;
    let (neg, mag) = if single && c.coords().iter().any(|q| q.is_negative()) { (true, -c) } else { (false, c.clone()) };
    let text = match body {
        None => mag.to_string(),
        Some(b) if mag.is_one() => b,
        Some(b) if single => format!("{mag}*{b}"),
        Some(b) => format!("({mag})*{b}"),
    };
    (neg, text)
}

fn join(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, t)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&t);
    }
    s
}

fn mul_body(a: Option<String>, b: Option<String>) -> Option<String> {
    match (a, b) {
        (Some(a), Some(b)) => Some(format!("{a}*{b}")),
        (a, b) => a.or(b),
    }
}

/// Summands of `c·body` for a coefficient polynomial `c`.
fn coeff_parts(c: &CoeffPoly, vars: &[String], body: Option<String>) -> Vec<(bool, String)> {
    let inline = |(m, k): (&Vec<u32>, &CycloNumber)| scaled(k, mul_body(monomial(m.iter().map(|&e| e as i64), vars), body.clone()));
    if c.len() == 1 || body.is_none() {
        return c.terms().iter().rev().map(inline).collect();
    }
    vec![(false, format!("({})*{}", format_coeff(c, vars), body.unwrap()))]
}

pub fn format_coeff(c: &CoeffPoly, vars: &[String]) -> String {
    join(coeff_parts(c, vars, None))
}

/// `E(α)` with `α` written as an exponential polynomial.
fn exp_body(alpha: &Exponent, vars: &[String], order: u32) -> Option<String> {
    (!alpha.is_zero()).then(|| format!("E({})", format_exponent(alpha, vars, order)))
}

/// The exponent `α` as the expression it exponentiates.
pub fn format_exponent(alpha: &Exponent, vars: &[String], order: u32) -> String {
    format_epoly(&EPoly::from_exponent(alpha, vars.len(), order), vars)
}

/// Terms in decreasing exponent order.
pub fn format_epoly(f: &EPoly, vars: &[String]) -> String {
    let parts = f
        .terms()
        .iter()
        .rev()
        .flat_map(|(alpha, c)| coeff_parts(c, vars, exp_body(alpha, vars, f.order())))
        .collect();
    join(parts)
}

/// Laurent polynomial with `y`-variables named `ynames` and coefficients in `vars`.
pub fn format_laurent(q: &LaurentPoly, ynames: &[String], vars: &[String]) -> String {
    let parts = q
        .terms()
        .iter()
        .rev()
        .flat_map(|(e, c)| coeff_parts(c, vars, monomial(e.iter().copied(), ynames)))
        .collect();
    join(parts)
}
