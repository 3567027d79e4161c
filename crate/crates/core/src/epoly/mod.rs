//! Exponential polynomials in normal form `Σ a_h · t^{α_h}` with
//! `a_h ∈ ℚ(ζ_N)[x̄]` and `α_h` exponents.

mod exponent;
mod support;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

pub use exponent::{Atom, Exponent};
pub use support::{line_key, rank, support, supports_contained, Support};
pub(crate) use support::flatten;

use crate::cyclo::{lcm, CycloNumber};
use crate::error::{Error, Result};
use crate::poly::CoeffPoly;

/// An exponential polynomial over `ℚ(ζ_order)` in `nvars` variables.
///
/// Every coefficient is stored at exactly the ambient order, which keeps
/// the atom coordinates of exponents unambiguous.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EPoly {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Exponent, CoeffPoly>,
}

/// A unit `u·t^α` of the exponential polynomial ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Unit {
    pub scalar: CycloNumber,
    pub exponent: Exponent,
}

impl Unit {
    pub fn one(order: u32) -> Self {
        Unit { scalar: CycloNumber::one(order), exponent: Exponent::zero() }
    }

    pub fn to_epoly(&self, nvars: usize, order: u32) -> EPoly {
        EPoly::term(self.exponent.clone(), CoeffPoly::constant(self.scalar.clone(), nvars), order)
    }

    pub fn mul(&self, other: &Unit) -> Unit {
        Unit { scalar: &self.scalar * &other.scalar, exponent: self.exponent.add(&other.exponent) }
    }
}

impl EPoly {
    pub fn zero(nvars: usize, order: u32) -> Self {
        EPoly { nvars, order, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::from_coeff(CoeffPoly::one(nvars, order), order)
    }

    pub fn constant(c: &CycloNumber, nvars: usize, order: u32) -> Self {
        Self::from_coeff(CoeffPoly::constant(c.clone(), nvars), order)
    }

    pub fn var(i: usize, nvars: usize, order: u32) -> Self {
        Self::from_coeff(CoeffPoly::var(i, nvars, order), order)
    }

    pub fn from_coeff(c: CoeffPoly, order: u32) -> Self {
        Self::term(Exponent::zero(), c, order)
    }

    /// `c · t^α`. The order must be a multiple of every order in `c`.
    pub fn term(alpha: Exponent, c: CoeffPoly, order: u32) -> Self {
        let mut f = Self::zero(c.nvars(), order);
        let c = c.embed(lcm(order, c.order()));
        if !c.is_zero() {
            f.terms.insert(alpha, c);
        }
        f.order = lcm(order, f.terms.values().map(|c| c.order()).fold(1, lcm));
        if f.order != order {
            return f.embed(f.order);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, CoeffPoly> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exponent::zero()).is_some_and(|c| c.is_one())
    }

    /// Height of the tower level needed: the maximal exponent height.
    pub fn height(&self) -> u32 {
        self.terms.keys().map(|a| a.height()).max().unwrap_or(0)
    }

    /// Greatest exponent with its coefficient.
    pub fn leading(&self) -> Option<(&Exponent, &CoeffPoly)> {
        self.terms.iter().next_back()
    }

    pub fn min_exponent(&self) -> Option<&Exponent> {
        self.terms.keys().next()
    }

    pub fn embed(&self, order: u32) -> Self {
        if order == self.order {
            return self.clone();
        }
        assert!(order % self.order == 0, "order {} does not divide {}", self.order, order);
        EPoly {
            nvars: self.nvars,
            order,
            terms: self.terms.iter().map(|(a, c)| (a.embed(self.order, order), c.embed(order))).collect(),
        }
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        let m = lcm(self.order, other.order);
        Ok((self.embed(m), other.embed(m)))
    }

    fn add_term(&mut self, alpha: Exponent, c: &CoeffPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&alpha);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(alpha, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.aligned(other)?;
        for (e, c) in b.terms {
            a.add_term(e, &c);
        }
        Ok(a)
    }

    pub fn neg(&self) -> Self {
        EPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let mut r = Self::zero(a.nvars, a.order);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                r.add_term(ea.add(eb), &(ca * cb));
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.order);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        let order = lcm(self.order, c.order());
        let f = self.embed(order);
        let c = c.embed(order).expect("order divides lcm");
        let mut r = Self::zero(self.nvars, order);
        for (e, v) in &f.terms {
            r.add_term(e.clone(), &v.scale(&c));
        }
        r
    }

    /// Multiplies by the unit `u·t^α`, with `α` given at the order of `self`.
    pub fn mul_unit(&self, u: &Unit) -> Self {
        let s = self.scale(&u.scalar);
        let alpha = u.exponent.embed(self.order, s.order);
        EPoly {
            nvars: s.nvars,
            order: s.order,
            terms: s.terms.into_iter().map(|(e, c)| (e.add(&alpha), c)).collect(),
        }
    }

    /// Multiplies by `t^α` (α given at the ambient order).
    pub fn shift(&self, alpha: &Exponent) -> Self {
        EPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.add(alpha), c.clone())).collect(),
        }
    }

    /// Flattens `f` into an exponent: the `K`-constant part is dropped since
    /// constants carry the trivial exponential.
    pub fn to_exponent(&self) -> Exponent {
        let mut r = Exponent::zero();
        for (alpha, a) in &self.terms {
            for (m, c) in a.terms() {
                if alpha.is_zero() && m.iter().all(|&e| e == 0) {
                    continue;
                }
                for (j, q) in c.coords().iter().enumerate() {
                    if !q.is_zero() {
                        r.add_coord(Atom::new(alpha.clone(), m.clone(), j as u32), q);
                    }
                }
            }
        }
        r
    }

    /// The exponent `α` read back as an exponential polynomial.
    pub fn from_exponent(alpha: &Exponent, nvars: usize, order: u32) -> Self {
        let mut r = Self::zero(nvars, order);
        for (atom, q) in alpha.coords() {
            let z = CycloNumber::zeta_pow(order, atom.zeta() as i64).scale(q);
            r.add_term(atom.gamma().clone(), &CoeffPoly::monomial(atom.mono().clone(), z));
        }
        r
    }

    /// The exponential `E(f) = t^{f - c}` where `c` is the constant part.
    pub fn exp(&self) -> Self {
        EPoly::term(self.to_exponent(), CoeffPoly::one(self.nvars, self.order), self.order)
    }

    /// Single-term polynomials with a constant coefficient are units.
    pub fn as_unit(&self) -> Option<Unit> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let s = c.as_constant()?;
        Some(Unit { scalar: s, exponent: e.clone() })
    }

    /// Associate normal form: smallest exponent moved to 0 and the leading
    /// coefficient of the leading coefficient polynomial scaled to 1.
    /// Returns `(u, g)` with `self = u·g`.
    pub fn normalize(&self) -> (Unit, EPoly) {
        let Some(min) = self.min_exponent().cloned() else {
            return (Unit::one(self.order), self.clone());
        };
        let (_, lc) = self.leading().unwrap();
        let (_, c) = lc.leading().unwrap();
        let inv = c.inv().expect("nonzero");
        let g = self.shift(&min.neg()).scale(&inv);
        (Unit { scalar: c.clone(), exponent: min }, g)
    }

    /// Exponents of all terms, in increasing group order.
    pub fn exponents(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Exact quotient by a unit-free divisor when one exists; used to
    /// recover the unit of a factorization. `None` if the leading-term
    /// ratio is not a unit or the product does not match.
    pub fn unit_ratio(&self, divisor: &EPoly) -> Option<Unit> {
        let (a, b) = self.aligned(divisor).ok()?;
        let (ea, ca) = a.leading()?;
        let (eb, cb) = b.leading()?;
        let (ma, sa) = ca.leading()?;
        let (mb, sb) = cb.leading()?;
        if ma != mb {
            return None;
        }
        let u = Unit { scalar: sa.checked_div(sb).ok()?, exponent: ea.sub(eb) };
        (b.mul_unit(&u) == a).then_some(u)
    }

    /// Coefficient of the term `t^0` as a rational, if the polynomial is a
    /// rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let u = self.as_unit()?;
        if !u.exponent.is_zero() {
            return None;
        }
        u.scalar.as_rational()
    }
}
