use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cyclo::CycloNumber;
use crate::poly::Mono;

/// A free generator of the exponent group: the element `m·ζ^j·t^γ` where
/// `m` is an `x̄`-monomial, `ζ` the ambient root of unity and `γ` an
/// exponent of lower height. When `γ = 0` the monomial is nonconstant
/// (constants carry the trivial exponential and never occur).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Atom {
    height: u32,
    gamma: Arc<Exponent>,
    mono: Mono,
    zeta: u32,
}

impl Atom {
    pub fn new(gamma: Exponent, mono: Mono, zeta: u32) -> Self {
        let height = if gamma.is_zero() { 1 } else { 1 + gamma.height() };
        debug_assert!(!gamma.is_zero() || mono.iter().any(|&e| e > 0));
        Atom { height, gamma: Arc::new(gamma), mono, zeta }
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn gamma(&self) -> &Exponent {
        &self.gamma
    }

    pub fn mono(&self) -> &Mono {
        &self.mono
    }

    pub fn zeta(&self) -> u32 {
        self.zeta
    }
}

/// A ℚ-linear combination of atoms: an element of the exponent group.
///
/// `Ord` is the lexicographic group order: the coordinate on the greatest
/// atom where two exponents differ decides. It is compatible with addition.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Exponent {
    coords: BTreeMap<Atom, BigRational>,
}

impl Exponent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn atom(a: Atom) -> Self {
        Self::from_coords([(a, BigRational::from_integer(1.into()))])
    }

    pub fn from_coords(it: impl IntoIterator<Item = (Atom, BigRational)>) -> Self {
        let mut e = Self::zero();
        for (a, q) in it {
            e.add_coord(a, &q);
        }
        e
    }

    pub fn coords(&self) -> &BTreeMap<Atom, BigRational> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn height(&self) -> u32 {
        self.coords.keys().map(|a| a.height).max().unwrap_or(0)
    }

    pub fn coord(&self, a: &Atom) -> BigRational {
        self.coords.get(a).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_coord(&mut self, a: Atom, q: &BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.coords.entry(a).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.coords.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        let mut r = self.clone();
        for (a, q) in &other.coords {
            r.add_coord(a.clone(), q);
        }
        r
    }

    pub fn neg(&self) -> Exponent {
        Exponent { coords: self.coords.iter().map(|(a, q)| (a.clone(), -q)).collect() }
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Exponent {
        if q.is_zero() {
            return Exponent::zero();
        }
        Exponent { coords: self.coords.iter().map(|(a, v)| (a.clone(), v * q)).collect() }
    }

    /// Greatest atom with a nonzero coordinate.
    pub fn leading(&self) -> Option<(&Atom, &BigRational)> {
        self.coords.iter().next_back()
    }

    pub fn is_positive(&self) -> bool {
        self.leading().is_some_and(|(_, q)| q.is_positive())
    }

    /// Re-expresses the exponent after the ambient order grows from `from` to `to`.
    pub fn embed(&self, from: u32, to: u32) -> Exponent {
        if from == to {
            return self.clone();
        }
        let mut r = Exponent::zero();
        for (a, q) in &self.coords {
            let gamma = a.gamma.embed(from, to);
            let z = CycloNumber::zeta_pow(from, a.zeta as i64).embed(to).expect("order divides target");
            for (k, c) in z.coords().iter().enumerate() {
                if !c.is_zero() {
                    r.add_coord(Atom::new(gamma.clone(), a.mono.clone(), k as u32), &(q * c));
                }
            }
        }
        r
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.coords.iter().rev().peekable();
        let mut b = other.coords.iter().rev().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, qa)), None) => return qa.cmp(&&BigRational::zero()),
                (None, Some((_, qb))) => return BigRational::zero().cmp(qb),
                (Some((ka, qa)), Some((kb, qb))) => match ka.cmp(kb) {
                    Ordering::Greater => return qa.cmp(&&BigRational::zero()),
                    Ordering::Less => return BigRational::zero().cmp(qb),
                    Ordering::Equal => {
                        let c = qa.cmp(qb);
                        if c != Ordering::Equal {
                            return c;
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}
