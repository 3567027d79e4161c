use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclo::{lcm, CycloNumber};

/// Exponent tuple of a monomial in `x̄`.
pub type Mono = Vec<u32>;

pub fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_div(b: &[u32], a: &[u32]) -> Mono {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

/// Sparse multivariate polynomial over ℚ(ζ_N). Monomials are ordered
/// lexicographically, so the last map entry is the leading term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffPoly {
    nvars: usize,
    terms: BTreeMap<Mono, CycloNumber>,
}

impl CoeffPoly {
    pub fn zero(nvars: usize) -> Self {
        CoeffPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: CycloNumber, nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(CycloNumber::one(order), nvars)
    }

    pub fn monomial(m: Mono, c: CycloNumber) -> Self {
        let nvars = m.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CoeffPoly { nvars, terms }
    }

    pub fn var(i: usize, nvars: usize, order: u32) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, CycloNumber::one(order))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, CycloNumber)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Mono, CycloNumber> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, CycloNumber> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no `x̄` dependence.
    pub fn as_constant(&self) -> Option<CycloNumber> {
        match self.terms.len() {
            0 => Some(CycloNumber::zero(1)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn add_term(&mut self, m: Mono, c: &CycloNumber) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &CycloNumber)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.nvars).map(|i| self.degree_in(i)).collect()
    }

    /// Least common multiple of the coefficient orders.
    pub fn order(&self) -> u32 {
        self.terms.values().fold(1, |a, c| lcm(a, c.order()))
    }

    pub fn embed(&self, order: u32) -> Self {
        CoeffPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.embed(order).expect("order divides target")))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        CoeffPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_mono(&self, m: &[u32]) -> Self {
        CoeffPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (mono_mul(k, m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &CoeffPoly) -> Option<CoeffPoly> {
        let (dm, dc) = d.leading()?;
        let dinv = dc.inv().ok()?;
        let bound: Vec<i64> =
            (0..self.nvars).map(|i| self.degree_in(i) as i64 - d.degree_in(i) as i64).collect();
        if bound.iter().any(|&b| b < 0) {
            return if self.is_zero() { Some(Self::zero(self.nvars)) } else { None };
        }
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((rm, rc)) = r.leading() {
            if !mono_divides(dm, rm) {
                return None;
            }
            let qm = mono_div(rm, dm);
            if qm.iter().zip(&bound).any(|(&e, &b)| e as i64 > b) {
                return None;
            }
            let qc = rc * &dinv;
            r = &r - &d.mul_mono(&qm).scale(&qc);
            q.add_term(qm, &qc);
        }
        Some(q)
    }

    /// Substitutes `x_i ↦ value` for one variable; the variable stays in
    /// the ambient with degree zero.
    pub fn substitute_constant(&self, i: usize, value: &CycloNumber) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[i];
            m2[i] = 0;
            r.add_term(m2, &(c * &value.pow(e as u64)));
        }
        r
    }

    /// Reorders or widens the variables: variable `i` becomes `map[i]` in an
    /// ambient of `nvars` variables.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Self {
        let mut r = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; nvars];
            for (i, &e) in m.iter().enumerate() {
                m2[map[i]] += e;
            }
            r.add_term(m2, c);
        }
        r
    }

    /// Monomial gcd of all terms.
    pub fn monomial_content(&self) -> Mono {
        let mut g: Option<Mono> = None;
        for m in self.terms.keys() {
            g = Some(match g {
                None => m.clone(),
                Some(g) => g.iter().zip(m).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        g.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Indices of variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|m| m[i] > 0)).collect()
    }
}

impl Add for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, other: &CoeffPoly) -> CoeffPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(m.clone(), c);
        }
        r
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        CoeffPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, other: &CoeffPoly) -> CoeffPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), &-c);
        }
        r
    }
}

impl Mul for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, other: &CoeffPoly) -> CoeffPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut r = CoeffPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(mono_mul(ma, mb), &(ca * cb));
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[u32], i64)]) -> CoeffPoly {
        CoeffPoly::from_terms(2, terms.iter().map(|(m, c)| (m.to_vec(), CycloNumber::from_int(*c, 1))))
    }

    #[test]
    fn ring_ops() {
        let a = p(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let b = p(&[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(&a * &b, p(&[(&[2, 0], 1), (&[0, 2], -1)]));
        assert_eq!(&(&a + &b) - &b, a);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = p(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let b = p(&[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 3)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&p(&[(&[1, 0], 1), (&[0, 0], 1)])), None);
    }
}
