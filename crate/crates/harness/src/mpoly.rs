//! Sparse multivariate polynomials over ℚ, written for the oracle only.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Lexicographic order on exponent vectors, first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Q, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        let mut r = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            r.add_term(e.clone(), v * c);
        }
        r
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), x * y);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut r = Self::constant(Q::one(), self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Total degree in the variables `1..nvars` (all but the first).
    pub fn tail_degree(&self) -> u32 {
        self.terms.keys().map(|e| e[1..].iter().sum()).max().unwrap_or(0)
    }

    /// Drops terms whose tail degree exceeds `d`.
    pub fn truncate_tail(&self, d: u32) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e[1..].iter().sum::<u32>() <= d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (ld, lc) = d.leading()?;
        let (ld, lc) = (ld.clone(), lc.clone());
        let mut r = self.clone();
        let mut quo = Self::zero(self.nvars);
        while let Some((lr, c)) = r.leading() {
            if lr.iter().zip(&ld).any(|(a, b)| a < b) {
                return None;
            }
            let m: Vec<u32> = lr.iter().zip(&ld).map(|(a, b)| a - b).collect();
            let c = c / &lc;
            let mut t = Self::zero(self.nvars);
            t.add_term(m, c);
            r = r.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// `self(images)`: variable `i` is replaced by `images[i]`.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        let n = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::constant(Q::one(), p.nvars), p.clone()]).collect();
        let mut r = Self::zero(n);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone(), n);
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize]);
            }
            r = r.add(&t);
        }
        r
    }

    /// Coefficient list in the first variable when no other variable occurs.
    pub fn to_univariate(&self) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.degree_in(0) as usize + 1];
        for (e, c) in &self.terms {
            debug_assert!(e[1..].iter().all(|&x| x == 0));
            v[e[0] as usize] += c;
        }
        v
    }

    pub fn from_univariate(p: &[Q], nvars: usize) -> MPoly {
        let mut r = Self::zero(nvars);
        for (i, c) in p.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[0] = i as u32;
            r.add_term(e, c.clone());
        }
        r
    }

    /// Groups terms by tail exponent: `tail ↦ univariate coefficient in the first variable`.
    pub fn by_tail(&self) -> BTreeMap<Vec<u32>, Vec<Q>> {
        let mut out: BTreeMap<Vec<u32>, Vec<Q>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = out.entry(e[1..].to_vec()).or_default();
            let k = e[0] as usize;
            if v.len() <= k {
                v.resize(k + 1, Q::zero());
            }
            v[k] += c;
        }
        out
    }
}
