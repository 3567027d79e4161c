use std::collections::BTreeMap;

use num_integer::Integer;

use super::coeff::{CoeffPoly, Mono};
use crate::cyclo::{lcm, CycloNumber};
use crate::error::{Error, Result};

/// Exponent tuple of a Laurent monomial in `y₁…y_p`.
pub type ExpVec = Vec<i64>;

/// Sparse Laurent polynomial in `y₁…y_p` with coefficients in `ℚ(ζ_N)[x̄]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    nx: usize,
    terms: BTreeMap<ExpVec, CoeffPoly>,
}

/// `Q = y^tau1 · P(y^tau2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneVariableWitness {
    pub tau1: ExpVec,
    pub tau2: ExpVec,
    /// Coefficients of `P`, lowest degree first.
    pub p: Vec<CoeffPoly>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize, nx: usize) -> Self {
        LaurentPoly { nvars, nx, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, nx: usize, order: u32) -> Self {
        Self::term(vec![0; nvars], CoeffPoly::one(nx, order))
    }

    pub fn term(e: ExpVec, c: CoeffPoly) -> Self {
        let mut q = LaurentPoly { nvars: e.len(), nx: c.nvars(), terms: BTreeMap::new() };
        if !c.is_zero() {
            q.terms.insert(e, c);
        }
        q
    }

    pub fn from_terms(nvars: usize, nx: usize, terms: impl IntoIterator<Item = (ExpVec, CoeffPoly)>) -> Self {
        let mut q = Self::zero(nvars, nx);
        for (e, c) in terms {
            q.add_term(e, &c);
        }
        q
    }

    /// Convenience constructor for `x̄`-free polynomials with integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(
            nvars,
            0,
            terms.iter().map(|(e, c)| (e.to_vec(), CoeffPoly::constant(CycloNumber::from_int(*c, 1), 0))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, CoeffPoly> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.values().fold(1, |a, c| lcm(a, c.order()))
    }

    pub fn add_term(&mut self, e: ExpVec, c: &CoeffPoly) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.nx != other.nx {
            return Err(Error::AmbientMismatch(format!(
                "({}, {}) vs ({}, {}) variables",
                self.nvars, self.nx, other.nvars, other.nx
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c);
        }
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            nx: self.nx,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut r = Self::zero(self.nvars, self.nx);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, &(ca * cb));
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.nvars, self.nx, self.order());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &CoeffPoly) -> Self {
        Self::from_terms(self.nvars, self.nx, self.terms.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    pub fn shift(&self, m: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            nx: self.nx,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn embed(&self, order: u32) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            nx: self.nx,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.embed(order))).collect(),
        }
    }

    /// Highest exponent of `y_i` (after normalization this is the degree).
    pub fn degree_in(&self, i: usize) -> i64 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> i64 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    /// `max_i deg_{y_i}` of the normalized polynomial.
    pub fn max_var_degree(&self) -> i64 {
        (0..self.nvars).map(|i| self.degree_in(i) - self.min_degree_in(i)).max().unwrap_or(0)
    }

    /// Total degree counting both `y` and `x̄` exponents.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .iter()
            .flat_map(|(e, c)| {
                let ye: i64 = e.iter().sum();
                c.terms().keys().map(move |m| ye + m.iter().map(|&x| x as i64).sum::<i64>())
            })
            .max()
            .unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// True iff no `y` variable occurs.
    pub fn is_y_free(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// `Q = y^monomial · Qpos` with `Qpos` having minimum exponent 0 in each variable.
    pub fn laurent_normalize(&self) -> Result<(ExpVec, LaurentPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let m: ExpVec = (0..self.nvars).map(|i| self.min_degree_in(i)).collect();
        let neg: ExpVec = m.iter().map(|x| -x).collect();
        Ok((m, self.shift(&neg)))
    }

    /// `y_i ↦ y_i^{t_i}`.
    pub fn power_substitute(&self, t: &[i64]) -> Self {
        assert_eq!(t.len(), self.nvars, "substitution length mismatch");
        LaurentPoly {
            nvars: self.nvars,
            nx: self.nx,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(t).map(|(a, b)| a * b).collect(), c.clone()))
                .collect(),
        }
    }

    /// `y_i ↦ z·y_i`.
    pub fn twist(&self, i: usize, z: &CycloNumber) -> Result<Self> {
        let mut r = Self::zero(self.nvars, self.nx);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), &c.scale(&z.pow_i(e[i])?));
        }
        Ok(r)
    }

    /// `Q(y) = P(y^d)` with `P` primary.
    pub fn primary_decompose(&self) -> Result<(LaurentPoly, Vec<i64>)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_nonnegative() {
            return Err(Error::Precondition("primary decomposition needs nonnegative exponents".into()));
        }
        let d: Vec<i64> = (0..self.nvars)
            .map(|i| {
                let g = self.terms.keys().fold(0i64, |g, e| g.gcd(&e[i]));
                if g == 0 {
                    1
                } else {
                    g
                }
            })
            .collect();
        let p = LaurentPoly {
            nvars: self.nvars,
            nx: self.nx,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(&d).map(|(a, b)| a / b).collect(), c.clone()))
                .collect(),
        };
        Ok((p, d))
    }

    pub fn is_primary(&self) -> bool {
        self.primary_decompose().is_ok_and(|(_, d)| d.iter().all(|&x| x == 1))
    }

    /// Witness that the exponent-difference lattice has rank ≤ 1.
    pub fn essentially_one_variable(&self) -> Result<Option<OneVariableWitness>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let exps: Vec<&ExpVec> = self.terms.keys().collect();
        let base = exps[0];
        let diffs: Vec<ExpVec> =
            exps.iter().map(|e| e.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        let Some(v) = diffs.iter().find(|d| d.iter().any(|&x| x != 0)) else {
            let (e, c) = self.terms.iter().next().unwrap();
            return Ok(Some(OneVariableWitness { tau1: e.clone(), tau2: vec![0; self.nvars], p: vec![c.clone()] }));
        };
        // Primitive direction with first nonzero entry positive.
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        let mut dir: ExpVec = v.iter().map(|x| x / g).collect();
        if dir.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            dir.iter_mut().for_each(|x| *x = -*x);
        }
        let piv = dir.iter().position(|&x| x != 0).unwrap();
        let mut ks = Vec::with_capacity(diffs.len());
        for d in &diffs {
            let k = d[piv] / dir[piv];
            if d.iter().zip(&dir).any(|(a, b)| *a != k * b) {
                return Ok(None);
            }
            ks.push(k);
        }
        let step = ks.iter().fold(0i64, |g, k| g.gcd(k));
        let tau2: ExpVec = dir.iter().map(|x| x * step).collect();
        let kmin = *ks.iter().min().unwrap();
        let tau1: ExpVec = base.iter().zip(&dir).map(|(b, d)| b + kmin * d).collect();
        let deg = ((ks.iter().max().unwrap() - kmin) / step) as usize;
        let mut p = vec![CoeffPoly::zero(self.nx); deg + 1];
        for (k, c) in ks.iter().zip(self.terms.values()) {
            p[((k - kmin) / step) as usize] = c.clone();
        }
        Ok(Some(OneVariableWitness { tau1, tau2, p }))
    }

    /// Flattens a nonnegative Laurent polynomial into `ℚ(ζ_N)[y, x̄]`
    /// with the `y` variables first.
    pub fn to_flat(&self) -> CoeffPoly {
        assert!(self.is_nonnegative(), "flattening needs nonnegative exponents");
        let n = self.nvars + self.nx;
        let mut r = CoeffPoly::zero(n);
        for (e, c) in &self.terms {
            for (m, v) in c.terms() {
                let mut key: Mono = e.iter().map(|&x| x as u32).collect();
                key.extend_from_slice(m);
                r.add_term(key, v);
            }
        }
        r
    }

    pub fn from_flat(f: &CoeffPoly, nvars: usize, nx: usize) -> Self {
        assert_eq!(f.nvars(), nvars + nx);
        let mut r = Self::zero(nvars, nx);
        for (m, v) in f.terms() {
            let e: ExpVec = m[..nvars].iter().map(|&x| x as i64).collect();
            r.add_term(e, &CoeffPoly::monomial(m[nvars..].to_vec(), v.clone()));
        }
        r
    }
}

impl OneVariableWitness {
    /// Rebuilds `y^tau1 · P(y^tau2)`.
    pub fn expand(&self) -> LaurentPoly {
        let nx = self.p.first().map_or(0, |c| c.nvars());
        let mut q = LaurentPoly::zero(self.tau1.len(), nx);
        for (k, c) in self.p.iter().enumerate() {
            let e = self.tau1.iter().zip(&self.tau2).map(|(a, b)| a + k as i64 * b).collect();
            q.add_term(e, c);
        }
        q
    }
}
