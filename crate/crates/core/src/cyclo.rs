//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! A [`CycloNumber`] is stored at an explicit order `N` as its coordinates
//! over the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}`, always reduced modulo
//! the cyclotomic polynomial `Φ_N`. Binary operations on operands of
//! different orders work at the least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::qpoly;

pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let f = cyclotomic_polynomial(d);
        p = div_monic_exact(&p, &f);
    }
    let p = Arc::new(p);
    cyclo_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn div_monic_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

fn reduce(mut v: Vec<BigRational>, order: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(order);
    let d = phi.len() - 1;
    while v.len() > d {
        let c = v.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let k = v.len() - d;
        for (j, pj) in phi[..d].iter().enumerate() {
            if !pj.is_zero() {
                v[k + j] -= &c * pj;
            }
        }
    }
    qpoly::trim(&mut v);
    v
}

/// An element of ℚ(ζ_N).
#[derive(Clone)]
pub struct CycloNumber {
    order: u32,
    coords: Vec<BigRational>,
}

impl CycloNumber {
    pub fn zero(order: u32) -> Self {
        CycloNumber { order, coords: Vec::new() }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(BigRational::one(), order)
    }

    pub fn from_rational(r: BigRational, order: u32) -> Self {
        let coords = if r.is_zero() { Vec::new() } else { vec![r] };
        CycloNumber { order, coords }
    }

    pub fn from_int(n: i64, order: u32) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()), order)
    }

    /// Builds `Σ c_k ζ_N^k` from arbitrary coordinates, reducing modulo `Φ_N`.
    pub fn from_coords(coords: Vec<BigRational>, order: u32) -> Self {
        assert!(order >= 1, "order must be positive");
        CycloNumber { order, coords: reduce(coords, order) }
    }

    /// `ζ_order^k` for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        Self::from_coords(v, order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coords.len() == 1 && self.coords[0].is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coords.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }

    /// Re-expresses the value at order `m`; requires `order | m`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == 0 || m % self.order != 0 {
            return Err(Error::OrderMismatch { from: self.order, to: m });
        }
        if m == self.order || self.coords.len() <= 1 {
            return Ok(CycloNumber { order: m, coords: self.coords.clone() });
        }
        let step = (m / self.order) as usize;
        let mut v = vec![BigRational::zero(); (self.coords.len() - 1) * step + 1];
        for (j, c) in self.coords.iter().enumerate() {
            v[j * step] = c.clone();
        }
        Ok(Self::from_coords(v, m))
    }

    fn at(&self, m: u32) -> Self {
        self.embed(m).expect("order divides the common multiple")
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self, u32) {
        let m = lcm(a.order, b.order);
        (a.at(m), b.at(m), m)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero(self.order);
        }
        CycloNumber { order: self.order, coords: self.coords.iter().map(|c| c * r).collect() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip(), self.order));
        }
        let phi = qpoly::from_bigints(&cyclotomic_polynomial(self.order));
        let (g, s, _) = qpoly::ext_gcd(&self.coords, &phi);
        debug_assert!(g.len() == 1);
        Ok(Self::from_coords(s, self.order))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Matrix of multiplication by `self` on the power basis (column `j`
    /// holds the coordinates of `self·ζ^j`).
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigRational>> {
        let phi = euler_phi(self.order) as usize;
        let mut m = vec![vec![BigRational::zero(); phi]; phi];
        for j in 0..phi {
            let prod = self * &Self::zeta_pow(self.order, j as i64);
            for (i, c) in prod.coords.iter().enumerate() {
                m[i][j] = c.clone();
            }
        }
        m
    }

    /// Field norm down to ℚ.
    pub fn norm(&self) -> BigRational {
        if let Some(r) = self.as_rational() {
            return num_traits::pow(r, euler_phi(self.order) as usize);
        }
        linalg::det(self.multiplication_matrix())
    }
}

/// `ζ_n` at order `n`.
pub fn primitive_root(n: u32) -> CycloNumber {
    CycloNumber::zeta_pow(n, 1)
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order || (self.coords.len() <= 1 && other.coords.len() <= 1) {
            return self.coords == other.coords;
        }
        let (a, b, _) = Self::aligned(self, other);
        a.coords == b.coords
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @{}", self, self.order)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloNumber {
    /// Prints `c0 + c1*zeta(N) + c2*zeta(N)^2 …` with unit coefficients
    /// elided; rationals print as `a` or `a/b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", fmt_rational(&a))?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{}*", fmt_rational(&a))?;
            }
            write!(f, "zeta({})", self.order)?;
            if j > 1 {
                write!(f, "^{}", j)?;
            }
        }
        Ok(())
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, other: &CycloNumber) -> CycloNumber {
        let (a, b, m) = if self.order == other.order {
            (self.clone(), other.clone(), self.order)
        } else {
            CycloNumber::aligned(self, other)
        };
        let mut c = qpoly::add(&a.coords, &b.coords);
        qpoly::trim(&mut c);
        CycloNumber { order: m, coords: c }
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { order: self.order, coords: qpoly::neg(&self.coords) }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, other: &CycloNumber) -> CycloNumber {
        self + &(-other)
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, other: &CycloNumber) -> CycloNumber {
        if self.coords.len() <= 1 && other.coords.len() <= 1 {
            let m = if self.order == other.order { self.order } else { lcm(self.order, other.order) };
            let coords = match (self.coords.first(), other.coords.first()) {
                (Some(x), Some(y)) => vec![x * y],
                _ => Vec::new(),
            };
            return CycloNumber { order: m, coords };
        }
        let (a, b, m) = if self.order == other.order {
            (self.clone(), other.clone(), self.order)
        } else {
            CycloNumber::aligned(self, other)
        };
        CycloNumber::from_coords(qpoly::mul(&a.coords, &b.coords), m)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, other: CycloNumber) -> CycloNumber {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> CycloNumber {
        CycloNumber::zeta_pow(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(*cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(105).iter().map(|c| c.abs()).max().unwrap(), BigInt::from(2));
    }

    #[test]
    fn embedding_examples() {
        let e = z(6, 1).embed(12).unwrap();
        assert_eq!(e.order(), 12);
        assert_eq!(e.coords(), z(12, 2).coords());
        let r = CycloNumber::from_rational(BigRational::new(3.into(), 2.into()), 1).embed(8).unwrap();
        assert_eq!(r.as_rational(), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(z(4, 1).embed(12).unwrap().coords(), z(12, 3).coords());
        assert_eq!(z(4, 1).embed(6), Err(Error::OrderMismatch { from: 4, to: 6 }));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycloNumber::from_int(-1, 4));
        assert_eq!(&z(3, 1) + &z(3, 2), CycloNumber::from_int(-1, 3));
        let a = &CycloNumber::one(4) + &z(4, 1);
        assert!(a.checked_div(&a).unwrap().is_one());
        assert_eq!(CycloNumber::zero(5).inv(), Err(Error::DivisionByZero));
        // (ζ8 + ζ8^7)^2 = 2
        let s = &z(8, 1) + &z(8, 7);
        assert_eq!(&s * &s, CycloNumber::from_int(2, 8));
        // mixed orders meet at the lcm
        let m = &z(4, 1) * &z(3, 1);
        assert_eq!(m.order(), 12);
        assert_eq!(m, z(12, 7));
    }

    #[test]
    fn primitive_roots() {
        assert!(primitive_root(1).is_one());
        assert_eq!(primitive_root(2), CycloNumber::from_int(-1, 2));
        assert_eq!(primitive_root(8).pow(4), CycloNumber::from_int(-1, 8));
        for n in 1..=24u32 {
            let r = primitive_root(n);
            assert!(r.pow(n as u64).is_one());
            for k in 1..n {
                assert!(!r.pow(k as u64).is_one(), "order of ζ_{n} divides {k}");
            }
        }
    }

    #[test]
    fn norms() {
        assert_eq!((&CycloNumber::one(4) + &z(4, 1)).norm(), BigRational::from_integer(2.into()));
        assert_eq!(z(8, 1).norm(), BigRational::one());
    }

    #[test]
    fn display() {
        assert_eq!(z(4, 1).to_string(), "zeta(4)");
        let v = &CycloNumber::from_rational(BigRational::new(1.into(), 2.into()), 8) - &z(8, 3).scale(&BigRational::from_integer(3.into()));
        assert_eq!(v.to_string(), "1/2 - 3*zeta(8)^3");
    }

    fn arb_cyclo() -> impl Strategy<Value = CycloNumber> {
        (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec(-4i64..=4, 0..6)).prop_map(
            |(n, cs)| {
                let v = cs.into_iter().map(|c| BigRational::from_integer(c.into())).collect();
                CycloNumber::from_coords(v, n)
            },
        )
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn embedding_is_a_homomorphism(a in arb_cyclo(), b in arb_cyclo(), k in 1u32..4) {
            let m = lcm(a.order(), b.order()) * k;
            let lhs = (&a * &b).embed(m).unwrap();
            let rhs = &a.embed(m).unwrap() * &b.embed(m).unwrap();
            prop_assert_eq!(lhs.coords(), rhs.coords());
            let back = a.embed(m).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
