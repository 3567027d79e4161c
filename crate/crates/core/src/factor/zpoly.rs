//! Dense univariate integer polynomials, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(a: &[BigInt]) -> ZPoly {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(|x| x.is_negative()) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut r: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut r);
    r
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut r: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut r);
    r
}

/// Exact division over ℤ; `None` if `b` does not divide `a` in `ℤ[z]`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lc = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rest) = r[k + db].div_rem(lc);
        if !rest.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

pub fn reduce_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut r: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut r);
    r
}

pub fn symmetric_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    let mut r: ZPoly = a
        .iter()
        .map(|c| {
            let x = c.mod_floor(m);
            if x > half {
                x - m
            } else {
                x
            }
        })
        .collect();
    trim(&mut r);
    r
}

/// Division by a polynomial whose leading coefficient is 1 modulo `m`.
pub fn divrem_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = reduce_mod(a, m);
    let b = reduce_mod(b, m);
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * bj).mod_floor(m);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn norm2_ceil(a: &[BigInt]) -> BigInt {
    let s: BigInt = a.iter().map(|c| c * c).sum();
    s.sqrt() + BigInt::one()
}

pub fn to_modp(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut r: Vec<u64> = a
        .iter()
        .map(|c| {
            let (_, d) = c.mod_floor(&pb).to_u64_digits();
            d.first().copied().unwrap_or(0)
        })
        .collect();
    super::modp::trim(&mut r);
    r
}

pub fn from_modp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}
