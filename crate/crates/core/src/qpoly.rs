//! Dense univariate polynomials over ℚ, stored as ascending coefficient
//! vectors with no trailing zeros (the zero polynomial is empty).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[BigRational]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn from_ints(c: &[i64]) -> QPoly {
    let mut p: QPoly = c.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    trim(&mut p);
    p
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        r.push(x);
    }
    trim(&mut r);
    r
}

pub fn neg(a: &[BigRational]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    add(a, &neg(b))
}

pub fn scale(a: &[BigRational], s: &BigRational) -> QPoly {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * s).collect()
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigRational::zero(); a.len() + b.len() - 1];
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

/// Euclidean division; panics if `b` is zero.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv_lc = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &inv_lc;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[k + j] -= t;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    divrem(a, b).1
}

pub fn make_monic(a: &[BigRational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(a, &lc.recip()),
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = make_monic(&y);
        y = make_monic(&r);
    }
    make_monic(&x)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly, QPoly) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![BigRational::one()];
    let mut s1: QPoly = Vec::new();
    let mut t0: QPoly = Vec::new();
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.last().cloned() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = lc.recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative(a: &[BigRational]) -> QPoly {
    let mut r: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut r);
    r
}

pub fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Clears denominators: returns `(d, p)` with `d * a = p` and `p` integral.
pub fn to_integer(a: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let mut den = BigInt::one();
    for c in a {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let p = a
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    (den, p)
}

pub fn from_bigints(a: &[BigInt]) -> QPoly {
    let mut p: QPoly = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    trim(&mut p);
    p
}

pub fn is_monic(a: &[BigRational]) -> bool {
    a.last().is_some_and(|c| c.is_one())
}

pub fn leading_sign_positive(a: &[BigRational]) -> bool {
    a.last().is_some_and(|c| c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let a = from_ints(&[1, 0, -3, 2, 5]);
        let b = from_ints(&[2, 1, 1]);
        let (q, r) = divrem(&a, &b);
        assert!(r.len() < b.len());
        assert_eq!(add(&mul(&q, &b), &r), a);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = mul(&from_ints(&[-1, 1]), &from_ints(&[2, 0, 1]));
        let b = mul(&from_ints(&[-1, 1]), &from_ints(&[3, 1]));
        let (g, s, t) = ext_gcd(&a, &b);
        assert_eq!(g, from_ints(&[-1, 1]));
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
    }
}
