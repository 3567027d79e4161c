//! Dense univariate polynomials over a prime field `F_p` with `p < 2^31`.

use rand::Rng;

pub type PolyP = Vec<u64>;

pub fn trim(a: &mut PolyP) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow_scalar(a % p, p - 2, p)
}

pub fn pow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    let mut r: PolyP = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut r);
    r
}

#[cfg(test)]
pub fn add(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    let mut r: PolyP = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut r);
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    trim(&mut r);
    r
}

pub fn scale(a: &[u64], c: u64, p: u64) -> PolyP {
    let mut r: PolyP = a.iter().map(|&x| x * c % p).collect();
    trim(&mut r);
    r
}

pub fn monic(a: &[u64], p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv(lc, p), p),
    }
}

pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let li = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * li % p;
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * bj % p) % p;
            }
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> PolyP {
    divrem(a, b, p).1
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s*a + t*b = g` monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (PolyP, PolyP) = (vec![1], Vec::new());
    let (mut t0, mut t1): (PolyP, PolyP) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let li = inv(*r0.last().unwrap_or(&1), p);
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

pub fn derivative(a: &[u64], p: u64) -> PolyP {
    let mut r: PolyP = a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
    trim(&mut r);
    r
}

pub fn is_squarefree(a: &[u64], p: u64) -> bool {
    let d = derivative(a, p);
    !d.is_empty() && gcd(a, &d, p).len() == 1
}

pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> PolyP {
    rem(&mul(a, b, p), f, p)
}

/// Frobenius matrix: row `i` holds `x^{ip} mod f`.
fn frobenius(f: &[u64], p: u64) -> Vec<PolyP> {
    let n = f.len() - 1;
    let xp = powmod_x(p, f, p);
    let mut rows = Vec::with_capacity(n);
    rows.push(rem(&[1], f, p));
    for i in 1..n {
        let next = mulmod(&rows[i - 1], &xp, f, p);
        rows.push(next);
    }
    rows
}

fn powmod_x(mut e: u64, f: &[u64], p: u64) -> PolyP {
    let mut base = rem(&[0, 1], f, p);
    let mut acc = rem(&[1], f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, f, p);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(&base, &base, f, p);
        }
    }
    acc
}

/// `h^p mod f` given the Frobenius matrix of `f`.
fn apply_frobenius(h: &[u64], rows: &[PolyP], p: u64) -> PolyP {
    let n = rows.len();
    let mut r = vec![0u64; n];
    for (i, &c) in h.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (j, &x) in rows[i].iter().enumerate() {
            r[j] = (r[j] + c * x) % p;
        }
    }
    trim(&mut r);
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn ddf(f: &[u64], p: u64) -> Vec<(PolyP, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    if f.len() <= 1 {
        return out;
    }
    let rows = frobenius(&f, p);
    let full = f.clone();
    let mut h = rem(&[0, 1], &f, p);
    let mut d = 0;
    while f.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = rem(&apply_frobenius(&h, &rows, p), &full, p);
        let g = gcd(&sub(&h, &[0, 1], p), &f, p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((monic(&f, p), deg));
    }
    out
}

pub fn count_factors(f: &[u64], p: u64) -> usize {
    ddf(f, p).iter().map(|(g, d)| (g.len() - 1) / d).sum()
}

/// Equal-degree splitting of a product of irreducibles of degree `d` (p odd).
pub fn edf<R: Rng>(g: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<PolyP> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.to_vec()];
    }
    let rows = frobenius(g, p);
    loop {
        let mut a: PolyP = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if a.len() <= 1 {
            continue;
        }
        // a^{(p^d-1)/2} = (a · a^p ⋯ a^{p^{d-1}})^{(p-1)/2}
        let mut prod = a.clone();
        let mut cur = a.clone();
        for _ in 1..d {
            cur = apply_frobenius(&cur, &rows, p);
            cur = rem(&cur, g, p);
            prod = mulmod(&prod, &cur, g, p);
        }
        let b = powmod(&prod, (p - 1) / 2, g, p);
        let c = gcd(&sub(&b, &[1], p), g, p);
        if c.len() > 1 && c.len() < g.len() {
            let other = divrem(g, &c, p).0;
            let mut out = edf(&c, d, p, rng);
            out.extend(edf(&monic(&other, p), d, p, rng));
            return out;
        }
    }
}

pub fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> PolyP {
    let mut base = rem(a, f, p);
    let mut acc = rem(&[1], f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, f, p);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(&base, &base, f, p);
        }
    }
    acc
}

/// Complete factorization of a monic squarefree polynomial into monic irreducibles.
pub fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<PolyP> {
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out.sort();
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn splits_over_small_field() {
        let p = 7;
        // (x-1)(x-2)(x^2+1) mod 7; x^2+1 is irreducible since 7 ≡ 3 mod 4.
        let f = mul(&mul(&[6, 1], &[5, 1], p), &[1, 0, 1], p);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = factor_squarefree(&f, p, &mut rng);
        assert_eq!(fs, vec![vec![1, 0, 1], vec![5, 1], vec![6, 1]]);
        assert_eq!(count_factors(&f, p), 3);
    }

    #[test]
    fn bezout_mod_p() {
        let p = 101;
        let a = vec![3, 0, 1];
        let b = vec![1, 1];
        let (g, s, t) = ext_gcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }
}
