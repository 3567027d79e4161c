//! Dense univariate polynomials over ℚ (index = degree) and factoring by
//! Kronecker's divisor method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mpoly::{q, Q};
use crate::OracleError;

pub type UPoly = Vec<Q>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Q]) -> usize {
    p.len().saturating_sub(1)
}

pub fn mul(a: &[Q], b: &[Q]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

pub fn sub(a: &[Q], b: &[Q]) -> UPoly {
    let mut r = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        r[i] -= x;
    }
    trim(r)
}

pub fn divrem(a: &[Q], b: &[Q]) -> (UPoly, UPoly) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lb = b.last().unwrap().clone();
    let mut quo = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (i, x) in b.iter().enumerate() {
            r[i + k] -= &c * x;
        }
        quo[k] = c;
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn monic(p: &[Q]) -> UPoly {
    match p.last() {
        Some(l) => p.iter().map(|c| c / l).collect(),
        None => vec![],
    }
}

pub fn gcd(a: &[Q], b: &[Q]) -> UPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`, `g` monic.
pub fn ext_gcd(a: &[Q], b: &[Q]) -> (UPoly, UPoly, UPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![Q::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![Q::one()]);
    while !r1.is_empty() {
        let (qq, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&qq, &s1));
        let t = sub(&t0, &mul(&qq, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let l = r0.last().cloned().unwrap_or_else(Q::one);
    let sc = |p: &[Q]| trim(p.iter().map(|c| c / &l).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

pub fn derivative(p: &[Q]) -> UPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
}

/// Degree of the squarefree part.
pub fn radical_degree(p: &[Q]) -> usize {
    let g = gcd(p, &derivative(p));
    degree(p) - degree(&g)
}

pub fn eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

/// Integer primitive multiple of `p` (positive leading coefficient).
fn primitive_integer(p: &[Q]) -> Vec<BigInt> {
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if ints.last().is_some_and(|l| l.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Bound on interpolation candidates tried for one degree.
const TRIAL_BUDGET: u64 = 5_000_000;
/// Largest |F(a)| whose divisors are enumerated.
const VALUE_LIMIT: u128 = 1 << 44;

/// A factor of integer polynomial `f` of exact degree `k`, if any.
fn kronecker_factor(f: &[BigInt], k: usize) -> Result<Option<Vec<BigInt>>, OracleError> {
    let fq: UPoly = f.iter().map(|c| Q::from_integer(c.clone())).collect();
    // Evaluation points ordered by how few candidate values they allow.
    let mut pts: Vec<(usize, i64, u128)> = Vec::new();
    for a in -12i64..=12 {
        let v = eval(&fq, &q(a)).to_integer();
        if v.is_zero() {
            continue;
        }
        let Some(m) = v.abs().to_u128().filter(|m| *m <= VALUE_LIMIT) else { continue };
        pts.push((divisors(m).len(), a, m));
        if pts.len() >= 3 * (k + 1) && pts.iter().filter(|p| p.0 <= 4).count() > k {
            break;
        }
    }
    if pts.len() < k + 1 {
        return Err(OracleError::Cap("no usable evaluation points".into()));
    }
    pts.sort();
    pts.truncate(k + 1);
    let xs: Vec<i128> = pts.iter().map(|p| p.1 as i128).collect();
    let choices: Vec<Vec<i128>> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let ds = divisors(p.2);
            let mut c: Vec<i128> = ds.iter().map(|&d| d as i128).collect();
            // The first value fixes the sign of the candidate.
            if i > 0 {
                c.extend(ds.iter().map(|&d| -(d as i128)));
            }
            c
        })
        .collect();
    let total: f64 = choices.iter().map(|c| c.len() as f64).product();
    if total > TRIAL_BUDGET as f64 * 50.0 {
        return Err(OracleError::Cap(format!("{total:.0} Kronecker candidates for degree {k}")));
    }
    let lc = f.last().unwrap().clone();
    let mut table: Vec<Vec<i128>> = vec![vec![]; k + 1];
    let mut budget = TRIAL_BUDGET;
    let found = search(0, &xs, &choices, &mut table, &lc, f, k, &mut budget);
    if budget == 0 {
        return Err(OracleError::Cap(format!("Kronecker search budget exhausted at degree {k}")));
    }
    Ok(found)
}

/// Depth-first over candidate values with integrality of divided
/// differences as the pruning test.
#[allow(clippy::too_many_arguments)]
fn search(
    i: usize,
    xs: &[i128],
    choices: &[Vec<i128>],
    table: &mut Vec<Vec<i128>>,
    lc: &BigInt,
    f: &[BigInt],
    k: usize,
    budget: &mut u64,
) -> Option<Vec<BigInt>> {
    if i == xs.len() {
        let top = table[k][k];
        if top == 0 || !(lc % BigInt::from(top)).is_zero() {
            return None;
        }
        let g = newton_to_monomial(xs, table);
        return divides(f, &g).then_some(g);
    }
    for &v in &choices[i] {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut row = vec![v];
        let mut ok = true;
        for j in 1..=i {
            let num = row[j - 1] - table[i - 1][j - 1];
            let den = xs[i] - xs[i - j];
            if num % den != 0 {
                ok = false;
                break;
            }
            row.push(num / den);
        }
        if !ok {
            continue;
        }
        table[i] = row;
        if let Some(g) = search(i + 1, xs, choices, table, lc, f, k, budget) {
            return Some(g);
        }
    }
    None
}

fn newton_to_monomial(xs: &[i128], table: &[Vec<i128>]) -> Vec<BigInt> {
    let k = xs.len() - 1;
    let mut g = vec![BigInt::from(table[k][k])];
    for i in (0..k).rev() {
        // g ← g·(z - x_i) + c_i
        let mut next = vec![BigInt::zero(); g.len() + 1];
        for (j, c) in g.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(xs[i]);
        }
        next[0] += BigInt::from(table[i][i]);
        g = next;
    }
    while g.last().is_some_and(|c| c.is_zero()) {
        g.pop();
    }
    g
}

fn to_q(p: &[BigInt]) -> UPoly {
    p.iter().map(|c| Q::from_integer(c.clone())).collect()
}

fn divides(f: &[BigInt], g: &[BigInt]) -> bool {
    g.len() >= 2 && divrem(&to_q(f), &to_q(g)).1.is_empty()
}

/// Monic irreducible factors of `p` over ℚ with multiplicities, by
/// repeatedly splitting off a factor of least degree.
pub fn factor_rational(p: &[Q], degree_cap: usize) -> Result<Vec<(UPoly, u32)>, OracleError> {
    let p = trim(p.to_vec());
    if degree(&p) > degree_cap {
        return Err(OracleError::Cap(format!("degree {} exceeds the oracle cap {degree_cap}", degree(&p))));
    }
    let mut rest = primitive_integer(&p);
    let mut out: Vec<(UPoly, u32)> = Vec::new();
    // z is handled directly: Kronecker needs nonzero values.
    let zeros = rest.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push((vec![Q::zero(), Q::one()], zeros as u32));
        rest.drain(..zeros);
    }
    let mut k = 1;
    while rest.len() > 2 && 2 * k <= rest.len() - 1 {
        match kronecker_factor(&rest, k)? {
            Some(g) => {
                let gq = to_q(&g);
                let mut mult = 0;
                let mut cur = to_q(&rest);
                loop {
                    let (quo, r) = divrem(&cur, &gq);
                    if !r.is_empty() {
                        break;
                    }
                    cur = quo;
                    mult += 1;
                }
                out.push((monic(&gq), mult));
                rest = primitive_integer(&cur);
            }
            None => k += 1,
        }
    }
    if rest.len() >= 2 {
        out.push((monic(&to_q(&rest)), 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        c.iter().map(|&x| q(x)).collect()
    }

    fn product(fs: &[(UPoly, u32)]) -> UPoly {
        let mut acc = vec![Q::one()];
        for (f, m) in fs {
            for _ in 0..*m {
                acc = mul(&acc, f);
            }
        }
        acc
    }

    #[test]
    fn splits_known_products() {
        // (z^2+1)(z^2-2)^2(z+3)z
        let f = mul(&mul(&mul(&up(&[1, 0, 1]), &mul(&up(&[-2, 0, 1]), &up(&[-2, 0, 1]))), &up(&[3, 1])), &up(&[0, 1]));
        let fs = factor_rational(&f, 12).unwrap();
        assert_eq!(fs.iter().map(|(_, m)| m).sum::<u32>(), 5);
        assert_eq!(product(&fs), monic(&f));
        // x^4 + 1 is irreducible over ℚ
        assert_eq!(factor_rational(&up(&[1, 0, 0, 0, 1]), 12).unwrap().len(), 1);
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
        assert_eq!(factor_rational(&up(&[4, 0, 0, 0, 1]), 12).unwrap().len(), 2);
    }

    #[test]
    fn cyclotomic_split() {
        // z^6 - 1 = Φ1 Φ2 Φ3 Φ6
        let fs = factor_rational(&up(&[-1, 0, 0, 0, 0, 0, 1]), 12).unwrap();
        assert_eq!(fs.len(), 4);
    }
}
