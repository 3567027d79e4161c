//! Zassenhaus factorization of squarefree primitive integer polynomials:
//! modular factorization, quadratic Hensel lifting, subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp;
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

/// Upper bound on recombination trials before giving up with a resource error.
const MAX_TRIALS: usize = 1 << 18;
const PRIMES_TRIED: usize = 6;

fn choose_prime(f: &[BigInt]) -> Option<(u64, Vec<u64>, usize)> {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<u64>, usize)> = None;
    let mut good = 0;
    let mut p = 101u64;
    while good < PRIMES_TRIED && p < 100_000 {
        p += 2;
        if !modp::is_prime(p) || (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::monic(&zpoly::to_modp(f, p), p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        good += 1;
        let count = modp::count_factors(&fp, p);
        if best.as_ref().is_none_or(|b| count < b.2) {
            best = Some((p, fp, count));
        }
        if count == 1 {
            break;
        }
    }
    best
}

struct Lift {
    g: ZPoly,
    h: ZPoly,
    s: ZPoly,
    t: ZPoly,
}

fn hensel_step(f: &[BigInt], l: Lift, m: &BigInt) -> Lift {
    let m2 = m * m;
    let e = zpoly::reduce_mod(&zpoly::sub(f, &zpoly::mul(&l.g, &l.h)), &m2);
    let (q, r) = zpoly::divrem_mod(&zpoly::mul(&l.s, &e), &l.h, &m2);
    let g = zpoly::reduce_mod(&zpoly::add(&zpoly::add(&l.g, &zpoly::mul(&l.t, &e)), &zpoly::mul(&q, &l.g)), &m2);
    let h = zpoly::reduce_mod(&zpoly::add(&l.h, &r), &m2);
    let b = zpoly::reduce_mod(
        &zpoly::sub(&zpoly::add(&zpoly::mul(&l.s, &g), &zpoly::mul(&l.t, &h)), &[BigInt::one()]),
        &m2,
    );
    let (c, d) = zpoly::divrem_mod(&zpoly::mul(&l.s, &b), &h, &m2);
    let s = zpoly::reduce_mod(&zpoly::sub(&l.s, &d), &m2);
    let t = zpoly::reduce_mod(&zpoly::sub(&zpoly::sub(&l.t, &zpoly::mul(&l.t, &b)), &zpoly::mul(&c, &g)), &m2);
    Lift { g, h, s, t }
}

/// Lifts `f ≡ lc(f)·∏ u_i (mod p)` to monic factors modulo `big`, a power of `p`.
fn multifactor_lift(f: &[BigInt], us: &[Vec<u64>], p: u64, big: &BigInt) -> Vec<ZPoly> {
    let lc = f.last().unwrap().clone();
    let lcp = (&lc).mod_floor(&BigInt::from(p));
    let lcp = lcp.to_u64_digits().1.first().copied().unwrap_or(0);
    let mut cur: ZPoly = zpoly::reduce_mod(f, big);
    let mut out = Vec::with_capacity(us.len());
    for i in 0..us.len() - 1 {
        let h0 = us[i].clone();
        let mut g0 = vec![lcp];
        for u in &us[i + 1..] {
            g0 = modp::mul(&g0, u, p);
        }
        let (_, s0, t0) = modp::ext_gcd(&g0, &h0, p);
        let mut l = Lift { g: zpoly::from_modp(&g0), h: zpoly::from_modp(&h0), s: zpoly::from_modp(&s0), t: zpoly::from_modp(&t0) };
        let mut m = BigInt::from(p);
        while &m < big {
            l = hensel_step(&cur, l, &m);
            m = &m * &m;
        }
        out.push(l.h);
        cur = l.g;
    }
    let inv = lc.modinv(big).expect("leading coefficient is a unit modulo p^k");
    out.push(zpoly::reduce_mod(&cur.iter().map(|c| c * &inv).collect::<Vec<_>>(), big));
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducible factors over ℤ of a squarefree primitive polynomial with
/// positive leading coefficient and nonzero constant term.
pub fn factor_squarefree(f: &[BigInt]) -> Result<Vec<ZPoly>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let Some((p, fp, count)) = choose_prime(f) else {
        return Err(Error::Internal("no usable prime for modular factorization".into()));
    };
    if count == 1 {
        return Ok(vec![f.to_vec()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let us = modp::factor_squarefree(&fp, p, &mut rng);
    let lc = f.last().unwrap().abs();
    let bound = (BigInt::from(2) * &lc * zpoly::norm2_ceil(f)) << n;
    let pb = BigInt::from(p);
    let mut big = pb.clone();
    while big <= bound {
        big = &big * &big;
    }
    let lifted = multifactor_lift(f, &us, p, &big);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut fstar = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    let mut trials = 0usize;
    while 2 * size <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        let mut hit = None;
        loop {
            trials += 1;
            if trials > MAX_TRIALS {
                return Err(Error::Resource(format!(
                    "factor recombination exceeded {MAX_TRIALS} trials ({r} modular factors)"
                )));
            }
            let b = fstar.last().unwrap().clone();
            // Constant terms first: cheap necessary condition.
            let c0 = idx.iter().fold(b.clone(), |acc, &i| (acc * &remaining[i][0]).mod_floor(&big));
            let c0 = if c0 > (&big >> 1) { c0 - &big } else { c0 };
            if !c0.is_zero() && (&b * &fstar[0]).is_multiple_of(&c0) {
                let mut g = vec![b.clone()];
                for &i in &idx {
                    g = zpoly::reduce_mod(&zpoly::mul(&g, &remaining[i]), &big);
                }
                let g = zpoly::primitive_part(&zpoly::symmetric_mod(&g, &big));
                if let Some(q) = zpoly::div_exact(&fstar, &g) {
                    hit = Some((g, q));
                    break;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        match hit {
            Some((g, q)) => {
                found.push(g);
                fstar = q;
                for &i in idx.iter().rev() {
                    remaining.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if fstar.len() > 1 {
        found.push(zpoly::primitive_part(&fstar));
    }
    Ok(found)
}
