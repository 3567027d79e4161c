//! Reference factorization over ℚ for small total degree.
//!
//! Multivariate inputs are put in general position by `v_i ↦ v_i + c_i v_0`
//! so that they are monic in `v_0`, evaluated at an integer point, factored
//! there with Kronecker's method, lifted adically in the remaining variables
//! and recombined by trial division. Nothing here calls the kernel's
//! factoring code; `expoly` types appear only at the boundary.

use expoly::{ClassicalFactorization, CoeffPoly, CycloNumber, LaurentPoly};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mpoly::{q, MPoly, Q};
use crate::upoly::{self, UPoly};
use crate::OracleError;

/// Largest total degree the oracle accepts.
pub const ORACLE_MAX_DEGREE: u32 = 12;

const ATTEMPTS: usize = 12;
const POINT_TRIES: usize = 6;

/// Irreducible factors of `f` over ℚ, each with lex-leading coefficient 1,
/// with multiplicities. The constant factor is dropped.
pub fn factor_mpoly(f: &MPoly, degree_cap: u32) -> Result<Vec<(MPoly, u32)>, OracleError> {
    if f.is_zero() {
        return Err(OracleError::Input("zero polynomial".into()));
    }
    if f.total_degree() > degree_cap {
        return Err(OracleError::Cap(format!("total degree {} exceeds the oracle cap {degree_cap}", f.total_degree())));
    }
    let n = f.nvars;
    let mut out = Vec::new();
    // Monomial content.
    let content: Vec<u32> = (0..n).map(|i| f.terms.keys().map(|e| e[i]).min().unwrap()).collect();
    for (i, &m) in content.iter().enumerate() {
        if m > 0 {
            out.push((MPoly::var(i, n), m));
        }
    }
    let mut g = MPoly::zero(n);
    for (e, c) in &f.terms {
        g.add_term(e.iter().zip(&content).map(|(a, b)| a - b).collect(), c.clone());
    }
    // Work in the variables that occur.
    let used: Vec<usize> = (0..n).filter(|&i| g.degree_in(i) > 0).collect();
    if used.is_empty() {
        return Ok(out);
    }
    let small = MPoly {
        nvars: used.len(),
        terms: g.terms.iter().map(|(e, c)| (used.iter().map(|&i| e[i]).collect(), c.clone())).collect(),
    };
    let parts = if used.len() == 1 {
        upoly::factor_rational(&small.to_univariate(), degree_cap as usize)?
            .into_iter()
            .map(|(p, m)| (MPoly::from_univariate(&p, 1), m))
            .collect()
    } else {
        factor_general(&small, degree_cap)?
    };
    for (p, m) in parts {
        let mut big = MPoly::zero(n);
        for (e, c) in &p.terms {
            let mut full = vec![0; n];
            for (k, &i) in used.iter().enumerate() {
                full[i] = e[k];
            }
            big.add_term(full, c.clone());
        }
        out.push((big.monic(), m));
    }
    Ok(out)
}

/// At least two variables, all occurring, no monomial content.
fn factor_general(f: &MPoly, degree_cap: u32) -> Result<Vec<(MPoly, u32)>, OracleError> {
    let n = f.nvars;
    let d = f.total_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd5eed);
    for attempt in 0..ATTEMPTS {
        let shear: Vec<i64> = (0..n).map(|i| if i == 0 || attempt == 0 { 0 } else { rng.gen_range(-3..=3) }).collect();
        // g(v) = f(v_0, v_i + c_i v_0)
        let images: Vec<MPoly> = (0..n)
            .map(|i| MPoly::var(i, n).add(&MPoly::var(0, n).scale(&q(shear[i]))))
            .collect();
        let g = f.compose(&images);
        let top: Vec<u32> = std::iter::once(d).chain(std::iter::repeat(0).take(n - 1)).collect();
        let Some(lc) = g.terms.get(&top).cloned() else { continue };
        let g = g.scale(&lc.recip());
        // The evaluation point with the largest squarefree image degree.
        let mut best: Option<(usize, Vec<i64>)> = None;
        for _ in 0..POINT_TRIES {
            let a: Vec<i64> = (0..n).map(|i| if i == 0 { 0 } else { rng.gen_range(-4..=4) }).collect();
            let image = g.compose(&point_images(n, &a, true)).to_univariate();
            let rd = upoly::radical_degree(&image);
            if best.as_ref().map_or(true, |b| rd > b.0) {
                best = Some((rd, a));
            }
        }
        let (_, a) = best.expect("POINT_TRIES > 0");
        // h(v_0, w) = g(v_0, w + a)
        let h = g.compose(&point_images(n, &a, false));
        match lift_and_recombine(&h, degree_cap) {
            Ok(Some(parts)) => {
                // Undo both substitutions: v_i ↦ u_i - c_i u_0 - a_i.
                let back: Vec<MPoly> = (0..n)
                    .map(|i| {
                        MPoly::var(i, n)
                            .sub(&MPoly::var(0, n).scale(&q(shear[i])))
                            .sub(&MPoly::constant(q(a[i]), n))
                    })
                    .collect();
                let parts: Vec<(MPoly, u32)> = parts.into_iter().map(|(p, m)| (p.compose(&back).monic(), m)).collect();
                let mut prod = MPoly::constant(Q::one(), n);
                for (p, m) in &parts {
                    prod = prod.mul(&p.pow(*m));
                }
                if prod == f.monic() {
                    return Ok(parts);
                }
            }
            Ok(None) => {}
            Err(e) => return Err(e),
        }
    }
    Err(OracleError::Cap("no good evaluation point found".into()))
}

/// `v_0 ↦ v_0`, `v_i ↦ a_i` (evaluate) or `v_i ↦ v_i + a_i` (shift).
fn point_images(n: usize, a: &[i64], evaluate: bool) -> Vec<MPoly> {
    (0..n)
        .map(|i| {
            if i == 0 {
                MPoly::var(0, n)
            } else if evaluate {
                MPoly::constant(q(a[i]), n)
            } else {
                MPoly::var(i, n).add(&MPoly::constant(q(a[i]), n))
            }
        })
        .collect()
}

fn rem(a: &[Q], b: &[Q]) -> UPoly {
    upoly::divrem(a, b).1
}

/// Factors `h`, monic in `v_0`, from the factorization of `h(v_0, 0)`.
/// `None` means the evaluation point was unlucky.
fn lift_and_recombine(h: &MPoly, degree_cap: u32) -> Result<Option<Vec<(MPoly, u32)>>, OracleError> {
    let n = h.nvars;
    let image = h.truncate_tail(0).to_univariate();
    let groups = upoly::factor_rational(&image, degree_cap as usize)?;
    let qs0: Vec<UPoly> = groups.iter().map(|(p, e)| (0..*e).fold(vec![Q::one()], |acc, _| upoly::mul(&acc, p))).collect();
    let mults: Vec<u32> = groups.iter().map(|g| g.1).collect();
    // Inverse of image/Q_i modulo Q_i; fails when the Q_i are not coprime.
    let mut inv = Vec::new();
    for qi in &qs0 {
        let cof = upoly::divrem(&image, qi).0;
        let (g, s, _) = upoly::ext_gcd(&cof, qi);
        if g.len() != 1 {
            return Ok(None);
        }
        inv.push(s);
    }
    let depth = h.tail_degree();
    let mut qs: Vec<MPoly> = qs0.iter().map(|p| MPoly::from_univariate(p, n)).collect();
    let trunc_product = |qs: &[MPoly], idx: &[usize], k: u32| {
        idx.iter().fold(MPoly::constant(Q::one(), n), |acc, &i| acc.mul(&qs[i]).truncate_tail(k))
    };
    let all: Vec<usize> = (0..qs.len()).collect();
    for k in 1..=depth {
        let err = h.truncate_tail(k).sub(&trunc_product(&qs, &all, k));
        for (tail, e) in err.by_tail() {
            if tail.iter().sum::<u32>() != k {
                return Ok(None);
            }
            for (i, qi) in qs0.iter().enumerate() {
                let delta = rem(&upoly::mul(&e, &inv[i]), qi);
                let mut t = MPoly::zero(n);
                for (j, c) in delta.iter().enumerate() {
                    let mut exp = vec![j as u32];
                    exp.extend_from_slice(&tail);
                    t.add_term(exp, c.clone());
                }
                qs[i] = qs[i].add(&t);
            }
        }
    }
    if trunc_product(&qs, &all, depth) != *h {
        return Ok(None);
    }
    // Recombination: smallest subsets first, so each hit is p^e with p irreducible.
    let mut remaining = all;
    let mut cur = h.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(&remaining, size) {
            let e = mults[subset[0]];
            if subset.iter().any(|&i| mults[i] != e) {
                continue;
            }
            let c = trunc_product(&qs, &subset, cur.tail_degree());
            if let Some(quo) = cur.div_exact(&c) {
                hit = Some((subset, c, quo, e));
                break;
            }
        }
        match hit {
            Some((subset, c, quo, e)) => {
                let Some(p) = root(&c, e) else { return Ok(None) };
                found.push((p, e));
                cur = quo;
                remaining.retain(|i| !subset.contains(i));
            }
            None => size += 1,
        }
    }
    if !remaining.is_empty() {
        let e = mults[remaining[0]];
        if remaining.iter().any(|&i| mults[i] != e) || trunc_product(&qs, &remaining, cur.tail_degree()) != cur {
            return Ok(None);
        }
        let Some(p) = root(&cur, e) else { return Ok(None) };
        found.push((p, e));
    } else if cur != MPoly::constant(Q::one(), n) {
        return Ok(None);
    }
    Ok(Some(found))
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// `p` with `p^e = c` for `c` monic in `v_0`, found top-down.
fn root(c: &MPoly, e: u32) -> Option<MPoly> {
    if e == 1 {
        return Some(c.clone());
    }
    let n = c.nvars;
    let total = c.degree_in(0);
    if total % e != 0 {
        return None;
    }
    let m = total / e;
    let mut lead = vec![0; n];
    lead[0] = m;
    let mut p = MPoly::zero(n);
    p.add_term(lead, Q::one());
    for j in 1..=m {
        let diff = c.sub(&p.pow(e));
        let mut t = MPoly::zero(n);
        for (exp, coef) in &diff.terms {
            if exp[0] == total - j {
                let mut x = exp.clone();
                x[0] = m - j;
                t.add_term(x, coef / q(e as i64));
            }
        }
        p = p.add(&t);
    }
    (p.pow(e) == *c).then_some(p)
}

/// Reference factorization of a Laurent polynomial with rational
/// coefficients, in the same normal form as the kernel: `y`-monomial split
/// off, factors with nonnegative exponents and lex-leading coefficient 1
/// over `(y, x̄)`, sorted by their debug text.
pub fn oracle_factor_bounded(qpoly: &LaurentPoly, degree_cap: u32) -> Result<ClassicalFactorization, OracleError> {
    if degree_cap > ORACLE_MAX_DEGREE {
        return Err(OracleError::Cap(format!("oracle degree cap {degree_cap} exceeds {ORACLE_MAX_DEGREE}")));
    }
    let (p, nx) = (qpoly.nvars(), qpoly.nx());
    let (flat, monomial) = to_mpoly(qpoly)?;
    let unit = flat.leading().map(|(_, c)| c.clone()).ok_or_else(|| OracleError::Input("zero polynomial".into()))?;
    let mut factors: Vec<(LaurentPoly, u32)> =
        factor_mpoly(&flat, degree_cap)?.into_iter().map(|(f, m)| (from_mpoly(&f, p, nx), m)).collect();
    factors.sort_by_cached_key(|(f, m)| (format!("{:?}", f.terms()), *m));
    Ok(ClassicalFactorization { unit: CycloNumber::from_rational(unit, 1), monomial, factors })
}

/// Flat form over `(y, x̄)` after removing the least `y`-exponents.
pub fn to_mpoly(qpoly: &LaurentPoly) -> Result<(MPoly, Vec<i64>), OracleError> {
    let p = qpoly.nvars();
    let nx = qpoly.nx();
    let shift: Vec<i64> = (0..p).map(|i| qpoly.terms().keys().map(|e| e[i]).min().unwrap_or(0)).collect();
    let mut flat = MPoly::zero(p + nx);
    for (e, c) in qpoly.terms() {
        for (m, k) in c.terms() {
            let r = k.as_rational().ok_or_else(|| OracleError::Input("the oracle only handles rational coefficients".into()))?;
            let mut exp: Vec<u32> = e.iter().zip(&shift).map(|(a, b)| (a - b) as u32).collect();
            exp.extend_from_slice(m);
            flat.add_term(exp, r);
        }
    }
    Ok((flat, shift))
}

pub fn from_mpoly(f: &MPoly, p: usize, nx: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(p, nx);
    for (e, c) in &f.terms {
        let y: Vec<i64> = e[..p].iter().map(|&v| v as i64).collect();
        let coeff = CoeffPoly::monomial(e[p..].to_vec(), CycloNumber::from_rational(c.clone(), 1));
        out.add_term(y, &coeff);
    }
    out
}

/// Every exponent of `y_i` shares no common factor > 1.
pub fn is_primary(f: &MPoly, p: usize) -> bool {
    (0..p).all(|i| f.terms.keys().fold(0u32, |g, e| num_integer::gcd(g, e[i])) <= 1)
}

/// Factor count and primality for every `t ∈ [1, bound]^p` in lexicographic
/// order, computed with the oracle.
pub fn oracle_power_search(v: &LaurentPoly, bound: i64) -> Result<Vec<(Vec<i64>, u32, bool)>, OracleError> {
    let p = v.nvars();
    if differences_rank_at_most_one(v) {
        return Err(OracleError::Input("essentially 1-variable polynomial".into()));
    }
    let mut t = vec![1i64; p];
    let mut table = Vec::new();
    loop {
        let sub = LaurentPoly::from_terms(
            p,
            v.nx(),
            v.terms().iter().map(|(e, c)| (e.iter().zip(&t).map(|(a, b)| a * b).collect(), c.clone())),
        );
        let (flat, _) = to_mpoly(&sub)?;
        let fs = factor_mpoly(&flat, ORACLE_MAX_DEGREE)?;
        let count = fs.iter().map(|(_, m)| m).sum();
        let primary = fs.iter().all(|(f, _)| is_primary(f, p));
        table.push((t.clone(), count, primary));
        let mut i = p;
        loop {
            if i == 0 {
                return Ok(table);
            }
            i -= 1;
            if t[i] < bound {
                t[i] += 1;
                break;
            }
            t[i] = 1;
        }
    }
}

/// All exponent differences are parallel.
fn differences_rank_at_most_one(v: &LaurentPoly) -> bool {
    let exps: Vec<&Vec<i64>> = v.terms().keys().collect();
    let diffs: Vec<Vec<i64>> = exps.iter().map(|e| e.iter().zip(exps[0]).map(|(a, b)| a - b).collect()).collect();
    let Some(base) = diffs.iter().find(|d| d.iter().any(|&x| x != 0)) else { return true };
    // Every 2×2 minor against the first nonzero difference vanishes.
    diffs.iter().all(|d| {
        (0..d.len()).all(|i| (0..d.len()).all(|j| d[i] * base[j] == d[j] * base[i]))
    })
}

/// Lex-first tuple with the largest count among all-primary rows.
pub fn best_tuple(table: &[(Vec<i64>, u32, bool)]) -> Option<(Vec<i64>, u32)> {
    let mut best: Option<(Vec<i64>, u32)> = None;
    for (t, c, ok) in table {
        if *ok && best.as_ref().map_or(true, |b| *c > b.1) {
            best = Some((t.clone(), *c));
        }
    }
    best
}
