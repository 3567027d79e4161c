//! Classical factorization of Laurent polynomials over `ℚ(ζ_N)[x̄]`.
//!
//! The multivariate driver flattens `Q(y; x̄)` into one polynomial ring,
//! tries a cheap irreducibility certificate by specialization, and falls
//! back to Kronecker substitution: the univariate image is factored
//! completely and subsets of its factors are recombined by exact trial
//! division.

mod modp;
mod uni;
mod zassenhaus;
mod zpoly;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use uni::{factor_univariate_cyclo, factor_univariate_rational, UniFactorization};

use crate::cyclo::{lcm, CycloNumber};
use crate::error::{Error, Result};
use crate::poly::{CoeffPoly, ExpVec, LaurentPoly, Mono};

/// Default bound on the total degree accepted by [`factor_multivariate`].
pub const DEFAULT_DEGREE_CAP: u32 = 24;
/// Largest univariate image the Kronecker step will build.
const MAX_IMAGE_DEGREE: u64 = 6000;

/// `unit · y^monomial · ∏ factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalFactorization {
    pub unit: CycloNumber,
    pub monomial: ExpVec,
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl ClassicalFactorization {
    /// Multiplies everything back together.
    pub fn expand(&self, nvars: usize, nx: usize) -> LaurentPoly {
        let mut acc = LaurentPoly::term(self.monomial.clone(), CoeffPoly::constant(self.unit.clone(), nx));
        debug_assert_eq!(acc.nvars(), nvars);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f).expect("factors share the ambient");
            }
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

/// Complete factorization of `q` over `ℚ(ζ_order)[x̄]`.
///
/// Factors are irreducible, pairwise non-associate, have nonnegative
/// exponents and leading coefficient 1 for the lexicographically greatest
/// `(y-exponent, x̄-monomial)`; they are sorted canonically.
pub fn factor_multivariate(q: &LaurentPoly, order: u32, degree_cap: u32) -> Result<ClassicalFactorization> {
    let order = lcm(order.max(1), q.order());
    let (monomial, qpos) = q.laurent_normalize()?;
    let qpos = qpos.embed(order);
    let deg = qpos.total_degree();
    if deg > degree_cap as i64 {
        return Err(Error::Resource(format!("total degree {deg} exceeds the degree cap {degree_cap}")));
    }
    let flat = qpos.to_flat();
    let unit = flat.leading().map(|(_, c)| c.clone()).expect("nonzero");
    let mut factors: Vec<(LaurentPoly, u32)> = factor_flat(&flat, order)?
        .into_iter()
        .map(|(f, m)| (LaurentPoly::from_flat(&make_monic(&f), q.nvars(), q.nx()), m))
        .collect();
    factors.sort_by_cached_key(|(f, m)| (f.total_degree(), canonical_key(f), *m));
    Ok(ClassicalFactorization { unit, monomial, factors })
}

/// Deterministic sort key for a Laurent polynomial.
pub fn canonical_key(f: &LaurentPoly) -> String {
    format!("{:?}", f.terms())
}

/// Representative of the associate class of a nonzero Laurent polynomial,
/// normalized the same way as the factors of [`factor_multivariate`].
pub fn associate_normal_form(q: &LaurentPoly) -> Result<LaurentPoly> {
    let (_, qpos) = q.laurent_normalize()?;
    Ok(LaurentPoly::from_flat(&make_monic(&qpos.to_flat()), q.nvars(), q.nx()))
}

fn make_monic(f: &CoeffPoly) -> CoeffPoly {
    let (_, lc) = f.leading().expect("nonzero factor");
    f.scale(&lc.inv().expect("nonzero"))
}

/// Factors of a flattened polynomial, up to a scalar.
fn factor_flat(f: &CoeffPoly, order: u32) -> Result<Vec<(CoeffPoly, u32)>> {
    let n = f.nvars();
    let mut out = Vec::new();
    let content = f.monomial_content();
    for (i, &e) in content.iter().enumerate() {
        if e > 0 {
            out.push((CoeffPoly::var(i, n, order), e));
        }
    }
    let zeros = vec![0u32; n];
    let g = if content == zeros {
        f.clone()
    } else {
        let mut r = CoeffPoly::zero(n);
        for (m, c) in f.terms() {
            r.add_term(m.iter().zip(&content).map(|(a, b)| a - b).collect(), c);
        }
        r
    };
    let used = g.used_vars();
    if used.is_empty() {
        return Ok(out);
    }
    let small = compress(&g, &used);
    let pieces = if used.len() == 1 {
        factor_univariate_poly(&small, order)?
    } else if certify_irreducible(&small, order)? {
        vec![(small.clone(), 1)]
    } else {
        kronecker_factor(&small, order)?
    };
    for (p, m) in pieces {
        out.push((p.remap(&used, n), m));
    }
    Ok(out)
}

fn compress(g: &CoeffPoly, used: &[usize]) -> CoeffPoly {
    CoeffPoly::from_terms(
        used.len(),
        g.terms().iter().map(|(m, c)| (used.iter().map(|&v| m[v]).collect::<Mono>(), c.clone())),
    )
}

fn factor_univariate_poly(g: &CoeffPoly, order: u32) -> Result<Vec<(CoeffPoly, u32)>> {
    let d = g.degree_in(0) as usize;
    let mut dense = vec![CycloNumber::zero(order); d + 1];
    for (m, c) in g.terms() {
        dense[m[0] as usize] = c.clone();
    }
    let fac = factor_univariate_cyclo(&dense, order)?;
    Ok(fac.factors.into_iter().map(|(p, m)| (from_dense(&p, 1, &[1]), m)).collect())
}

/// Polynomial with `z^e ↦ Kronecker decoding of e` over `nvars` variables.
fn from_dense(p: &[CycloNumber], nvars: usize, radix: &[u64]) -> CoeffPoly {
    let mut r = CoeffPoly::zero(nvars);
    for (e, c) in p.iter().enumerate() {
        if !c.is_zero() {
            r.add_term(decode(e as u64, radix), c);
        }
    }
    r
}

fn decode(mut e: u64, radix: &[u64]) -> Mono {
    let mut m = Vec::with_capacity(radix.len());
    for (i, &d) in radix.iter().enumerate() {
        if i + 1 == radix.len() {
            m.push(e as u32);
        } else {
            m.push((e % d) as u32);
            e /= d;
        }
    }
    m
}

/// Irreducibility certificate: if some variable `v` has a constant nonzero
/// coefficient in `g`, and a degree-preserving integer specialization of the
/// other variables is irreducible in `v`, then `g` is irreducible.
fn certify_irreducible(g: &CoeffPoly, order: u32) -> Result<bool> {
    let n = g.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    for v in 0..n {
        let dv = g.degree_in(v);
        if dv == 0 {
            continue;
        }
        // Some coefficient of a power of v must be a nonzero constant.
        let mut per_power: BTreeMap<u32, (usize, bool)> = BTreeMap::new();
        for m in g.terms().keys() {
            let pure = m.iter().enumerate().all(|(j, &e)| j == v || e == 0);
            let slot = per_power.entry(m[v]).or_insert((0, true));
            slot.0 += 1;
            slot.1 &= pure;
        }
        if !per_power.values().any(|&(count, pure)| count == 1 && pure) {
            continue;
        }
        for _ in 0..3 {
            let point: Vec<i64> = (0..n).map(|_| rng.gen_range(-6i64..=6)).collect();
            let mut dense = vec![CycloNumber::zero(order); dv as usize + 1];
            for (m, c) in g.terms() {
                let mut val = c.clone();
                for (j, &e) in m.iter().enumerate() {
                    if j != v && e > 0 {
                        val = &val * &CycloNumber::from_int(point[j], order).pow(e as u64);
                    }
                }
                let slot = &mut dense[m[v] as usize];
                *slot = &*slot + &val;
            }
            if dense[dv as usize].is_zero() {
                continue;
            }
            let fac = factor_univariate_cyclo(&dense, order)?;
            if fac.factors.len() == 1 && fac.factors[0].1 == 1 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn kronecker_factor(g: &CoeffPoly, order: u32) -> Result<Vec<(CoeffPoly, u32)>> {
    let n = g.nvars();
    let degs = g.degrees();
    let radix: Vec<u64> = degs.iter().map(|&d| d as u64 + 1).collect();
    let mut weights = Vec::with_capacity(n);
    let mut w = 1u64;
    for &r in &radix {
        weights.push(w);
        w = w.saturating_mul(r);
    }
    let image_degree: u64 = degs.iter().zip(&weights).map(|(&d, &w)| d as u64 * w).sum();
    if image_degree > MAX_IMAGE_DEGREE {
        return Err(Error::Resource(format!(
            "Kronecker image of degree {image_degree} exceeds {MAX_IMAGE_DEGREE}"
        )));
    }
    let mut dense = vec![CycloNumber::zero(order); image_degree as usize + 1];
    for (m, c) in g.terms() {
        let e: u64 = m.iter().zip(&weights).map(|(&a, &w)| a as u64 * w).sum();
        dense[e as usize] = c.clone();
    }
    let fac = factor_univariate_cyclo(&dense, order)?;
    // Multiset of univariate factors, identified by class index.
    let classes: Vec<Vec<CycloNumber>> = fac.factors.iter().map(|(p, _)| p.clone()).collect();
    let mut pool: Vec<usize> = Vec::new();
    for (i, (_, m)) in fac.factors.iter().enumerate() {
        for _ in 0..*m {
            pool.push(i);
        }
    }

    let mut remaining = g.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        let mut seen = std::collections::HashSet::new();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let sig: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
            if seen.insert(sig.clone()) {
                if let Some(cand) = candidate(&sig, &classes, &radix, &remaining, order) {
                    if let Some(q) = remaining.div_exact(&cand) {
                        hit = Some((cand, q, sig));
                        break;
                    }
                }
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
        let Some((cand, q, sig)) = hit else {
            size += 1;
            continue;
        };
        let mut mult = 1;
        remaining = q;
        while let Some(q) = remaining.div_exact(&cand) {
            remaining = q;
            mult += 1;
        }
        for _ in 0..mult {
            for c in &sig {
                let pos = pool
                    .iter()
                    .position(|x| x == c)
                    .ok_or_else(|| Error::Internal("Kronecker recombination lost a factor".into()))?;
                pool.remove(pos);
            }
        }
        out.push((cand, mult));
    }
    if remaining.as_constant().is_none() {
        out.push((remaining, 1));
    }
    Ok(out)
}

fn candidate(
    sig: &[usize],
    classes: &[Vec<CycloNumber>],
    radix: &[u64],
    remaining: &CoeffPoly,
    order: u32,
) -> Option<CoeffPoly> {
    let mut prod = vec![CycloNumber::one(order)];
    for &c in sig {
        prod = poly_mul(&prod, &classes[c], order);
    }
    let degs = remaining.degrees();
    let mut terms: BTreeMap<Mono, CycloNumber> = BTreeMap::new();
    for (e, c) in prod.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let m = decode(e as u64, radix);
        if m.iter().zip(&degs).any(|(a, b)| a > b) {
            return None;
        }
        terms.insert(m, c.clone());
    }
    Some(CoeffPoly::from_terms(radix.len(), terms))
}

fn poly_mul(a: &[CycloNumber], b: &[CycloNumber], order: u32) -> Vec<CycloNumber> {
    let mut r = vec![CycloNumber::zero(order); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = &r[i + j] + &(x * y);
        }
    }
    r
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

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(n: usize, t: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(n, t)
    }

    #[test]
    fn x3_minus_y6() {
        let q = lp(2, &[(&[3, 0], 1), (&[0, 6], -1)]);
        let f = factor_multivariate(&q, 1, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.factors[0].0, lp(2, &[(&[1, 0], 1), (&[0, 2], -1)]));
        assert_eq!(f.factors[1].0, lp(2, &[(&[2, 0], 1), (&[1, 2], 1), (&[0, 4], 1)]));
        assert_eq!(f.expand(2, 0), q);

        let f = factor_multivariate(&q, 3, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand(2, 0), q.embed(3));
    }

    #[test]
    fn irreducible_and_powers() {
        let q = lp(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(factor_multivariate(&q, 1, 24).unwrap().factors, vec![(q.clone(), 1)]);
        let sq = q.mul(&q).unwrap().mul(&lp(2, &[(&[1, 0], 1), (&[0, 1], -1)])).unwrap();
        let f = factor_multivariate(&sq, 1, 24).unwrap();
        assert_eq!(f.count(), 3);
        assert_eq!(f.expand(2, 0), sq);
    }

    #[test]
    fn monomials_and_laurent_exponents() {
        let q = lp(2, &[(&[3, 1], 2), (&[2, 1], 2)]);
        let f = factor_multivariate(&q, 1, 24).unwrap();
        assert_eq!(f.monomial, vec![2, 1]);
        assert_eq!(f.unit, CycloNumber::from_int(2, 1));
        assert_eq!(f.factors, vec![(lp(2, &[(&[1, 0], 1), (&[0, 0], 1)]), 1)]);
    }

    #[test]
    fn degree_cap_is_a_resource_error() {
        let q = lp(1, &[(&[30], 1), (&[0], -1)]);
        assert!(factor_multivariate(&q, 1, 24).unwrap_err().is_resource());
    }
}
