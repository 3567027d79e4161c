//! Univariate factorization over ℚ and over ℚ(ζ_N).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{modp, zassenhaus, zpoly};
use crate::cyclo::{euler_phi, CycloNumber};
use crate::error::{Error, Result};
use crate::linalg;
use crate::qpoly::{self, QPoly};

/// `unit · ∏ factor^multiplicity` with monic, pairwise distinct irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniFactorization<C> {
    pub unit: C,
    pub factors: Vec<(Vec<C>, u32)>,
}

/// Squarefree over ℚ, decided modulo a prime when possible.
fn is_squarefree_q(f: &[BigRational]) -> bool {
    let (_, zf) = qpoly::to_integer(f);
    let lc = zf.last().unwrap().clone();
    for p in [1_000_003u64, 1_000_033, 1_000_037] {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = zpoly::to_modp(&zf, p);
        if fp.len() != zf.len() {
            continue;
        }
        return modp::is_squarefree(&fp, p) || qpoly::gcd(f, &qpoly::derivative(f)).len() == 1;
    }
    qpoly::gcd(f, &qpoly::derivative(f)).len() == 1
}

/// Yun's squarefree decomposition of a monic polynomial: `f = ∏ a_i^i`.
fn squarefree_q(f: &[BigRational]) -> Vec<(QPoly, u32)> {
    if f.len() <= 2 || is_squarefree_q(f) {
        return vec![(f.to_vec(), 1)];
    }
    let d = qpoly::derivative(f);
    let a0 = qpoly::gcd(f, &d);
    let mut b = qpoly::divrem(f, &a0).0;
    let c = qpoly::divrem(&d, &a0).0;
    let mut dd = qpoly::sub(&c, &qpoly::derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = qpoly::gcd(&b, &dd);
        b = qpoly::divrem(&b, &a).0;
        let c = qpoly::divrem(&dd, &a).0;
        dd = qpoly::sub(&c, &qpoly::derivative(&b));
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Monic irreducible factors of a monic squarefree rational polynomial.
fn irreducible_factors_q(f: &[BigRational]) -> Result<Vec<QPoly>> {
    if f.len() <= 2 {
        return Ok(vec![f.to_vec()]);
    }
    let (_, z) = qpoly::to_integer(f);
    let z = zpoly::primitive_part(&z);
    let mut out = Vec::new();
    let shift = z.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        out.push(qpoly::from_ints(&[0, 1]));
    }
    let z = z[shift..].to_vec();
    if z.len() > 1 {
        for g in zassenhaus::factor_squarefree(&z)? {
            out.push(qpoly::make_monic(&qpoly::from_bigints(&g)));
        }
    }
    Ok(out)
}

fn sort_factors<C>(fs: &mut [(Vec<C>, u32)], key: impl Fn(&[C]) -> String) {
    fs.sort_by_cached_key(|(f, m)| (f.len(), key(f), *m));
}

fn qkey(f: &[BigRational]) -> String {
    f.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Complete factorization in `ℚ[z]`; coefficients lowest degree first.
pub fn factor_univariate_rational(p: &[BigRational]) -> Result<UniFactorization<BigRational>> {
    let mut p = p.to_vec();
    qpoly::trim(&mut p);
    let Some(lc) = p.last().cloned() else {
        return Err(Error::ZeroPolynomial);
    };
    let monic = qpoly::make_monic(&p);
    let mut factors = Vec::new();
    for (s, m) in squarefree_q(&monic) {
        for g in irreducible_factors_q(&s)? {
            factors.push((g, m));
        }
    }
    sort_factors(&mut factors, qkey);
    Ok(UniFactorization { unit: lc, factors })
}

// --- polynomials over ℚ(ζ_N) -------------------------------------------

pub type KPoly = Vec<CycloNumber>;

fn ktrim(a: &mut KPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn kmul(a: &[CycloNumber], b: &[CycloNumber], order: u32) -> KPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![CycloNumber::zero(order); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = &r[i + j] + &(x * y);
        }
    }
    ktrim(&mut r);
    r
}

fn ksub(a: &[CycloNumber], b: &[CycloNumber], order: u32) -> KPoly {
    let n = a.len().max(b.len());
    let z = CycloNumber::zero(order);
    let mut r: KPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    ktrim(&mut r);
    r
}

fn kmonic(a: &[CycloNumber]) -> KPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = lc.inv().expect("nonzero leading coefficient");
            a.iter().map(|c| c * &inv).collect()
        }
    }
}

fn kdivrem(a: &[CycloNumber], b: &[CycloNumber]) -> (KPoly, KPoly) {
    let mut r = a.to_vec();
    ktrim(&mut r);
    let order = b[0].order();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = b[db].inv().expect("nonzero leading coefficient");
    let mut q = vec![CycloNumber::zero(order); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * bj);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    ktrim(&mut r);
    ktrim(&mut q);
    (q, r)
}

fn kgcd(a: &[CycloNumber], b: &[CycloNumber]) -> KPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    ktrim(&mut x);
    ktrim(&mut y);
    while !y.is_empty() {
        let r = kdivrem(&x, &y).1;
        x = kmonic(&y);
        y = kmonic(&r);
    }
    kmonic(&x)
}

fn kderivative(a: &[CycloNumber]) -> KPoly {
    let mut r: KPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
        .collect();
    ktrim(&mut r);
    r
}

/// `a(z + c)` by Horner's rule.
fn ktaylor_shift(a: &[CycloNumber], c: &CycloNumber, order: u32) -> KPoly {
    let mut r: KPoly = Vec::new();
    let lin = vec![c.clone(), CycloNumber::one(order)];
    for coeff in a.iter().rev() {
        r = kmul(&r, &lin, order);
        if r.is_empty() {
            r.push(CycloNumber::zero(order));
        }
        r[0] = &r[0] + coeff;
        ktrim(&mut r);
    }
    r
}

fn squarefree_k(f: &[CycloNumber], order: u32) -> Vec<(KPoly, u32)> {
    if f.len() <= 2 {
        return vec![(f.to_vec(), 1)];
    }
    let d = kderivative(f);
    let a0 = kgcd(f, &d);
    if a0.len() == 1 {
        return vec![(f.to_vec(), 1)];
    }
    let mut b = kdivrem(f, &a0).0;
    let c = kdivrem(&d, &a0).0;
    let mut dd = ksub(&c, &kderivative(&b), order);
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = kgcd(&b, &dd);
        b = kdivrem(&b, &a).0;
        let c = kdivrem(&dd, &a).0;
        dd = ksub(&c, &kderivative(&b), order);
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// `Norm_{K/ℚ}(g) ∈ ℚ[z]` as the determinant of the multiplication matrix.
fn norm_poly(g: &[CycloNumber], order: u32) -> QPoly {
    let phi = euler_phi(order) as usize;
    let mut m = vec![vec![QPoly::new(); phi]; phi];
    for j in 0..phi {
        let zj = CycloNumber::zeta_pow(order, j as i64);
        let mut cols: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); g.len()]; phi];
        for (i, c) in g.iter().enumerate() {
            let prod = c * &zj;
            for (r, v) in prod.coords().iter().enumerate() {
                cols[r][i] = v.clone();
            }
        }
        for (r, mut col) in cols.into_iter().enumerate() {
            qpoly::trim(&mut col);
            m[r][j] = col;
        }
    }
    linalg::det_poly(m)
}

fn to_k(p: &[BigRational], order: u32) -> KPoly {
    p.iter().map(|c| CycloNumber::from_rational(c.clone(), order)).collect()
}

/// Trager's algorithm for a monic squarefree polynomial over ℚ(ζ_N).
fn irreducible_factors_k(g: &[CycloNumber], order: u32) -> Result<Vec<KPoly>> {
    if g.len() <= 2 {
        return Ok(vec![g.to_vec()]);
    }
    let theta = CycloNumber::zeta_pow(order, 1);
    for s in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8] {
        let shift = theta.scale(&BigRational::from_integer(BigInt::from(-s)));
        let gs = ktaylor_shift(g, &shift, order);
        let n = norm_poly(&gs, order);
        if !is_squarefree_q(&qpoly::make_monic(&n)) {
            continue;
        }
        let parts = irreducible_factors_q(&qpoly::make_monic(&n))?;
        if parts.len() == 1 {
            return Ok(vec![g.to_vec()]);
        }
        let back = theta.scale(&BigRational::from_integer(BigInt::from(s)));
        let mut out = Vec::new();
        for ni in parts {
            let h = kgcd(&gs, &to_k(&ni, order));
            if h.len() > 1 {
                out.push(kmonic(&ktaylor_shift(&h, &back, order)));
            }
        }
        return Ok(out);
    }
    Err(Error::Internal("no squarefree norm found for the shifted polynomial".into()))
}

fn kkey(f: &[CycloNumber]) -> String {
    f.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Complete factorization in `ℚ(ζ_order)[z]`; coefficients lowest degree first.
pub fn factor_univariate_cyclo(p: &[CycloNumber], order: u32) -> Result<UniFactorization<CycloNumber>> {
    let mut p: KPoly = p.iter().map(|c| c.embed(order)).collect::<Result<_>>()?;
    ktrim(&mut p);
    let Some(lc) = p.last().cloned() else {
        return Err(Error::ZeroPolynomial);
    };
    if euler_phi(order) == 1 {
        let q: Option<QPoly> = p.iter().map(|c| c.as_rational()).collect();
        let q = q.expect("order with φ = 1 has rational coordinates");
        let r = factor_univariate_rational(&q)?;
        return Ok(UniFactorization {
            unit: lc,
            factors: r.factors.into_iter().map(|(f, m)| (to_k(&f, order), m)).collect(),
        });
    }
    let monic = kmonic(&p);
    let mut factors = Vec::new();
    for (s, m) in squarefree_k(&monic, order) {
        for g in irreducible_factors_k(&s, order)? {
            factors.push((g, m));
        }
    }
    sort_factors(&mut factors, kkey);
    Ok(UniFactorization { unit: lc, factors })
}
