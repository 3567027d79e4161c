//! Factorization of exponential polynomials: unit, classical factors in
//! `K[x̄]`, one block per support line for simple factors, and irreducible
//! nonsimple factors found through a bounded fractional-power search.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::associate::{from_associate, lattice_basis, to_associate, BasisOrder, SupportBasis};
use crate::cyclo::{lcm, CycloNumber};
use crate::epoly::{EPoly, Exponent, Unit};
use crate::error::{Error, Result};
use crate::factor::{associate_normal_form, canonical_key, factor_multivariate, DEFAULT_DEGREE_CAP};
use crate::poly::{CoeffPoly, LaurentPoly};

/// Engine settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Initial cyclotomic order; raised to cover the input's roots of unity.
    pub ambient_order: u32,
    /// Total-degree bound handed to the classical kernel.
    pub degree_cap: u32,
    /// Largest exponential nesting accepted.
    pub height_cap: u32,
    pub basis_order: BasisOrder,
    /// Run [`orbit_check`] on every power search and record the verdict.
    pub check_orbits: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            ambient_order: 1,
            degree_cap: DEFAULT_DEGREE_CAP,
            height_cap: 3,
            basis_order: BasisOrder::Forward,
            check_orbits: true,
        }
    }
}

/// Outcome of the search over `t ∈ [1, M²]^p` for the substitution
/// `V(y^t)` with the most primary irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSearchResult {
    pub t_star: Vec<i64>,
    pub q: u32,
    /// Factors of `V(y^{t*})`, repeated by multiplicity.
    pub factors: Vec<LaurentPoly>,
    /// Maximal per-variable degree of `V`.
    pub m: i64,
    /// Every searched tuple with its factor count and whether all factors
    /// were primary.
    pub table: Vec<(Vec<i64>, u32, bool)>,
}

/// A power search performed while factoring, kept for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSearchRecord {
    /// Primary part of the associate factor: `F(y) = V(y^n)`.
    pub v: LaurentPoly,
    pub n: Vec<i64>,
    pub result: PowerSearchResult,
    pub orbit_ok: Option<bool>,
}

/// Product of all simple factors sharing one support line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleBlock {
    pub support_line: Exponent,
    pub block: EPoly,
    /// The block's 1-variable factors, for diagnostics only.
    pub parts: Vec<(EPoly, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub ambient_order: u32,
    pub nvars: usize,
    pub unit: Unit,
    pub classical: Vec<(CoeffPoly, u32)>,
    pub simple_blocks: Vec<SimpleBlock>,
    pub nonsimple: Vec<(EPoly, u32)>,
    pub power_searches: Vec<PowerSearchRecord>,
}

impl Factorization {
    /// `unit · ∏ parts`.
    pub fn product(&self) -> EPoly {
        let (n, order) = (self.nvars, self.ambient_order);
        let mut acc = self.unit.to_epoly(n, order);
        for (c, m) in &self.classical {
            acc = acc.mul(&EPoly::from_coeff(c.clone(), order).pow(*m)).expect("same ambient");
        }
        for b in &self.simple_blocks {
            acc = acc.mul(&b.block).expect("same ambient");
        }
        for (g, m) in &self.nonsimple {
            acc = acc.mul(&g.pow(*m)).expect("same ambient");
        }
        acc
    }

    /// Number of irreducible factors reported outside simple blocks,
    /// counted with multiplicity.
    pub fn nonsimple_count(&self) -> u32 {
        self.nonsimple.iter().map(|(_, m)| m).sum()
    }

    /// Part-wise agreement: same classical factors, same blocks per support
    /// line and same nonsimple factors, all up to units.
    pub fn equivalent(&self, other: &Factorization) -> bool {
        let order = lcm(self.ambient_order, other.ambient_order);
        let classical = |f: &Factorization| {
            let mut v: Vec<(String, u32)> = f
                .classical
                .iter()
                .map(|(c, m)| (format!("{:?}", monic(&c.embed(order)).terms()), *m))
                .collect();
            v.sort();
            v
        };
        let blocks = |f: &Factorization| {
            let mut v: Vec<(Exponent, EPoly)> = f
                .simple_blocks
                .iter()
                .map(|b| (b.support_line.embed(f.ambient_order, order), b.block.embed(order).normalize().1))
                .collect();
            v.sort_by(|a, b| a.0.cmp(&b.0));
            v
        };
        let nonsimple = |f: &Factorization| {
            let mut v: Vec<(EPoly, u32)> = f.nonsimple.iter().map(|(g, m)| (g.embed(order).normalize().1, *m)).collect();
            v.sort_by_key(|(g, m)| (format!("{:?}", g.terms()), *m));
            v
        };
        classical(self) == classical(other) && blocks(self) == blocks(other) && nonsimple(self) == nonsimple(other)
    }
}

fn monic(c: &CoeffPoly) -> CoeffPoly {
    match c.leading() {
        Some((_, lc)) => c.scale(&lc.inv().expect("nonzero")),
        None => c.clone(),
    }
}

/// `τ_ij = t_ij / gcd(t_ij, d_j)`: reducibility tuples of `Q(y) = P(y^d)`
/// from those of its primary part `P`.
pub fn nonprimary_adjust(t_sets: &[Vec<i64>], d: &[i64]) -> Vec<Vec<i64>> {
    t_sets.iter().map(|t| t.iter().zip(d).map(|(&a, &b)| a / a.gcd(&b)).collect()).collect()
}

/// Exhaustive search over `t ∈ [1, M²]^p` in lexicographic order for the
/// substitution `V(y^t)` with the most irreducible factors, all of them
/// primary. Ties keep the first tuple found.
pub fn power_reducibility_search(v: &LaurentPoly, order: u32, degree_cap: u32) -> Result<PowerSearchResult> {
    if v.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !v.is_nonnegative() || !v.is_primary() {
        return Err(Error::Precondition("power search needs a primary polynomial".into()));
    }
    if v.essentially_one_variable()?.is_some() {
        return Err(Error::Precondition("power search needs a polynomial that is not essentially 1-variable".into()));
    }
    let own = factor_multivariate(v, order, degree_cap)?;
    if own.count() != 1 {
        return Err(Error::Precondition("power search needs an irreducible polynomial".into()));
    }
    let p = v.nvars();
    let m = v.max_var_degree();
    let bound = m * m;
    let mut t = vec![1i64; p];
    let mut best: Option<(Vec<i64>, u32, Vec<LaurentPoly>)> = None;
    let mut table = Vec::new();
    loop {
        let fac = factor_multivariate(&v.power_substitute(&t), order, degree_cap)?;
        let all_primary = fac.factors.iter().all(|(f, _)| f.is_primary());
        let count = fac.count();
        table.push((t.clone(), count, all_primary));
        if all_primary && best.as_ref().map_or(true, |b| count > b.1) {
            let factors = fac.factors.iter().flat_map(|(f, k)| std::iter::repeat(f.clone()).take(*k as usize)).collect();
            best = Some((t.clone(), count, factors));
        }
        // Next tuple in lexicographic order.
        let mut i = p;
        loop {
            if i == 0 {
                let (t_star, q, factors) = best.expect("t = 1 always qualifies");
                return Ok(PowerSearchResult { t_star, q, factors, m, table });
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

/// Cross-check of a power search: the factors multiply back to `V(y^{t*})`
/// up to a unit and a monomial, and every twist `y_i ↦ ε y_i` with `ε` a
/// `t*_i`-th root of unity permutes the irreducible factors of `V(y^{t*})`
/// over `ℚ(ζ_L)`, `L = lcm(order, t*)`.
pub fn orbit_check(v: &LaurentPoly, result: &PowerSearchResult, order: u32, degree_cap: u32) -> Result<bool> {
    let target = v.power_substitute(&result.t_star);
    let mut prod = LaurentPoly::one(v.nvars(), v.nx(), order);
    for f in &result.factors {
        prod = prod.mul(f)?;
    }
    if prod.is_zero() || associate_normal_form(&prod)? != associate_normal_form(&target)? {
        return Ok(false);
    }
    if result.q == 1 {
        return Ok(true);
    }
    let big = result.t_star.iter().fold(order, |l, &t| lcm(l, t as u32));
    let fac = factor_multivariate(&target.embed(big), big, degree_cap)?;
    let sorted = |fs: Vec<LaurentPoly>| {
        let mut fs: Vec<(String, LaurentPoly)> = fs.into_iter().map(|f| (canonical_key(&f), f)).collect();
        fs.sort_by(|a, b| a.0.cmp(&b.0));
        fs.into_iter().map(|(_, f)| f).collect::<Vec<_>>()
    };
    let base: Vec<LaurentPoly> =
        sorted(fac.factors.iter().flat_map(|(f, k)| std::iter::repeat(f.clone()).take(*k as usize)).collect());
    for (i, &ti) in result.t_star.iter().enumerate() {
        for k in 1..ti {
            let eps = CycloNumber::zeta_pow(ti as u32, k).embed(big)?;
            let twisted: Result<Vec<LaurentPoly>> =
                base.iter().map(|f| associate_normal_form(&f.twist(i, &eps)?)).collect();
            if sorted(twisted?) != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Accumulator {
    nvars: usize,
    order: u32,
    classical: Vec<(CoeffPoly, u32)>,
    blocks: BTreeMap<Exponent, Vec<(EPoly, u32)>>,
    nonsimple: Vec<(EPoly, u32)>,
}

impl Accumulator {
    fn push_epoly(&mut self, g: EPoly, mult: u32) -> Result<()> {
        let (_, g) = g.normalize();
        if g.len() == 1 {
            // A single term after normalization is a classical polynomial.
            let (_, c) = g.leading().expect("nonzero");
            if !c.is_one() {
                self.push_classical(c.clone(), mult);
            }
            return Ok(());
        }
        match g.support_line() {
            Some(line) => {
                let parts = self.blocks.entry(line).or_default();
                match parts.iter_mut().find(|(h, _)| *h == g) {
                    Some(slot) => slot.1 += mult,
                    None => parts.push((g, mult)),
                }
            }
            None => match self.nonsimple.iter_mut().find(|(h, _)| *h == g) {
                Some(slot) => slot.1 += mult,
                None => self.nonsimple.push((g, mult)),
            },
        }
        Ok(())
    }

    fn push_classical(&mut self, c: CoeffPoly, mult: u32) {
        let c = monic(&c);
        match self.classical.iter_mut().find(|(h, _)| *h == c) {
            Some(slot) => slot.1 += mult,
            None => self.classical.push((c, mult)),
        }
    }

    fn finish(self, f: &EPoly, power_searches: Vec<PowerSearchRecord>) -> Result<Factorization> {
        let (n, order) = (self.nvars, self.order);
        let mut classical = self.classical;
        classical.sort_by_cached_key(|(c, m)| (c.total_degree(), format!("{:?}", c.terms()), *m));
        let simple_blocks: Vec<SimpleBlock> = self
            .blocks
            .into_iter()
            .map(|(support_line, mut parts)| {
                parts.sort_by_cached_key(|(g, m)| (format!("{:?}", g.terms()), *m));
                let mut block = EPoly::one(n, order);
                for (g, m) in &parts {
                    block = block.mul(&g.pow(*m)).expect("same ambient");
                }
                SimpleBlock { support_line, block, parts }
            })
            .collect();
        let mut nonsimple = self.nonsimple;
        nonsimple.sort_by_cached_key(|(g, m)| (format!("{:?}", g.terms()), *m));
        let mut fac = Factorization {
            ambient_order: order,
            nvars: n,
            unit: Unit::one(order),
            classical,
            simple_blocks,
            nonsimple,
            power_searches,
        };
        fac.unit = f
            .unit_ratio(&fac.product())
            .ok_or_else(|| Error::Internal("factor product differs from the input by more than a unit".into()))?;
        if !verify_factorization(f, &fac) {
            return Err(Error::Internal("factorization failed reconstruction".into()));
        }
        Ok(fac)
    }
}

/// Factors `f` into a unit, classical factors, simple blocks and
/// irreducible nonsimple factors, and checks the product before returning.
pub fn factor_epoly(f: &EPoly, cfg: &Config) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.height() > cfg.height_cap {
        return Err(Error::Resource(format!("height {} exceeds the height cap {}", f.height(), cfg.height_cap)));
    }
    let order = lcm(cfg.ambient_order.max(1), f.order());
    let f = f.embed(order);
    let mut acc = Accumulator {
        nvars: f.nvars(),
        order,
        classical: Vec::new(),
        blocks: BTreeMap::new(),
        nonsimple: Vec::new(),
    };
    let mut searches = Vec::new();
    if f.len() == 1 {
        let (_, a) = f.leading().expect("nonzero");
        push_classical_factors(&mut acc, a, order, cfg.degree_cap)?;
        return acc.finish(&f, searches);
    }
    let basis = lattice_basis(&f, cfg.basis_order)?;
    let (q, _) = to_associate(&f, &basis)?;
    let p = basis.dimension();
    let cf = factor_multivariate(&q, order, cfg.degree_cap)?;
    for (g, mult) in &cf.factors {
        if g.is_y_free() {
            let c = g.terms().values().next().expect("nonzero").clone();
            acc.push_classical(c, *mult);
        } else if g.essentially_one_variable()?.is_some() {
            acc.push_epoly(from_associate(g, &basis, &vec![1; p], &vec![1; p])?, *mult)?;
        } else {
            let record = nonsimple_factor(&mut acc, g, *mult, &basis, cfg)?;
            searches.push(record);
        }
    }
    acc.finish(&f, searches)
}

fn push_classical_factors(acc: &mut Accumulator, a: &CoeffPoly, order: u32, cap: u32) -> Result<()> {
    let cf = factor_multivariate(&LaurentPoly::term(Vec::new(), a.clone()), order, cap)?;
    for (g, m) in cf.factors {
        let c = g.terms().values().next().expect("nonzero").clone();
        acc.push_classical(c, m);
    }
    Ok(())
}

fn nonsimple_factor(
    acc: &mut Accumulator,
    g: &LaurentPoly,
    mult: u32,
    basis: &SupportBasis,
    cfg: &Config,
) -> Result<PowerSearchRecord> {
    let (v, n) = g.primary_decompose()?;
    let result = power_reducibility_search(&v, acc.order, cfg.degree_cap)?;
    for vj in &result.factors {
        acc.push_epoly(from_associate(vj, basis, &n, &result.t_star)?, mult)?;
    }
    let orbit_ok = if cfg.check_orbits { Some(orbit_check(&v, &result, acc.order, cfg.degree_cap)?) } else { None };
    Ok(PowerSearchRecord { v, n, result, orbit_ok })
}

/// Exact check that `unit · ∏ parts = f`.
pub fn verify_factorization(f: &EPoly, fac: &Factorization) -> bool {
    if f.nvars() != fac.nvars {
        return false;
    }
    let order = lcm(f.order(), fac.ambient_order);
    f.embed(order) == fac.product().embed(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms[0].0.len(), terms)
    }

    fn e(a: i64, b: i64) -> EPoly {
        let x = EPoly::var(0, 2, 1).scale(&CycloNumber::from_int(a, 1));
        let y = EPoly::var(1, 2, 1).scale(&CycloNumber::from_int(b, 1));
        x.add(&y).unwrap().exp()
    }

    fn k(n: i64) -> EPoly {
        EPoly::constant(&CycloNumber::from_int(n, 1), 2, 1)
    }

    #[test]
    fn adjust_tuples() {
        assert_eq!(nonprimary_adjust(&[vec![2, 2]], &[2, 1]), vec![vec![1, 2]]);
        assert_eq!(nonprimary_adjust(&[vec![4, 6]], &[2, 3]), vec![vec![2, 2]]);
        assert_eq!(nonprimary_adjust(&[vec![3, 5]], &[1, 1]), vec![vec![3, 5]]);
    }

    #[test]
    fn search_on_running_example() {
        let v = lp(&[(&[2, 0], 1), (&[1, 0], 2), (&[0, 0], 1), (&[1, 1], -1)]);
        let r = power_reducibility_search(&v, 1, 24).unwrap();
        assert_eq!((r.t_star.clone(), r.q, r.m), (vec![2, 2], 2, 2));
        assert!(orbit_check(&v, &r, 1, 24).unwrap());

        let mut bad = r.clone();
        bad.factors[0] = lp(&[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        assert!(!orbit_check(&v, &bad, 1, 24).unwrap());

        let flat = lp(&[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let r = power_reducibility_search(&flat, 1, 24).unwrap();
        assert_eq!((r.t_star, r.q), (vec![1, 1], 1));
        assert!(power_reducibility_search(&lp(&[(&[1], 1), (&[0], -1)]), 1, 24).is_err());
    }

    #[test]
    fn running_example_splits_in_fractional_powers() {
        let f = e(4, 0).add(&e(2, 0).mul(&k(2)).unwrap()).unwrap().add(&k(1)).unwrap().sub(&e(2, 2)).unwrap();
        let fac = factor_epoly(&f, &Config::default()).unwrap();
        assert!(verify_factorization(&f, &fac));
        assert_eq!(fac.nonsimple.len(), 2);
        let plus = e(2, 0).add(&e(1, 1)).unwrap().add(&k(1)).unwrap();
        let minus = e(2, 0).sub(&e(1, 1)).unwrap().add(&k(1)).unwrap();
        let got: Vec<EPoly> = fac.nonsimple.iter().map(|(g, _)| g.clone()).collect();
        assert!(got.contains(&plus.normalize().1) && got.contains(&minus.normalize().1));
        assert_eq!(fac.power_searches[0].result.t_star, vec![2, 2]);
        assert_eq!(fac.power_searches[0].orbit_ok, Some(true));

        let rev = factor_epoly(&f, &Config { basis_order: BasisOrder::Reversed, ..Config::default() }).unwrap();
        assert!(fac.equivalent(&rev));
    }

    #[test]
    fn simple_inputs_stay_whole() {
        let f = e(2, 0).sub(&k(1)).unwrap();
        let fac = factor_epoly(&f, &Config::default()).unwrap();
        assert_eq!(fac.simple_blocks.len(), 1);
        assert_eq!(fac.simple_blocks[0].block, f);
        assert!(fac.nonsimple.is_empty() && fac.classical.is_empty());

        let g = e(3, 0).sub(&e(2, 0)).unwrap().sub(&e(1, 0)).unwrap().add(&k(1)).unwrap();
        let fac = factor_epoly(&g, &Config::default()).unwrap();
        assert_eq!(fac.simple_blocks.len(), 1);
        assert_eq!(fac.simple_blocks[0].block, g);
        assert_eq!(fac.simple_blocks[0].parts.len(), 2);
    }

    #[test]
    fn classical_content_is_split_off() {
        let x = EPoly::var(0, 2, 1);
        let f = x.mul(&x).unwrap().sub(&k(1)).unwrap().mul(&e(1, 0).add(&e(0, 1)).unwrap().add(&k(1)).unwrap()).unwrap();
        let fac = factor_epoly(&f, &Config::default()).unwrap();
        assert_eq!(fac.classical.len(), 2);
        assert_eq!(fac.nonsimple.len(), 1);
        assert!(fac.unit.exponent.is_zero());

        let single = x.mul(&x).unwrap().mul(&e(3, 1)).unwrap().mul(&k(-2)).unwrap();
        let fac = factor_epoly(&single, &Config::default()).unwrap();
        assert_eq!(fac.classical, vec![(CoeffPoly::var(0, 2, 1), 2)]);
        assert!(verify_factorization(&single, &fac));
    }

    #[test]
    fn negative_controls() {
        let f = e(2, 0).sub(&k(1)).unwrap();
        let g = e(2, 0).add(&k(1)).unwrap();
        let fac = factor_epoly(&f, &Config::default()).unwrap();
        assert!(!verify_factorization(&g, &fac));
        let mut dropped = factor_epoly(&f.mul(&g).unwrap(), &Config::default()).unwrap();
        dropped.simple_blocks[0].block = f.clone();
        assert!(!verify_factorization(&f.mul(&g).unwrap(), &dropped));
        assert!(factor_epoly(&EPoly::zero(2, 1), &Config::default()).is_err());
    }
}
