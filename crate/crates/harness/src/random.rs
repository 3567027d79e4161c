//! Deterministic random inputs for the property suites.

use expoly::{lattice_basis, to_associate, BasisOrder, CoeffPoly, CycloNumber, EPoly, LaurentPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bounds for [`random_epoly`]. Equal specs give equal outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub seed: u64,
    pub nvars: usize,
    /// Largest exponential nesting; height 1 means exponents are linear in `x̄`.
    pub max_height: u32,
    pub max_terms: usize,
    /// Largest total degree of a coefficient in `x̄`.
    pub max_coeff_degree: u32,
    pub max_support_dim: usize,
    /// Coefficients may use `ζ_N` for this `N`.
    pub ambient_order: u32,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { seed: 0, nvars: 2, max_height: 2, max_terms: 4, max_coeff_degree: 1, max_support_dim: 2, ambient_order: 1 }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn var(i: usize, n: usize) -> EPoly {
    EPoly::var(i, n, 1)
}

fn int(k: i64, n: usize) -> EPoly {
    EPoly::constant(&CycloNumber::from_int(k, 1), n, 1)
}

/// Small nonzero integer.
fn nonzero(r: &mut ChaCha8Rng, bound: i64) -> i64 {
    let k = r.gen_range(1..=bound);
    if r.gen_bool(0.5) {
        -k
    } else {
        k
    }
}

/// A nonzero exponent: an integer combination of the variables, plus an
/// exponential of one variable when nesting is allowed.
pub fn random_exponent(r: &mut ChaCha8Rng, n: usize, max_height: u32) -> EPoly {
    loop {
        let mut e = EPoly::zero(n, 1);
        for i in 0..n {
            let k = r.gen_range(-2i64..=2);
            e = e.add(&var(i, n).scale(&CycloNumber::from_int(k, 1))).unwrap();
        }
        if max_height >= 2 && r.gen_bool(0.3) {
            let i = r.gen_range(0..n);
            e = e.add(&var(i, n).exp().scale(&CycloNumber::from_int(nonzero(r, 1), 1))).unwrap();
        }
        if !e.is_zero() {
            return e;
        }
    }
}

/// Coefficient in `ℚ(ζ_N)[x̄]` with small integer entries.
pub fn random_coeff(r: &mut ChaCha8Rng, n: usize, max_degree: u32, order: u32) -> EPoly {
    loop {
        let mut c = EPoly::zero(n, order);
        let terms = r.gen_range(1..=2);
        for _ in 0..terms {
            let mut t = EPoly::constant(&CycloNumber::from_int(nonzero(r, 3), order), n, order);
            if order > 1 && r.gen_bool(0.3) {
                t = t.scale(&CycloNumber::zeta_pow(order, r.gen_range(1..order as i64)));
            }
            let deg = r.gen_range(0..=max_degree);
            for _ in 0..deg {
                t = t.mul(&var(r.gen_range(0..n), n)).unwrap();
            }
            c = c.add(&t).unwrap();
        }
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random nonzero exponential polynomial within `spec`: terms are
/// `c·E(k_1 β_1 + … + k_D β_D)` for `D ≤ max_support_dim` random exponents
/// `β_j` and small `k_j ≥ 0`.
pub fn random_epoly(spec: &RandomSpec) -> EPoly {
    let mut r = rng(spec.seed);
    let n = spec.nvars.max(1);
    let order = spec.ambient_order.max(1);
    let dim = r.gen_range(1..=spec.max_support_dim.max(1));
    let bases: Vec<EPoly> = (0..dim).map(|_| random_exponent(&mut r, n, spec.max_height)).collect();
    let terms = r.gen_range(1..=spec.max_terms.max(1));
    let mut f = EPoly::zero(n, order);
    for _ in 0..terms {
        let mut alpha = EPoly::zero(n, 1);
        for b in &bases {
            let k = r.gen_range(0i64..=2);
            alpha = alpha.add(&b.scale(&CycloNumber::from_int(k, 1))).unwrap();
        }
        let c = random_coeff(&mut r, n, spec.max_coeff_degree, order);
        f = f.add(&c.mul(&alpha.exp()).unwrap()).unwrap();
    }
    if f.is_zero() {
        int(1, n).embed(order)
    } else {
        f
    }
}

/// `c·E(α) + d` with `α` random: a simple binomial.
pub fn random_binomial(r: &mut ChaCha8Rng, n: usize, max_height: u32) -> EPoly {
    let alpha = random_exponent(r, n, max_height);
    alpha.exp().scale(&CycloNumber::from_int(nonzero(r, 2), 1)).add(&int(nonzero(r, 3), n)).unwrap()
}

/// `(E(α) + u)² - w²·E(2β)`: four terms, splitting into the two nonsimple
/// factors `E(α) + u ± w·E(β)` when `α` and `β` are independent.
pub fn random_square_difference(r: &mut ChaCha8Rng, n: usize, max_height: u32) -> EPoly {
    loop {
        let a = random_exponent(r, n, max_height);
        let b = random_exponent(r, n, max_height);
        let (u, w) = (nonzero(r, 2), nonzero(r, 2));
        let lhs = a.exp().add(&int(u, n)).unwrap().pow(2);
        let f = lhs.sub(&b.scale(&CycloNumber::from_int(2, 1)).exp().scale(&CycloNumber::from_int(w * w, 1))).unwrap();
        if f.support().map(|s| s.dimension == 2).unwrap_or(false) && f.len() == 4 {
            return f;
        }
    }
}

/// Largest per-variable degree of the associate polynomial under both scan
/// orders of the lattice basis.
pub fn associate_degree(f: &EPoly) -> Option<i64> {
    let mut m = 0;
    for order in [BasisOrder::Forward, BasisOrder::Reversed] {
        let basis = lattice_basis(f, order).ok()?;
        let (q, _) = to_associate(f, &basis).ok()?;
        let (_, q) = q.laurent_normalize().ok()?;
        m = m.max(q.max_var_degree());
    }
    Some(m)
}

/// Inputs for the basis-invariance suite: height ≤ 2, at most four terms,
/// support dimension at most two, cycling through products of binomials,
/// differences of squares and unstructured draws. Draws whose associate has
/// a variable of degree above 2 are skipped: the power search box `[1, M²]^p`
/// would need substitutions of degree 27 and more.
pub fn invariance_instance(seed: u64) -> EPoly {
    let mut r = rng(seed);
    loop {
        let f = match seed % 3 {
            0 => random_binomial(&mut r, 2, 2).mul(&random_binomial(&mut r, 2, 2)).unwrap(),
            1 => random_square_difference(&mut r, 2, 2),
            _ => random_epoly(&RandomSpec { seed: r.gen(), max_coeff_degree: 0, ..RandomSpec::default() }),
        };
        let ok = f.height() <= 2
            && f.len() <= 4
            && f.len() >= 2
            && f.support().map(|s| s.dimension <= 2).unwrap_or(false)
            && associate_degree(&f).is_some_and(|m| m <= 2);
        if ok {
            return f;
        }
    }
}

/// Random polynomial in `ℚ[y_1..y_p, x̄]` (`nx` coefficient variables) with
/// total degree at most `max_degree`, as a Laurent polynomial.
pub fn random_laurent(r: &mut ChaCha8Rng, p: usize, nx: usize, max_degree: u32, max_terms: usize) -> LaurentPoly {
    loop {
        let mut out = LaurentPoly::zero(p, nx);
        let terms = r.gen_range(1..=max_terms);
        for _ in 0..terms {
            let deg = r.gen_range(0..=max_degree);
            let mut e = vec![0u32; p + nx];
            for _ in 0..deg {
                e[r.gen_range(0..p + nx)] += 1;
            }
            let y: Vec<i64> = e[..p].iter().map(|&v| v as i64).collect();
            let c = CoeffPoly::monomial(e[p..].to_vec(), CycloNumber::from_int(nonzero(r, 4), 1));
            out.add_term(y, &c);
        }
        if !out.is_zero() && out.total_degree() >= 1 {
            return out;
        }
    }
}

/// Differential instance of total degree ≤ 6: usually a product of two or
/// three random factors so that there is something to find.
pub fn differential_instance(seed: u64) -> LaurentPoly {
    let mut r = rng(seed);
    let (p, nx) = match seed % 4 {
        0 => (2, 0),
        1 => (1, 1),
        2 => (2, 1),
        _ => (3, 0),
    };
    loop {
        let k = r.gen_range(1..=3);
        let mut f = LaurentPoly::one(p, nx, 1);
        for _ in 0..k {
            let g = random_laurent(&mut r, p, nx, 3, 3);
            f = f.mul(&g).unwrap();
        }
        if !f.is_zero() && f.total_degree() <= 6 {
            return f;
        }
    }
}
