use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Atom, EPoly, Exponent};
use crate::error::{Error, Result};
use crate::linalg;

/// The exponents of a nonzero polynomial together with the dimension of
/// their ℚ-span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub generators: Vec<Exponent>,
    pub dimension: usize,
}

/// Coordinate vectors of `exps` over the union of their atoms.
pub(crate) fn flatten(exps: &[Exponent]) -> (Vec<Atom>, Vec<Vec<BigRational>>) {
    let atoms: BTreeSet<Atom> = exps.iter().flat_map(|e| e.coords().keys().cloned()).collect();
    let atoms: Vec<Atom> = atoms.into_iter().collect();
    let rows = exps.iter().map(|e| atoms.iter().map(|a| e.coord(a)).collect()).collect();
    (atoms, rows)
}

/// Dimension of the ℚ-span of a set of exponents.
pub fn rank(exps: &[Exponent]) -> usize {
    let (atoms, rows) = flatten(exps);
    if atoms.is_empty() {
        return 0;
    }
    linalg::rank(&rows)
}

pub fn support(f: &EPoly) -> Result<Support> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let generators = f.exponents();
    let dimension = rank(&generators);
    Ok(Support { generators, dimension })
}

/// Whether every exponent of `inner` lies in the ℚ-span of `outer`.
pub fn supports_contained(inner: &[Exponent], outer: &[Exponent]) -> bool {
    let base = rank(outer);
    let mut all = outer.to_vec();
    for e in inner {
        all.push(e.clone());
        if rank(&all) != base {
            return false;
        }
        all.pop();
    }
    true
}

/// Canonical primitive generator of the line `ℚ·α`: integral coprime
/// coordinates with a positive coefficient on the greatest atom.
pub fn line_key(alpha: &Exponent) -> Exponent {
    if alpha.is_zero() {
        return Exponent::zero();
    }
    let den = alpha.coords().values().fold(BigInt::one(), |d, q| d.lcm(q.denom()));
    let nums: Vec<BigInt> = alpha.coords().values().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = nums.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
    let mut scale = BigRational::new(den, g);
    if alpha.leading().is_some_and(|(_, q)| q.is_negative()) {
        scale = -scale;
    }
    alpha.scale(&scale)
}

impl EPoly {
    pub fn support(&self) -> Result<Support> {
        support(self)
    }

    pub fn is_simple(&self) -> Result<bool> {
        Ok(support(self)?.dimension == 1)
    }

    /// Line key of a simple polynomial: any nonzero difference of exponents
    /// spans the support.
    pub fn support_line(&self) -> Option<Exponent> {
        let exps = self.exponents();
        if rank(&exps) != 1 {
            return None;
        }
        exps.iter().find(|e| !e.is_zero()).map(line_key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNumber;

    fn x(i: usize, order: u32) -> EPoly {
        EPoly::var(i, 2, order)
    }

    fn k(n: i64, order: u32) -> CycloNumber {
        CycloNumber::from_int(n, order)
    }

    #[test]
    fn dimensions() {
        let one = EPoly::one(2, 1);
        let f = x(0, 1).scale(&k(2, 1)).exp().sub(&one).unwrap();
        assert_eq!(f.support().unwrap().dimension, 1);
        assert!(f.is_simple().unwrap());

        let e = |a: i64, b: i64| x(0, 1).scale(&k(a, 1)).add(&x(1, 1).scale(&k(b, 1))).unwrap().exp();
        let g = e(4, 0).add(&e(2, 0).scale(&k(2, 1))).unwrap().add(&one).unwrap().sub(&e(2, 2)).unwrap();
        assert_eq!(g.support().unwrap().dimension, 2);

        let h = e(1, 0).add(&e(0, 1)).unwrap().add(&one).unwrap();
        assert!(!h.is_simple().unwrap());
        assert!(e(2, -2).sub(&one).unwrap().is_simple().unwrap());
        assert!(EPoly::zero(2, 1).support().is_err());
    }

    #[test]
    fn irrational_multiples_are_independent() {
        let z = CycloNumber::zeta_pow(8, 1) + CycloNumber::zeta_pow(8, 7);
        let f = x(0, 8).exp().add(&x(0, 8).scale(&z).exp()).unwrap();
        assert_eq!(f.support().unwrap().dimension, 2);
    }

    #[test]
    fn line_keys_are_primitive() {
        let a = x(0, 1).scale(&k(-4, 1)).add(&x(1, 1).scale(&k(6, 1))).unwrap().to_exponent();
        let b = x(0, 1).scale(&k(2, 1)).sub(&x(1, 1).scale(&k(3, 1))).unwrap().to_exponent();
        assert_eq!(line_key(&a), b);
        assert_eq!(line_key(&b.scale(&BigRational::new(1.into(), 7.into()))), b);
    }
}
