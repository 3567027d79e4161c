//! The passage between an exponential polynomial and its associate Laurent
//! polynomial `Q(y₁,…,y_p)` with `y_j = t^{ν_j}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::cyclo::lcm;
use crate::epoly::{flatten, rank, Atom, EPoly, Exponent, Unit};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{ExpVec, LaurentPoly};

/// Scan direction used when a basis is picked from the exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BasisOrder {
    #[default]
    Forward,
    Reversed,
}

/// A ℚ-basis `ν` of the support with every term exponent an integer
/// combination: `exponents[h] = Σ_j matrix[h][j]·ν_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportBasis {
    pub nu: Vec<Exponent>,
    pub exponents: Vec<Exponent>,
    pub matrix: Vec<ExpVec>,
    /// Cyclotomic order at which the exponents are written.
    pub order: u32,
}

impl SupportBasis {
    pub fn dimension(&self) -> usize {
        self.nu.len()
    }

    fn row_of(&self, alpha: &Exponent) -> Result<&ExpVec> {
        self.exponents
            .iter()
            .position(|e| e == alpha)
            .map(|h| &self.matrix[h])
            .ok_or_else(|| Error::InvalidArgument("exponent not covered by the basis".into()))
    }

    /// `Σ e_j·ν_j`.
    pub fn combine(&self, e: &[i64]) -> Exponent {
        let mut r = Exponent::zero();
        for (k, nu) in e.iter().zip(&self.nu) {
            r = r.add(&nu.scale(&BigRational::from_integer((*k).into())));
        }
        r
    }
}

fn check_input(f: &EPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.as_unit().is_some() {
        return Err(Error::InvalidArgument("a unit has no associate polynomial".into()));
    }
    Ok(())
}

fn flat_rows(exps: &[Exponent], order: BasisOrder) -> (Vec<Atom>, Vec<Vec<BigRational>>) {
    let (mut atoms, mut rows) = flatten(exps);
    // Forward puts the greatest atom in the first column.
    if order == BasisOrder::Forward {
        atoms.reverse();
        for r in &mut rows {
            r.reverse();
        }
    }
    (atoms, rows)
}

fn unflatten(atoms: &[Atom], row: &[BigRational]) -> Exponent {
    Exponent::from_coords(atoms.iter().cloned().zip(row.iter().cloned()))
}

fn integer_matrix(coords: Vec<Vec<BigRational>>) -> Result<Vec<ExpVec>> {
    coords
        .into_iter()
        .map(|r| {
            r.iter()
                .map(|q| {
                    if !q.is_integer() {
                        return Err(Error::Internal("non-integral basis coordinate".into()));
                    }
                    q.to_integer().to_i64().ok_or_else(|| Error::Resource("exponent coordinate overflow".into()))
                })
                .collect()
        })
        .collect()
}

/// Basis picked from the exponents themselves: scan them in group order
/// (descending for `Forward`), keep those that raise the rank, then divide
/// by the lcm `M` of the denominators of all coordinates.
pub fn support_basis(f: &EPoly, order: BasisOrder) -> Result<SupportBasis> {
    check_input(f)?;
    let exponents = f.exponents();
    let mut scan = exponents.clone();
    if order == BasisOrder::Forward {
        scan.reverse();
    }
    let (_, rows) = flat_rows(&scan, order);
    let mut mu_rows: Vec<Vec<BigRational>> = Vec::new();
    let mut mu = Vec::new();
    for (e, r) in scan.iter().zip(&rows) {
        mu_rows.push(r.clone());
        if linalg::rank(&mu_rows) == mu_rows.len() {
            mu.push(e.clone());
        } else {
            mu_rows.pop();
        }
    }
    let (_, all_rows) = flat_rows(&exponents, order);
    let coords: Vec<Vec<BigRational>> = all_rows
        .iter()
        .map(|r| linalg::express_in_basis(&mu_rows, r).expect("exponent lies in its own span"))
        .collect();
    let m = coords.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mq = BigRational::from_integer(m);
    let nu = mu.iter().map(|e| e.scale(&mq.recip())).collect();
    let matrix = integer_matrix(coords.into_iter().map(|r| r.into_iter().map(|q| q * &mq).collect()).collect())?;
    Ok(SupportBasis { nu, exponents, matrix, order: f.order() })
}

/// Basis of the lattice generated by the exponents: the Hermite normal form
/// of their coordinate rows. Columns are ordered by descending atom for
/// `Forward` and ascending for `Reversed`.
pub fn lattice_basis(f: &EPoly, order: BasisOrder) -> Result<SupportBasis> {
    check_input(f)?;
    let exponents = f.exponents();
    let (atoms, rows) = flat_rows(&exponents, order);
    let den = rows.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let dq = BigRational::from_integer(den);
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|q| (q * &dq).to_integer()).collect()).collect();
    let hnf = linalg::hermite_normal_form(&int_rows);
    let nu_rows: Vec<Vec<BigRational>> =
        hnf.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone()) / &dq).collect()).collect();
    let coords: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| linalg::express_in_basis(&nu_rows, r).expect("exponent lies in its lattice"))
        .collect();
    let nu = nu_rows.iter().map(|r| unflatten(&atoms, r)).collect();
    Ok(SupportBasis { nu, exponents, matrix: integer_matrix(coords)?, order: f.order() })
}

/// Replaces each `t^{α_h}` by `y^{row_h}` and strips the monomial content,
/// which is returned as the unit `t^{Σ m_j ν_j}`.
pub fn to_associate(f: &EPoly, basis: &SupportBasis) -> Result<(LaurentPoly, Unit)> {
    if f.order() != basis.order {
        return Err(Error::OrderMismatch { from: basis.order, to: f.order() });
    }
    let p = basis.dimension();
    let mut q = LaurentPoly::zero(p, f.nvars());
    for (alpha, a) in f.terms() {
        q.add_term(basis.row_of(alpha)?.clone(), a);
    }
    let (m, qpos) = q.laurent_normalize()?;
    Ok((qpos, Unit { scalar: crate::CycloNumber::one(f.order()), exponent: basis.combine(&m) }))
}

/// Maps `y_i ↦ t^{(num_i/den_i)·ν_i}`. The exponent group is divisible, so
/// fractional multiples of `ν` are ordinary exponents.
pub fn from_associate(q: &LaurentPoly, basis: &SupportBasis, num: &[i64], den: &[i64]) -> Result<EPoly> {
    let p = basis.dimension();
    if q.nvars() != p || num.len() != p || den.len() != p {
        return Err(Error::InvalidArgument(format!(
            "expected {p} variables and scalings, got {}, {} and {}",
            q.nvars(),
            num.len(),
            den.len()
        )));
    }
    if num.iter().chain(den).any(|&k| k <= 0) {
        return Err(Error::InvalidArgument("scalings must be positive".into()));
    }
    let order = lcm(basis.order, q.order());
    let nu: Vec<Exponent> = basis
        .nu
        .iter()
        .zip(num.iter().zip(den))
        .map(|(v, (&a, &b))| v.embed(basis.order, order).scale(&BigRational::new(a.into(), b.into())))
        .collect();
    let mut f = EPoly::zero(q.nx(), order);
    for (e, c) in q.terms() {
        let mut alpha = Exponent::zero();
        for (k, v) in e.iter().zip(&nu) {
            if *k != 0 {
                alpha = alpha.add(&v.scale(&BigRational::from_integer((*k).into())));
            }
        }
        f = f.add(&EPoly::term(alpha, c.embed(order), order))?;
    }
    Ok(f)
}

impl SupportBasis {
    /// The matrix row of each exponent is integral and reproduces it.
    pub fn is_valid(&self) -> bool {
        let independent = rank(&self.nu) == self.nu.len();
        independent
            && self.exponents.iter().zip(&self.matrix).all(|(alpha, row)| &self.combine(row) == alpha)
            && self.nu.iter().all(|v| !v.is_zero())
            && self.matrix.iter().all(|r| r.len() == self.nu.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNumber;
    use crate::poly::CoeffPoly;

    fn e(a: i64, b: i64) -> EPoly {
        let x = EPoly::var(0, 2, 1).scale(&CycloNumber::from_int(a, 1));
        let y = EPoly::var(1, 2, 1).scale(&CycloNumber::from_int(b, 1));
        x.add(&y).unwrap().exp()
    }

    fn k(n: i64) -> EPoly {
        EPoly::constant(&CycloNumber::from_int(n, 1), 2, 1)
    }

    fn running_example() -> EPoly {
        e(4, 0).add(&e(2, 0).mul(&k(2)).unwrap()).unwrap().add(&k(1)).unwrap().sub(&e(2, 2)).unwrap()
    }

    fn lp(terms: &[(&[i64], i64)]) -> LaurentPoly {
        let q = LaurentPoly::from_int_terms(terms[0].0.len(), terms);
        LaurentPoly::from_terms(
            q.nvars(),
            2,
            q.terms().iter().map(|(e, c)| (e.clone(), CoeffPoly::constant(c.as_constant().unwrap(), 2))),
        )
    }

    #[test]
    fn picked_basis_rescales_by_denominators() {
        let f = running_example();
        let b = support_basis(&f, BasisOrder::Forward).unwrap();
        assert_eq!(b.nu, vec![e(2, 0).leading().unwrap().0.clone(), e(1, 1).leading().unwrap().0.clone()]);
        assert!(b.is_valid());
        let (q, u) = to_associate(&f, &b).unwrap();
        assert_eq!(q, lp(&[(&[2, 0], 1), (&[1, 0], 2), (&[0, 0], 1), (&[0, 2], -1)]));
        assert!(u.exponent.is_zero());

        let simple = e(2, 0).sub(&k(1)).unwrap();
        let b = support_basis(&simple, BasisOrder::Forward).unwrap();
        assert_eq!(b.matrix, vec![vec![0], vec![1]]);
    }

    #[test]
    fn lattice_basis_orders() {
        let f = running_example();
        let fwd = lattice_basis(&f, BasisOrder::Forward).unwrap();
        assert_eq!(fwd.nu, vec![e(2, 0).leading().unwrap().0.clone(), e(0, 2).leading().unwrap().0.clone()]);
        let (q, _) = to_associate(&f, &fwd).unwrap();
        assert_eq!(q, lp(&[(&[2, 0], 1), (&[1, 0], 2), (&[0, 0], 1), (&[1, 1], -1)]));
        let rev = lattice_basis(&f, BasisOrder::Reversed).unwrap();
        assert_eq!(rev.nu, vec![e(0, 2).leading().unwrap().0.clone(), e(2, 0).leading().unwrap().0.clone()]);
        assert!(rev.is_valid());
    }

    #[test]
    fn round_trip_with_unit() {
        let f = e(-1, 1).add(&e(0, 1)).unwrap().add(&e(3, -2)).unwrap();
        for b in [support_basis(&f, BasisOrder::Forward).unwrap(), lattice_basis(&f, BasisOrder::Reversed).unwrap()] {
            let (q, u) = to_associate(&f, &b).unwrap();
            assert!(q.is_nonnegative());
            let back = from_associate(&q, &b, &vec![1; b.dimension()], &vec![1; b.dimension()]).unwrap();
            assert_eq!(back.mul_unit(&u), f);
        }
    }

    #[test]
    fn fractional_scaling() {
        let f = running_example();
        let b = support_basis(&f, BasisOrder::Forward).unwrap();
        let q = lp(&[(&[2, 0], 1), (&[1, 1], 1), (&[0, 0], 1)]);
        let g = from_associate(&q, &b, &[1, 1], &[2, 2]).unwrap();
        let half = |a: i64, c: i64| {
            let x = EPoly::var(0, 2, 1).scale(&CycloNumber::from_rational(BigRational::new(a.into(), 2.into()), 1));
            let y = EPoly::var(1, 2, 1).scale(&CycloNumber::from_rational(BigRational::new(c.into(), 2.into()), 1));
            x.add(&y).unwrap().exp()
        };
        assert_eq!(g, e(2, 0).add(&half(3, 1)).unwrap().add(&k(1)).unwrap());
        assert_eq!(from_associate(&q, &b, &[3, 3], &[3, 3]).unwrap(), from_associate(&q, &b, &[1, 1], &[1, 1]).unwrap());
        assert!(from_associate(&q, &b, &[1], &[1]).is_err());
    }

    #[test]
    fn units_are_rejected() {
        assert!(support_basis(&e(1, 0), BasisOrder::Forward).is_err());
        assert!(lattice_basis(&EPoly::zero(2, 1), BasisOrder::Forward).is_err());
    }
}
