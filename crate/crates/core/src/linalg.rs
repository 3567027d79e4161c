//! Small exact linear algebra: rational elimination, integer Hermite
//! normal form and fraction-free determinants of polynomial matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::qpoly::{self, QPoly};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in &mut m {
        r.resize(ncols, BigRational::zero());
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in &mut m[row] {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..ncols {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    rref(rows).1.len()
}

/// Solves `Σ c_i basis_i = v`; `None` if `v` is outside the span.
/// The basis rows must be linearly independent.
pub fn express_in_basis(basis: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let ncols = basis.iter().map(|r| r.len()).max().unwrap_or(0).max(v.len());
    // Columns of the system are the basis vectors; augment with v.
    let sys: Vec<Vec<BigRational>> = (0..ncols)
        .map(|j| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| b.get(j).cloned().unwrap_or_else(BigRational::zero))
                .collect();
            row.push(v.get(j).cloned().unwrap_or_else(BigRational::zero));
            row
        })
        .collect();
    if sys.is_empty() {
        return Some(vec![BigRational::zero(); k]);
    }
    let (red, pivots) = rref(&sys);
    if pivots.contains(&k) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (r, &p) in red.iter().zip(&pivots) {
        sol[p] = r[k].clone();
    }
    Some(sol)
}

pub fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        let piv = m[col][col].clone();
        d *= &piv;
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &piv;
            for j in col..n {
                let t = &f * &m[col][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

/// Determinant of a square matrix over ℚ[z] by Bareiss elimination.
pub fn det_poly(mut m: Vec<Vec<QPoly>>) -> QPoly {
    let n = m.len();
    if n == 0 {
        return vec![BigRational::one()];
    }
    let mut sign = false;
    let mut prev: QPoly = vec![BigRational::one()];
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_empty() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_empty()) else {
                return Vec::new();
            };
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = qpoly::sub(
                    &qpoly::mul(&m[k][k], &m[i][j]),
                    &qpoly::mul(&m[i][k], &m[k][j]),
                );
                let (q, r) = qpoly::divrem(&num, &prev);
                debug_assert!(r.is_empty());
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        qpoly::neg(&d)
    } else {
        d
    }
}

/// Row-style Hermite normal form of an integer matrix: nonzero rows only,
/// pivots positive and strictly increasing in column, entries above a
/// pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in &mut m {
        r.resize(ncols, BigInt::zero());
    }
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        // Euclid on the column below `row` until one nonzero entry remains.
        loop {
            let nz: Vec<usize> = (row..m.len()).filter(|&i| !m[i][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by(|&&a, &&b| m[a][col].abs().cmp(&m[b][col].abs()))
                .unwrap();
            m.swap(row, p);
            if m[row][col].is_negative() {
                for x in &mut m[row] {
                    *x = -&*x;
                }
            }
            let mut done = true;
            for i in row + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[row][col]);
                for j in col..ncols {
                    let t = &q * &m[row][j];
                    m[i][j] -= t;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if row < m.len() && !m[row][col].is_zero() {
            for i in 0..row {
                let q = m[i][col].div_floor(&m[row][col]);
                if !q.is_zero() {
                    for j in col..ncols {
                        let t = &q * &m[row][j];
                        m[i][j] -= t;
                    }
                }
            }
            row += 1;
        }
    }
    m.truncate(row);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_and_det() {
        let rows = vec![vec![q(4), q(0)], vec![q(2), q(0)], vec![q(2), q(2)]];
        assert_eq!(rank(&rows), 2);
        assert_eq!(det(vec![vec![q(2), q(1)], vec![q(1), q(3)]]), q(5));
    }

    #[test]
    fn hnf_of_exponent_rows() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let h = hermite_normal_form(&[b(&[4, 0]), b(&[2, 0]), b(&[0, 0]), b(&[2, 2])]);
        assert_eq!(h, vec![b(&[2, 0]), b(&[0, 2])]);
        let h = hermite_normal_form(&[b(&[3, 5]), b(&[1, 1])]);
        assert_eq!(h, vec![b(&[1, 1]), b(&[0, 2])]);
    }

    #[test]
    fn express() {
        let basis = vec![vec![q(2), q(0)], vec![q(1), q(1)]];
        let v = vec![q(3), q(1)];
        assert_eq!(express_in_basis(&basis, &v), Some(vec![q(1), q(1)]));
        assert_eq!(express_in_basis(&basis[..1], &v), None);
    }

    #[test]
    fn poly_det() {
        // [[z, 1], [1, z]] has determinant z^2 - 1.
        let z = qpoly::from_ints(&[0, 1]);
        let one = qpoly::from_ints(&[1]);
        let d = det_poly(vec![vec![z.clone(), one.clone()], vec![one, z]]);
        assert_eq!(d, qpoly::from_ints(&[-1, 0, 1]));
    }
}
