//! Rank of exponent families by plain Gaussian elimination, for checking
//! support containment without the kernel's linear algebra.

use std::collections::BTreeSet;

use expoly::{EPoly, Exponent};
use num_traits::Zero;

use crate::mpoly::Q;

pub fn rank(exps: &[Exponent]) -> usize {
    let atoms: BTreeSet<_> = exps.iter().flat_map(|e| e.coords().keys().cloned()).collect();
    let atoms: Vec<_> = atoms.into_iter().collect();
    let mut rows: Vec<Vec<Q>> = exps.iter().map(|e| atoms.iter().map(|a| e.coord(a)).collect()).collect();
    let mut r = 0;
    for col in 0..atoms.len() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// Every exponent of `inner` lies in the ℚ-span of the exponents of `outer`.
pub fn support_within(inner: &EPoly, outer: &EPoly) -> bool {
    let o = outer.exponents();
    let mut both = o.clone();
    both.extend(inner.exponents());
    rank(&both) == rank(&o)
}
