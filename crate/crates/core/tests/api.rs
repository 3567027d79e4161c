//! Public API round trips and worked examples.

use expoly::expr::format_epoly;
use expoly::qpoly;
use expoly::{
    factor_epoly, factor_univariate_cyclo, factor_univariate_rational, from_associate, lattice_basis, parse_epoly,
    support_basis, to_associate, verify_factorization, BasisOrder, Config, CycloNumber, EPoly,
};
use proptest::prelude::*;

#[test]
fn univariate_cyclotomic_splitting() {
    // x^4 - 1 = (x - 1)(x + 1)(x^2 + 1) over Q
    let q = factor_univariate_rational(&qpoly::from_ints(&[-1, 0, 0, 0, 1])).unwrap();
    assert_eq!(q.factors.len(), 3);
    // x^2 + 1 splits over Q(ζ_4)
    let c: Vec<CycloNumber> = [1, 0, 1].iter().map(|&k| CycloNumber::from_int(k, 4)).collect();
    let k = factor_univariate_cyclo(&c, 4).unwrap();
    assert_eq!(k.factors.len(), 2);
    assert!(k.factors.iter().all(|(f, m)| f.len() == 2 && *m == 1));
}

#[test]
fn printed_factors_parse_back() {
    let src = "(E(x) + E(y) + 2)^2 * (E(2*x) - 1) * (x + 1)";
    let (f, vars) = parse_epoly(src).unwrap();
    let fac = factor_epoly(&f, &Config::default()).unwrap();
    assert!(verify_factorization(&f, &fac));
    assert_eq!(fac.nonsimple.len(), 1);
    assert_eq!(fac.nonsimple[0].1, 2);
    for (g, _) in &fac.nonsimple {
        let text = format_epoly(g, &vars);
        assert_eq!(&parse_epoly(&text).unwrap().0, g, "{text}");
    }
}

#[test]
fn both_bases_round_trip() {
    for src in ["E(4*x)+2*E(2*x)+1-E(2*x+2*y)", "E(1/2*x) + E(E(y)) - x", "E(x)+E((zeta(8)+zeta(8)^7)*x)"] {
        let (f, _) = parse_epoly(src).unwrap();
        for order in [BasisOrder::Forward, BasisOrder::Reversed] {
            for basis in [support_basis(&f, order).unwrap(), lattice_basis(&f, order).unwrap()] {
                let (q, unit) = to_associate(&f, &basis).unwrap();
                let ones = vec![1; basis.nu.len()];
                let back = from_associate(&q, &basis, &ones, &ones).unwrap();
                assert_eq!(back.mul_unit(&unit), f, "{src}");
            }
        }
    }
}

#[test]
fn zero_is_rejected() {
    let (z, _) = parse_epoly("E(x) - E(x)").unwrap();
    assert!(factor_epoly(&z, &Config::default()).is_err());
}

/// Two to four terms `c·E(a x + b y)` with small integers.
fn small_epoly() -> impl Strategy<Value = EPoly> {
    proptest::collection::vec(((-2i64..=2, -2i64..=2), -3i64..=3), 2..5).prop_filter_map("not a unit", |terms| {
        let mut f = EPoly::zero(2, 1);
        for ((a, b), c) in terms {
            let k = |n| CycloNumber::from_int(n, 1);
            let alpha = EPoly::var(0, 2, 1).scale(&k(a)).add(&EPoly::var(1, 2, 1).scale(&k(b))).unwrap();
            f = f.add(&alpha.exp().scale(&k(c))).unwrap();
        }
        (f.len() >= 2).then_some(f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associate_round_trip(f in small_epoly()) {
        let basis = lattice_basis(&f, BasisOrder::Forward).unwrap();
        let (q, unit) = to_associate(&f, &basis).unwrap();
        let ones = vec![1; basis.nu.len()];
        prop_assert_eq!(from_associate(&q, &basis, &ones, &ones).unwrap().mul_unit(&unit), f);
    }

    #[test]
    fn factorizations_multiply_back(f in small_epoly()) {
        match factor_epoly(&f, &Config::default()) {
            Ok(fac) => prop_assert!(verify_factorization(&f, &fac)),
            Err(e) => prop_assert!(e.is_resource(), "{e}"),
        }
    }
}
