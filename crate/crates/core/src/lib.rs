//! Factorization of exponential polynomials over cyclotomic fields.
//!
//! An exponential polynomial is a finite sum `Σ a_h · E(α_h)` where the
//! coefficients `a_h` are polynomials in `x̄` over `ℚ(ζ_N)` and the exponents
//! may themselves contain exponentials. [`factor_epoly`] splits such a
//! polynomial into a unit, classical factors, one block per support line
//! for the simple factors, and irreducible nonsimple factors.
//!
//! ```
//! use expoly::{factor_epoly, parse_epoly, Config};
//!
//! let (f, _) = parse_epoly("E(4*x) + 2*E(2*x) + 1 - E(2*x + 2*y)").unwrap();
//! let fac = factor_epoly(&f, &Config::default()).unwrap();
//! assert_eq!(fac.nonsimple.len(), 2);
//! assert!(expoly::verify_factorization(&f, &fac));
//! ```

pub mod artifact;
pub mod associate;
pub mod cyclo;
pub mod epoly;
pub mod error;
pub mod expr;
pub mod factor;
pub mod linalg;
pub mod poly;
pub mod qpoly;
pub mod ritt;

pub use associate::{from_associate, lattice_basis, support_basis, to_associate, BasisOrder, SupportBasis};
pub use cyclo::{primitive_root, CycloNumber};
pub use epoly::{support, supports_contained, EPoly, Exponent, Support, Unit};
pub use error::{Error, Result};
pub use factor::{factor_multivariate, factor_univariate_cyclo, factor_univariate_rational, ClassicalFactorization};
pub use poly::{CoeffPoly, LaurentPoly};
pub use ritt::{
    factor_epoly, nonprimary_adjust, orbit_check, power_reducibility_search, verify_factorization, Config,
    Factorization, PowerSearchRecord, PowerSearchResult, SimpleBlock,
};

/// Parses and elaborates with inferred variables; returns the polynomial
/// and the sorted variable names.
pub fn parse_epoly(src: &str) -> Result<(EPoly, Vec<String>)> {
    expr::elaborate(&expr::parse(src)?, &expr::ElabOptions::default())
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    mod expressions {}
    #[doc = include_str!("../../../book/src/associate.md")]
    mod associate {}
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/factoring.md")]
    mod factoring {}
}
