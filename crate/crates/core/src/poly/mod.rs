//! Coefficient polynomials over ℚ(ζ_N) and Laurent polynomials over them.

mod coeff;
mod laurent;

pub use coeff::{mono_div, mono_divides, mono_mul, CoeffPoly, Mono};
pub use laurent::{ExpVec, LaurentPoly, OneVariableWitness};
