//! Exact coefficients, polynomials, derivations and Hasse-Schmidt derivations.

pub mod coeff;
pub mod derivation;
pub mod hasse;
pub mod monomial;
pub mod poly;
pub mod syntax;

pub use coeff::{Coefficient, Field};
pub use derivation::Derivation;
pub use hasse::{hs_apply, hs_from_derivation, HasseSchmidtDerivation, HsAxiomReport};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{poly_arith, ArithOp, Poly, Ring, RingRef};
pub use syntax::{format_fraction, parse_fraction, parse_poly, ParseError};
