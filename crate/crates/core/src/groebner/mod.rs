//! Monomial orders, Buchberger's algorithm and ideal operations.

pub mod buchberger;
pub mod ideal;

pub use crate::algebra::monomial::MonomialOrder;
pub use buchberger::is_groebner_basis;
pub use ideal::{
    elimination_ideal, groebner_basis, ideal_intersect, ideal_membership, normal_form, radical_membership, saturation,
    Ideal,
};
