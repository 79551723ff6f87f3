//! Exact computations with vector fields on affine and projective schemes:
//! derivations and Hasse-Schmidt derivations on polynomial rings, Groebner
//! bases, differential ideals and trajectories, invariant open sets, and
//! constant sections of fractions.

pub mod algebra;
pub mod constants;
pub mod differential;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod schemes;

pub use error::{Error, Result};
