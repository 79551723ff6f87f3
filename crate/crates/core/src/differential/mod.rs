//! Differential ideals, closures and trajectories.

pub mod closure;
pub mod functor;
pub mod trajectory;

pub use closure::{diff_closure, is_differential_ideal, DiffIdealClosureResult};
pub use functor::{check_differential_morphism, functoriality_check, FunctorialityReport, FunctorialityVerdict};
pub use trajectory::{
    default_degree_bound, degree_slice, hs_trajectory, is_hs_invariant, trajectory, TrajectoryResult, TrajectoryStatus,
    DEFAULT_ROUNDS,
};
