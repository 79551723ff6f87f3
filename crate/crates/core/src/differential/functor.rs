//! `φ⁻¹(p#) = (φ⁻¹ p)#` for a differential morphism `φ: A -> B`.

use std::fmt;

use crate::algebra::derivation::Derivation;
use crate::algebra::poly::Poly;
use crate::differential::trajectory::{trajectory, TrajectoryResult};
use crate::error::{Error, Result};
use crate::groebner::Ideal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctorialityVerdict {
    Holds,
    Fails,
    /// One of the trajectories stopped at `BoundedApprox`.
    Inconclusive,
}

impl fmt::Display for FunctorialityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorialityVerdict::Holds => write!(f, "true"),
            FunctorialityVerdict::Fails => write!(f, "false"),
            FunctorialityVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FunctorialityReport {
    pub verdict: FunctorialityVerdict,
    /// `φ⁻¹(p#)`.
    pub pulled_trajectory: Ideal,
    /// `(φ⁻¹ p)#`.
    pub trajectory_of_pullback: Ideal,
    pub target: TrajectoryResult,
    pub source: TrajectoryResult,
}

/// Checks `φ ∘ ∂_A = ∂_B ∘ φ` on the variables of `A`.
pub fn check_differential_morphism(phi: &[Poly], d_a: &Derivation, d_b: &Derivation) -> Result<()> {
    let a = d_a.ring();
    let b = d_b.ring();
    if phi.len() != a.nvars() {
        return Err(Error::SignatureMismatch(format!("map gives {} images for {}", phi.len(), a)));
    }
    for (i, img) in phi.iter().enumerate() {
        if img.ring() != b {
            return Err(Error::SignatureMismatch(format!("image of {} is not in {}", a.vars()[i], b)));
        }
        let left = d_a.image(i).substitute(b, phi)?;
        let right = d_b.apply(img)?;
        if left != right {
            return Err(Error::Invalid(format!(
                "map is not differential at {}: phi(d {}) = {}, d(phi {}) = {}",
                a.vars()[i],
                a.vars()[i],
                left,
                a.vars()[i],
                right
            )));
        }
    }
    Ok(())
}

/// `phi[i]` is the image in `B` of the `i`-th variable of `A`; `p` lives in `B`.
pub fn functoriality_check(
    phi: &[Poly],
    p: &Ideal,
    d_a: &Derivation,
    d_b: &Derivation,
    degree_bound: Option<u32>,
    max_rounds: Option<usize>,
) -> Result<FunctorialityReport> {
    check_differential_morphism(phi, d_a, d_b)?;
    let target = trajectory(p, d_b, degree_bound, max_rounds)?;
    let pulled_trajectory = target.candidate.preimage(d_a.ring(), phi)?.canonical();
    let pulled = p.preimage(d_a.ring(), phi)?;
    let source = trajectory(&pulled, d_a, degree_bound, max_rounds)?;
    let trajectory_of_pullback = source.candidate.clone();
    let verdict = if !(target.is_exact() && source.is_exact()) {
        FunctorialityVerdict::Inconclusive
    } else if pulled_trajectory.same_as(&trajectory_of_pullback) {
        FunctorialityVerdict::Holds
    } else {
        FunctorialityVerdict::Fails
    };
    Ok(FunctorialityReport { verdict, pulled_trajectory, trajectory_of_pullback, target, source })
}
