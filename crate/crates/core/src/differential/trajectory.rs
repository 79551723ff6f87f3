//! The trajectory `p#`: the greatest differential (or Hasse-Schmidt
//! invariant) ideal contained in `p`.
//!
//! Descent: `J_0 = p`, and `J_{k+1}` is generated by the `f` in the
//! degree-`<= D` slice of `J_k` whose images under the operator(s) lie in
//! `J_k`. The slice is spanned by `m * g` for `g` in the reduced basis of
//! `J_k` (degrevlex is degree compatible, so this is the whole slice), and
//! the membership condition is linear in the coefficients of `f`, so each
//! round is an exact kernel computation. The chain is descending and lives
//! in a finite-dimensional space, so it stabilizes.

use std::fmt;

use crate::algebra::derivation::Derivation;
use crate::algebra::hasse::HasseSchmidtDerivation;
use crate::algebra::monomial::Monomial;
use crate::algebra::poly::{Poly, RingRef};
use crate::differential::closure::{check_ring, is_differential_ideal};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::{nullspace, span_basis, MonomialBasis};

pub const DEFAULT_ROUNDS: usize = 32;

/// `max(3, max generator degree + 2)`.
pub fn default_degree_bound(p: &Ideal) -> u32 {
    (p.max_degree() + 2).max(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryStatus {
    /// Fixed point reached and the candidate is differential; it equals `p#`
    /// provided `p#` is generated in degree `<= degree_bound`.
    Exact,
    /// Rounds exhausted before a fixed point.
    BoundedApprox,
}

impl fmt::Display for TrajectoryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrajectoryStatus::Exact => write!(f, "Exact"),
            TrajectoryStatus::BoundedApprox => write!(f, "BoundedApprox"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrajectoryResult {
    pub candidate: Ideal,
    pub status: TrajectoryStatus,
    pub degree_bound: u32,
    pub rounds: usize,
    /// Truncation order of the Hasse-Schmidt family, when one was used.
    pub hs_order: Option<usize>,
}

impl TrajectoryResult {
    pub fn is_exact(&self) -> bool {
        self.status == TrajectoryStatus::Exact
    }

    /// Status tag as printed by the command layer.
    pub fn certificate(&self) -> String {
        let mut s = format!("{}, deg<={}, rounds={}", self.status, self.degree_bound, self.rounds);
        if let Some(m) = self.hs_order {
            s.push_str(&format!(", hs-order={m}"));
        }
        s
    }

    /// The hypothesis under which an `Exact` verdict identifies `p#`.
    pub fn hypothesis(&self) -> String {
        format!("assumes the trajectory ideal is generated in degree <= {}", self.degree_bound)
    }
}

/// All monomials of degree `<= deg` in `n` variables.
fn monomials_up_to(n: usize, deg: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, deg, &mut vec![0; n], &mut out);
    out
}

/// Echelon basis of the degree-`<= bound` part of `ideal`.
pub fn degree_slice(ideal: &Ideal, bound: u32) -> Vec<Poly> {
    let ring = ideal.ring();
    let one = ring.field().one();
    let mut span = Vec::new();
    for g in ideal.groebner_basis() {
        let Some(dg) = g.degree() else { continue };
        if dg > bound {
            continue;
        }
        for m in monomials_up_to(ring.nvars(), bound - dg) {
            span.push(g.mul_term(&m, &one));
        }
    }
    span_basis(ring, &span)
}

/// One descent step: the subspace of `slice` whose operator images all lie
/// in `ideal`, returned as an echelon basis.
fn descend<F>(ring: &RingRef, ideal: &Ideal, slice: &[Poly], ops: &F) -> Result<Vec<Poly>>
where
    F: Fn(&Poly) -> Result<Vec<Poly>>,
{
    if slice.is_empty() {
        return Ok(Vec::new());
    }
    // column i holds the reduced images of slice[i], one block per operator
    let mut images: Vec<Vec<Poly>> = Vec::with_capacity(slice.len());
    for v in slice {
        images.push(ops(v)?.iter().map(|w| ideal.normal_form(w)).collect());
    }
    let nops = images[0].len();
    let mut rows = Vec::new();
    for k in 0..nops {
        let block: Vec<Poly> = images.iter().map(|im| im[k].clone()).collect();
        let basis = MonomialBasis::spanning(ring, &block);
        let cols: Vec<_> = block.iter().map(|p| basis.coords(p).unwrap()).collect();
        for r in 0..basis.len() {
            rows.push(cols.iter().map(|c| c[r].clone()).collect::<Vec<_>>());
        }
    }
    let kernel = nullspace(&rows, slice.len(), ring.field());
    let combos: Vec<Poly> = kernel
        .iter()
        .map(|c| {
            slice
                .iter()
                .zip(c)
                .filter(|(_, a)| !a.is_zero())
                .fold(Poly::zero(ring), |acc, (v, a)| acc + v.scale(a))
        })
        .collect();
    Ok(span_basis(ring, &combos))
}

fn run_descent<F, L>(p: &Ideal, degree_bound: u32, max_rounds: usize, ops: F, is_leaf: L, hs_order: Option<usize>) -> Result<TrajectoryResult>
where
    F: Fn(&Poly) -> Result<Vec<Poly>>,
    L: Fn(&Ideal) -> Result<bool>,
{
    if p.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let ring = p.ring();
    if is_leaf(p)? {
        return Ok(TrajectoryResult {
            candidate: p.canonical(),
            status: TrajectoryStatus::Exact,
            degree_bound,
            rounds: 0,
            hs_order,
        });
    }
    let mut current = p.canonical();
    for round in 1..=max_rounds {
        let slice = degree_slice(&current, degree_bound);
        let kept = descend(ring, &current, &slice, &ops)?;
        let next = Ideal::new(ring, kept)?.canonical();
        if next.contains_ideal(&current) {
            // J_{k+1} = J_k; this round changed nothing
            let status = if is_leaf(&next)? { TrajectoryStatus::Exact } else { TrajectoryStatus::BoundedApprox };
            return Ok(TrajectoryResult { candidate: next, status, degree_bound, rounds: round - 1, hs_order });
        }
        current = next;
    }
    Ok(TrajectoryResult {
        candidate: current,
        status: TrajectoryStatus::BoundedApprox,
        degree_bound,
        rounds: max_rounds,
        hs_order,
    })
}

/// `p#` for an ordinary derivation. Primality of `p` is not used by the
/// algorithm; it only matters for reading the candidate as a leaf.
pub fn trajectory(p: &Ideal, d: &Derivation, degree_bound: Option<u32>, max_rounds: Option<usize>) -> Result<TrajectoryResult> {
    check_ring(p, d)?;
    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(p));
    run_descent(
        p,
        bound,
        max_rounds.unwrap_or(DEFAULT_ROUNDS),
        |f| Ok(vec![d.apply(f)?]),
        |j| is_differential_ideal(j, d),
        None,
    )
}

/// `D`-invariant ideal in `p` for a truncated Hasse-Schmidt family: the
/// condition is `D_i(f) ∈ J_k` for `1 <= i <= M`.
pub fn hs_trajectory(
    p: &Ideal,
    h: &HasseSchmidtDerivation,
    degree_bound: Option<u32>,
    max_rounds: Option<usize>,
) -> Result<TrajectoryResult> {
    if p.ring() != h.ring() {
        return Err(Error::SignatureMismatch(format!("ideal in {}, family on {}", p.ring(), h.ring())));
    }
    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(p));
    let m = h.order();
    run_descent(
        p,
        bound,
        max_rounds.unwrap_or(DEFAULT_ROUNDS),
        |f| Ok(h.apply_upto(f, m)?.split_off(1)),
        |j| is_hs_invariant(j, h),
        Some(m),
    )
}

/// `D_i(g) ∈ I` for every generator `g` and `1 <= i <= M`.
pub fn is_hs_invariant(ideal: &Ideal, h: &HasseSchmidtDerivation) -> Result<bool> {
    for g in ideal.generators() {
        for img in h.apply_upto(g, h.order())?.iter().skip(1) {
            if !ideal.contains(img) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
