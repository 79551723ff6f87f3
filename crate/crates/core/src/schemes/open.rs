//! Zariski opens `X ∖ V(I)`, the invariant hull `U^δ`, and the Carrà Ferro
//! topology laws. Opens are compared up to radical of the complement.

use std::fmt;

use crate::algebra::poly::{Poly, RingRef};
use crate::differential::closure::diff_closure;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::schemes::affine::AffineDiffScheme;

#[derive(Debug, Clone)]
pub struct OpenSet {
    complement: Ideal,
    basic: Option<Poly>,
}

impl OpenSet {
    /// `X ∖ V(I)`.
    pub fn complement_of(ideal: Ideal) -> OpenSet {
        let basic = match ideal.generators() {
            [g] => Some(g.clone()),
            _ => None,
        };
        OpenSet { complement: ideal, basic }
    }

    /// The basic open `D(f)`.
    pub fn basic(f: Poly) -> OpenSet {
        let ring = f.ring().clone();
        let ideal = Ideal::new(&ring, vec![f.clone()]).unwrap();
        OpenSet { complement: ideal, basic: Some(f) }
    }

    pub fn whole(ring: &RingRef) -> OpenSet {
        OpenSet::basic(Poly::one(ring))
    }

    pub fn empty(ring: &RingRef) -> OpenSet {
        OpenSet { complement: Ideal::zero(ring), basic: Some(Poly::zero(ring)) }
    }

    pub fn ring(&self) -> &RingRef {
        self.complement.ring()
    }

    pub fn complement_ideal(&self) -> &Ideal {
        &self.complement
    }

    /// `f` when the set was given as `D(f)`.
    pub fn basic_generator(&self) -> Option<&Poly> {
        self.basic.as_ref()
    }

    /// `U ∪ V = X ∖ (V(I) ∩ V(J)) = X ∖ V(I + J)`.
    pub fn union(&self, other: &OpenSet) -> Result<OpenSet> {
        Ok(OpenSet::complement_of(self.complement.sum(&other.complement)?))
    }

    /// `U ∩ V = X ∖ (V(I) ∪ V(J)) = X ∖ V(I J)`.
    pub fn intersection(&self, other: &OpenSet) -> Result<OpenSet> {
        Ok(OpenSet::complement_of(self.complement.product(&other.complement)?))
    }

    /// Equality as subsets of `X`: `√(I + rel) = √(J + rel)`.
    pub fn same_set_in(&self, x: &AffineDiffScheme, other: &OpenSet) -> Result<bool> {
        Ok(x.lift(&self.complement)?.same_radical(&x.lift(&other.complement)?))
    }

    /// `U ⊆ V`, i.e. `√(J + rel) ⊆ √(I + rel)`.
    pub fn subset_of_in(&self, x: &AffineDiffScheme, other: &OpenSet) -> Result<bool> {
        Ok(x.lift(&other.complement)?.radical_contains_ideal(&x.lift(&self.complement)?))
    }

    /// `U = ∅` in `X`.
    pub fn is_empty_in(&self, x: &AffineDiffScheme) -> Result<bool> {
        let lifted = x.lift(&self.complement)?;
        Ok(lifted.generators().iter().all(|g| x.relations().radical_contains(g)))
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.basic {
            Some(g) => write!(f, "D({g})"),
            None => write!(f, "complement {}", self.complement),
        }
    }
}

fn check(x: &AffineDiffScheme, u: &OpenSet) -> Result<()> {
    if u.ring() != x.ring() {
        return Err(Error::SignatureMismatch(format!("open set in {}, scheme over {}", u.ring(), x.ring())));
    }
    Ok(())
}

/// `U^δ = X ∖ V(<I>)` where `<I>` is the differential closure.
pub fn u_delta(x: &AffineDiffScheme, u: &OpenSet) -> Result<OpenSet> {
    check(x, u)?;
    let closure = diff_closure(&x.lift(u.complement_ideal())?, x.derivation())?.closure;
    Ok(OpenSet::complement_of(closure.canonical()))
}

/// The greatest invariant closed subset of `V(I)`, as `V(<I>)`.
pub fn greatest_invariant_closed(x: &AffineDiffScheme, i: &Ideal) -> Result<Ideal> {
    if i.ring() != x.ring() {
        return Err(Error::SignatureMismatch(format!("{} vs {}", i.ring(), x.ring())));
    }
    Ok(diff_closure(&x.lift(i)?, x.derivation())?.closure.canonical())
}

/// `U = U^δ` as sets.
pub fn is_invariant_open(x: &AffineDiffScheme, u: &OpenSet) -> Result<bool> {
    let hull = u_delta(x, u)?;
    u.same_set_in(x, &hull)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfLawsReport {
    pub family_size: usize,
    /// `(∪ U_i)^δ = ∪ U_i^δ`.
    pub union_law: bool,
    /// `(∩ U_i)^δ = ∩ U_i^δ`.
    pub intersection_law: bool,
}

impl CfLawsReport {
    pub fn holds(&self) -> bool {
        self.union_law && self.intersection_law
    }
}

/// Checks both laws for a finite family; the empty family passes vacuously.
pub fn cf_topology_laws(x: &AffineDiffScheme, family: &[OpenSet]) -> Result<CfLawsReport> {
    let Some((first, rest)) = family.split_first() else {
        return Ok(CfLawsReport { family_size: 0, union_law: true, intersection_law: true });
    };
    for u in family {
        check(x, u)?;
    }
    let hulls = family.iter().map(|u| u_delta(x, u)).collect::<Result<Vec<_>>>()?;

    let mut union = first.clone();
    let mut inter = first.clone();
    for u in rest {
        union = union.union(u)?;
        inter = inter.intersection(u)?;
    }
    let mut union_of_hulls = hulls[0].clone();
    let mut inter_of_hulls = hulls[0].clone();
    for h in &hulls[1..] {
        union_of_hulls = union_of_hulls.union(h)?;
        inter_of_hulls = inter_of_hulls.intersection(h)?;
    }
    let union_law = u_delta(x, &union)?.same_set_in(x, &union_of_hulls)?;
    let intersection_law = u_delta(x, &inter)?.same_set_in(x, &inter_of_hulls)?;
    Ok(CfLawsReport { family_size: family.len(), union_law, intersection_law })
}
