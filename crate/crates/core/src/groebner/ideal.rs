use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::monomial::MonomialOrder;
use crate::algebra::poly::{Poly, Ring, RingRef};
use crate::error::{Error, Result};
use crate::groebner::buchberger;

/// An ideal given by generators, with its degrevlex reduced Groebner basis
/// computed on first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    basis: Arc<OnceLock<Vec<Poly>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// Syntactic equality (same ring, same generator list). Use
/// [`Ideal::same_as`] for equality of ideals.
impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "<0>");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::SignatureMismatch(format!("generator {g} not in {ring}")));
            }
        }
        let mut gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        dedup_keep_order(&mut gens);
        Ok(Ideal { ring: ring.clone(), gens, basis: Arc::new(OnceLock::new()) })
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), gens: Vec::new(), basis: Arc::new(OnceLock::new()) }
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::new(ring, vec![Poly::one(ring)]).unwrap()
    }

    /// The ideal generated by its own reduced basis (canonical presentation).
    pub fn from_basis(ring: &RingRef, basis: Vec<Poly>) -> Ideal {
        let cell = OnceLock::new();
        let _ = cell.set(basis.clone());
        Ideal { ring: ring.clone(), gens: basis, basis: Arc::new(cell) }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// True when there are no nonzero generators.
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced degrevlex Groebner basis (cached).
    pub fn groebner_basis(&self) -> &[Poly] {
        self.basis
            .get_or_init(|| buchberger::groebner_basis(&self.ring, &self.gens, &MonomialOrder::DegRevLex))
    }

    /// Reduced Groebner basis under another order (not cached).
    pub fn groebner_basis_under(&self, ord: &MonomialOrder) -> Vec<Poly> {
        if *ord == MonomialOrder::DegRevLex {
            return self.groebner_basis().to_vec();
        }
        buchberger::groebner_basis(&self.ring, &self.gens, ord)
    }

    /// The ideal presented by its reduced basis.
    pub fn canonical(&self) -> Ideal {
        Ideal::from_basis(&self.ring, self.groebner_basis().to_vec())
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        buchberger::normal_form(f, self.groebner_basis(), &MonomialOrder::DegRevLex)
    }

    pub fn normal_form_under(&self, f: &Poly, ord: &MonomialOrder) -> Poly {
        buchberger::normal_form(f, &self.groebner_basis_under(ord), ord)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        f.is_zero() || self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality of ideals by mutual membership of generators.
    pub fn same_as(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().first().is_some_and(Poly::is_unit)
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// Largest generator degree (0 for the zero ideal).
    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Poly>) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().cloned().chain(extra).collect())
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    /// `I ∩ k[keep]`, returned in the same ring.
    pub fn elimination(&self, keep: &[usize]) -> Ideal {
        let eliminate: Vec<usize> = (0..self.ring.nvars()).filter(|i| !keep.contains(i)).collect();
        if eliminate.is_empty() {
            return self.clone();
        }
        let ord = MonomialOrder::block(eliminate.iter().copied());
        let gb = self.groebner_basis_under(&ord);
        let kept = gb.into_iter().filter(|g| eliminate.iter().all(|&i| g.degree_in(i) == 0)).collect();
        Ideal::new(&self.ring, kept).unwrap()
    }

    /// `I ∩ k[keep]` where `keep` are variable names.
    pub fn elimination_ideal(&self, keep: &[&str]) -> Result<Ideal> {
        let idx = keep
            .iter()
            .map(|v| self.ring.var_index(v).ok_or_else(|| Error::UnknownVariable(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.elimination(&idx))
    }

    /// Embeds into `ring + [tag]` and returns the extended ring.
    fn with_tag(&self, stem: &str) -> Result<(RingRef, Vec<Poly>, Poly)> {
        let tag = self.ring.fresh_name(stem);
        let big = self.ring.extend([tag])?;
        let gens = self.gens.iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>>>()?;
        let t = Poly::var(&big, big.nvars() - 1);
        Ok((big, gens, t))
    }

    fn pull_back(&self, big_ideal: &Ideal) -> Result<Ideal> {
        let keep: Vec<usize> = (0..self.ring.nvars()).collect();
        let elim = big_ideal.elimination(&keep);
        let gens = elim.gens.iter().map(|g| g.embed(&self.ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J` through `t I + (1 - t) J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let (big, gi, t) = self.with_tag("t")?;
        let one_minus_t = Poly::one(&big) - &t;
        let mut gens: Vec<Poly> = gi.iter().map(|g| &t * g).collect();
        for g in &other.gens {
            gens.push(&one_minus_t * &g.embed(&big)?);
        }
        self.pull_back(&Ideal::new(&big, gens)?)
    }

    /// `(I : f^∞)` through `I + <1 - y f>` and elimination of `y`.
    pub fn saturation(&self, f: &Poly) -> Result<Ideal> {
        if f.ring() != &self.ring {
            return Err(Error::SignatureMismatch(format!("{} vs {}", f.ring(), self.ring)));
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let (big, mut gens, y) = self.with_tag("y")?;
        gens.push(Poly::one(&big) - &y * &f.embed(&big)?);
        self.pull_back(&Ideal::new(&big, gens)?)
    }

    /// `f ∈ √I`, by the Rabinowitsch trick `1 ∈ I + <1 - y f>`.
    pub fn radical_contains(&self, f: &Poly) -> bool {
        if f.is_zero() {
            return true;
        }
        let (big, mut gens, y) = self.with_tag("y").expect("fresh tag variable");
        gens.push(Poly::one(&big) - &y * &f.embed(&big).expect("same ring"));
        Ideal::new(&big, gens).unwrap().is_unit()
    }

    /// `√I = √J`, by mutual radical membership of generators.
    pub fn same_radical(&self, other: &Ideal) -> bool {
        self.ring == other.ring
            && other.gens.iter().all(|g| self.radical_contains(g))
            && self.gens.iter().all(|g| other.radical_contains(g))
    }

    /// `√I ⊇ J`.
    pub fn radical_contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.radical_contains(g))
    }

    /// Preimage `φ⁻¹(I)` under the ring map `φ: source -> self.ring` sending
    /// variable `i` of `source` to `images[i]`.
    pub fn preimage(&self, source: &RingRef, images: &[Poly]) -> Result<Ideal> {
        if images.len() != source.nvars() {
            return Err(Error::SignatureMismatch(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        if source.field() != self.ring.field() {
            return Err(Error::SignatureMismatch(format!("{source} vs {}", self.ring)));
        }
        // target variables first, then fresh copies of the source variables
        let mut names: Vec<String> = self.ring.vars().to_vec();
        let mut fresh = Vec::new();
        for v in source.vars() {
            let probe = Ring::new(self.ring.field(), names.iter().cloned())?;
            let n = probe.fresh_name(&format!("{v}_src"));
            names.push(n.clone());
            fresh.push(n);
        }
        let big = Ring::new(self.ring.field(), names)?;
        let offset = self.ring.nvars();
        let mut gens = self.gens.iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>>>()?;
        for (i, img) in images.iter().enumerate() {
            if img.ring() != &self.ring {
                return Err(Error::SignatureMismatch(format!("image {img} not in {}", self.ring)));
            }
            gens.push(Poly::var(&big, offset + i) - img.embed(&big)?);
        }
        let keep: Vec<usize> = (offset..big.nvars()).collect();
        let elim = Ideal::new(&big, gens)?.elimination(&keep);
        let mut back = vec![Poly::zero(source); offset];
        back.extend((0..source.nvars()).map(|i| Poly::var(source, i)));
        let pulled = elim.gens.iter().map(|g| g.substitute(source, &back)).collect::<Result<Vec<_>>>()?;
        Ideal::new(source, pulled)
    }
}

fn dedup_keep_order(v: &mut Vec<Poly>) {
    let mut seen: Vec<Poly> = Vec::with_capacity(v.len());
    v.retain(|p| {
        if seen.contains(p) {
            false
        } else {
            seen.push(p.clone());
            true
        }
    });
}

// Free-function forms of the module's operations.

pub fn groebner_basis(i: &Ideal, ord: &MonomialOrder) -> Vec<Poly> {
    i.groebner_basis_under(ord)
}

pub fn normal_form(f: &Poly, i: &Ideal, ord: &MonomialOrder) -> Poly {
    i.normal_form_under(f, ord)
}

pub fn ideal_membership(f: &Poly, i: &Ideal) -> bool {
    i.contains(f)
}

pub fn elimination_ideal(i: &Ideal, keep: &[&str]) -> Result<Ideal> {
    i.elimination_ideal(keep)
}

pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.intersect(j)
}

pub fn saturation(i: &Ideal, f: &Poly) -> Result<Ideal> {
    i.saturation(f)
}

pub fn radical_membership(f: &Poly, i: &Ideal) -> bool {
    i.radical_contains(f)
}
