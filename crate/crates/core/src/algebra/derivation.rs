use crate::algebra::poly::{Poly, RingRef};
use crate::error::{Error, Result};
use crate::groebner::Ideal;

/// A derivation of `k[x_1, ..., x_n]` (optionally of a quotient by
/// `relations`), determined by the images of the variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: RingRef,
    images: Vec<Poly>,
    relations: Option<Ideal>,
}

impl Derivation {
    pub fn new(ring: &RingRef, images: Vec<Poly>) -> Result<Derivation> {
        if images.len() != ring.nvars() {
            return Err(Error::SignatureMismatch(format!(
                "{} images for {} variables",
                images.len(),
                ring.nvars()
            )));
        }
        for img in &images {
            if img.ring() != ring {
                return Err(Error::SignatureMismatch(format!("image {img} not in {ring}")));
            }
        }
        Ok(Derivation { ring: ring.clone(), images, relations: None })
    }

    /// Images given by variable name; unnamed variables map to zero.
    pub fn from_named(ring: &RingRef, named: &[(&str, Poly)]) -> Result<Derivation> {
        let mut images = vec![Poly::zero(ring); ring.nvars()];
        for (name, img) in named {
            let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            images[i] = img.clone();
        }
        Derivation::new(ring, images)
    }

    /// The zero derivation.
    pub fn zero(ring: &RingRef) -> Derivation {
        Derivation { ring: ring.clone(), images: vec![Poly::zero(ring); ring.nvars()], relations: None }
    }

    /// Attaches quotient relations, checking that `d(g)` lies in the
    /// relations ideal for every generator `g`.
    pub fn with_relations(mut self, relations: Ideal) -> Result<Derivation> {
        if relations.ring() != &self.ring {
            return Err(Error::SignatureMismatch(format!("relations in {}", relations.ring())));
        }
        for g in relations.generators() {
            let dg = self.apply_unchecked(g);
            if !relations.contains(&dg) {
                return Err(Error::DerivationDoesNotDescend(g.to_string()));
            }
        }
        self.relations = if relations.is_zero() { None } else { Some(relations) };
        Ok(self)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, var: usize) -> &Poly {
        &self.images[var]
    }

    pub fn relations(&self) -> Option<&Ideal> {
        self.relations.as_ref()
    }

    /// Largest total degree among the variable images.
    pub fn degree(&self) -> u32 {
        self.images.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != &self.ring {
            return Err(Error::SignatureMismatch(format!("{} vs {}", f.ring(), self.ring)));
        }
        Ok(self.apply_unchecked(f))
    }

    /// `d(f) = sum_i (df/dx_i) * d(x_i)`, which is what linearity and the
    /// Leibniz rule force once the images of the variables are fixed.
    pub(crate) fn apply_unchecked(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.ring);
        for i in f.support_vars() {
            if self.images[i].is_zero() {
                continue;
            }
            acc = acc + f.partial(i) * &self.images[i];
        }
        acc
    }

    /// The n-th iterate `f^(n)`.
    pub fn apply_iter(&self, f: &Poly, n: usize) -> Result<Poly> {
        let mut g = f.clone();
        if g.ring() != &self.ring {
            return Err(Error::SignatureMismatch(format!("{} vs {}", f.ring(), self.ring)));
        }
        for _ in 0..n {
            if g.is_zero() {
                break;
            }
            g = self.apply_unchecked(&g);
        }
        Ok(g)
    }

    /// `f, f', ..., f^(n)`.
    pub fn iterates(&self, f: &Poly, n: usize) -> Result<Vec<Poly>> {
        let mut out = vec![f.clone()];
        for _ in 0..n {
            let next = self.apply(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }
}

impl std::fmt::Display for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .ring
            .vars()
            .iter()
            .zip(&self.images)
            .map(|(v, img)| format!("{v} -> {img}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::Field;
    use crate::algebra::poly::Ring;
    use crate::algebra::syntax::poly;
    use proptest::prelude::*;

    fn qxy() -> RingRef {
        Ring::new(Field::Rationals, ["x", "y"]).unwrap()
    }

    fn cubic_field(r: &RingRef) -> Derivation {
        Derivation::from_named(r, &[("x", poly("-2*y", r)), ("y", poly("3*x^2", r))]).unwrap()
    }

    #[test]
    fn conserved_quantity_is_killed() {
        let r = qxy();
        let d = cubic_field(&r);
        assert!(d.apply(&poly("x^3+y^2", &r)).unwrap().is_zero());
        for k in 1..5 {
            assert!(d.apply_iter(&poly("x^3+y^2", &r), k).unwrap().is_zero());
        }
    }

    #[test]
    fn power_rule_and_radial_eigenfunction() {
        let r = Ring::new(Field::Rationals, ["x"]).unwrap();
        let unit = Derivation::from_named(&r, &[("x", poly("1", &r))]).unwrap();
        assert_eq!(unit.apply(&poly("x^2", &r)).unwrap(), poly("2*x", &r));
        assert_eq!(unit.apply_iter(&poly("x^3", &r), 3).unwrap(), poly("6", &r));
        let radial = Derivation::from_named(&r, &[("x", poly("x", &r))]).unwrap();
        assert_eq!(radial.apply(&poly("x^5", &r)).unwrap(), poly("5*x^5", &r));
        for n in 0..6 {
            assert_eq!(radial.apply_iter(&poly("x", &r), n).unwrap(), poly("x", &r));
        }
    }

    #[test]
    fn zeroth_iterate_is_identity() {
        let r = qxy();
        let f = poly("x*y-7", &r);
        assert_eq!(cubic_field(&r).apply_iter(&f, 0).unwrap(), f);
    }

    #[test]
    fn quotient_validation() {
        let r = Ring::new(Field::Rationals, ["x"]).unwrap();
        let unit = Derivation::from_named(&r, &[("x", poly("1", &r))]).unwrap();
        let rel = Ideal::new(&r, vec![poly("x^2", &r)]).unwrap();
        assert!(matches!(unit.with_relations(rel), Err(Error::DerivationDoesNotDescend(_))));
        let r2 = qxy();
        let rel = Ideal::new(&r2, vec![poly("x^3+y^2-1", &r2)]).unwrap();
        assert!(cubic_field(&r2).with_relations(rel).is_ok());
    }

    #[test]
    fn wrong_ring_rejected() {
        let r = qxy();
        let s = Ring::new(Field::Rationals, ["x"]).unwrap();
        assert!(cubic_field(&r).apply(&poly("x", &s)).is_err());
    }

    fn small_poly(r: RingRef) -> impl Strategy<Value = Poly> {
        prop::collection::vec((-3i64..4, 0u32..3, 0u32..3), 0..5).prop_map(move |ts| {
            let mut acc = Poly::zero(&r);
            for (c, ex, ey) in ts {
                acc = acc + poly(&format!("{c}*x^{ex}*y^{ey}"), &r);
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn leibniz(f in small_poly(qxy()), g in small_poly(qxy()),
                   px in small_poly(qxy()), py in small_poly(qxy())) {
            let r = f.ring().clone();
            let px = px.embed(&r).unwrap();
            let py = py.embed(&r).unwrap();
            let g = g.embed(&r).unwrap();
            let d = Derivation::new(&r, vec![px, py]).unwrap();
            let lhs = d.apply(&(&f * &g)).unwrap();
            let rhs = &f * &d.apply(&g).unwrap() + &d.apply(&f).unwrap() * &g;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
