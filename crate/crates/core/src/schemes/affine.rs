use std::fmt;

use crate::algebra::derivation::Derivation;
use crate::algebra::poly::RingRef;
use crate::differential::closure::is_differential_ideal;
use crate::error::{Error, Result};
use crate::groebner::Ideal;

/// `Spec k[x]/I` with a vector field, given by a derivation of `k[x]`
/// that preserves `I`.
#[derive(Debug, Clone)]
pub struct AffineDiffScheme {
    relations: Ideal,
    derivation: Derivation,
}

/// Checks `d(I) ⊆ I` and bundles the data.
pub fn make_affine(relations: Ideal, derivation: Derivation) -> Result<AffineDiffScheme> {
    if relations.ring() != derivation.ring() {
        return Err(Error::SignatureMismatch(format!(
            "relations in {}, derivation on {}",
            relations.ring(),
            derivation.ring()
        )));
    }
    let derivation = derivation.with_relations(relations.clone())?;
    Ok(AffineDiffScheme { relations, derivation })
}

impl AffineDiffScheme {
    /// The whole affine space with the given field.
    pub fn affine_space(derivation: Derivation) -> AffineDiffScheme {
        let relations = Ideal::zero(derivation.ring());
        AffineDiffScheme { relations, derivation }
    }

    pub fn ring(&self) -> &RingRef {
        self.derivation.ring()
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    /// `I + relations`.
    pub fn lift(&self, ideal: &Ideal) -> Result<Ideal> {
        ideal.sum(&self.relations)
    }

    /// Whether the (asserted prime) ideal `p` is a leaf.
    pub fn is_leaf(&self, p: &Ideal) -> Result<bool> {
        is_leaf(self, p)
    }
}

/// `p` must contain the relations; the answer is whether `p` is differential.
pub fn is_leaf(x: &AffineDiffScheme, p: &Ideal) -> Result<bool> {
    if p.ring() != x.ring() {
        return Err(Error::SignatureMismatch(format!("{} vs {}", p.ring(), x.ring())));
    }
    if !p.contains_ideal(&x.relations) {
        let missing = x.relations.generators().iter().find(|g| !p.contains(g)).unwrap();
        return Err(Error::MissingRelations { ideal: p.to_string(), missing: missing.to_string() });
    }
    is_differential_ideal(&x.lift(p)?, &x.derivation)
}

impl fmt::Display for AffineDiffScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.ring(), self.relations, self.derivation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::Field;
    use crate::algebra::poly::{Poly, Ring};
    use crate::algebra::syntax::poly;

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| poly(g, r)).collect()).unwrap()
    }

    fn der(r: &RingRef, imgs: &[(&str, &str)]) -> Derivation {
        let named: Vec<(&str, Poly)> = imgs.iter().map(|(v, p)| (*v, poly(p, r))).collect();
        Derivation::from_named(r, &named).unwrap()
    }

    #[test]
    fn construction() {
        let r = Ring::new(Field::Rationals, ["x", "y"]).unwrap();
        let d = der(&r, &[("x", "-2*y"), ("y", "3*x^2")]);
        assert!(make_affine(Ideal::zero(&r), d.clone()).is_ok());
        assert!(make_affine(ideal(&r, &["x^3+y^2-1"]), d).is_ok());
        let s = Ring::new(Field::Rationals, ["x"]).unwrap();
        let err = make_affine(ideal(&s, &["x^2"]), der(&s, &[("x", "1")])).unwrap_err();
        assert!(matches!(err, Error::DerivationDoesNotDescend(_)));
    }

    #[test]
    fn leaves() {
        let r = Ring::new(Field::Rationals, ["x"]).unwrap();
        let radial = AffineDiffScheme::affine_space(der(&r, &[("x", "x")]));
        assert!(radial.is_leaf(&ideal(&r, &["x"])).unwrap());
        assert!(!radial.is_leaf(&ideal(&r, &["x-1"])).unwrap());
        assert!(radial.is_leaf(&Ideal::zero(&r)).unwrap());

        let r2 = Ring::new(Field::Rationals, ["x", "y"]).unwrap();
        let j = AffineDiffScheme::affine_space(der(&r2, &[("x", "1-x*y^2"), ("y", "x^2-y^3")]));
        assert!(j.is_leaf(&ideal(&r2, &["x-1", "y-1"])).unwrap());
        assert!(j.is_leaf(&Ideal::zero(&r2)).unwrap());
    }

    #[test]
    fn leaf_must_contain_relations() {
        let r = Ring::new(Field::Rationals, ["x", "y"]).unwrap();
        let d = der(&r, &[("x", "-2*y"), ("y", "3*x^2")]);
        let x = make_affine(ideal(&r, &["x^3+y^2-1"]), d).unwrap();
        assert!(x.is_leaf(&ideal(&r, &["x", "y"])).is_err());
        assert!(x.is_leaf(&ideal(&r, &["x-1", "y"])).is_ok());
        assert!(x.is_leaf(&ideal(&r, &["x^3+y^2-1"])).unwrap());
    }
}
