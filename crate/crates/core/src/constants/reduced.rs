//! A cheap partial reducedness check: no generator of the relations is a
//! proper power `h^k`, `k >= 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::algebra::coeff::{Coefficient, Field};
use crate::algebra::monomial::{degrevlex, Monomial};
use crate::algebra::poly::Poly;
use crate::groebner::Ideal;

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (r.pow(k) == *n).then_some(r)
}

fn coefficient_roots(c: &Coefficient, k: u32) -> Vec<Coefficient> {
    match c {
        Coefficient::Rational(q) => match (exact_root(q.numer(), k), exact_root(q.denom(), k)) {
            (Some(n), Some(d)) => vec![Coefficient::Rational(BigRational::new(n, d))],
            _ => Vec::new(),
        },
        Coefficient::Modular { .. } => {
            c.field().elements().unwrap().into_iter().filter(|r| !r.is_zero() && &r.pow(k as u64) == c).collect()
        }
    }
}

fn monomial_root(m: &Monomial, k: u32) -> Option<Monomial> {
    m.0.iter().all(|e| e % k == 0).then(|| Monomial(m.0.iter().map(|e| e / k).collect()))
}

/// `h` with `h^k = g`, if one exists. Only exponents not divisible by the
/// characteristic are handled.
pub fn kth_root(g: &Poly, k: u32) -> Option<Poly> {
    let (lm, lc) = g.leading()?.clone();
    let p = g.field().characteristic();
    if k < 2 || (p != 0 && k as u64 % p == 0) {
        return None;
    }
    let m0 = monomial_root(&lm, k)?;
    let ring = g.ring();
    let field: Field = g.field();
    let kc = field.from_i64(k as i64);
    for c0 in coefficient_roots(&lc, k) {
        let mut h = Poly::monomial(ring, m0.clone(), c0.clone());
        let lead_pow = Poly::monomial(ring, m0.clone(), c0.clone()).pow(k - 1);
        let (lpm, lpc) = lead_pow.leading().unwrap().clone();
        let denom = (&kc * &lpc).inverse().unwrap();
        let mut last = m0.clone();
        loop {
            let r = g - &h.pow(k);
            let Some((rm, rc)) = r.leading().cloned() else { return Some(h) };
            if !lpm.divides(&rm) {
                break;
            }
            let next = lpm.quotient_of(&rm);
            if degrevlex(&next, &last) != std::cmp::Ordering::Less {
                break;
            }
            h = h + Poly::monomial(ring, next.clone(), &rc * &denom);
            last = next;
        }
    }
    None
}

/// Generators of `rel` that are proper powers. Empty means the partial check
/// found nothing wrong, not that `rel` is radical.
pub fn proper_power_generators(rel: &Ideal) -> Vec<Poly> {
    rel.generators()
        .iter()
        .filter(|g| {
            let d = g.degree().unwrap_or(0);
            !g.is_constant() && (2..=d).any(|k| d % k == 0 && kth_root(g, k).is_some())
        })
        .cloned()
        .collect()
}

pub fn passes_reducedness_check(rel: &Ideal) -> bool {
    proper_power_generators(rel).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Ring;
    use crate::algebra::syntax::poly;

    #[test]
    fn detects_powers() {
        let r = Ring::new(Field::Rationals, ["x", "y"]).unwrap();
        let h = poly("2*x*y-y^2+1/3", &r);
        assert_eq!(kth_root(&h.pow(3), 3).unwrap(), h);
        assert!(kth_root(&h.pow(2), 2).is_some());
        assert!(kth_root(&poly("x^2+y^2", &r), 2).is_none());
        let rel = Ideal::new(&r, vec![poly("x^2", &r), poly("y^3-x", &r)]).unwrap();
        assert_eq!(proper_power_generators(&rel), [poly("x^2", &r)]);
        assert!(!passes_reducedness_check(&rel));
        assert!(passes_reducedness_check(&Ideal::new(&r, vec![poly("x^3+y^2-1", &r)]).unwrap()));
    }

    #[test]
    fn modular_powers() {
        let r = Ring::new(Field::prime(7).unwrap(), ["x"]).unwrap();
        let h = poly("3*x+2", &r);
        assert!(kth_root(&h.pow(2), 2).is_some());
        assert!(kth_root(&poly("x^2+1", &r), 2).is_none());
    }
}
