//! Truncated Hasse-Schmidt derivations.
//!
//! A family `D_0, ..., D_M` is stored through the images `D_i(x_j)`. The
//! whole family acts as the ring map `f -> sum_i D_i(f) t^i` into
//! `A[t]/(t^(M+1))`, so `D_i(f)` is the `t^i` coefficient of
//! `f(E(x_1), ..., E(x_n))` with `E(x_j) = sum_i D_i(x_j) t^i`. Expanding a
//! product of `p` factors this way is exactly the `p`-fold generalized
//! Leibniz rule.

use crate::algebra::coeff::{binomial, factorial, Field};
use crate::algebra::derivation::Derivation;
use crate::algebra::poly::{Poly, RingRef};
use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_HS_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseSchmidtDerivation {
    ring: RingRef,
    order: usize,
    /// `images[i][j] = D_i(x_j)`, with `images[0]` the variables themselves.
    images: Vec<Vec<Poly>>,
}

type Series = Vec<Poly>;

fn series_mul(a: &Series, b: &Series, ring: &RingRef) -> Series {
    let n = a.len();
    let mut out = vec![Poly::zero(ring); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

impl HasseSchmidtDerivation {
    /// `higher[j][i - 1] = D_i(x_j)` for `1 <= i <= order`. Iterativity is
    /// validated on the generators.
    pub fn new(ring: &RingRef, order: usize, higher: Vec<Vec<Poly>>) -> Result<HasseSchmidtDerivation> {
        if higher.len() != ring.nvars() {
            return Err(Error::SignatureMismatch(format!(
                "images for {} variables, ring has {}",
                higher.len(),
                ring.nvars()
            )));
        }
        let mut images = vec![(0..ring.nvars()).map(|j| Poly::var(ring, j)).collect::<Vec<_>>()];
        for i in 1..=order {
            let mut row = Vec::with_capacity(ring.nvars());
            for (j, imgs) in higher.iter().enumerate() {
                let p = imgs.get(i - 1).cloned().unwrap_or_else(|| Poly::zero(ring));
                if p.ring() != ring {
                    return Err(Error::SignatureMismatch(format!("D_{i}({}) not in {ring}", ring.vars()[j])));
                }
                row.push(p);
            }
            images.push(row);
        }
        let h = HasseSchmidtDerivation { ring: ring.clone(), order, images };
        h.check_iterativity()?;
        Ok(h)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `D_i(x_j)`.
    pub fn image(&self, i: usize, var: usize) -> &Poly {
        &self.images[i][var]
    }

    /// `D_0(f), ..., D_upto(f)`.
    pub fn apply_upto(&self, f: &Poly, upto: usize) -> Result<Vec<Poly>> {
        if upto > self.order {
            return Err(Error::OrderExceeded { index: upto, order: self.order });
        }
        if f.ring() != &self.ring {
            return Err(Error::SignatureMismatch(format!("{} vs {}", f.ring(), self.ring)));
        }
        let len = upto + 1;
        let ring = &self.ring;
        let gens: Vec<Series> = (0..ring.nvars())
            .map(|j| (0..len).map(|i| self.images[i][j].clone()).collect())
            .collect();
        let mut powers: Vec<Vec<Series>> = gens.iter().map(|g| vec![unit_series(ring, len), g.clone()]).collect();
        let mut acc = vec![Poly::zero(ring); len];
        for (m, c) in f.terms() {
            let mut t: Series = unit_series(ring, len);
            t[0] = Poly::constant(ring, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = series_mul(powers[j].last().unwrap(), &gens[j], ring);
                    powers[j].push(next);
                }
                t = series_mul(&t, &powers[j][e as usize], ring);
            }
            for (a, b) in acc.iter_mut().zip(t) {
                *a = &*a + &b;
            }
        }
        Ok(acc)
    }

    /// `D_i(f)`.
    pub fn apply(&self, i: usize, f: &Poly) -> Result<Poly> {
        Ok(self.apply_upto(f, i)?.pop().unwrap())
    }

    fn check_iterativity(&self) -> Result<usize> {
        let field = self.ring.field();
        let mut checks = 0;
        for j in 0..self.ring.nvars() {
            for b in 1..=self.order {
                let inner = &self.images[b][j];
                let outer = self.apply_upto(inner, self.order - b)?;
                for (a, lhs) in outer.iter().enumerate().skip(1) {
                    let rhs = self.images[a + b][j].scale(&field.from_bigint(&binomial((a + b) as u64, a as u64)));
                    if *lhs != rhs {
                        return Err(Error::HasseSchmidtAxiom(format!(
                            "D_{a}(D_{b}({v})) = {lhs} but C({s},{a}) D_{s}({v}) = {rhs}",
                            v = self.ring.vars()[j],
                            s = a + b
                        )));
                    }
                    checks += 1;
                }
            }
        }
        Ok(checks)
    }

    /// Checks the three axioms: `D_0 = id` and the Leibniz rule on every
    /// product of two generators (against the explicit convolution sum),
    /// and iterativity on generators.
    pub fn verify_axioms(&self) -> Result<HsAxiomReport> {
        let r = &self.ring;
        let n = r.nvars();
        for j in 0..n {
            if self.apply(0, &Poly::var(r, j))? != Poly::var(r, j) {
                return Err(Error::HasseSchmidtAxiom("D_0 is not the identity".into()));
            }
        }
        let mut leibniz = 0;
        for a in 0..n {
            for b in a..n {
                let (xa, xb) = (Poly::var(r, a), Poly::var(r, b));
                let prod = self.apply_upto(&(&xa * &xb), self.order)?;
                for (i, lhs) in prod.iter().enumerate() {
                    let rhs = (0..=i).fold(Poly::zero(r), |acc, k| acc + &self.images[k][a] * &self.images[i - k][b]);
                    if *lhs != rhs {
                        return Err(Error::HasseSchmidtAxiom(format!(
                            "Leibniz fails for D_{i}({}*{})",
                            r.vars()[a],
                            r.vars()[b]
                        )));
                    }
                    leibniz += 1;
                }
            }
        }
        let iterativity_checks = self.check_iterativity()?;
        Ok(HsAxiomReport { order: self.order, leibniz_checks: leibniz, iterativity_checks })
    }
}

fn unit_series(ring: &RingRef, len: usize) -> Series {
    let mut s = vec![Poly::zero(ring); len];
    s[0] = Poly::one(ring);
    s
}

/// Outcome of [`HasseSchmidtDerivation::verify_axioms`]; verification only
/// holds up to the truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsAxiomReport {
    pub order: usize,
    pub leibniz_checks: usize,
    pub iterativity_checks: usize,
}

/// `D_i = d^i / i!`; needs characteristic zero.
pub fn hs_from_derivation(d: &Derivation, order: usize) -> Result<HasseSchmidtDerivation> {
    let ring = d.ring();
    if let Field::Prime(p) = ring.field() {
        return Err(Error::NeedsCharZero(p));
    }
    let field = ring.field();
    let mut higher = Vec::with_capacity(ring.nvars());
    for j in 0..ring.nvars() {
        let iters = d.iterates(&Poly::var(ring, j), order)?;
        let imgs = (1..=order)
            .map(|i| {
                let inv = field.from_bigint(&factorial(i as u64)).inverse().unwrap();
                iters[i].scale(&inv)
            })
            .collect();
        higher.push(imgs);
    }
    HasseSchmidtDerivation::new(ring, order, higher)
}

/// `D_i(f)` for `i <= M`.
pub fn hs_apply(h: &HasseSchmidtDerivation, i: usize, f: &Poly) -> Result<Poly> {
    h.apply(i, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Ring;
    use crate::algebra::syntax::poly;

    #[test]
    fn divided_powers_of_unit_field() {
        let r = Ring::new(Field::Rationals, ["x"]).unwrap();
        let d = Derivation::from_named(&r, &[("x", poly("1", &r))]).unwrap();
        let h = hs_from_derivation(&d, 3).unwrap();
        assert_eq!(h.apply(2, &poly("x^2", &r)).unwrap(), poly("1", &r));
        assert_eq!(h.apply(1, &poly("x^3", &r)).unwrap(), poly("3*x^2", &r));
        assert_eq!(h.apply(0, &poly("x^3+1", &r)).unwrap(), poly("x^3+1", &r));
    }

    #[test]
    fn conserved_quantity_under_all_orders() {
        let r = Ring::new(Field::Rationals, ["x", "y"]).unwrap();
        let d = Derivation::from_named(&r, &[("x", poly("-2*y", &r)), ("y", poly("3*x^2", &r))]).unwrap();
        let h = hs_from_derivation(&d, 8).unwrap();
        let all = h.apply_upto(&poly("x^3+y^2", &r), 8).unwrap();
        assert!(all[1..].iter().all(Poly::is_zero));
    }

    #[test]
    fn char_p_has_no_divided_powers_from_a_derivation() {
        let r = Ring::new(Field::prime(2).unwrap(), ["x"]).unwrap();
        let d = Derivation::from_named(&r, &[("x", poly("1", &r))]).unwrap();
        assert_eq!(hs_from_derivation(&d, 3), Err(Error::NeedsCharZero(2)));
    }

    #[test]
    fn leibniz_in_characteristic_two() {
        let r = Ring::new(Field::prime(2).unwrap(), ["x"]).unwrap();
        let h = HasseSchmidtDerivation::new(&r, 4, vec![vec![poly("1", &r)]]).unwrap();
        assert_eq!(h.apply(2, &poly("x^2", &r)).unwrap(), poly("1", &r));
        assert_eq!(h.apply(1, &poly("x^2", &r)).unwrap(), Poly::zero(&r));
        for i in 1..=4 {
            assert!(h.apply(i, &poly("1", &r)).unwrap().is_zero());
        }
        assert!(h.verify_axioms().is_ok());
    }

    #[test]
    fn index_beyond_truncation() {
        let r = Ring::new(Field::prime(2).unwrap(), ["x"]).unwrap();
        let h = HasseSchmidtDerivation::new(&r, 2, vec![vec![poly("1", &r)]]).unwrap();
        assert_eq!(h.apply(3, &poly("x", &r)), Err(Error::OrderExceeded { index: 3, order: 2 }));
    }

    #[test]
    fn non_iterative_family_rejected() {
        // D_1(x) = 1 forces D_2(x) = D_1(D_1(x)) / 2 = 0 over QQ
        let r = Ring::new(Field::Rationals, ["x"]).unwrap();
        let bad = HasseSchmidtDerivation::new(&r, 2, vec![vec![poly("1", &r), poly("x", &r)]]);
        assert!(matches!(bad, Err(Error::HasseSchmidtAxiom(_))));
    }

    #[test]
    fn consistent_with_iterated_derivation() {
        let r = Ring::new(Field::Rationals, ["x", "y"]).unwrap();
        let d = Derivation::from_named(&r, &[("x", poly("1-x*y^2", &r)), ("y", poly("x^2-y^3", &r))]).unwrap();
        let h = hs_from_derivation(&d, 5).unwrap();
        let f = poly("x^2*y - 3*y + 1", &r);
        let hs = h.apply_upto(&f, 5).unwrap();
        for (i, hi) in hs.iter().enumerate() {
            let lhs = hi.scale(&r.field().from_bigint(&factorial(i as u64)));
            assert_eq!(lhs, d.apply_iter(&f, i).unwrap());
        }
    }
}
