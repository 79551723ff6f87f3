//! Membership certificates for the differential-polynomial identities
//! behind the extension of constant fractions.
//!
//! Each certificate writes a target polynomial as an explicit combination
//! `sum_j c_j G_j` of generators `G_j = G^(j)` in a jet ring, and is checked
//! by exact replay. The cofactors are produced by following the inductive
//! construction, not by a Groebner computation.

use std::fmt;

use crate::algebra::coeff::Field;
use crate::algebra::poly::Poly;
use crate::constants::jet::JetRing;
use crate::error::{Error, Result};

pub const DEFAULT_PROP42_MAX_N: usize = 6;

/// `target = sum_j cofactors[j] * generators[j]`.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub identity: String,
    pub label: String,
    pub target: Poly,
    pub generator_names: Vec<String>,
    pub generators: Vec<Poly>,
    pub cofactors: Vec<Poly>,
}

impl Certificate {
    pub fn replay(&self) -> bool {
        let sum = self
            .cofactors
            .iter()
            .zip(&self.generators)
            .fold(Poly::zero(self.target.ring()), |acc, (c, g)| acc + c * g);
        sum == self.target
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("identity {} ({})\ntarget: {}\n", self.identity, self.label, self.target);
        for (name, g) in self.generator_names.iter().zip(&self.generators) {
            s.push_str(&format!("generator {name}: {g}\n"));
        }
        for (name, c) in self.generator_names.iter().zip(&self.cofactors) {
            s.push_str(&format!("cofactor {name}: {c}\n"));
        }
        s
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Generators `G, G', ..., G^(k)` of a differential ideal in a jet ring.
struct Gens<'a> {
    jet: &'a JetRing,
    list: Vec<Poly>,
}

impl<'a> Gens<'a> {
    fn new(jet: &'a JetRing, g: Poly) -> Gens<'a> {
        let mut list = vec![g];
        while let Ok(next) = jet.shift(list.last().unwrap()) {
            list.push(next);
        }
        Gens { jet, list }
    }

    fn zero(&self) -> Combo {
        let z = Poly::zero(self.jet.ring());
        Combo { value: z.clone(), cof: vec![z; self.list.len()] }
    }

    fn generator(&self, j: usize) -> Combo {
        let mut c = self.zero();
        c.value = self.list[j].clone();
        c.cof[j] = Poly::one(self.jet.ring());
        c
    }

    fn certificate(&self, identity: &str, label: String, name: &str, c: &Combo) -> Certificate {
        Certificate {
            identity: identity.to_string(),
            label,
            target: c.value.clone(),
            generator_names: (0..self.list.len()).map(|j| format!("{name}^({j})")).collect(),
            generators: self.list.clone(),
            cofactors: c.cof.clone(),
        }
    }

    fn shift(&self, c: &Combo) -> Result<Combo> {
        let mut out = self.zero();
        out.value = self.jet.shift(&c.value)?;
        for (j, cj) in c.cof.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            out.cof[j] = &out.cof[j] + &self.jet.shift(cj)?;
            if j + 1 >= self.list.len() {
                return Err(Error::JetOrderExceeded(format!("needs generator derivative of order {}", j + 1)));
            }
            out.cof[j + 1] = &out.cof[j + 1] + cj;
        }
        Ok(out)
    }
}

/// A polynomial together with cofactors expressing it in the generators.
#[derive(Debug, Clone)]
struct Combo {
    value: Poly,
    cof: Vec<Poly>,
}

impl Combo {
    fn mul(&self, p: &Poly) -> Combo {
        Combo { value: &self.value * p, cof: self.cof.iter().map(|c| c * p).collect() }
    }

    fn add(&self, o: &Combo) -> Combo {
        Combo { value: &self.value + &o.value, cof: self.cof.iter().zip(&o.cof).map(|(a, b)| a + b).collect() }
    }

    fn sub(&self, o: &Combo) -> Combo {
        Combo { value: &self.value - &o.value, cof: self.cof.iter().zip(&o.cof).map(|(a, b)| a - b).collect() }
    }
}

#[derive(Debug, Clone)]
pub struct Lemma43Report {
    pub order: usize,
    pub lhs: Poly,
    pub rhs: Poly,
    /// The right-hand side as a combination of `Θ` and `Θ'`.
    pub certificate: Certificate,
}

impl Lemma43Report {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.certificate.replay()
    }
}

/// With `Θ = t (A1 B2 - B1 A2)`, checks
/// `t B1 B2 Θ' - t B1 B2' Θ - t B1' B2 Θ - t' B1 B2 Θ
///  = t^2 (B2^2 (A1' B1 - A1 B1') - B1^2 (A2' B2 - A2 B2'))`.
pub fn verify_lemma_4_3(order: usize) -> Result<Lemma43Report> {
    if order < 2 {
        return Err(Error::Invalid(format!("jet order must be at least 2, got {order}")));
    }
    let jet = JetRing::new(Field::Rationals, ["t", "A1", "A2", "B1", "B2"], order)?;
    let v = |s: &str, i: usize| jet.v(s, i);
    let (t, a1, a2, b1, b2) = (v("t", 0), v("A1", 0), v("A2", 0), v("B1", 0), v("B2", 0));
    let (t_, a1_, a2_, b1_, b2_) = (v("t", 1), v("A1", 1), v("A2", 1), v("B1", 1), v("B2", 1));
    let theta = &t * &(&a1 * &b2 - &b1 * &a2);
    let gens = Gens::new(&jet, theta);
    let big_theta = gens.generator(0);
    let lhs_combo = gens
        .shift(&big_theta)?
        .mul(&(&t * &b1 * &b2))
        .sub(&big_theta.mul(&(&t * &b1 * &b2_ + &t * &b1_ * &b2 + &t_ * &b1 * &b2)));
    let rhs = &t * &t * &(&b2 * &b2 * &(&a1_ * &b1 - &a1 * &b1_) - &b1 * &b1 * &(&a2_ * &b2 - &a2 * &b2_));
    let mut certificate = gens.certificate("lemma43", format!("order={order}"), "Theta", &lhs_combo);
    certificate.generators.truncate(2);
    certificate.generator_names.truncate(2);
    certificate.cofactors.truncate(2);
    certificate.target = rhs.clone();
    Ok(Lemma43Report { order, lhs: lhs_combo.value, rhs, certificate })
}

#[derive(Debug, Clone)]
pub struct Prop42Report {
    pub n: usize,
    pub order: usize,
    /// One certificate per `i`, for `E_{N,i}`.
    pub certificates: Vec<Certificate>,
    /// `bθ ∂E_{N,i} = E_{N+1,i+1} + E_{N+1,i} + ((N-1) b' θ + N b θ') E_{N,i}`.
    pub recurrence: Vec<bool>,
}

impl Prop42Report {
    pub fn failures(&self) -> Vec<usize> {
        (0..=self.n)
            .filter(|&i| !(self.certificates[i].replay() && self.recurrence[i]))
            .collect()
    }

    pub fn holds(&self) -> bool {
        self.failures().is_empty()
    }
}

/// `E_{n,i} = b^(n-1) θ^n (b^(i) a^(n-i) - a^(i) b^(n-i))`.
pub fn e_poly(jet: &JetRing, n: usize, i: usize) -> Poly {
    let (a, b, th) = (|k| jet.v("a", k), |k| jet.v("b", k), jet.v("theta", 0));
    b(0).pow(n as u32 - 1) * th.pow(n as u32) * (b(i) * a(n - i) - a(i) * b(n - i))
}

/// Certifies `E_{N,i} ∈ [Θ]` for `0 <= i <= N`, `Θ = θ (a' b - a b')`, in
/// the jet ring on `a, b, theta` of the given order (at least `N + 1`).
pub fn verify_prop_4_2(n: usize, order: usize) -> Result<Prop42Report> {
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    if order < n + 1 {
        return Err(Error::JetOrderExceeded(format!("N = {n} needs jet order at least {}", n + 1)));
    }
    let jet = JetRing::new(Field::Rationals, ["a", "b", "theta"], order)?;
    let ring = jet.ring().clone();
    let (b, b1, th, th1) = (jet.v("b", 0), jet.v("b", 1), jet.v("theta", 0), jet.v("theta", 1));
    let gens = Gens::new(&jet, e_poly(&jet, 1, 0));

    // levels[m - 1][i] certifies E_{m,i}
    let base = gens.generator(0);
    let mut levels: Vec<Vec<Combo>> = vec![vec![base.clone(), base.mul(&Poly::from_i64(&ring, -1))]];
    for m in 1..n {
        let prev = &levels[m - 1];
        let bt = &b * &th;
        let extra = &b1 * &th * Poly::from_i64(&ring, m as i64 - 1) + &b * &th1 * Poly::from_i64(&ring, m as i64);
        // sums[i] = E_{m+1,i+1} + E_{m+1,i}
        let sums = prev
            .iter()
            .map(|e| Ok(gens.shift(e)?.mul(&bt).sub(&e.mul(&extra))))
            .collect::<Result<Vec<_>>>()?;
        let top = m + 1;
        let mut next: Vec<Option<Combo>> = vec![None; top + 1];
        let k = top / 2;
        next[k] = Some(if top % 2 == 0 { gens.zero() } else { middle_term(&jet, &gens, &levels, k)? });
        for i in k..top {
            let e = sums[i].sub(next[i].as_ref().unwrap());
            next[i + 1] = Some(e);
        }
        for i in (0..k).rev() {
            let e = sums[i].sub(next[i + 1].as_ref().unwrap());
            next[i] = Some(e);
        }
        levels.push(next.into_iter().map(Option::unwrap).collect());
    }

    let mut certificates = Vec::with_capacity(n + 1);
    let mut recurrence = Vec::with_capacity(n + 1);
    let extra = &b1 * &th * Poly::from_i64(&ring, n as i64 - 1) + &b * &th1 * Poly::from_i64(&ring, n as i64);
    for (i, c) in levels[n - 1].iter().enumerate() {
        let direct = e_poly(&jet, n, i);
        if c.value != direct {
            return Err(Error::IdentityFailed(format!("construction of E_{{{n},{i}}} disagrees with its definition")));
        }
        certificates.push(gens.certificate("prop42", format!("N={n}, i={i}"), "Theta", c));
        let lhs = &b * &th * &jet.shift(&direct)?;
        let rhs = e_poly(&jet, n + 1, i + 1) + e_poly(&jet, n + 1, i) + &extra * &direct;
        recurrence.push(lhs == rhs);
    }
    Ok(Prop42Report { n, order, certificates, recurrence })
}

/// `E_{2k+1,k}` from `E_{k,0}`, through the identity of `verify_lemma_4_3`
/// with `t = b^(k-1) θ^k`, `A1 = a^(k)`, `B1 = b^(k)`, `A2 = a`, `B2 = b`.
fn middle_term(jet: &JetRing, gens: &Gens, levels: &[Vec<Combo>], k: usize) -> Result<Combo> {
    let (a, b) = (|i| jet.v("a", i), |i| jet.v("b", i));
    let th = jet.v("theta", 0);
    let t = b(0).pow(k as u32 - 1) * th.pow(k as u32);
    let t1 = jet.shift(&t)?;
    let (bk, bk1, b0, b01) = (b(k), b(k + 1), b(0), b(1));
    let theta_l = &levels[k - 1][0];
    let lhs = gens
        .shift(theta_l)?
        .mul(&(&t * &bk * &b0))
        .sub(&theta_l.mul(&(&t * &bk * &b01 + &t * &bk1 * &b0 + &t1 * &bk * &b0)));
    // θ t^2 (b^(k))^2 (a' b - a b') = t^2 (b^(k))^2 Θ
    let correction = gens.generator(0).mul(&(&t * &t * &bk * &bk));
    let out = lhs.mul(&th).add(&correction);
    debug_assert_eq!(out.value, {
        let n = 2 * k + 1;
        b0.pow(n as u32 - 1) * th.pow(n as u32) * (b(k) * a(k + 1) - a(k) * b(k + 1))
    });
    Ok(out)
}

/// Certifies `θ^(m) f^(m+1) ∈ [θ f]` for `0 <= m <= n` in the jet ring on
/// `theta, f`.
pub fn verify_theta_lemma(n: usize) -> Result<Vec<Certificate>> {
    let jet = JetRing::new(Field::Rationals, ["theta", "f"], n + 1)?;
    let ring = jet.ring().clone();
    let (f, f1) = (jet.v("f", 0), jet.v("f", 1));
    let gens = Gens::new(&jet, &jet.v("theta", 0) * &f);
    let mut x = gens.generator(0);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let expected = jet.v("theta", m) * f.pow(m as u32 + 1);
        if x.value != expected {
            return Err(Error::IdentityFailed(format!("theta lemma at n = {m}")));
        }
        out.push(gens.certificate("thetalemma", format!("n={m}"), "G", &x));
        if m < n {
            // X_{m+1} = f X_m' - (m+1) f' X_m
            let c = &f1 * &Poly::from_i64(&ring, m as i64 + 1);
            x = gens.shift(&x)?.mul(&f).sub(&x.mul(&c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Ring;
    use crate::algebra::syntax::poly;

    /// Sends every jet variable `s_i` to the i-th derivative of `funcs[s]`.
    fn realize(jet: &JetRing, funcs: &[(&str, Poly)]) -> Vec<Poly> {
        let mut images = Vec::new();
        for s in jet.symbols() {
            let mut f = funcs.iter().find(|(n, _)| n == s).unwrap().1.clone();
            for _ in 0..=jet.order() {
                images.push(f.clone());
                f = f.partial(0);
            }
        }
        images
    }

    #[test]
    fn lemma_43_identity() {
        let rep = verify_lemma_4_3(2).unwrap();
        assert!(rep.holds());
        assert!(verify_lemma_4_3(1).is_err());
        let ones = vec![rep.lhs.field().one(); rep.lhs.ring().nvars()];
        assert!(rep.lhs.evaluate(&ones).is_zero() && rep.rhs.evaluate(&ones).is_zero());
    }

    #[test]
    fn lemma_43_consequence_vanishes_when_theta_does() {
        let rep = verify_lemma_4_3(2).unwrap();
        let jet = JetRing::new(Field::Rationals, ["t", "A1", "A2", "B1", "B2"], 2).unwrap();
        let x = Ring::new(Field::Rationals, ["x"]).unwrap();
        let (q, b1, b2) = (poly("x^2-3*x+1/2", &x), poly("2*x+5", &x), poly("x^3-7", &x));
        let funcs = [
            ("t", poly("x^2+1", &x)),
            ("A1", &q * &b1),
            ("A2", &q * &b2),
            ("B1", b1),
            ("B2", b2),
        ];
        let images = realize(&jet, &funcs);
        assert!(rep.rhs.substitute(&x, &images).unwrap().is_zero());
    }

    #[test]
    fn prop_42_small_n() {
        for n in 1..=4 {
            let rep = verify_prop_4_2(n, n + 2).unwrap();
            assert!(rep.holds(), "N = {n}: {:?}", rep.failures());
            assert_eq!(rep.certificates.len(), n + 1);
        }
        let rep = verify_prop_4_2(4, 6).unwrap();
        assert!(rep.certificates[2].target.is_zero());
        assert!(verify_prop_4_2(3, 3).is_err());
    }

    #[test]
    fn two_term_recurrence_only_modulo_e() {
        let jet = JetRing::new(Field::Rationals, ["a", "b", "theta"], 5).unwrap();
        let r = jet.ring();
        let e = e_poly(&jet, 3, 1);
        let lhs = poly("b*theta", r) * jet.shift(&e).unwrap();
        assert_ne!(lhs, e_poly(&jet, 4, 2) + e_poly(&jet, 4, 1));
    }

    #[test]
    fn theta_lemma() {
        let certs = verify_theta_lemma(3).unwrap();
        assert_eq!(certs.len(), 4);
        assert!(certs.iter().all(Certificate::replay));
        let r = certs[1].target.ring();
        assert_eq!(certs[1].cofactors[0], poly("-f_1", r));
        assert_eq!(certs[1].cofactors[1], poly("f", r));
        assert!(certs[0].to_text().contains("target: theta*f"));
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let mut c = verify_theta_lemma(1).unwrap().pop().unwrap();
        let r = c.target.ring().clone();
        c.cofactors[0] = &c.cofactors[0] + &poly("1", &r);
        assert!(!c.replay());
    }
}
