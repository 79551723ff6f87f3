use diffleaf::algebra::{hs_from_derivation, parse_poly, Derivation, Field, Monomial, Poly, Ring, RingRef};
use diffleaf::constants::{extend_constant, is_constant_fraction};
use diffleaf::differential::{diff_closure, hs_trajectory, is_differential_ideal, is_hs_invariant, trajectory};
use diffleaf::groebner::{is_groebner_basis, Ideal, MonomialOrder};
use diffleaf::linalg::{span_basis, MonomialBasis};
use diffleaf::schemes::{projective_field_from_matrix, u_delta, AffineDiffScheme, OpenSet};
use proptest::prelude::*;

fn qxy() -> RingRef {
    Ring::new(Field::Rationals, ["x", "y"]).unwrap()
}

fn p(src: &str, r: &RingRef) -> Poly {
    parse_poly(src, r).unwrap()
}

/// Coefficients on the monomials of degree <= 2 in x, y.
fn quad(r: &RingRef, coeffs: &[i64]) -> Poly {
    let basis = MonomialBasis::up_to_degree(r, 2);
    let terms: Vec<(Monomial, _)> =
        basis.monomials().iter().zip(coeffs).map(|(m, &c)| (m.clone(), r.field().from_i64(c))).collect();
    Poly::from_terms(r, terms)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 6)
}

/// Membership by linear algebra on the multiples `m g` of total degree <= bound.
fn member_up_to(f: &Poly, gens: &[Poly], bound: u32) -> bool {
    let r = f.ring();
    let mut span = Vec::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > bound {
            continue;
        }
        for m in MonomialBasis::up_to_degree(r, bound - dg).monomials() {
            span.push(g.mul_term(m, &r.field().one()));
        }
    }
    let before = span_basis(r, &span).len();
    span.push(f.clone());
    span_basis(r, &span).len() == before
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn membership_agrees_with_linear_algebra(a in coeffs(), b in coeffs(), h1 in coeffs(), h2 in coeffs(), f in coeffs()) {
        let r = qxy();
        let (g1, g2) = (quad(&r, &a), quad(&r, &b));
        let i = Ideal::new(&r, vec![g1.clone(), g2.clone()]).unwrap();
        let member = &quad(&r, &h1) * &g1 + &quad(&r, &h2) * &g2;
        prop_assert!(i.contains(&member));
        prop_assert!(member_up_to(&member, &[g1.clone(), g2.clone()], 4));
        let other = quad(&r, &f);
        if member_up_to(&other, &[g1, g2], 6) {
            prop_assert!(i.contains(&other));
        }
    }

    #[test]
    fn bases_satisfy_buchberger_criterion(a in coeffs(), b in coeffs(), c in coeffs()) {
        let r = qxy();
        let gens = vec![quad(&r, &a), quad(&r, &b), quad(&r, &c)];
        let i = Ideal::new(&r, gens.clone()).unwrap();
        prop_assert!(is_groebner_basis(i.groebner_basis(), &MonomialOrder::DegRevLex));
        prop_assert!(is_groebner_basis(&i.groebner_basis_under(&MonomialOrder::Lex), &MonomialOrder::Lex));
        for g in &gens {
            prop_assert!(i.contains(g));
        }
    }

    #[test]
    fn saturation_and_intersection(a in coeffs(), b in coeffs(), c in coeffs()) {
        let r = qxy();
        let i = Ideal::new(&r, vec![quad(&r, &a), quad(&r, &b)]).unwrap();
        let j = Ideal::new(&r, vec![quad(&r, &c)]).unwrap();
        let f = p("x", &r);
        let sat = i.saturation(&f).unwrap();
        prop_assert!(sat.contains_ideal(&i));
        prop_assert!(sat.saturation(&f).unwrap().same_as(&sat));
        let both = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&both) && j.contains_ideal(&both));
        prop_assert!(both.contains_ideal(&i.product(&j).unwrap()));
    }

    #[test]
    fn closure_is_a_differential_hull(a in coeffs(), b in coeffs(), g in coeffs()) {
        let r = qxy();
        let d = Derivation::new(&r, vec![quad(&r, &a), quad(&r, &b)]).unwrap();
        let i = Ideal::new(&r, vec![quad(&r, &g)]).unwrap();
        let c = diff_closure(&i, &d).unwrap();
        prop_assert!(c.terminated);
        prop_assert!(c.closure.contains_ideal(&i));
        prop_assert!(is_differential_ideal(&c.closure, &d).unwrap());
        let again = diff_closure(&c.closure, &d).unwrap();
        prop_assert!(again.closure.same_as(&c.closure) && again.rounds == 0);
    }

    #[test]
    fn trajectories_are_differential_and_inside(a in coeffs(), b in coeffs(), al in -2i64..=2, be in -2i64..=2) {
        let r = qxy();
        let d = Derivation::new(&r, vec![quad(&r, &a), quad(&r, &b)]).unwrap();
        let prime = Ideal::new(&r, vec![p(&format!("x-({al})"), &r), p(&format!("y-({be})"), &r)]).unwrap();
        let t = trajectory(&prime, &d, None, None).unwrap();
        prop_assert!(prime.contains_ideal(&t.candidate));
        if t.is_exact() {
            prop_assert!(is_differential_ideal(&t.candidate, &d).unwrap());
            if is_differential_ideal(&prime, &d).unwrap() {
                prop_assert!(t.candidate.same_as(&prime) && t.rounds == 0);
            }
            let h = hs_from_derivation(&d, 8).unwrap();
            let th = hs_trajectory(&prime, &h, None, None).unwrap();
            prop_assert!(th.is_exact());
            prop_assert!(is_hs_invariant(&th.candidate, &h).unwrap());
            prop_assert!(th.candidate.same_as(&t.candidate));
        }
    }

    #[test]
    fn invariant_hull_is_a_closure_operator(a in coeffs(), b in coeffs(), f in coeffs(), g in coeffs()) {
        let r = qxy();
        let d = Derivation::new(&r, vec![quad(&r, &a), quad(&r, &b)]).unwrap();
        let x = AffineDiffScheme::affine_space(d);
        let u = OpenSet::basic(quad(&r, &f));
        let v = u.union(&OpenSet::basic(quad(&r, &g))).unwrap();
        let hu = u_delta(&x, &u).unwrap();
        let hv = u_delta(&x, &v).unwrap();
        prop_assert!(u.subset_of_in(&x, &hu).unwrap());
        prop_assert!(u_delta(&x, &hu).unwrap().same_set_in(&x, &hu).unwrap());
        prop_assert!(hu.subset_of_in(&x, &hv).unwrap());
    }

    #[test]
    fn projective_charts_agree(n in 1usize..=2, entries in prop::collection::vec(-3i64..=3, 9)) {
        let f = Field::Rationals;
        let a: Vec<Vec<_>> = (0..=n).map(|i| (0..=n).map(|j| f.from_i64(entries[i * 3 + j])).collect()).collect();
        let v = projective_field_from_matrix(f, n, a).unwrap();
        for i in 0..=n {
            for l in 0..=n {
                prop_assert!(i == l || v.charts_agree(i, l).unwrap());
            }
        }
    }
}

#[test]
fn extension_families_are_constant_and_unique() {
    let r = qxy();
    let cases = [
        (["x", "y"], "x", "y"),
        (["-2*y", "3*x^2"], "x^3+y^2", "1"),
        (["y", "-x"], "x^2+y^2", "x^2+y^2+1"),
        (["x", "2*y"], "x^2", "y"),
    ];
    for (imgs, a, b) in cases {
        let d = Derivation::new(&r, imgs.iter().map(|s| p(s, &r)).collect()).unwrap();
        let x = AffineDiffScheme::affine_space(d);
        let (a, b) = (p(a, &r), p(b, &r));
        let short = extend_constant(&x, &a, &b, 2).unwrap();
        let long = extend_constant(&x, &a, &b, 5).unwrap();
        for (an, bn) in long.section.patches() {
            assert!(is_constant_fraction(&x, an, bn).unwrap());
        }
        for i in 0..short.section.patches().len() {
            assert_eq!(short.section.patches()[i], long.section.patches()[i]);
            assert!(long.section.agrees_with(i, &a, &b));
        }
    }
}

#[test]
fn closure_stops_right_after_the_last_needed_generator() {
    let r = qxy();
    let d = Derivation::new(&r, vec![p("y", &r), p("-x", &r)]).unwrap();
    let c = diff_closure(&Ideal::new(&r, vec![p("x", &r)]).unwrap(), &d).unwrap();
    assert_eq!(c.rounds, 1);
    let gens = c.closure.generators();
    let without_last = Ideal::new(&r, gens[..gens.len() - 1].to_vec()).unwrap();
    assert!(!is_differential_ideal(&without_last, &d).unwrap());
}
