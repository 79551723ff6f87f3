//! Buchberger's algorithm with the Gebauer-Moeller pair criteria.
//!
//! Internally polynomials are plain term vectors sorted decreasing under the
//! working order, so the leading term is always `terms[0]`.

use std::cmp::Ordering;

use crate::algebra::coeff::Coefficient;
use crate::algebra::monomial::{Monomial, MonomialOrder};
use crate::algebra::poly::{Poly, RingRef};

pub(crate) type Terms = Vec<(Monomial, Coefficient)>;

pub(crate) fn to_ordered(p: &Poly, ord: &MonomialOrder) -> Terms {
    let mut t = p.terms().to_vec();
    if *ord != MonomialOrder::DegRevLex {
        t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    }
    t
}

pub(crate) fn from_ordered(ring: &RingRef, t: Terms, ord: &MonomialOrder) -> Poly {
    if *ord == MonomialOrder::DegRevLex {
        Poly::from_sorted_terms(ring, t)
    } else {
        Poly::from_terms(ring, t)
    }
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.inverse().expect("nonzero leading coefficient");
            for (_, c) in t.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
}

/// `f - c * m * g`, all sorted under `ord`.
fn sub_scaled(f: &[(Monomial, Coefficient)], c: &Coefficient, m: &Monomial, g: &[(Monomial, Coefficient)], ord: &MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gm: Option<(Monomial, Coefficient)> = g.first().map(|(gm, gc)| (gm.mul(m), gc * c));
    while i < f.len() {
        let Some((gmon, gcoef)) = &gm else { break };
        match ord.cmp(&f[i].0, gmon) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gmon.clone(), -gcoef));
                j += 1;
                gm = g.get(j).map(|(gm, gc)| (gm.mul(m), gc * c));
            }
            Ordering::Equal => {
                let v = &f[i].1 - gcoef;
                if !v.is_zero() {
                    out.push((f[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|(gm, gc)| (gm.mul(m), gc * c));
            }
        }
    }
    out.extend(f[i..].iter().cloned());
    if let Some((gmon, gcoef)) = gm {
        out.push((gmon, -&gcoef));
        for (gmon, gc) in &g[j + 1..] {
            out.push((gmon.mul(m), -&(gc * c)));
        }
    }
    out
}

/// Full reduction (leading and tail terms) of `f` by monic `basis`.
pub(crate) fn reduce(f: Terms, basis: &[&Terms], ord: &MonomialOrder) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut cur = f;
    let mut start = 0;
    'outer: while start < cur.len() {
        let (lm, lc) = (&cur[start].0, &cur[start].1);
        for g in basis {
            let glm = &g[0].0;
            if glm.divides(lm) {
                let q = glm.quotient_of(lm);
                let lc = lc.clone();
                cur = sub_scaled(&cur[start..], &lc, &q, g, ord);
                start = 0;
                continue 'outer;
            }
        }
        rem.push(cur[start].clone());
        start += 1;
    }
    rem
}

fn lcm_of(a: &Terms, b: &Terms) -> Monomial {
    a[0].0.lcm(&b[0].0)
}

fn s_poly(a: &Terms, b: &Terms, ord: &MonomialOrder) -> Terms {
    let l = lcm_of(a, b);
    let ma = a[0].0.quotient_of(&l);
    let mb = b[0].0.quotient_of(&l);
    let one = a[0].1.field().one();
    let left: Terms = a.iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
    sub_scaled(&left, &one, &mb, b, ord)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer-Moeller update after adding `polys[h]`.
fn update(polys: &[Terms], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = &polys[h][0].0;
    let mut cands: Vec<Pair> = active.iter().map(|&g| Pair { i: g, j: h, lcm: lh.lcm(&polys[g][0].0) }).collect();

    // chain criterion among new pairs, then product criterion
    let mut keep: Vec<Pair> = Vec::new();
    while let Some(p) = cands.pop() {
        let coprime = lh.is_coprime(&polys[p.i][0].0);
        let dominated = cands.iter().chain(keep.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            keep.push(p);
        }
    }
    keep.retain(|p| !lh.is_coprime(&polys[p.i][0].0));

    pairs.retain(|p| {
        !(lh.divides(&p.lcm) && lh.lcm(&polys[p.i][0].0) != p.lcm && lh.lcm(&polys[p.j][0].0) != p.lcm)
    });
    pairs.extend(keep);

    active.retain(|&g| !lh.divides(&polys[g][0].0));
    active.push(h);
}

/// Reduced Groebner basis of `gens` under `ord`, monic and sorted by
/// increasing leading monomial. The zero ideal gives an empty basis.
pub fn groebner_basis(ring: &RingRef, gens: &[Poly], ord: &MonomialOrder) -> Vec<Poly> {
    let mut polys: Vec<Terms> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // seed with interreduced input so the unit ideal short-circuits early
    let mut input: Vec<Terms> = gens.iter().filter(|p| !p.is_zero()).map(|p| to_ordered(p, ord)).collect();
    input.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    for f in input {
        let basis: Vec<&Terms> = active.iter().map(|&i| &polys[i]).collect();
        let mut r = reduce(f, &basis, ord);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        if r[0].0.is_one() {
            return vec![Poly::one(ring)];
        }
        polys.push(r);
        let h = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        // normal selection strategy
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| ord.cmp(&a.lcm, &b.lcm))
            .unwrap();
        let p = pairs.swap_remove(k);
        let s = s_poly(&polys[p.i], &polys[p.j], ord);
        let basis: Vec<&Terms> = active.iter().map(|&i| &polys[i]).collect();
        let mut r = reduce(s, &basis, ord);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        if r[0].0.is_one() {
            return vec![Poly::one(ring)];
        }
        polys.push(r);
        let h = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, h);
    }

    interreduce(ring, active.into_iter().map(|i| polys[i].clone()).collect(), ord)
}

fn interreduce(ring: &RingRef, mut g: Vec<Terms>, ord: &MonomialOrder) -> Vec<Poly> {
    g.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    // minimal basis
    let mut minimal: Vec<Terms> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let lm = &p[0].0;
        let redundant = g.iter().enumerate().any(|(l, q)| l != k && q[0].0.divides(lm) && (q[0].0 != *lm || l < k));
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Terms> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p).collect();
        let head = minimal[k][0].clone();
        let tail = reduce(minimal[k][1..].to_vec(), &others, ord);
        let mut t = vec![head];
        t.extend(tail);
        make_monic(&mut t);
        out.push(from_ordered(ring, t, ord));
    }
    out
}

/// Remainder of `f` on division by a reduced basis (given as polys under `ord`).
pub fn normal_form(f: &Poly, basis: &[Poly], ord: &MonomialOrder) -> Poly {
    if basis.is_empty() || f.is_zero() {
        return f.clone();
    }
    let b: Vec<Terms> = basis.iter().map(|p| to_ordered(p, ord)).collect();
    let refs: Vec<&Terms> = b.iter().collect();
    from_ordered(f.ring(), reduce(to_ordered(f, ord), &refs, ord), ord)
}

/// Buchberger's criterion: every S-polynomial of `basis` reduces to zero.
pub fn is_groebner_basis(basis: &[Poly], ord: &MonomialOrder) -> bool {
    let b: Vec<Terms> = basis.iter().filter(|p| !p.is_zero()).map(|p| to_ordered(p, ord)).collect();
    let mut monic = b.clone();
    for t in monic.iter_mut() {
        make_monic(t);
    }
    let refs: Vec<&Terms> = monic.iter().collect();
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            if !reduce(s_poly(&monic[i], &monic[j], ord), &refs, ord).is_empty() {
                return false;
            }
        }
    }
    true
}
