//! Exact dense linear algebra over a coefficient field, plus coordinates of
//! polynomials on a finite monomial basis.

use std::collections::HashMap;

use crate::algebra::coeff::{Coefficient, Field};
use crate::algebra::monomial::{degrevlex, Monomial};
use crate::algebra::poly::{Poly, RingRef};

pub type Row = Vec<Coefficient>;

/// In-place reduced row echelon form; returns the pivot columns. Zero rows
/// are dropped.
pub fn rref(rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().unwrap();
        if !inv.is_one() {
            for v in rows[r].iter_mut() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : A v = 0}` for `A` given by rows with `ncols` columns.
/// Basis vectors are the standard ones attached to free columns.
pub fn nullspace(rows: &[Row], ncols: usize, field: Field) -> Vec<Row> {
    let mut m: Vec<Row> = rows.to_vec();
    let pivots = if m.is_empty() { Vec::new() } else { rref(&mut m) };
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); ncols];
            v[fc] = field.one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -&row[fc];
            }
            v
        })
        .collect()
}

/// Coordinates on a fixed list of monomials (sorted decreasing degrevlex).
pub struct MonomialBasis {
    ring: RingRef,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    /// All monomials of total degree `<= deg`.
    pub fn up_to_degree(ring: &RingRef, deg: u32) -> MonomialBasis {
        let mut monos = Vec::new();
        let n = ring.nvars();
        let mut cur = vec![0u32; n];
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
        rec(0, deg, &mut cur, &mut monos);
        MonomialBasis::from_monomials(ring, monos)
    }

    /// The monomials occurring in any of `polys`.
    pub fn spanning(ring: &RingRef, polys: &[Poly]) -> MonomialBasis {
        let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().iter().map(|(m, _)| m.clone())).collect();
        monos.sort_by(|a, b| degrevlex(b, a));
        monos.dedup();
        MonomialBasis::from_monomials(ring, monos)
    }

    fn from_monomials(ring: &RingRef, mut monos: Vec<Monomial>) -> MonomialBasis {
        monos.sort_by(|a, b| degrevlex(b, a));
        monos.dedup();
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { ring: ring.clone(), monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    /// Coordinates of `p`; `None` if `p` has a monomial outside the basis.
    pub fn coords(&self, p: &Poly) -> Option<Row> {
        let mut v = vec![self.ring.field().zero(); self.monos.len()];
        for (m, c) in p.terms() {
            v[*self.index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn poly(&self, v: &[Coefficient]) -> Poly {
        let terms: Vec<_> = self
            .monos
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }
}

/// Echelon basis of the span of `polys`: reduced row echelon form over the
/// degrevlex-decreasing monomial index, so the output is canonical.
pub fn span_basis(ring: &RingRef, polys: &[Poly]) -> Vec<Poly> {
    let nonzero: Vec<Poly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let basis = MonomialBasis::spanning(ring, &nonzero);
    let mut rows: Vec<Row> = nonzero.iter().map(|p| basis.coords(p).unwrap()).collect();
    rref(&mut rows);
    rows.iter().map(|r| basis.poly(r)).collect()
}

/// Compares two echelon bases for equality of spans.
pub fn same_span(ring: &RingRef, a: &[Poly], b: &[Poly]) -> bool {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    let joint = span_basis(ring, &all).len();
    joint == span_basis(ring, a).len() && joint == span_basis(ring, b).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Ring;
    use crate::algebra::syntax::poly;

    #[test]
    fn nullspace_of_rank_one() {
        let f = Field::Rationals;
        let rows = vec![vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)]];
        let ns = nullspace(&rows, 3, f);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = v.iter().zip(&rows[0]).fold(f.zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn empty_matrix_has_full_nullspace() {
        let f = Field::prime(5).unwrap();
        assert_eq!(nullspace(&[], 3, f).len(), 3);
    }

    #[test]
    fn span_is_canonical() {
        let r = Ring::new(Field::Rationals, ["x", "y"]).unwrap();
        let a = span_basis(&r, &[poly("x+y", &r), poly("x-y", &r), poly("2*x", &r)]);
        let b = span_basis(&r, &[poly("y", &r), poly("x", &r)]);
        assert_eq!(a, b);
        assert!(same_span(&r, &a, &b));
        assert_eq!(MonomialBasis::up_to_degree(&r, 2).len(), 6);
    }
}
