//! Vector fields on `P^n` induced by a matrix, and their rational leaves.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::coeff::{Coefficient, Field};
use crate::algebra::derivation::Derivation;
use crate::algebra::monomial::Monomial;
use crate::algebra::poly::{Poly, Ring, RingRef};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::nullspace;
use crate::schemes::affine::AffineDiffScheme;

/// Charts are checked against each other up to this dimension.
pub const MAX_VALIDATED_DIM: usize = 3;

#[derive(Debug, Clone)]
pub struct ProjectiveVectorField {
    field: Field,
    n: usize,
    matrix: Vec<Vec<Coefficient>>,
    charts: Vec<Derivation>,
}

/// Builds the chart derivations `∂u_k = L_k(u) - L_i(u) u_k` (with `u_i = 1`)
/// on the standard charts `U_0, ..., U_n`.
pub fn projective_field_from_matrix(field: Field, n: usize, matrix: Vec<Vec<Coefficient>>) -> Result<ProjectiveVectorField> {
    if matrix.len() != n + 1 || matrix.iter().any(|row| row.len() != n + 1) {
        return Err(Error::Invalid(format!("matrix must be {}x{}", n + 1, n + 1)));
    }
    if matrix.iter().flatten().any(|c| c.field() != field) {
        return Err(Error::SignatureMismatch(format!("matrix entries not in {field}")));
    }
    let charts = (0..=n).map(|i| chart_derivation(field, &matrix, i)).collect::<Result<Vec<_>>>()?;
    let v = ProjectiveVectorField { field, n, matrix, charts };
    if n <= MAX_VALIDATED_DIM {
        for i in 0..=n {
            for l in 0..=n {
                if i != l && !v.charts_agree(i, l)? {
                    return Err(Error::IncompatiblePatches(i, l));
                }
            }
        }
    }
    Ok(v)
}

fn chart_ring(field: Field, n: usize, i: usize) -> Result<RingRef> {
    Ring::new(field, (0..=n).filter(|&k| k != i).map(|k| format!("u{k}")))
}

fn chart_derivation(field: Field, a: &[Vec<Coefficient>], i: usize) -> Result<Derivation> {
    let n = a.len() - 1;
    let ring = chart_ring(field, n, i)?;
    let coord = |k: usize| -> Poly {
        if k == i {
            Poly::one(&ring)
        } else {
            Poly::var(&ring, if k < i { k } else { k - 1 })
        }
    };
    let linear = |k: usize| -> Poly {
        (0..=n).fold(Poly::zero(&ring), |acc, j| acc + coord(j).scale(&a[k][j]))
    };
    let li = linear(i);
    let images = (0..=n).filter(|&k| k != i).map(|k| linear(k) - &li * &coord(k)).collect();
    Derivation::new(&ring, images)
}

impl ProjectiveVectorField {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[Vec<Coefficient>] {
        &self.matrix
    }

    pub fn chart(&self, i: usize) -> &Derivation {
        &self.charts[i]
    }

    pub fn charts(&self) -> &[Derivation] {
        &self.charts
    }

    pub fn chart_scheme(&self, i: usize) -> AffineDiffScheme {
        AffineDiffScheme::affine_space(self.charts[i].clone())
    }

    fn coord(&self, i: usize, k: usize) -> Poly {
        let ring = self.charts[i].ring();
        if k == i {
            Poly::one(ring)
        } else {
            Poly::var(ring, if k < i { k } else { k - 1 })
        }
    }

    fn dcoord(&self, i: usize, k: usize) -> Poly {
        if k == i {
            Poly::zero(self.charts[i].ring())
        } else {
            self.charts[i].image(if k < i { k } else { k - 1 }).clone()
        }
    }

    /// On `U_i ∩ U_l`, with `v_j = u_j / u_l`, checks
    /// `u_l^2 ∂_i(u_j/u_l) = u_l^2 (∂_l v_j)(u/u_l)` for all `j != l`.
    pub fn charts_agree(&self, i: usize, l: usize) -> Result<bool> {
        let ring_i = self.charts[i].ring().clone();
        let ul = self.coord(i, l);
        for j in (0..=self.n).filter(|&j| j != l) {
            let lhs = &self.dcoord(i, j) * &ul - &self.coord(i, j) * &self.dcoord(i, l);
            let img = self.dcoord(l, j);
            let mut rhs = Poly::zero(&ring_i);
            for (m, c) in img.terms() {
                let e = m.degree();
                if e > 2 {
                    return Ok(false);
                }
                let mut term = Poly::constant(&ring_i, c.clone()) * ul.pow(2 - e);
                for (pos, &exp) in m.0.iter().enumerate() {
                    let k = if pos < l { pos } else { pos + 1 };
                    if exp > 0 {
                        term = term * self.coord(i, k).pow(exp);
                    }
                }
                rhs = rhs + term;
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for ProjectiveVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "P({}, {}, [{}])", self.n, self.field, rows.join(","))
    }
}

/// Coefficients of `det(t I - A)`, highest degree first, by Berkowitz's
/// division-free recursion.
pub fn characteristic_polynomial(a: &[Vec<Coefficient>], field: Field) -> Vec<Coefficient> {
    let n = a.len();
    if n == 0 {
        return vec![field.one()];
    }
    let sub: Vec<Vec<Coefficient>> = a[1..].iter().map(|r| r[1..].to_vec()).collect();
    let inner = characteristic_polynomial(&sub, field);
    // first column of the Toeplitz factor: 1, -a, -R C, -R A1 C, ...
    let mut col = vec![field.one(), -&a[0][0]];
    let mut v: Vec<Coefficient> = a[1..].iter().map(|r| r[0].clone()).collect();
    for _ in 0..n.saturating_sub(1) {
        let rc = a[0][1..].iter().zip(&v).fold(field.zero(), |acc, (x, y)| &acc + &(x * y));
        col.push(-&rc);
        v = sub.iter().map(|r| r.iter().zip(&v).fold(field.zero(), |acc, (x, y)| &acc + &(x * y))).collect();
    }
    (0..=n)
        .map(|row| {
            (0..n).filter(|&c| c <= row).fold(field.zero(), |acc, c| &acc + &(&col[row - c] * &inner[c]))
        })
        .collect()
}

pub fn evaluate_univariate(coeffs: &[Coefficient], t: &Coefficient) -> Coefficient {
    coeffs.iter().fold(t.field().zero(), |acc, c| &(&acc * t) + c)
}

/// Quotient by `t - r`; the remainder must be zero.
fn divide_linear(coeffs: &[Coefficient], r: &Coefficient) -> Vec<Coefficient> {
    let mut out: Vec<Coefficient> = Vec::with_capacity(coeffs.len() - 1);
    let mut acc = r.field().zero();
    for c in &coeffs[..coeffs.len() - 1] {
        acc = &(&acc * r) + c;
        out.push(acc.clone());
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Candidate roots in the field: the rational-root theorem over `QQ`, all
/// elements over `GF(p)`.
pub fn root_candidates(coeffs: &[Coefficient], field: Field) -> Vec<Coefficient> {
    if let Some(all) = field.elements() {
        return all;
    }
    let rats: Vec<BigRational> = coeffs.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let den = rats.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut out = vec![field.zero()];
    let Some(last) = ints.iter().rev().find(|c| !c.is_zero()) else { return out };
    let lead = ints.iter().find(|c| !c.is_zero()).unwrap();
    for p in divisors(last) {
        for q in divisors(lead) {
            let r = BigRational::new(p.clone(), q);
            out.push(Coefficient::Rational(r.clone()));
            out.push(Coefficient::Rational(-r));
        }
    }
    out.sort_by_key(|c| c.to_string());
    out.dedup();
    out
}

#[derive(Debug, Clone)]
pub struct ProjectiveLeaf {
    /// Homogeneous coordinates, first nonzero entry equal to 1.
    pub point: Vec<Coefficient>,
    pub eigenvalue: Coefficient,
    /// Chart in which the leaf was verified.
    pub chart: usize,
    pub verified: bool,
}

impl ProjectiveLeaf {
    pub fn point_string(&self) -> String {
        format!("[{}]", self.point.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":"))
    }
}

#[derive(Debug, Clone)]
pub struct ProjectiveLeavesReport {
    pub leaves: Vec<ProjectiveLeaf>,
    /// `det(t I - A)`, highest degree first.
    pub char_poly: Vec<Coefficient>,
    /// Eigenvalues in the field, with multiplicity.
    pub eigenvalues: Vec<Coefficient>,
    /// What is left of the characteristic polynomial after removing the
    /// linear factors over the field.
    pub residual: Vec<Coefficient>,
    /// The residual has no root and degree at most 3, hence is irreducible.
    pub residual_irreducible: bool,
}

impl ProjectiveLeavesReport {
    pub fn residual_degree(&self) -> usize {
        self.residual.len() - 1
    }

    pub fn extension_note(&self) -> Option<String> {
        match self.residual_degree() {
            0 => None,
            d if self.residual_irreducible => Some(format!("degree-{d} extension required")),
            d => Some(format!("extension of degree at most {d} required")),
        }
    }
}

/// Leaves `[v]` for eigenvectors `v` of `A` over the base field, each checked
/// with the leaf test in a chart where `v_i != 0`.
pub fn projective_rational_leaves(v: &ProjectiveVectorField) -> Result<ProjectiveLeavesReport> {
    let field = v.field;
    let size = v.n + 1;
    let char_poly = characteristic_polynomial(&v.matrix, field);
    let mut residual = char_poly.clone();
    let mut eigenvalues = Vec::new();
    for r in root_candidates(&char_poly, field) {
        while residual.len() > 1 && evaluate_univariate(&residual, &r).is_zero() {
            residual = divide_linear(&residual, &r);
            eigenvalues.push(r.clone());
        }
    }
    let mut leaves = Vec::new();
    let mut distinct = eigenvalues.clone();
    distinct.dedup();
    for lambda in &distinct {
        let rows: Vec<Vec<Coefficient>> = (0..size)
            .map(|i| (0..size).map(|j| if i == j { &v.matrix[i][j] - lambda } else { v.matrix[i][j].clone() }).collect())
            .collect();
        for vec in nullspace(&rows, size, field) {
            let i = vec.iter().position(|c| !c.is_zero()).unwrap();
            let inv = vec[i].inverse().unwrap();
            let point: Vec<Coefficient> = vec.iter().map(|c| c * &inv).collect();
            let chart = v.chart(i);
            let gens = (0..size)
                .filter(|&k| k != i)
                .map(|k| v.coord(i, k) - Poly::constant(chart.ring(), point[k].clone()))
                .collect();
            let p = Ideal::new(chart.ring(), gens)?;
            let verified = v.chart_scheme(i).is_leaf(&p)?;
            leaves.push(ProjectiveLeaf { point, eigenvalue: lambda.clone(), chart: i, verified });
        }
    }
    let residual_irreducible = residual.len() > 1 && residual.len() <= 4;
    Ok(ProjectiveLeavesReport { leaves, char_poly, eigenvalues, residual, residual_irreducible })
}

/// Renders univariate coefficients (highest first) as a polynomial in `t`.
pub fn univariate_poly(coeffs: &[Coefficient], field: Field) -> Poly {
    let ring = Ring::new(field, ["t"]).unwrap();
    let d = coeffs.len() as u32 - 1;
    Poly::from_terms(&ring, coeffs.iter().enumerate().map(|(k, c)| (Monomial(vec![d - k as u32]), c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(field: Field, rows: &[&[i64]]) -> Vec<Vec<Coefficient>> {
        rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect()
    }

    fn field_of(rows: &[&[i64]], field: Field) -> ProjectiveVectorField {
        projective_field_from_matrix(field, rows.len() - 1, mat(field, rows)).unwrap()
    }

    #[test]
    fn chart_fields() {
        let q = Field::Rationals;
        let id = field_of(&[&[1, 0], &[0, 1]], q);
        assert!(id.charts().iter().all(|d| d.images().iter().all(Poly::is_zero)));
        assert_eq!(field_of(&[&[0, 0], &[0, 1]], q).chart(0).to_string(), "u1 -> u1");
        let nilpotent = field_of(&[&[0, 1], &[0, 0]], q);
        assert_eq!(nilpotent.chart(0).to_string(), "u1 -> -u1^2");
        assert_eq!(nilpotent.chart(1).to_string(), "u0 -> 1");
        let three = field_of(&[&[1, 2, 0], &[0, -1, 3], &[4, 0, 2]], q);
        assert!(three.charts_agree(0, 2).unwrap() && three.charts_agree(2, 1).unwrap());
    }

    #[test]
    fn berkowitz_matches_small_cases() {
        let q = Field::Rationals;
        let cp = characteristic_polynomial(&mat(q, &[&[1, 2], &[3, 4]]), q);
        assert_eq!(univariate_poly(&cp, q).to_string(), "t^2-5*t-2");
        let cp = characteristic_polynomial(&mat(q, &[&[2, 0, 0], &[1, 3, 0], &[5, 7, -1]]), q);
        assert_eq!(univariate_poly(&cp, q).to_string(), "t^3-4*t^2+t+6");
    }

    #[test]
    fn diagonal_leaves() {
        let rep = projective_rational_leaves(&field_of(&[&[1, 0], &[0, 2]], Field::Rationals)).unwrap();
        let pts: Vec<String> = rep.leaves.iter().map(ProjectiveLeaf::point_string).collect();
        assert_eq!(pts.len(), 2);
        assert!(pts.contains(&"[1:0]".to_string()) && pts.contains(&"[0:1]".to_string()));
        assert!(rep.leaves.iter().all(|l| l.verified));
        assert_eq!(rep.residual_degree(), 0);
    }

    #[test]
    fn jordan_block() {
        let rep = projective_rational_leaves(&field_of(&[&[0, 1], &[0, 0]], Field::Rationals)).unwrap();
        assert_eq!(rep.leaves.len(), 1);
        assert_eq!(rep.leaves[0].point_string(), "[1:0]");
        assert!(rep.leaves[0].verified);
    }

    #[test]
    fn rotation() {
        let rep = projective_rational_leaves(&field_of(&[&[0, -1], &[1, 0]], Field::Rationals)).unwrap();
        assert!(rep.leaves.is_empty());
        assert_eq!(rep.extension_note().unwrap(), "degree-2 extension required");

        let f5 = Field::prime(5).unwrap();
        let rep = projective_rational_leaves(&field_of(&[&[0, -1], &[1, 0]], f5)).unwrap();
        assert_eq!(rep.leaves.len(), 2);
        assert!(rep.leaves.iter().all(|l| l.verified));
        let mut eig: Vec<String> = rep.eigenvalues.iter().map(|c| c.to_string()).collect();
        eig.sort();
        assert_eq!(eig, ["2", "3"]);
    }

    #[test]
    fn rational_eigenvalue() {
        let q = Field::Rationals;
        let m = vec![
            vec![Coefficient::parse_in("1/2", q).unwrap(), q.zero()],
            vec![q.one(), Coefficient::parse_in("-3/4", q).unwrap()],
        ];
        let rep = projective_rational_leaves(&projective_field_from_matrix(q, 1, m).unwrap()).unwrap();
        assert_eq!(rep.eigenvalues.len(), 2);
        assert!(rep.leaves.iter().all(|l| l.verified));
    }
}
