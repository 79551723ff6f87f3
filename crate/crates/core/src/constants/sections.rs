//! Constant fractions, their extension along the vector field, and
//! fraction-presented sections. "Vanishes on `D(g)`" is encoded as
//! `f ∈ √(rel : g^∞)`, equivalently `f g ∈ √rel`.

use crate::algebra::poly::Poly;
use crate::algebra::syntax::format_fraction;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::schemes::affine::AffineDiffScheme;
use crate::schemes::open::{u_delta, OpenSet};

pub const DEFAULT_EXTENSION_ORDER: usize = 4;

fn check(x: &AffineDiffScheme, p: &Poly) -> Result<()> {
    if p.ring() != x.ring() {
        return Err(Error::SignatureMismatch(format!("{p} not in {}", x.ring())));
    }
    Ok(())
}

/// `f = 0` on `D(g)` in the reduced scheme `X`.
pub fn vanishes_on(x: &AffineDiffScheme, f: &Poly, g: &Poly) -> bool {
    f.is_zero() || x.relations().radical_contains(&(f * g))
}

/// `D(g)` is empty in `X`.
pub fn is_empty_basic(x: &AffineDiffScheme, g: &Poly) -> bool {
    x.relations().radical_contains(g)
}

/// `(a/b)' = 0` in `A_b`: `a' b - a b' ∈ (rel : b^∞)`.
pub fn is_constant_fraction(x: &AffineDiffScheme, a: &Poly, b: &Poly) -> Result<bool> {
    check(x, a)?;
    check(x, b)?;
    if is_empty_basic(x, b) {
        return Err(Error::EmptyOpen(format!("D({b})")));
    }
    let d = x.derivation();
    let w = d.apply(a)? * b - a * &d.apply(b)?;
    if w.is_zero() {
        return Ok(true);
    }
    if x.relations().is_zero() {
        return Ok(false);
    }
    Ok(x.relations().saturation(b)?.contains(&w))
}

/// Patches `a_i / b_i` on `D(b_i)`.
#[derive(Debug, Clone)]
pub struct FractionSection {
    scheme: AffineDiffScheme,
    patches: Vec<(Poly, Poly)>,
}

impl FractionSection {
    pub fn new(scheme: AffineDiffScheme, patches: Vec<(Poly, Poly)>) -> Result<FractionSection> {
        for (a, b) in &patches {
            check(&scheme, a)?;
            check(&scheme, b)?;
        }
        Ok(FractionSection { scheme, patches })
    }

    pub fn scheme(&self) -> &AffineDiffScheme {
        &self.scheme
    }

    pub fn patches(&self) -> &[(Poly, Poly)] {
        &self.patches
    }

    /// `∪ D(b_i)`.
    pub fn domain(&self) -> OpenSet {
        let ring = self.scheme.ring();
        let ideal = Ideal::new(ring, self.patches.iter().map(|(_, b)| b.clone()).collect()).unwrap();
        OpenSet::complement_of(ideal)
    }

    /// Patches `i` and `j` agree on `D(b_i b_j)`.
    pub fn agree(&self, i: usize, j: usize) -> bool {
        let (ai, bi) = &self.patches[i];
        let (aj, bj) = &self.patches[j];
        vanishes_on(&self.scheme, &(ai * bj - aj * bi), &(bi * bj))
    }

    /// Patch `i` agrees with `a/b` on `D(b_i b)`.
    pub fn agrees_with(&self, i: usize, a: &Poly, b: &Poly) -> bool {
        let (ai, bi) = &self.patches[i];
        vanishes_on(&self.scheme, &(ai * b - a * bi), &(bi * b))
    }

    pub fn patch_strings(&self) -> Vec<String> {
        self.patches.iter().map(|(a, b)| format_fraction(a, b)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KovacicCertificate {
    pub verified_pairs: Vec<(usize, usize)>,
    /// Present when constancy of each patch was requested.
    pub constant_patches: Option<Vec<bool>>,
}

/// Pairwise agreement on overlaps, and optionally constancy of every patch.
pub fn validate_kovacic_section(s: &FractionSection, check_constancy: bool) -> Result<KovacicCertificate> {
    let mut verified_pairs = Vec::new();
    for i in 0..s.patches.len() {
        for j in i + 1..s.patches.len() {
            if !s.agree(i, j) {
                return Err(Error::IncompatiblePatches(i, j));
            }
            verified_pairs.push((i, j));
        }
    }
    let constant_patches = if check_constancy {
        let flags = s
            .patches
            .iter()
            .map(|(a, b)| if is_empty_basic(&s.scheme, b) { Ok(true) } else { is_constant_fraction(&s.scheme, a, b) })
            .collect::<Result<Vec<_>>>()?;
        Some(flags)
    } else {
        None
    };
    Ok(KovacicCertificate { verified_pairs, constant_patches })
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub section: FractionSection,
    /// The `n` with `(a^(n), b^(n))` retained as patches.
    pub orders: Vec<usize>,
    /// `∪ D(b^(n)) = D(b)^δ`.
    pub covers_udelta: bool,
}

/// Extends a constant `a/b` on `D(b)` to the patches `a^(n) / b^(n)`,
/// `n <= max_order`, dropping those with empty domain. Assumes `X` reduced.
pub fn extend_constant(x: &AffineDiffScheme, a: &Poly, b: &Poly, max_order: usize) -> Result<Extension> {
    if !is_constant_fraction(x, a, b)? {
        return Err(Error::NotConstant(format_fraction(a, b)));
    }
    let d = x.derivation();
    let nums = d.iterates(a, max_order)?;
    let dens = d.iterates(b, max_order)?;
    let mut patches = Vec::new();
    let mut orders = Vec::new();
    for (n, (an, bn)) in nums.into_iter().zip(dens.iter().cloned()).enumerate() {
        if !is_empty_basic(x, &bn) {
            patches.push((an, bn));
            orders.push(n);
        }
    }
    let section = FractionSection::new(x.clone(), patches)?;
    validate_kovacic_section(&section, false)?;
    let hull = u_delta(x, &OpenSet::basic(b.clone()))?;
    let all_dens = OpenSet::complement_of(Ideal::new(x.ring(), dens)?);
    let covers_udelta = all_dens.same_set_in(x, &hull)?;
    Ok(Extension { section, orders, covers_udelta })
}

#[derive(Debug, Clone)]
pub struct ComparisonEntry {
    pub numerator: Poly,
    pub denominator: Poly,
    pub extension: Extension,
    /// Restricting the extension to `U` gives back `a/b`.
    pub restriction_ok: bool,
    /// Extending again from each patch of the extension glues with it.
    pub re_extension_ok: bool,
}

impl ComparisonEntry {
    pub fn holds(&self) -> bool {
        self.restriction_ok && self.re_extension_ok && self.extension.covers_udelta
    }
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub open: OpenSet,
    pub entries: Vec<ComparisonEntry>,
}

impl ComparisonReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(ComparisonEntry::holds)
    }
}

/// Round trips between constants on `U = D(u)` and on `U^δ` for the given
/// constant fractions, each defined on all of `U`.
pub fn constants_comparison_report(
    x: &AffineDiffScheme,
    u: &Poly,
    fractions: &[(Poly, Poly)],
    max_order: usize,
) -> Result<ComparisonReport> {
    check(x, u)?;
    let mut entries = Vec::new();
    for (a, b) in fractions {
        check(x, a)?;
        check(x, b)?;
        let lifted = x.relations().with_generators([b.clone()])?;
        if !lifted.radical_contains(u) {
            return Err(Error::Invalid(format!("{} is not defined on all of D({u})", format_fraction(a, b))));
        }
        let extension = extend_constant(x, a, b, max_order)?;
        let s = &extension.section;
        let restriction_ok = (0..s.patches().len()).all(|i| {
            let (ai, bi) = &s.patches()[i];
            vanishes_on(x, &(ai * b - a * bi), &(bi * b * u))
        });
        let mut re_extension_ok = true;
        for (an, bn) in s.patches() {
            let again = extend_constant(x, an, bn, max_order)?;
            let mut joint = s.patches().to_vec();
            joint.extend(again.section.patches().iter().cloned());
            let glued = FractionSection::new(x.clone(), joint)?;
            re_extension_ok &= validate_kovacic_section(&glued, false).is_ok()
                && again.section.domain().same_set_in(x, &s.domain())?;
        }
        entries.push(ComparisonEntry { numerator: a.clone(), denominator: b.clone(), extension, restriction_ok, re_extension_ok });
    }
    Ok(ComparisonReport { open: OpenSet::basic(u.clone()), entries })
}
