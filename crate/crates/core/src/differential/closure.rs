use crate::algebra::derivation::Derivation;
use crate::error::{Error, Result};
use crate::groebner::Ideal;

/// `d(g) ∈ I` for every generator `g`. Sufficient because
/// `d(sum h_i g_i) = sum (h_i' g_i + h_i g_i')`.
pub fn is_differential_ideal(ideal: &Ideal, d: &Derivation) -> Result<bool> {
    check_ring(ideal, d)?;
    for g in ideal.generators() {
        if !ideal.contains(&d.apply(g)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn check_ring(ideal: &Ideal, d: &Derivation) -> Result<()> {
    if ideal.ring() != d.ring() {
        return Err(Error::SignatureMismatch(format!("ideal in {}, derivation on {}", ideal.ring(), d.ring())));
    }
    Ok(())
}

/// Result of [`diff_closure`].
#[derive(Debug, Clone)]
pub struct DiffIdealClosureResult {
    pub closure: Ideal,
    /// Rounds that enlarged the ideal.
    pub rounds: usize,
    /// Always true: the chain of ideals is ascending in a Noetherian ring.
    pub terminated: bool,
}

/// Smallest differential ideal containing `ideal`.
///
/// Each round adds the derivatives of the generators added in the previous
/// round (older generators already have their derivatives in the ideal).
/// Added derivatives are reduced modulo the current ideal first.
pub fn diff_closure(ideal: &Ideal, d: &Derivation) -> Result<DiffIdealClosureResult> {
    check_ring(ideal, d)?;
    let mut current = ideal.clone();
    let mut frontier: Vec<_> = ideal.generators().to_vec();
    let mut rounds = 0;
    loop {
        let mut fresh = Vec::new();
        for g in &frontier {
            let nf = current.normal_form(&d.apply(g)?);
            if !nf.is_zero() {
                fresh.push(nf);
            }
        }
        if fresh.is_empty() {
            return Ok(DiffIdealClosureResult { closure: current, rounds, terminated: true });
        }
        rounds += 1;
        current = current.with_generators(fresh.iter().cloned())?;
        if current.is_unit() {
            let unit = Ideal::unit(ideal.ring());
            return Ok(DiffIdealClosureResult { closure: unit, rounds, terminated: true });
        }
        frontier = fresh;
    }
}
