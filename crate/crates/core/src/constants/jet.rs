//! Truncated free differential polynomial rings.

use crate::algebra::coeff::Field;
use crate::algebra::poly::{Poly, Ring, RingRef};
use crate::error::{Error, Result};

/// Variables `s, s_1, ..., s_M` for each symbol `s`, with the shift
/// derivation `s_i -> s_{i+1}`.
#[derive(Debug, Clone)]
pub struct JetRing {
    symbols: Vec<String>,
    order: usize,
    ring: RingRef,
}

impl JetRing {
    pub fn new<S: Into<String>>(field: Field, symbols: impl IntoIterator<Item = S>, order: usize) -> Result<JetRing> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let mut names = Vec::with_capacity(symbols.len() * (order + 1));
        for s in &symbols {
            for i in 0..=order {
                names.push(jet_name(s, i));
            }
        }
        let ring = Ring::new(field, names)?;
        Ok(JetRing { symbols, order, ring })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    fn index(&self, symbol: &str, i: usize) -> Result<usize> {
        let s = self
            .symbols
            .iter()
            .position(|x| x == symbol)
            .ok_or_else(|| Error::UnknownVariable(symbol.to_string()))?;
        if i > self.order {
            return Err(Error::JetOrderExceeded(format!("{} beyond order {}", jet_name(symbol, i), self.order)));
        }
        Ok(s * (self.order + 1) + i)
    }

    /// `s^(i)`.
    pub fn var(&self, symbol: &str, i: usize) -> Result<Poly> {
        Ok(Poly::var(&self.ring, self.index(symbol, i)?))
    }

    /// Shorthand for `var` when the symbol is known to exist.
    pub fn v(&self, symbol: &str, i: usize) -> Poly {
        self.var(symbol, i).expect("jet variable")
    }

    /// The shift derivation. Fails if `f` involves a variable of top order.
    pub fn shift(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != &self.ring {
            return Err(Error::SignatureMismatch(format!("{} vs {}", f.ring(), self.ring)));
        }
        let width = self.order + 1;
        let mut acc = Poly::zero(&self.ring);
        for v in f.support_vars() {
            if v % width == self.order {
                return Err(Error::JetOrderExceeded(format!(
                    "cannot shift {} at jet order {}",
                    self.ring.vars()[v],
                    self.order
                )));
            }
            acc = acc + f.partial(v) * Poly::var(&self.ring, v + 1);
        }
        Ok(acc)
    }

    /// `f, f', ..., f^(n)`.
    pub fn shifts(&self, f: &Poly, n: usize) -> Result<Vec<Poly>> {
        let mut out = vec![f.clone()];
        for _ in 0..n {
            let next = self.shift(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }
}

/// `s` at order 0, `s_i` above.
pub fn jet_name(symbol: &str, i: usize) -> String {
    if i == 0 {
        symbol.to_string()
    } else {
        format!("{symbol}_{i}")
    }
}
