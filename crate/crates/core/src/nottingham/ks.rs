//! Break sequences predicted from Witt-vector data, and conversion between
//! lower and upper numbering.

use std::fmt;

use super::witt::{WittVec, F2};
use crate::error::{Error, Result};

/// Lower breaks `(b_0, …, b_{n−1})` together with upper breaks
/// `⟨b^{(0)}, …, b^{(n−1)}⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakData {
    pub p: u64,
    pub lower: Vec<u64>,
    pub upper: Vec<u64>,
}

/// Which numbering a sequence is given in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Numbering {
    Lower,
    Upper,
}

impl fmt::Display for BreakData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}) = <{}>", join(&self.lower), join(&self.upper))
    }
}

/// Converts `seq` (given in `from` numbering) and returns both sequences.
///
/// Upper from lower: `b^{(i)} = b^{(i−1)} + p^{−i}(b_i − b_{i−1})`, which must
/// be integral; lower from upper: `b_i = b_{i−1} + p^i(b^{(i)} − b^{(i−1)})`.
pub fn convert_breaks(seq: &[u64], from: Numbering, p: u64) -> Result<BreakData> {
    if seq.is_empty() {
        return Err(Error::Precondition("empty break sequence".into()));
    }
    if seq.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("break sequences increase strictly".into()));
    }
    let mut other = vec![seq[0]];
    let mut pi = 1u64;
    for i in 1..seq.len() {
        pi = pi.checked_mul(p).ok_or(Error::NonIntegral)?;
        let diff = seq[i] - seq[i - 1];
        let next = match from {
            Numbering::Lower => {
                if diff % pi != 0 {
                    return Err(Error::NonIntegral);
                }
                other[i - 1] + diff / pi
            }
            Numbering::Upper => other[i - 1] + pi * diff,
        };
        other.push(next);
    }
    let (lower, upper) = match from {
        Numbering::Lower => (seq.to_vec(), other),
        Numbering::Upper => (other, seq.to_vec()),
    };
    Ok(BreakData { p, lower, upper })
}

/// Additive order of the image of `a` in `W_m(F₂)`: `2^{m−v}` with `v` the
/// first nonzero component, or `None` for zero.
fn additive_order(a: &WittVec<F2>, m: usize) -> Option<u64> {
    let v = a.comps()[..m].iter().position(|c| c.0 & 1 == 1)?;
    Some(1 << (m - v))
}

/// Upper and lower breaks of the generator attached to
/// `β = Σ a_i t^{−i}` (odd `i`), for Witt vectors of length `n`:
/// `b^{(m−1)} = max{ i·ord(a_i mod W_m) } / 2`.
pub fn ks_breaks(terms: &[(u64, WittVec<F2>)], n: usize) -> Result<BreakData> {
    if terms.is_empty() || !(1..=3).contains(&n) {
        return Err(Error::Precondition("need terms and 1 ≤ n ≤ 3".into()));
    }
    if terms.iter().any(|(i, a)| i % 2 == 0 || a.len() < n) {
        return Err(Error::Precondition(
            "indices must be odd and Witt vectors at least n long".into(),
        ));
    }
    if !terms.iter().any(|(_, a)| a.comps()[0].0 & 1 == 1) {
        return Err(Error::Precondition("no term has a nonzero zeroth component".into()));
    }
    let mut upper = Vec::with_capacity(n);
    for m in 1..=n {
        let rho = terms
            .iter()
            .filter_map(|(i, a)| additive_order(a, m).map(|o| i * o))
            .max()
            .expect("some zeroth component is nonzero");
        upper.push(rho / 2);
    }
    convert_breaks(&upper, Numbering::Upper, 2)
}
