//! Lower break sequences `b_i = ord_t(σ^{∘p^i} − t) − 1`.

use crate::algebra::TruncSeries;
use crate::dfao::Dfao;
use crate::error::{Error, Result};

/// Largest prefix length tried when enlarging precision.
pub const BREAK_PRECISION_CAP: usize = 4096;

/// Depth `ord_t(s − t) − 1`, or `None` if `s ≡ t` to its precision.
pub fn depth(s: &TruncSeries) -> Option<usize> {
    s.sub(&TruncSeries::identity(s.p(), s.precision()))
        .valuation()
        .map(|v| v - 1)
}

/// Breaks `b_0, …, b_{n−1}` from a fixed prefix; fails if some power agrees
/// with `t` to the available precision.
pub fn break_sequence(s: &TruncSeries, n: usize) -> Result<Vec<usize>> {
    if s.precision() < 2 || s.coeff(0) != 0 || s.coeff(1) != 1 {
        return Err(Error::NotTangentToIdentity);
    }
    let p = s.p() as u64;
    let mut out = Vec::with_capacity(n);
    let mut cur = s.clone();
    for i in 0..n {
        match depth(&cur) {
            Some(b) => out.push(b),
            None => {
                return Err(Error::CapsExhausted(format!(
                    "break b_{i} not resolved at precision {}",
                    s.precision()
                )))
            }
        }
        if i + 1 < n {
            cur = cur.compose_power(p)?;
        }
    }
    Ok(out)
}

/// Breaks of the series of `a`, enlarging the prefix (doubling from 64)
/// until every depth is resolved or `cap` is reached.
pub fn break_sequence_of(a: &Dfao, n: usize, cap: usize) -> Result<Vec<usize>> {
    let mut prec = 64usize;
    loop {
        match break_sequence(&a.series_prefix(prec), n) {
            Err(Error::CapsExhausted(_)) if prec < cap => prec = (2 * prec).min(cap),
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_series;

    #[test]
    fn single_break_is_the_depth() {
        let s = parse_series("t+t^5+O(t^40)", 2).unwrap();
        assert_eq!(break_sequence(&s, 1).unwrap(), vec![4]);
    }

    #[test]
    fn identity_is_unresolved() {
        let s = parse_series("t+O(t^40)", 2).unwrap();
        assert!(matches!(break_sequence(&s, 1), Err(Error::CapsExhausted(_))));
    }
}
