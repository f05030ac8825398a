//! Recovering an algebraic equation from an automaton: guess a relation
//! among the monomials `t^j σ^i` from a prefix, then certify it by solving
//! it again and comparing minimal automata.

use crate::algebra::{hensel_root, BiPoly, FpPoly, KernelBuilder, TruncSeries};
use crate::christol::{diagonal_automaton, DEFAULT_ORBIT_CAP};
use crate::dfao::Dfao;
use crate::error::{Error, Result};

/// An annihilating polynomial together with its certificate.
#[derive(Clone, Debug)]
pub struct CertifiedEquation {
    pub f: BiPoly,
    /// The automaton obtained by solving `f` along the source prefix.
    pub witness: Dfao,
    pub source: Dfao,
}

/// Search limits for [`guess_equation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GuessCaps {
    pub dmax: usize,
    pub hmax: usize,
    /// First sample length; doubled after each failed certification.
    pub m_start: usize,
    pub m_max: usize,
}

impl Default for GuessCaps {
    fn default() -> Self {
        GuessCaps {
            dmax: 16,
            hmax: 16,
            m_start: 256,
            m_max: 4096,
        }
    }
}

/// Powers `σ^0, …, σ^d` to the precision of `s`.
fn powers(s: &TruncSeries, d: usize) -> Vec<TruncSeries> {
    let n = s.precision();
    let mut out = vec![TruncSeries::from_poly(&FpPoly::one(s.p()), n)];
    for i in 1..=d {
        let next = out[i - 1].mul(s);
        out.push(next);
    }
    out
}

/// A nonzero `F` with `deg_X F ≤ d`, `deg_t F ≤ h` and `F(t, σ) ≡ 0` modulo
/// the precision of `σ`, if one exists.
fn relation(pows: &[TruncSeries], d: usize, h: usize) -> Option<BiPoly> {
    let p = pows[0].p();
    let m = pows[0].precision();
    let cols = (d + 1) * (h + 1);
    let mut kb = KernelBuilder::new(p, cols);
    for k in 0..m {
        if kb.is_full_rank() {
            return None;
        }
        if p == 2 {
            let mut v = vec![0u64; cols.div_ceil(64)];
            for (i, pw) in pows.iter().enumerate().take(d + 1) {
                for j in 0..=h.min(k) {
                    if pw.coeff(k - j) == 1 {
                        let c = i * (h + 1) + j;
                        v[c / 64] |= 1 << (c % 64);
                    }
                }
            }
            kb.push_bits(v);
        } else {
            let mut row = vec![0u8; cols];
            for (i, pw) in pows.iter().enumerate().take(d + 1) {
                for j in 0..=h.min(k) {
                    row[i * (h + 1) + j] = pw.coeff(k - j);
                }
            }
            kb.push(&row);
        }
    }
    let x = kb.kernel().into_iter().next()?;
    let coeffs = (0..=d)
        .map(|i| FpPoly::new(p, x[i * (h + 1)..(i + 1) * (h + 1)].to_vec()))
        .collect();
    Some(BiPoly::new(p, coeffs).primitive_part())
}

/// Relations of least `X`-degree (then least `t`-degree) within the caps.
/// Returns candidates in increasing `X`-degree.
pub fn hermite_pade(s: &TruncSeries, dmax: usize, hmax: usize) -> Vec<BiPoly> {
    let pows = powers(s, dmax);
    let mut out = Vec::new();
    for d in 1..=dmax {
        if relation(&pows, d, hmax).is_none() {
            continue;
        }
        // A relation at height h persists at every larger height.
        let (mut lo, mut hi) = (0usize, hmax);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if relation(&pows, d, mid).is_some() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if let Some(f) = relation(&pows, d, lo) {
            if f.deg_x() == Some(d) {
                out.push(f);
            }
        }
    }
    out
}

/// Solves `f` along the prefix of `a` and compares automata.
fn certify(f: &BiPoly, a: &Dfao, prefix: &TruncSeries) -> Option<CertifiedEquation> {
    let sq = f.squarefree_part();
    if sq.inseparable {
        return None;
    }
    let g = sq.part.primitive_part();
    let n = prefix.precision();
    let e = TruncSeries::eval_poly(&g.derivative_x(), prefix).valuation()?;
    if 2 * e + 2 > n {
        return None;
    }
    let root = hensel_root(&g, prefix, n).ok()?;
    let (witness, _) = diagonal_automaton(&g, &root, DEFAULT_ORBIT_CAP).ok()?;
    witness.equal_series(a).then(|| CertifiedEquation {
        f: g,
        witness,
        source: a.clone(),
    })
}

/// An equation for the series of `a`, certified by equality of automata.
pub fn guess_equation(a: &Dfao, caps: GuessCaps) -> Result<CertifiedEquation> {
    let mut m = caps.m_start.max(2 * (caps.dmax + 1) * (caps.hmax + 1) + 32).min(caps.m_max);
    loop {
        let prefix = a.series_prefix(m);
        for f in hermite_pade(&prefix, caps.dmax, caps.hmax) {
            if let Some(cert) = certify(&f, a, &prefix) {
                return Ok(cert);
            }
        }
        if m >= caps.m_max {
            return Err(Error::CapsExhausted(format!(
                "no certified equation with deg_X ≤ {}, deg_t ≤ {} from {} coefficients",
                caps.dmax, caps.hmax, m
            )));
        }
        m = (2 * m).min(caps.m_max);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_bipoly;
    use crate::dfao::{polynomial_automaton, tests::klopsch3};

    #[test]
    fn identity_series() {
        let a = polynomial_automaton(&FpPoly::monomial(2, 1, 1));
        let eq = guess_equation(&a, GuessCaps::default()).unwrap();
        assert_eq!(eq.f, parse_bipoly("X+t", 2).unwrap());
    }

    #[test]
    fn klopsch_three() {
        let eq = guess_equation(&klopsch3(), GuessCaps::default()).unwrap();
        assert_eq!(eq.f, parse_bipoly("(t^3+1)*X^3+t^3", 2).unwrap());
        assert!(eq.witness.equal_series(&eq.source));
    }
}
