//! Conjugation in the Nottingham group and the normal forms used to tell
//! conjugacy classes of elements of order 4 and 8 apart.

use std::fmt;

use crate::algebra::{BiPoly, FpPoly, TruncSeries};
use crate::error::{Error, Result};

/// `c⁻¹ ∘ s ∘ c`, truncated to the smaller precision.
pub fn conjugate(s: &TruncSeries, c: &TruncSeries) -> Result<TruncSeries> {
    let inner = TruncSeries::compose(s, c)?;
    TruncSeries::compose(&c.comp_inverse()?, &inner)
}

/// Numerator of `F(t/(t+1), X)`, i.e. `Σ c_ij t^i (t+1)^{h−i} X^j` with
/// `h = deg_t F`. If `σ` is a root of `F` then `σ ∘ (t/(t+1))` is a root of
/// the result.
pub fn phi_twist(f: &BiPoly) -> BiPoly {
    let p = f.p();
    let Some(h) = f.deg_t() else { return f.clone() };
    let t1 = FpPoly::from_exponents(p, &[0, 1]);
    let coeffs = f
        .coeffs_by_x()
        .iter()
        .map(|a| {
            let mut acc = FpPoly::zero(p);
            for (i, &c) in a.coeffs().iter().enumerate() {
                if c != 0 {
                    acc = &acc + &(&FpPoly::monomial(p, c, i) * &t1.pow((h - i) as u64));
                }
            }
            acc
        })
        .collect();
    BiPoly::new(p, coeffs)
}

/// `t/(t+1)` modulo `t^n`.
pub fn phi_series(n: usize) -> TruncSeries {
    TruncSeries::new(2, (0..n).map(|i| u8::from(i >= 1)).collect())
}

/// The two conjugacy classes of elements of order 4 with breaks `(1, 3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order4Class {
    /// Conjugate to the series of `(t+1)²X² + X + t`.
    Cs,
    /// Conjugate to the cube of that series.
    Cs3,
}

impl fmt::Display for Order4Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order4Class::Cs => "conjugate to sigma_CS",
            Order4Class::Cs3 => "conjugate to sigma_CS^3",
        })
    }
}

fn require(s: &TruncSeries, precision: usize, prefix: &[(usize, u8)]) -> Result<()> {
    if s.p() != 2 || s.precision() < precision {
        return Err(Error::InsufficientPrecision {
            have: s.precision(),
            need: precision,
        });
    }
    for &(i, c) in prefix {
        if s.coeff(i) != c {
            return Err(Error::Precondition(format!("coefficient a_{i} must be {c}")));
        }
    }
    Ok(())
}

/// Class of an element of order 4 with breaks `(1, 3)`, read from
/// `a_4` and `a_5` (equal for the first class).
pub fn recognize_order4_13(s: &TruncSeries) -> Result<Order4Class> {
    require(s, 6, &[(0, 0), (1, 1), (2, 1), (3, 0)])?;
    Ok(if s.coeff(4) == s.coeff(5) {
        Order4Class::Cs
    } else {
        Order4Class::Cs3
    })
}

/// Precision at which the order-8 normal form is read.
pub const ORDER8_PRECISION: usize = 12;

/// `t + t^k` modulo `t^n`.
fn chi(k: usize, n: usize) -> TruncSeries {
    TruncSeries::from_exponents(2, [1, k], n)
}

/// Normal form `t + t² + b₄t⁴ + t⁷ + b₁₁t¹¹ + O(t¹²)` of an element of order
/// 8 with breaks `(1, 3, 11)`; returns `(b₄, b₁₁)`.
///
/// Conjugations by `t + t^k` for `k = 3, 5, 2, 6, 4` (each applied only if
/// the coefficient it controls is nonzero) clear `a_5, a_6, a_9, a_8, a_10`.
pub fn normalize_order8(s: &TruncSeries) -> Result<(u8, u8)> {
    require(s, ORDER8_PRECISION, &[(0, 0), (1, 1), (2, 1), (3, 0)])?;
    if s.coeff(5) == s.coeff(7) {
        return Err(Error::Precondition("a_5 and a_7 must differ".into()));
    }
    let n = ORDER8_PRECISION;
    let mut cur = s.truncate(n);
    for (k, controls) in [(3, 5), (5, 6), (2, 9), (6, 8), (4, 10)] {
        if cur.coeff(controls) == 1 {
            // χ ∘ σ ∘ χ⁻¹
            cur = conjugate(&cur, &chi(k, n).comp_inverse()?)?;
        }
    }
    let cleared = [(5, 0), (6, 0), (7, 1), (8, 0), (9, 0), (10, 0)];
    if cleared.iter().any(|&(i, c)| cur.coeff(i) != c) {
        return Err(Error::CertificationFailed(format!(
            "normal form not reached: {cur}"
        )));
    }
    Ok((cur.coeff(4), cur.coeff(11)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hensel_root, parse_bipoly, parse_series, truncated_solutions};

    fn root(eq: &str, prefix: &str, n: usize) -> TruncSeries {
        let f = parse_bipoly(eq, 2).unwrap();
        let c = parse_series(prefix, 2).unwrap();
        let seeds = truncated_solutions(&f, Some(&c)).unwrap();
        hensel_root(&f, &seeds[0], n).unwrap()
    }

    const SIGMA8: (&str, &str) = (
        "t^6*X^6+(t^6+t^2)*X^4+(t^6+t^5+t^4+t^3+t^2+1)*X^2+(t+1)^3*X+t^6+t^5+t^2+t",
        "t+t^2+t^5+t^6+t^12+O(t^13)",
    );
    const SIGMA82: (&str, &str) = (
        "t*X^6+(t+1)*X^5+(t^5+t^3)*X^4+(t^5+t+1)*X^3+(t^6+t^5+t^4+t^3+t)*X^2+(t^4+t^2)*X+t^4+t^3",
        "t+t^2+t^5+t^9+t^11+O(t^12)",
    );

    #[test]
    fn conjugating_cs_by_chi3() {
        let cs = root("(t+1)^2*X^2+X+t", "t", 6);
        let got = conjugate(&cs, &chi(3, 6)).unwrap();
        assert_eq!(got, parse_series("t+t^2+t^4+t^5+O(t^6)", 2).unwrap());
    }

    #[test]
    fn order4_classes() {
        let j = parse_series("t+t^2+t^5+O(t^6)", 2).unwrap();
        assert_eq!(recognize_order4_13(&j).unwrap(), Order4Class::Cs3);
        let min = root("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t", "t+t^2", 8);
        assert_eq!(recognize_order4_13(&min).unwrap(), Order4Class::Cs);
        let cs = root("(t+1)^2*X^2+X+t", "t", 8);
        assert_eq!(recognize_order4_13(&cs).unwrap(), Order4Class::Cs);
        assert!(recognize_order4_13(&parse_series("t+t^3+O(t^8)", 2).unwrap()).is_err());
    }

    #[test]
    fn order8_normal_forms() {
        let s8 = root(SIGMA8.0, SIGMA8.1, 64);
        assert_eq!(normalize_order8(&s8).unwrap(), (1, 1));
        assert_eq!(normalize_order8(&s8.compose_power(3).unwrap()).unwrap(), (0, 1));
        assert_eq!(normalize_order8(&s8.compose_power(5).unwrap()).unwrap(), (1, 1));
        let s82 = root(SIGMA82.0, SIGMA82.1, 64);
        assert_eq!(normalize_order8(&s82).unwrap(), (1, 0));
        assert_eq!(normalize_order8(&s82.compose_power(3).unwrap()).unwrap(), (0, 0));
    }

    #[test]
    fn phi_is_an_involution() {
        let f = parse_bipoly("t^2*X^3+(t+1)^3*X+t^3+t", 2).unwrap();
        let back = phi_twist(&phi_twist(&f));
        assert_eq!(back.primitive_part(), f.primitive_part());
    }

    #[test]
    fn phi_twist_of_klopsch_equation() {
        for m in [1u32, 3, 5] {
            let f = super::super::sparse::klopsch_equation(m).unwrap();
            let want = parse_bipoly(&format!("(t^{m}+(t+1)^{m})*X^{m}+t^{m}"), 2).unwrap();
            assert_eq!(phi_twist(&f), want, "m = {m}");
        }
    }

    #[test]
    fn phi_twist_moves_roots() {
        let f = parse_bipoly("(t+1)^2*X^2+X+t", 2).unwrap();
        let s = root("(t+1)^2*X^2+X+t", "t", 40);
        let moved = TruncSeries::compose(&s, &phi_series(40)).unwrap();
        assert!(TruncSeries::eval_poly(&phi_twist(&f), &moved).valuation().is_none());
    }
}
